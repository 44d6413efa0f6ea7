#!/usr/bin/env python3
# Copyright 2026 The GistVis Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the bundled 12-paragraph corpus from (segment, type) lists.

Offsets are computed here so the JSON never drifts from the text.
"""

import json
import sys
from pathlib import Path

# Hand score for the sentence-per-segment baseline: a paragraph matches only
# when every gold segment is exactly one sentence.
#   1 yes  2 yes  3 no (two-sentence trend)  4 yes  5 no (two-sentence comparison)
#   6 yes  7 no (two-sentence rank)  8 yes  9 yes  10 no (two-sentence proportion)
#   11 yes (no terminator)  12 no (two-sentence trend)
# -> 7 of 12.
PARAGRAPHS = [
    [("EV sales rose 40% in 2023.", "trend"),
     ("The report was released on Monday.", "none")],
    [("Dr. Smith leads the research team.", "none"),
     ("The team had 45 members in 2022.", "value")],
    [("Sales were 120 units in 2021. They reached 180 units in 2022.", "trend"),
     ("Analysts were surprised.", "none")],
    [("Around 60% of Mexico is experiencing moderate to exceptional drought.", "proportion")],
    [("Brand A sold 500 cars last year. Brand B sold only 300.", "comparison"),
     ("Both brands plan new models.", "none")],
    [("The highest mountain in the world is Mount Chumolongma at 8848 meters.", "extreme"),
     ("It attracts climbers every year.", "none")],
    [("Germany ranked first in exports. France came second, and Italy third.", "rank")],
    [("This figure means the province contributed the second-highest GDP in China in 2023 "
      "only following South China's Guangdong Province with 13.57 trillion yuan.", "rank")],
    [("Mr. Lee said growth was steady.", "none"),
     ("Revenue was $4.35 billion in the third quarter.", "value"),
     ("Costs fell 3% over the year.", "trend")],
    [("Of the 200 respondents, 120 chose the first option. The remaining 80 chose the second.", "proportion")],
    [("Sources report that almost 10 million migrants have crossed into the country", "value")],
    [("Prices kept climbing through the spring. By June they had doubled.", "trend"),
     ("Shoppers noticed.", "none")],
]


def build():
    paragraphs = []
    for segs in PARAGRAPHS:
        text = " ".join(s for s, _ in segs)
        out, at = [], 0
        for s, t in segs:
            start = text.index(s, at)
            out.append({"start": start, "end": start + len(s.encode("utf-8")), "type": t})
            at = start + len(s)
        assert text.isascii()
        paragraphs.append({"text": text, "segments": out})
    return {"paragraphs": paragraphs}


def main():
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent.parent / "data" / "mini_corpus" / "mini.json"
    target.write_text(json.dumps(build(), indent=2) + "\n")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
