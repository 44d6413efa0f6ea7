// Copyright 2026 The GistVis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Normalizes numeric expressions found in text: digit strings with
// thousands separators, decimals, signs, percentages, scale words, and
// English number words up to the trillions.

#ifndef GISTVIS_NUMBER_PARSER_H_
#define GISTVIS_NUMBER_PARSER_H_

#include <optional>
#include <string_view>

namespace gistvis {

struct ParsedQuantity {
  double magnitude = 0.0;  // as written: "40%" has magnitude 40
  bool percent = false;
  double fraction = 0.0;  // magnitude / 100, rounded from the decimal text
};

std::optional<ParsedQuantity> parse_quantity(std::string_view expr);

// Total: returns NaN for anything unrecognizable. Percentages come back as
// fractions ("40%" -> 0.4).
double parse_number(std::string_view expr);

}  // namespace gistvis

#endif  // GISTVIS_NUMBER_PARSER_H_
