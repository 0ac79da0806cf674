/*
   Copyright 2026 The circid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace circid::cli {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // emitted as trailing '#' lines in CSV
  std::vector<std::string> comments;
};

/// 17 significant digits, so the text re-parses to the same double.
std::string format_double(double v);

std::string to_csv(const Table& table);

/// Serialize with doubles in format_double form. Non-finite doubles become null.
std::string to_json_text(const Json& value);

/// Table rows as a list of objects under "rows".
Json table_rows_json(const Table& table);

}  // namespace circid::cli
