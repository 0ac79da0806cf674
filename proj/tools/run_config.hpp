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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "circid/circular.hpp"
#include "circid/cylindrical.hpp"

namespace circid::cli {

enum class OutputFormat { kDefault, kCsv, kJson };

struct RunConfig {
  std::string command;
  std::string family;
  std::string params;
  std::string params_1;
  std::string params_2;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  std::int64_t p_max = -1;  // -1 selects the command default
  double epsilon = -1.0;
  std::int64_t count = -1;
  double tol = 1e-3;
  std::int64_t n = -1;
  std::string coeffs;
  std::string theta;
  std::string x;
  std::string psi;
  std::string pairs;
  std::string taus;

  OutputFormat output_format() const;
};

using ParamMap = std::map<std::string, double, std::less<>>;

/// Parse "k=v,k=v". Duplicate keys and malformed numbers are rejected.
ParamMap parse_param_map(std::string_view text);

/// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view text, std::string_view what);

bool is_circular_family(std::string_view family);
bool is_cylindrical_family(std::string_view family);

/// Build a model, rejecting unknown and missing keys.
CircularModel make_circular(std::string_view family, std::string_view params);
CylindricalModel make_cylindrical(std::string_view family, std::string_view params);

}  // namespace circid::cli
