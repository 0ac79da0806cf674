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

#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>

#include "circid/errors.hpp"

namespace circid::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DomainError("invalid number '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

// Take the listed keys out of the map; leftovers are unknown.
std::vector<double> take(ParamMap map, std::string_view family,
                         std::initializer_list<const char*> keys) {
  std::vector<double> values;
  for (const char* key : keys) {
    const auto it = map.find(key);
    if (it == map.end()) {
      throw DomainError(std::string(family) + " parameters need '" + key + "'");
    }
    values.push_back(it->second);
    map.erase(it);
  }
  if (!map.empty()) {
    throw DomainError("unknown " + std::string(family) + " parameter '" + map.begin()->first +
                      "'");
  }
  return values;
}

}  // namespace

OutputFormat RunConfig::output_format() const {
  if (format.empty()) return OutputFormat::kDefault;
  if (format == "csv") return OutputFormat::kCsv;
  if (format == "json") return OutputFormat::kJson;
  throw DomainError("format must be csv or json");
}

ParamMap parse_param_map(std::string_view text) {
  ParamMap map;
  if (trim(text).empty()) throw DomainError("parameter list is empty");
  for (std::string_view item : split(text, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("parameter '" + std::string(item) + "' is not of the form key=value");
    }
    const std::string key(trim(item.substr(0, eq)));
    const double value = parse_real(trim(item.substr(eq + 1)), key);
    if (!map.emplace(key, value).second) throw DomainError("duplicate parameter '" + key + "'");
  }
  return map;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view what) {
  std::vector<double> values;
  for (std::string_view item : split(text, ',')) values.push_back(parse_real(item, what));
  return values;
}

bool is_circular_family(std::string_view family) {
  return parse_circular_family(family).has_value();
}

bool is_cylindrical_family(std::string_view family) {
  return parse_cylindrical_family(family).has_value();
}

CircularModel make_circular(std::string_view family, std::string_view params) {
  const auto fam = parse_circular_family(family);
  if (!fam) throw DomainError("unknown circular family '" + std::string(family) + "'");
  const ParamMap map = parse_param_map(params);
  switch (*fam) {
    case CircularFamily::kSSWC: {
      const auto v = take(map, family, {"mu", "rho", "lambda"});
      return CircularModel::sswc({v[0], v[1], v[2]});
    }
    case CircularFamily::kSSvM: {
      const auto v = take(map, family, {"mu", "kappa", "lambda"});
      return CircularModel::ssvm({v[0], v[1], v[2]});
    }
    case CircularFamily::kMC: {
      const auto v = take(map, family, {"mu", "rho_alpha", "rho_bar", "xi"});
      return CircularModel::mc({v[0], v[1], v[2], v[3]});
    }
  }
  throw DomainError("unknown circular family");
}

CylindricalModel make_cylindrical(std::string_view family, std::string_view params) {
  const auto fam = parse_cylindrical_family(family);
  if (!fam) throw DomainError("unknown cylindrical family '" + std::string(family) + "'");
  const ParamMap map = parse_param_map(params);
  if (*fam == CylindricalFamily::kAbeLey) {
    const auto v = take(map, family, {"alpha", "beta", "mu", "kappa", "lambda"});
    return CylindricalModel::abeley({v[0], v[1], v[2], v[3], v[4]});
  }
  const auto v = take(map, family, {"sigma", "delta", "tau", "mu", "kappa", "lambda"});
  return CylindricalModel::gpareto({v[0], v[1], v[2], v[3], v[4], v[5]});
}

}  // namespace circid::cli
