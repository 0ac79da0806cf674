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

#include "circid/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <queue>
#include <string>
#include <vector>

#include "circid/errors.hpp"

namespace circid {

namespace {

struct Cell {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Cell& other) const { return error < other.error; }
};

Cell evaluate_cell(const std::function<double(double)>& f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  const double value = Rule::integrate(f, a, b, 0, 0.0, &error);
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& options) {
  const int initial = std::max(1, options.initial_intervals);
  std::priority_queue<Cell> cells;
  const double width = (b - a) / initial;
  double total_error = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == initial ? b : a + width * (i + 1);
    Cell c = evaluate_cell(f, lo, hi);
    total_error += c.error;
    cells.push(c);
  }

  int count = initial;
  while (total_error > options.abs_tol) {
    if (count >= options.max_intervals) {
      throw NumericError("quadrature did not reach tolerance; achieved error " +
                             std::to_string(total_error),
                         total_error);
    }
    Cell worst = cells.top();
    cells.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Cell left = evaluate_cell(f, worst.a, mid);
    Cell right = evaluate_cell(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    cells.push(left);
    cells.push(right);
    ++count;
    // drift guard on the running sum
    if (count % 256 == 0 || total_error <= options.abs_tol) {
      double recomputed = 0.0;
      auto copy = cells;
      while (!copy.empty()) {
        recomputed += copy.top().error;
        copy.pop();
      }
      total_error = recomputed;
    }
  }

  // sum in ascending order of position for run-to-run stable output
  std::vector<Cell> all;
  all.reserve(cells.size());
  while (!cells.empty()) {
    all.push_back(cells.top());
    cells.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Cell& l, const Cell& r) { return l.a < r.a; });
  QuadratureResult out;
  for (const Cell& c : all) out.value += c.value;
  out.error_estimate = total_error;
  out.intervals = count;
  return out;
}

}  // namespace circid
