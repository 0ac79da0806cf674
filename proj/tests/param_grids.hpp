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

#include <cmath>
#include <vector>

#include "circid/circular.hpp"
#include "circid/cylindrical.hpp"
#include "circid/errors.hpp"

// Deterministic parameter grids shared by the tests and the acceptance run.
namespace circid::testing {

inline std::vector<CircularModel> sswc_grid() {
  std::vector<CircularModel> out;
  for (double mu : {0.0, 1.1, 2.9, 4.4, 6.1}) {
    for (double rho : {0.05, 0.3, 0.6, 0.85}) {
      for (double lambda : {-1.0, -0.35, 0.5, 1.0}) {
        out.push_back(CircularModel::sswc({mu, rho, lambda}));
      }
    }
  }
  return out;
}

inline std::vector<CircularModel> ssvm_grid() {
  std::vector<CircularModel> out;
  for (double mu : {0.0, 1.1, 2.9, 4.4, 6.1}) {
    for (double kappa : {0.1, 1.0, 4.0, 15.0}) {
      for (double lambda : {-1.0, -0.35, 0.5, 1.0}) {
        out.push_back(CircularModel::ssvm({mu, kappa, lambda}));
      }
    }
  }
  return out;
}

// Only the combinations that pass the nonnegativity validation.
inline std::vector<CircularModel> mc_grid() {
  std::vector<CircularModel> out;
  for (double mu : {-3.0, -0.7, 0.0, 1.9}) {
    for (double ra : {0.1, 0.3, 0.5, 0.7}) {
      for (double rb : {0.05, 0.15, 0.3}) {
        for (double xi : {-2.5, 0.0, 0.9}) {
          try {
            out.push_back(CircularModel::mc({mu, ra, rb, xi}));
          } catch (const DomainError&) {
          }
        }
      }
    }
  }
  return out;
}

inline std::vector<CylindricalModel> abeley_grid() {
  std::vector<CylindricalModel> out;
  for (double alpha : {0.7, 1.0, 2.5}) {
    for (double beta : {0.5, 2.0}) {
      for (double kappa : {0.3, 1.5}) {
        for (double lambda : {-0.6, 0.8}) {
          out.push_back(CylindricalModel::abeley({alpha, beta, -1.2 + alpha, kappa, lambda}));
        }
      }
    }
  }
  return out;
}

inline std::vector<CylindricalModel> gpareto_grid() {
  std::vector<CylindricalModel> out;
  for (double sigma : {0.5, 2.0}) {
    for (double delta : {0.6, 1.0, 1.8}) {
      for (double tau : {0.2, 1.5}) {
        for (double kappa : {0.25, 0.8}) {
          out.push_back(
              CylindricalModel::gpareto({sigma, delta, tau, 2.0 - delta, kappa, 0.7 - delta / 2}));
        }
      }
    }
  }
  return out;
}

}  // namespace circid::testing
