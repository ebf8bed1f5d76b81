#pragma once

#include <functional>

#include "hahn/model.hpp"

namespace hahn::testing {

/// Every model with N <= 3 and 0 <= S <= T <= 6, T >= 1.
inline void for_each_sweep_model(const std::function<void(const ModelParams&)>& fn,
                                 int max_n = 3, int max_t = 6) {
  for (int N = 1; N <= max_n; ++N) {
    for (int T = 1; T <= max_t; ++T) {
      for (int S = 0; S <= T; ++S) fn(ModelParams::make(N, S, T));
    }
  }
}

}  // namespace hahn::testing
