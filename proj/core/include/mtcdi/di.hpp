// Copyright 2026 The mtcdi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MTCDI_DI_HPP_
#define MTCDI_DI_HPP_

// Entropy and directed-information kernels over binary request windows.
//
// The production kernel works on length-2 windows: for a source X and a
// target Y, the window variables are ordered
//
//   0: X_k   1: X_{k+1}   2: Y_{k+i}   3: Y_{k+i+1}
//
// and the DI of the window is
//
//   I(X_k; Y_k) + I(X_k X_{k+1}; Y_{k+1} | Y_k)
//     = H(X_k) - H(X_k Y_k) + H(X_k X_{k+1} Y_k) + H(Y_k Y_{k+1})
//       - H(X_k X_{k+1} Y_k Y_{k+1})
//
// with Y's indices read as k+i, k+i+1. All quantities are in bits, so the
// value lies in [0, 2].

#include <array>
#include <atomic>
#include <cstdint>
#include <string_view>

#include "mtcdi/types.hpp"

namespace mtcdi {

// Counts entropy evaluations. Safe to share between threads.
class EntropyEvalCounter {
 public:
  void add(std::uint64_t n = 1) { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t value() const { return count_.load(std::memory_order_relaxed); }
  void reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

// Shannon entropy in bits, 0 log 0 = 0.
double entropy(const JointDistribution& dist,
               EntropyEvalCounter* counter = nullptr);

struct WindowEntropies {
  double x = 0.0;          // H(X_k)
  double x_y = 0.0;        // H(X_k Y_k)
  double xx_y = 0.0;       // H(X_k X_{k+1} Y_k)
  double y_y = 0.0;        // H(Y_k Y_{k+1})
  double xx_yy = 0.0;      // H(X_k X_{k+1} Y_k Y_{k+1})
};

struct PairwiseDiResult {
  double di_bits = 0.0;      // clamped to [0, 2]
  double raw_di_bits = 0.0;  // before clamping
  WindowEntropies entropies;
};

// The two mutual-information terms the window DI is made of.
struct WindowDecomposition {
  double aligned_mi = 0.0;      // I(X_k; Y_k)
  double conditional_mi = 0.0;  // I(X_k X_{k+1}; Y_{k+1} | Y_k)
};

struct DiOptions {
  double smoothing_alpha = 0.0;
  EntropyEvalCounter* counter = nullptr;
};

// DI of a 4-variable window table laid out as above. Exactly five entropy
// evaluations. Throws InvalidArgument unless the arity is 4 and
// InvariantError if the pre-clamp value leaves [-1e-9, 2 + 1e-9].
PairwiseDiResult pairwise_di(const JointDistribution& window,
                             EntropyEvalCounter* counter = nullptr);

// Estimates the window (X_k, X_{k+1}, Y_{k+i}, Y_{k+i+1}) from the dataset
// and returns its DI. Requires source != target, 1 <= slot <= L-1 and
// 0 <= lag <= L-slot-1.
PairwiseDiResult pairwise_di(const EventDataset& dataset,
                             std::string_view source, std::string_view target,
                             int slot, int lag, const DiOptions& options = {});

WindowDecomposition decompose_window(const JointDistribution& window);

// Exact DI sum_{t=1..N} I(X^t; Y_t | Y^{t-1}) by enumeration of a joint over
// (X_1..X_N, Y_1..Y_N), variables 0..N-1 holding X and N..2N-1 holding Y.
// Throws InvalidArgument when the arity is odd or exceeds 6.
double full_di_oracle(const JointDistribution& joint);

// All window DIs from source to target.
DiMatrix di_matrix(const EventDataset& dataset, std::string_view source,
                   std::string_view target, const DiOptions& options = {});

// Entropy evaluations one di_matrix call performs for event length L,
// measured by running the scan on a probe dataset: 5 L (L-1) / 2.
std::uint64_t entropy_eval_count(int slots_per_event);

// The 5 L (L-1)^2 figure quoted for the per-pair cost, kept for comparison.
std::uint64_t quoted_entropy_eval_count(int slots_per_event);

}  // namespace mtcdi

#endif  // MTCDI_DI_HPP_
