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

#include "mtcdi/di.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "mtcdi/error.hpp"
#include "mtcdi/prob.hpp"

namespace mtcdi {
namespace {

constexpr std::array<int, 1> kX = {0};
constexpr std::array<int, 2> kXY = {0, 2};
constexpr std::array<int, 3> kXXY = {0, 1, 2};
constexpr std::array<int, 2> kYY = {2, 3};

void check_window(const JointDistribution& window) {
  if (window.arity() != 4) {
    throw InvalidArgument("window table must have arity 4, got " +
                          std::to_string(window.arity()));
  }
}

// Probability mass of the outcomes that agree with `outcome` on `vars`.
std::vector<double> masses_on(const JointDistribution& joint, unsigned vars) {
  std::vector<double> by_pattern(joint.size(), 0.0);
  for (std::size_t m = 0; m < joint.size(); ++m) by_pattern[m & vars] += joint[m];
  std::vector<double> out(joint.size());
  for (std::size_t m = 0; m < joint.size(); ++m) out[m] = by_pattern[m & vars];
  return out;
}

}  // namespace

double entropy(const JointDistribution& dist, EntropyEvalCounter* counter) {
  if (counter) counter->add();
  double h = 0.0;
  for (const double p : dist.probs()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

PairwiseDiResult pairwise_di(const JointDistribution& window,
                             EntropyEvalCounter* counter) {
  check_window(window);
  PairwiseDiResult r;
  auto& h = r.entropies;
  h.x = entropy(marginalize(window, kX), counter);
  h.x_y = entropy(marginalize(window, kXY), counter);
  h.xx_y = entropy(marginalize(window, kXXY), counter);
  h.y_y = entropy(marginalize(window, kYY), counter);
  h.xx_yy = entropy(window, counter);
  r.raw_di_bits = h.x - h.x_y + h.xx_y + h.y_y - h.xx_yy;

  if (!(r.raw_di_bits >= -DiMatrix::kRangeTolerance &&
        r.raw_di_bits <= DiMatrix::kMaxBits + DiMatrix::kRangeTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "window DI " << r.raw_di_bits << " outside [0, 2]";
    throw InvariantError(msg.str());
  }
  r.di_bits = std::clamp(r.raw_di_bits, 0.0, DiMatrix::kMaxBits);
  return r;
}

PairwiseDiResult pairwise_di(const EventDataset& dataset,
                             std::string_view source, std::string_view target,
                             int slot, int lag, const DiOptions& options) {
  if (source == target) {
    throw InvalidArgument("source and target must differ ('" +
                          std::string(source) + "')");
  }
  const int slots = dataset.slots_per_event();
  if (slot < 1 || slot > slots - 1) {
    throw InvalidArgument("slot " + std::to_string(slot) + " outside [1, " +
                          std::to_string(slots - 1) + "]");
  }
  if (lag < 0 || lag > slots - slot - 1) {
    throw InvalidArgument("lag " + std::to_string(lag) + " outside [0, " +
                          std::to_string(slots - slot - 1) + "] at slot " +
                          std::to_string(slot));
  }
  const std::array<VariableSelector, 4> selectors = {{
      {std::string(source), slot},
      {std::string(source), slot + 1},
      {std::string(target), slot + lag},
      {std::string(target), slot + lag + 1},
  }};
  const auto window =
      estimate_joint(dataset, selectors, options.smoothing_alpha);
  return pairwise_di(window, options.counter);
}

WindowDecomposition decompose_window(const JointDistribution& window) {
  check_window(window);
  constexpr std::array<int, 1> kY = {2};
  const double h_x = entropy(marginalize(window, kX));
  const double h_y = entropy(marginalize(window, std::span<const int>(kY)));
  const double h_xy = entropy(marginalize(window, kXY));
  const double h_xxy = entropy(marginalize(window, kXXY));
  const double h_yy = entropy(marginalize(window, kYY));
  const double h_all = entropy(window);
  return {h_x + h_y - h_xy, h_xxy + h_yy - h_y - h_all};
}

double full_di_oracle(const JointDistribution& joint) {
  if (joint.arity() % 2 != 0) {
    throw InvalidArgument("DI oracle needs an even arity, got " +
                          std::to_string(joint.arity()));
  }
  const int n = joint.arity() / 2;
  const auto x_bit = [](int t) { return 1u << (t - 1); };
  const auto y_bit = [n](int t) { return 1u << (n + t - 1); };

  double total = 0.0;
  unsigned x_past = 0;  // X^t
  unsigned y_prev = 0;  // Y^{t-1}
  for (int t = 1; t <= n; ++t) {
    x_past |= x_bit(t);
    const unsigned y_now = y_prev | y_bit(t);
    // I(X^t; Y_t | Y^{t-1}) = E log [p(x^t y^t) p(y^{t-1}) /
    //                                (p(x^t y^{t-1}) p(y^t))]
    const auto p_xy = masses_on(joint, x_past | y_now);
    const auto p_yprev = masses_on(joint, y_prev);
    const auto p_xyprev = masses_on(joint, x_past | y_prev);
    const auto p_y = masses_on(joint, y_now);
    for (std::size_t m = 0; m < joint.size(); ++m) {
      if (joint[m] <= 0.0) continue;
      total += joint[m] *
               std::log2((p_xy[m] * p_yprev[m]) / (p_xyprev[m] * p_y[m]));
    }
    y_prev = y_now;
  }
  return total;
}

DiMatrix di_matrix(const EventDataset& dataset, std::string_view source,
                   std::string_view target, const DiOptions& options) {
  const int slots = dataset.slots_per_event();
  if (slots < 2) throw InvalidArgument("DI scan needs L >= 2");
  std::vector<DiCell> cells;
  cells.reserve(DiMatrix::cell_count(slots));
  for (int k = 1; k <= slots - 1; ++k) {
    for (int i = 0; i <= slots - k - 1; ++i) {
      const auto r = pairwise_di(dataset, source, target, k, i, options);
      cells.push_back({k, i, r.di_bits, r.raw_di_bits});
    }
  }
  return DiMatrix(std::string(source), std::string(target), slots,
                  std::move(cells));
}

std::uint64_t entropy_eval_count(int slots_per_event) {
  if (slots_per_event < 2) throw InvalidArgument("L must be >= 2");
  const std::vector<std::uint8_t> zeros(
      static_cast<std::size_t>(slots_per_event), 0);
  const EventDataset probe({ActivityTrace("src", slots_per_event, zeros),
                            ActivityTrace("dst", slots_per_event, zeros)});
  EntropyEvalCounter counter;
  di_matrix(probe, "src", "dst", {.counter = &counter});
  return counter.value();
}

std::uint64_t quoted_entropy_eval_count(int slots_per_event) {
  const auto l = static_cast<std::uint64_t>(slots_per_event);
  return 5 * l * (l - 1) * (l - 1);
}

}  // namespace mtcdi
