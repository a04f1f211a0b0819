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

#include "mtcdi/prob.hpp"

#include <cstdint>
#include <vector>

#include "mtcdi/error.hpp"

namespace mtcdi {

JointDistribution estimate_joint(const EventDataset& dataset,
                                 std::span<const VariableSelector> selectors,
                                 double smoothing_alpha) {
  const int arity = static_cast<int>(selectors.size());
  if (arity == 0) throw InvalidArgument("empty selector list");
  if (arity > JointDistribution::kMaxArity) {
    throw InvalidArgument("at most 6 selectors are supported, got " +
                          std::to_string(arity));
  }
  if (!(smoothing_alpha >= 0.0)) {
    throw InvalidArgument("smoothing alpha must be >= 0");
  }
  const int events = dataset.num_events();
  if (events <= 0) throw InvalidArgument("dataset has no events");

  std::vector<const ActivityTrace*> traces;
  std::vector<int> slots;
  for (const auto& sel : selectors) {
    traces.push_back(&dataset.device(sel.device_id));
    if (sel.slot < 1 || sel.slot > dataset.slots_per_event()) {
      throw InvalidArgument("slot " + std::to_string(sel.slot) +
                            " outside [1, " +
                            std::to_string(dataset.slots_per_event()) + "]");
    }
    slots.push_back(sel.slot);
  }

  const std::size_t outcomes = std::size_t{1} << arity;
  std::vector<std::int64_t> counts(outcomes, 0);
  for (int e = 0; e < events; ++e) {
    std::size_t mask = 0;
    for (int j = 0; j < arity; ++j) {
      mask |= static_cast<std::size_t>(traces[j]->bit(e, slots[j])) << j;
    }
    ++counts[mask];
  }

  const double denom =
      static_cast<double>(events) +
      smoothing_alpha * static_cast<double>(outcomes);
  std::vector<double> probs(outcomes);
  for (std::size_t m = 0; m < outcomes; ++m) {
    probs[m] = (static_cast<double>(counts[m]) + smoothing_alpha) / denom;
  }
  return JointDistribution(arity, std::move(probs), events);
}

JointDistribution marginalize(const JointDistribution& dist,
                              std::span<const int> keep) {
  if (keep.empty()) throw InvalidArgument("empty keep set");
  unsigned seen = 0;
  for (const int pos : keep) {
    if (pos < 0 || pos >= dist.arity()) {
      throw InvalidArgument("variable position " + std::to_string(pos) +
                            " outside arity " + std::to_string(dist.arity()));
    }
    if (seen & (1u << pos)) {
      throw InvalidArgument("variable position " + std::to_string(pos) +
                            " repeated in keep set");
    }
    seen |= 1u << pos;
  }

  const int arity = static_cast<int>(keep.size());
  std::vector<double> probs(std::size_t{1} << arity, 0.0);
  for (std::size_t m = 0; m < dist.size(); ++m) {
    std::size_t reduced = 0;
    for (int r = 0; r < arity; ++r) {
      reduced |= ((m >> keep[r]) & 1u) << r;
    }
    probs[reduced] += dist[m];
  }
  return JointDistribution(arity, std::move(probs), dist.support_count());
}

}  // namespace mtcdi
