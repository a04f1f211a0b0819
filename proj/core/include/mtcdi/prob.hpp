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

#ifndef MTCDI_PROB_HPP_
#define MTCDI_PROB_HPP_

#include <span>
#include <string>

#include "mtcdi/types.hpp"

namespace mtcdi {

// Names one binary coordinate: a device's bit at a slot, per event.
struct VariableSelector {
  std::string device_id;
  int slot = 0;

  friend bool operator==(const VariableSelector&,
                         const VariableSelector&) = default;
};

// Plug-in multivariate Bernoulli estimate over the selected coordinates,
// treating each event as one sample. Variable j of the result is
// selectors[j]. With smoothing_alpha > 0 every one of the 2^n counts is
// incremented by alpha before normalizing.
//
// Throws InvalidArgument for an empty or oversized selector list, an
// unknown device, or a slot outside [1, L].
JointDistribution estimate_joint(const EventDataset& dataset,
                                 std::span<const VariableSelector> selectors,
                                 double smoothing_alpha = 0.0);

// Sums out every variable not listed in `keep`. Variable r of the result is
// variable keep[r] of `dist`. Throws InvalidArgument for an empty list,
// repeated positions or positions outside the arity.
JointDistribution marginalize(const JointDistribution& dist,
                              std::span<const int> keep);

}  // namespace mtcdi

#endif  // MTCDI_PROB_HPP_
