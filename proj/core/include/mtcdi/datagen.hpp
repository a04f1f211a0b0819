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

#ifndef MTCDI_DATAGEN_HPP_
#define MTCDI_DATAGEN_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mtcdi/types.hpp"

namespace mtcdi {

// A coupled device replays its source's realized pattern `shift` slots later
// with probability `trigger_prob`, and stays silent for the event otherwise.
struct Coupling {
  std::string source_id;
  int shift = 0;
  double trigger_prob = 1.0;

  friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct DeviceProfile {
  std::string device_id;
  std::set<int> active_slots;  // ignored when coupled
  double per_slot_activity_prob = 0.5;
  std::optional<Coupling> coupling;

  friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

struct GeneratorConfig {
  int slots_per_event = 12;
  int num_events = 1;
  std::vector<DeviceProfile> profiles;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorConfig&,
                         const GeneratorConfig&) = default;
};

// Name of the random stream recorded in dataset metadata. Each event draws
// from its own mt19937_64 seeded through std::seed_seq with the 32-bit halves
// of (seed, event index); uniforms take the top 53 bits.
inline constexpr std::string_view kGeneratorName =
    "mt19937_64/seed_seq(seed,event)/u53";

// Throws ConfigError describing the first problem found.
void validate_config(const GeneratorConfig& config);

// Deterministic in `config.seed`. Events are independent streams, so the
// result does not depend on how events are scheduled.
EventDataset generate(const GeneratorConfig& config);

inline constexpr double kPaperActivityProb = 0.5;

// Four devices, L = 12: X active on {1,2,3,4,7,8,9}, Y on {4,5,6,8,9,10,11},
// Z replays X three slots later with probability 0.8, T replays X two slots
// later with probability 0.2.
GeneratorConfig paper_scenario_config(int num_events, std::uint64_t seed,
                                      double activity_prob = kPaperActivityProb);

}  // namespace mtcdi

#endif  // MTCDI_DATAGEN_HPP_
