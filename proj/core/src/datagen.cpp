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

#include "mtcdi/datagen.hpp"

#include <map>
#include <random>
#include <utility>

#include "mtcdi/error.hpp"

namespace mtcdi {
namespace {

// Profiles in an order where every coupling source precedes its dependents.
std::vector<std::size_t> generation_order(const GeneratorConfig& config) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t n = 0; n < config.profiles.size(); ++n) {
    index.emplace(config.profiles[n].device_id, n);
  }
  enum class Mark { kNone, kVisiting, kDone };
  std::vector<Mark> mark(config.profiles.size(), Mark::kNone);
  std::vector<std::size_t> order;
  order.reserve(config.profiles.size());

  // Coupling chains are short; plain iteration up the chain is enough.
  for (std::size_t start = 0; start < config.profiles.size(); ++start) {
    std::vector<std::size_t> chain;
    std::size_t cur = start;
    while (mark[cur] == Mark::kNone) {
      mark[cur] = Mark::kVisiting;
      chain.push_back(cur);
      const auto& coupling = config.profiles[cur].coupling;
      if (!coupling) break;
      cur = index.at(coupling->source_id);
      if (mark[cur] == Mark::kVisiting) {
        throw ConfigError("cyclic coupling through device '" +
                          config.profiles[cur].device_id + "'");
      }
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      mark[*it] = Mark::kDone;
      order.push_back(*it);
    }
  }
  return order;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void validate_config(const GeneratorConfig& config) {
  if (config.slots_per_event < 2) {
    throw ConfigError("slots_per_event must be >= 2");
  }
  if (config.num_events < 1) throw ConfigError("num_events must be >= 1");
  if (config.profiles.empty()) throw ConfigError("no device profiles");

  std::set<std::string, std::less<>> ids;
  for (const auto& p : config.profiles) {
    if (p.device_id.empty()) throw ConfigError("empty device id");
    if (!ids.insert(p.device_id).second) {
      throw ConfigError("duplicate device id '" + p.device_id + "'");
    }
  }
  for (const auto& p : config.profiles) {
    if (p.coupling) {
      const auto& c = *p.coupling;
      if (!ids.contains(c.source_id)) {
        throw ConfigError("device '" + p.device_id +
                          "' is coupled to unknown device '" + c.source_id +
                          "'");
      }
      if (c.shift < 0 || c.shift >= config.slots_per_event) {
        throw ConfigError("device '" + p.device_id + "': shift " +
                          std::to_string(c.shift) + " outside [0, L)");
      }
      if (!(c.trigger_prob >= 0.0 && c.trigger_prob <= 1.0)) {
        throw ConfigError("device '" + p.device_id +
                          "': trigger probability outside [0, 1]");
      }
    } else {
      if (!(p.per_slot_activity_prob > 0.0 &&
            p.per_slot_activity_prob <= 1.0)) {
        throw ConfigError("device '" + p.device_id +
                          "': activity probability outside (0, 1]");
      }
      for (const int s : p.active_slots) {
        if (s < 1 || s > config.slots_per_event) {
          throw ConfigError("device '" + p.device_id + "': active slot " +
                            std::to_string(s) + " outside [1, L]");
        }
      }
    }
  }
  generation_order(config);
}

EventDataset generate(const GeneratorConfig& config) {
  validate_config(config);
  const auto order = generation_order(config);
  const int slots = config.slots_per_event;
  const std::size_t row = static_cast<std::size_t>(slots);
  const std::size_t events = static_cast<std::size_t>(config.num_events);

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t n = 0; n < config.profiles.size(); ++n) {
    index.emplace(config.profiles[n].device_id, n);
  }
  std::vector<std::vector<std::uint8_t>> bits(
      config.profiles.size(), std::vector<std::uint8_t>(events * row, 0));

  const auto seed_lo = static_cast<std::uint32_t>(config.seed);
  const auto seed_hi = static_cast<std::uint32_t>(config.seed >> 32);
  for (std::size_t e = 0; e < events; ++e) {
    std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(e),
                      static_cast<std::uint32_t>(std::uint64_t{e} >> 32)};
    std::mt19937_64 rng(seq);
    for (const std::size_t n : order) {
      const auto& profile = config.profiles[n];
      std::uint8_t* out = bits[n].data() + e * row;
      if (!profile.coupling) {
        for (const int s : profile.active_slots) {
          out[s - 1] = uniform01(rng) < profile.per_slot_activity_prob;
        }
        continue;
      }
      const auto& c = *profile.coupling;
      if (!(uniform01(rng) < c.trigger_prob)) continue;
      const std::uint8_t* src = bits[index.at(c.source_id)].data() + e * row;
      for (std::size_t s = 0; s + c.shift < row; ++s) {
        out[s + c.shift] = src[s];
      }
    }
  }

  std::vector<ActivityTrace> traces;
  traces.reserve(config.profiles.size());
  for (std::size_t n = 0; n < config.profiles.size(); ++n) {
    traces.emplace_back(config.profiles[n].device_id, slots,
                        std::move(bits[n]));
  }
  return EventDataset(std::move(traces));
}

GeneratorConfig paper_scenario_config(int num_events, std::uint64_t seed,
                                      double activity_prob) {
  if (num_events < 1) throw ConfigError("num_events must be >= 1");
  GeneratorConfig config;
  config.slots_per_event = 12;
  config.num_events = num_events;
  config.seed = seed;
  config.profiles = {
      {"X", {1, 2, 3, 4, 7, 8, 9}, activity_prob, std::nullopt},
      {"Y", {4, 5, 6, 8, 9, 10, 11}, activity_prob, std::nullopt},
      {"Z", {}, 1.0, Coupling{"X", 3, 0.8}},
      {"T", {}, 1.0, Coupling{"X", 2, 0.2}},
  };
  return config;
}

}  // namespace mtcdi
