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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "mtcdi/datagen.hpp"
#include "mtcdi/di.hpp"
#include "mtcdi/error.hpp"
#include "mtcdi/predictor.hpp"

namespace mtcdi {
namespace {

// Every pattern of X over slots 1..L-1 (slot L silent), `copies` times;
// Y is X delayed by one slot. Plug-in estimates on it are exact.
EventDataset delayed_copy_fixture(int slots, int copies) {
  std::vector<std::vector<int>> xs, ys;
  const int free_slots = slots - 1;
  for (int c = 0; c < copies; ++c) {
    for (int pattern = 0; pattern < (1 << free_slots); ++pattern) {
      std::vector<int> x(static_cast<std::size_t>(slots), 0), y(x);
      for (int s = 0; s < free_slots; ++s) x[static_cast<std::size_t>(s)] = (pattern >> s) & 1;
      for (int s = 1; s < slots; ++s) y[static_cast<std::size_t>(s)] = x[static_cast<std::size_t>(s - 1)];
      xs.push_back(x);
      ys.push_back(y);
    }
  }
  return EventDataset({ActivityTrace::from_rows("X", xs), ActivityTrace::from_rows("Y", ys)});
}

EventDataset independent_pair(int events, std::uint64_t seed) {
  GeneratorConfig config;
  config.slots_per_event = 12;
  config.num_events = events;
  config.seed = seed;
  std::set<int> all;
  for (int s = 1; s <= 12; ++s) all.insert(s);
  config.profiles = {{"A", all, 0.5, std::nullopt}, {"B", all, 0.5, std::nullopt}};
  return generate(config);
}

std::size_t entry_count(const PredictorModel& m) {
  std::size_t n = 0;
  for (const auto& [id, set] : m.causality_sets) n += set.entries.size();
  return n;
}

TEST(Train, PaperScenarioFindsCoupledDevices) {
  const auto model = train(generate(paper_scenario_config(10000, 7)), {});
  const auto& x = model.causality_sets.at("X").entries;
  double z_max = 0.0, t_max = 0.0;
  bool z_lag3 = false, t_lag2 = false;
  for (const auto& e : x) {
    EXPECT_GT(e.di_bits, 0.05);
    if (e.target_id == "Z") {
      z_max = std::max(z_max, e.di_bits);
      z_lag3 = z_lag3 || e.lag == 3;
    }
    if (e.target_id == "T") {
      t_max = std::max(t_max, e.di_bits);
      t_lag2 = t_lag2 || e.lag == 2;
    }
  }
  EXPECT_TRUE(z_lag3);
  EXPECT_TRUE(t_lag2);
  EXPECT_GT(z_max, t_max);
  EXPECT_TRUE(std::is_sorted(x.begin(), x.end(), causality_order));
  EXPECT_EQ(model.metadata.training_events, 10000);
  EXPECT_EQ(model.metadata.dataset_hash.size(), 16u);
}

TEST(Train, IndependentDevicesLearnNothing) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto model = train(independent_pair(10000, seed), {});
    EXPECT_EQ(entry_count(model), 0u) << "seed " << seed;
  }
}

TEST(Train, ThresholdAtMaximumEmptiesEverything) {
  const auto model = train(delayed_copy_fixture(4, 8), {.threshold_bits = 2.0});
  EXPECT_EQ(entry_count(model), 0u);
  EXPECT_EQ(model.causality_sets.size(), 2u);
}

TEST(Train, ThresholdsGiveNestedSets) {
  const auto ds = generate(paper_scenario_config(2000, 13));
  using Key = std::tuple<std::string, std::string, int, int>;
  std::set<Key> previous;
  bool first = true;
  for (const double eps : {0.0, 0.01, 0.05, 0.2, 1.0}) {
    const auto model = train(ds, {.threshold_bits = eps});
    std::set<Key> keys;
    for (const auto& [src, set] : model.causality_sets) {
      for (const auto& e : set.entries) keys.insert({src, e.target_id, e.slot, e.lag});
    }
    if (!first) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), keys.begin(), keys.end()));
    }
    previous = std::move(keys);
    first = false;
  }
}

TEST(Train, ThreadCountDoesNotChangeTheModel) {
  const auto ds = generate(paper_scenario_config(1000, 21));
  std::vector<DiMatrix> one, many;
  const auto a = train(ds, {.threads = 1}, &one);
  const auto b = train(ds, {.threads = 7}, &many);
  EXPECT_EQ(a, b);
  ASSERT_EQ(one.size(), 12u);
  for (std::size_t n = 0; n < one.size(); ++n) {
    EXPECT_EQ(one[n].source_id(), many[n].source_id());
    EXPECT_TRUE(std::equal(one[n].cells().begin(), one[n].cells().end(), many[n].cells().begin()));
  }
}

TEST(Train, Errors) {
  const auto ds = generate(paper_scenario_config(20, 1));
  EXPECT_THROW(train(ds, {}), DataError);
  EXPECT_NO_THROW(train(ds, {.allow_few_events = true}));
  EXPECT_NO_THROW(train(ds, {.min_events = 10}));
  EXPECT_THROW(train(ds, {.threshold_bits = -0.1, .allow_few_events = true}), InvalidArgument);
}

TEST(Predict, PaperScenarioTriggerAtSlotThree) {
  const auto model = train(generate(paper_scenario_config(10000, 7)), {});
  const auto preds = predict(model, "X", 3);
  ASSERT_FALSE(preds.empty());
  const auto first_of = [&](const std::string& id) {
    return std::find_if(preds.begin(), preds.end(),
                        [&](const Prediction& p) { return p.target_id == id; });
  };
  ASSERT_NE(first_of("Z"), preds.end());
  ASSERT_NE(first_of("T"), preds.end());
  EXPECT_LT(first_of("Z"), first_of("T"));
  // Y is generated independently of X, so no window clears the threshold.
  EXPECT_EQ(first_of("Y"), preds.end());
  for (const auto& p : preds) {
    EXPECT_EQ(p.source_slot, 3);
    EXPECT_EQ(p.predicted_slot, 3 + p.lag);
    EXPECT_LE(p.predicted_slot, 12);
    EXPECT_DOUBLE_EQ(p.normalized_confidence, p.confidence / 2.0);
  }
  EXPECT_TRUE(std::is_sorted(preds.begin(), preds.end(),
                             [](const Prediction& a, const Prediction& b) {
                               return a.confidence > b.confidence;
                             }));
}

TEST(Predict, FallsBackToNearestEarlierSlot) {
  PredictorModel model;
  model.slots_per_event = 8;
  model.causality_sets["A"] = {"A", {{"B", 2, 1, 0.9}, {"B", 4, 2, 0.7}, {"C", 4, 0, 0.7}}};
  model.causality_sets["B"] = {"B", {}};
  model.causality_sets["C"] = {"C", {}};
  model.causality_sets["A"].sort_entries();

  EXPECT_TRUE(predict(model, "A", 1).empty());
  const auto at2 = predict(model, "A", 3);
  ASSERT_EQ(at2.size(), 1u);
  EXPECT_EQ(at2[0].predicted_slot, 3);
  const auto at4 = predict(model, "A", 8);
  ASSERT_EQ(at4.size(), 2u);
  EXPECT_EQ(at4[0].target_id, "C");  // equal DI: smaller lag first
  EXPECT_EQ(at4[1].target_id, "B");
  EXPECT_EQ(at4[1].predicted_slot, 6);
  EXPECT_TRUE(predict(model, "B", 4).empty());

  EXPECT_THROW(predict(model, "Q", 1), InvalidArgument);
  EXPECT_THROW(predict(model, "A", 0), InvalidArgument);
  EXPECT_THROW(predict(model, "A", 9), InvalidArgument);
}

TEST(Predict, DelayedCopyHasFullConfidence) {
  const auto model = train(delayed_copy_fixture(5, 4), {});
  for (int slot = 1; slot <= 3; ++slot) {
    const auto preds = predict(model, "X", slot);
    ASSERT_FALSE(preds.empty());
    EXPECT_EQ(preds[0].target_id, "Y");
    EXPECT_EQ(preds[0].predicted_slot, slot + 1);
    EXPECT_NEAR(preds[0].normalized_confidence, 1.0, 1e-12);
  }
}

TEST(Evaluate, DelayedCopyIsPerfect) {
  const auto ds = delayed_copy_fixture(5, 4);
  const auto report = evaluate(train(ds, {}), ds, 0.5);
  const auto& y = report.per_device.at("Y");
  EXPECT_EQ(y.precision, 1.0);
  EXPECT_EQ(y.recall, 1.0);
  EXPECT_EQ(y.f1, 1.0);
  EXPECT_FALSE(y.precision_undefined);
  EXPECT_EQ(report.events_without_trigger, 4);  // the all-zero pattern
}

TEST(Evaluate, IndependentDevicesMakeNoPredictions) {
  const auto ds = independent_pair(2000, 3);
  const auto report = evaluate(train(ds, {}), independent_pair(500, 4), 0.5);
  for (const auto& [id, s] : report.per_device) {
    EXPECT_TRUE(s.precision_undefined);
    EXPECT_EQ(s.precision, 1.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.true_positives + s.false_positives, 0);
  }
  EXPECT_EQ(report.slot_hits + report.slot_misses, 0);
}

TEST(Evaluate, DeterministicCouplingIsRecalledFully) {
  GeneratorConfig config;
  config.slots_per_event = 8;
  config.num_events = 3000;
  config.seed = 12;
  config.profiles = {{"S", {2}, 0.5, std::nullopt}, {"C", {}, 1.0, Coupling{"S", 3, 1.0}}};
  const auto model = train(generate(config), {});
  config.seed = 13;
  const auto report = evaluate(model, generate(config), 0.0);
  EXPECT_EQ(report.per_device.at("C").recall, 1.0);
  EXPECT_EQ(report.per_device.at("C").precision, 1.0);
}

TEST(Evaluate, SchemaMismatch) {
  const auto model = train(generate(paper_scenario_config(100, 1)), {});
  auto other = paper_scenario_config(50, 2);
  other.slots_per_event = 13;
  EXPECT_THROW(evaluate(model, generate(other), 0.0), DataError);
  EXPECT_THROW(evaluate(model, independent_pair(50, 1), 0.0), DataError);
}

}  // namespace
}  // namespace mtcdi
