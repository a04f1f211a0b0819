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
#include <cmath>
#include <numeric>
#include <random>

#include "mtcdi/datagen.hpp"
#include "mtcdi/error.hpp"
#include "mtcdi/prob.hpp"
#include "oracle/brute_force.hpp"

namespace mtcdi {
namespace {

EventDataset random_dataset(std::mt19937_64& rng, int devices, int events,
                            int slots) {
  std::vector<ActivityTrace> traces;
  std::bernoulli_distribution coin(0.4);
  for (int d = 0; d < devices; ++d) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(events) * slots);
    for (auto& b : bits) b = coin(rng);
    traces.emplace_back("D" + std::to_string(d), slots, std::move(bits));
  }
  return EventDataset(std::move(traces));
}

TEST(EstimateJoint, FourEventsOneOfEachOutcome) {
  const EventDataset ds({ActivityTrace::from_rows("X", {{0}, {0}, {1}, {1}}),
                         ActivityTrace::from_rows("Y", {{0}, {1}, {0}, {1}})});
  const std::vector<VariableSelector> sel = {{"X", 1}, {"Y", 1}};
  const auto dist = estimate_joint(ds, sel);
  EXPECT_EQ(dist.arity(), 2);
  EXPECT_EQ(dist.support_count(), 4);
  for (const double p : dist.probs()) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(EstimateJoint, BitJIsSelectorJ) {
  const EventDataset ds({ActivityTrace::from_rows("X", {{1, 0}}),
                         ActivityTrace::from_rows("Y", {{0, 0}})});
  const std::vector<VariableSelector> sel = {{"Y", 2}, {"X", 1}};
  const auto dist = estimate_joint(ds, sel);
  EXPECT_EQ(dist[0b10], 1.0);
}

TEST(EstimateJoint, AllZeroIsPointMass) {
  const EventDataset ds({ActivityTrace("A", 3, std::vector<std::uint8_t>(30, 0))});
  const std::vector<VariableSelector> sel = {{"A", 2}};
  const auto dist = estimate_joint(ds, sel);
  EXPECT_EQ(dist[0], 1.0);
  EXPECT_EQ(dist[1], 0.0);
}

TEST(EstimateJoint, PaperScenarioSlotOneMarginal) {
  const auto ds = generate(paper_scenario_config(10000, 7));
  const std::vector<VariableSelector> sel = {{"X", 1}};
  const auto dist = estimate_joint(ds, sel);
  const auto counts = oracle::count_outcomes({&ds.device("X")}, {1});
  EXPECT_DOUBLE_EQ(dist[1], static_cast<double>(counts[1]) / 10000);
  EXPECT_NEAR(dist[1], 0.5, 0.02);
}

TEST(EstimateJoint, Errors) {
  const EventDataset ds({ActivityTrace("A", 3, std::vector<std::uint8_t>(6, 0))});
  EXPECT_THROW(estimate_joint(ds, std::span<const VariableSelector>{}), InvalidArgument);
  const std::vector<VariableSelector> bad_slot = {{"A", 4}};
  EXPECT_THROW(estimate_joint(ds, bad_slot), InvalidArgument);
  const std::vector<VariableSelector> zero_slot = {{"A", 0}};
  EXPECT_THROW(estimate_joint(ds, zero_slot), InvalidArgument);
  const std::vector<VariableSelector> bad_dev = {{"B", 1}};
  EXPECT_THROW(estimate_joint(ds, bad_dev), InvalidArgument);
  const std::vector<VariableSelector> seven(7, {"A", 1});
  EXPECT_THROW(estimate_joint(ds, seven), InvalidArgument);
  const std::vector<VariableSelector> ok = {{"A", 1}};
  EXPECT_THROW(estimate_joint(ds, ok, -1.0), InvalidArgument);
}

TEST(EstimateJoint, SmoothingAddsAlphaToEveryCount) {
  const EventDataset ds({ActivityTrace::from_rows("X", {{1}, {1}, {1}})});
  const std::vector<VariableSelector> sel = {{"X", 1}};
  const auto dist = estimate_joint(ds, sel, 1.0);
  EXPECT_DOUBLE_EQ(dist[0], 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(dist[1], 4.0 / 5.0);
}

TEST(EstimateJoint, MatchesIndependentCounter) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto ds = random_dataset(rng, 3, 137, 5);
    const int arity = 1 + static_cast<int>(rng() % 6);
    std::vector<VariableSelector> sel;
    std::vector<const ActivityTrace*> traces;
    std::vector<int> slots;
    for (int j = 0; j < arity; ++j) {
      const auto d = rng() % 3;
      const int s = 1 + static_cast<int>(rng() % 5);
      sel.push_back({"D" + std::to_string(d), s});
      traces.push_back(&ds.devices()[d]);
      slots.push_back(s);
    }
    const auto dist = estimate_joint(ds, sel);
    const auto counts = oracle::count_outcomes(traces, slots);
    for (std::size_t m = 0; m < counts.size(); ++m) {
      EXPECT_DOUBLE_EQ(dist[m], static_cast<double>(counts[m]) / 137);
      // Plug-in estimates are multiples of 1/E.
      const double scaled = dist[m] * 137;
      EXPECT_NEAR(scaled, std::round(scaled), 1e-9);
    }
  }
}

TEST(Marginalize, UniformAndPointMass) {
  const JointDistribution uniform(2, {0.25, 0.25, 0.25, 0.25});
  const std::array<int, 1> keep0 = {0};
  const auto m = marginalize(uniform, keep0);
  EXPECT_DOUBLE_EQ(m[0], 0.5);
  EXPECT_DOUBLE_EQ(m[1], 0.5);

  const JointDistribution point(2, {0.0, 0.0, 0.0, 1.0});
  const std::array<int, 1> keep1 = {1};
  const auto p = marginalize(point, keep1);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);
}

TEST(Marginalize, Errors) {
  const JointDistribution d(2, {0.25, 0.25, 0.25, 0.25});
  EXPECT_THROW(marginalize(d, std::span<const int>{}), InvalidArgument);
  const std::array<int, 2> dup = {1, 1};
  EXPECT_THROW(marginalize(d, dup), InvalidArgument);
  const std::array<int, 1> out = {2};
  EXPECT_THROW(marginalize(d, out), InvalidArgument);
}

TEST(Marginalize, AgreesWithDirectEstimation) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 50; ++round) {
    const auto ds = random_dataset(rng, 2, 211, 6);
    const int arity = 2 + static_cast<int>(rng() % 5);
    std::vector<VariableSelector> sel;
    for (int j = 0; j < arity; ++j) {
      sel.push_back({"D" + std::to_string(rng() % 2), 1 + static_cast<int>(rng() % 6)});
    }
    const auto full = estimate_joint(ds, sel);

    std::vector<int> keep(static_cast<std::size_t>(arity));
    std::iota(keep.begin(), keep.end(), 0);
    std::shuffle(keep.begin(), keep.end(), rng);
    keep.resize(1 + rng() % static_cast<unsigned>(arity));

    std::vector<VariableSelector> sub;
    for (const int k : keep) sub.push_back(sel[static_cast<std::size_t>(k)]);
    const auto direct = estimate_joint(ds, sub);
    const auto reduced = marginalize(full, keep);
    ASSERT_EQ(reduced.size(), direct.size());
    for (std::size_t m = 0; m < direct.size(); ++m) {
      EXPECT_NEAR(reduced[m], direct[m], 1e-12);
    }
  }
}

TEST(EstimateJoint, PermutingSelectorsPermutesOutcomeBits) {
  std::mt19937_64 rng(23);
  const auto ds = random_dataset(rng, 3, 300, 4);
  const std::vector<VariableSelector> sel = {{"D0", 1}, {"D1", 2}, {"D2", 3}, {"D0", 4}};
  const std::array<int, 4> perm = {2, 0, 3, 1};
  std::vector<VariableSelector> permuted;
  for (const int p : perm) permuted.push_back(sel[static_cast<std::size_t>(p)]);
  const auto a = estimate_joint(ds, sel);
  const auto b = estimate_joint(ds, permuted);
  for (std::size_t m = 0; m < 16; ++m) {
    std::size_t mapped = 0;
    for (int r = 0; r < 4; ++r) mapped |= ((m >> perm[static_cast<std::size_t>(r)]) & 1u) << r;
    EXPECT_EQ(a[m], b[mapped]);
  }
}

}  // namespace
}  // namespace mtcdi
