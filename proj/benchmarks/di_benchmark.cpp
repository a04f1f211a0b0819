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

#include <benchmark/benchmark.h>

#include <string>

#include "mtcdi/datagen.hpp"
#include "mtcdi/di.hpp"
#include "mtcdi/predictor.hpp"

namespace {

using namespace mtcdi;

GeneratorConfig chain_config(int devices, int slots, int events) {
  GeneratorConfig config;
  config.slots_per_event = slots;
  config.num_events = events;
  config.seed = 1;
  std::set<int> all;
  for (int s = 1; s <= slots; ++s) all.insert(s);
  for (int d = 0; d < devices; ++d) {
    const auto id = "D" + std::to_string(d);
    if (d % 2 == 1) {
      config.profiles.push_back({id, {}, 0.5, Coupling{"D" + std::to_string(d - 1), 1, 0.6}});
    } else {
      config.profiles.push_back({id, all, 0.3, std::nullopt});
    }
  }
  return config;
}

void BM_PairwiseDi(benchmark::State& state) {
  const auto ds = generate(chain_config(2, 12, static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pairwise_di(ds, "D0", "D1", 3, 1, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PairwiseDi)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_DiMatrix(benchmark::State& state) {
  const auto ds = generate(chain_config(2, static_cast<int>(state.range(0)), 10000));
  for (auto _ : state) benchmark::DoNotOptimize(di_matrix(ds, "D0", "D1"));
  state.counters["cells"] =
      static_cast<double>(DiMatrix::cell_count(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DiMatrix)->Arg(4)->Arg(8)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_Train(benchmark::State& state) {
  const auto ds = generate(chain_config(static_cast<int>(state.range(0)), 12, 10000));
  for (auto _ : state) benchmark::DoNotOptimize(train(ds, {.threads = 1}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Train)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond)->Complexity(
    benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
