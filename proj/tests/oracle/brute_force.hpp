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

#ifndef MTCDI_TESTS_ORACLE_BRUTE_FORCE_HPP_
#define MTCDI_TESTS_ORACLE_BRUTE_FORCE_HPP_

// Test-only reference computations. Nothing here calls the library's
// entropy, marginalization or DI code; tables are plain vectors.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mtcdi/types.hpp"

namespace mtcdi::oracle {

inline double plain_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (const double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

// Entropy of the variables in `vars` (bitmask) under `table`.
inline double subset_entropy(const std::vector<double>& table, unsigned vars) {
  std::map<unsigned, double> mass;
  for (unsigned m = 0; m < table.size(); ++m) mass[m & vars] += table[m];
  std::vector<double> probs;
  for (const auto& [k, p] : mass) probs.push_back(p);
  return plain_entropy(probs);
}

// I(X^N -> Y^N) = H(Y^N) - sum_t H(Y_t | Y^{t-1}, X^t), with variables
// 0..N-1 = X_1..X_N and N..2N-1 = Y_1..Y_N.
inline double chain_rule_di(const std::vector<double>& table, int n) {
  unsigned y_all = 0;
  for (int t = 0; t < n; ++t) y_all |= 1u << (n + t);
  double causal = 0.0;
  unsigned x_past = 0;
  unsigned y_prev = 0;
  for (int t = 0; t < n; ++t) {
    x_past |= 1u << t;
    const unsigned given = x_past | y_prev;
    causal += subset_entropy(table, given | (1u << (n + t))) -
              subset_entropy(table, given);
    y_prev |= 1u << (n + t);
  }
  return subset_entropy(table, y_all) - causal;
}

// Flat Dirichlet(1, ..., 1) draw over 2^arity outcomes.
inline std::vector<double> dirichlet_table(std::mt19937_64& rng, int arity,
                                           double concentration = 1.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> t(std::size_t{1} << arity);
  double total = 0.0;
  for (auto& v : t) total += (v = gamma(rng));
  for (auto& v : t) v /= total;
  return t;
}

// Counts events where every (trace, slot) pair matches the outcome bits.
inline std::vector<std::int64_t> count_outcomes(
    const std::vector<const ActivityTrace*>& traces,
    const std::vector<int>& slots) {
  std::vector<std::int64_t> counts(std::size_t{1} << traces.size(), 0);
  const int events = traces.front()->num_events();
  for (int e = 0; e < events; ++e) {
    std::size_t outcome = 0;
    for (std::size_t j = 0; j < traces.size(); ++j) {
      const auto row = traces[j]->event_row(e);
      if (row[static_cast<std::size_t>(slots[j] - 1)] == 1) outcome += std::size_t{1} << j;
    }
    ++counts[outcome];
  }
  return counts;
}

// Product of two independent tables: low bits from `a`, high bits from `b`.
inline std::vector<double> product_table(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  std::vector<double> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + a.size() * j] = a[i] * b[j];
  }
  return out;
}

}  // namespace mtcdi::oracle

#endif  // MTCDI_TESTS_ORACLE_BRUTE_FORCE_HPP_
