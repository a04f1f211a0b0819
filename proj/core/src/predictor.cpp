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

#include "mtcdi/predictor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "mtcdi/di.hpp"
#include "mtcdi/error.hpp"

namespace mtcdi {
namespace {

class Fnv1a64 {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
      hash_ ^= p[k];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      const auto byte = static_cast<unsigned char>(v >> (8 * b));
      bytes(&byte, 1);
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void finalize(DeviceScore& s) {
  s.precision_undefined = s.true_positives + s.false_positives == 0;
  s.recall_undefined = s.true_positives + s.false_negatives == 0;
  s.precision = s.precision_undefined
                    ? 1.0
                    : static_cast<double>(s.true_positives) /
                          static_cast<double>(s.true_positives +
                                              s.false_positives);
  s.recall = s.recall_undefined
                 ? 1.0
                 : static_cast<double>(s.true_positives) /
                       static_cast<double>(s.true_positives +
                                           s.false_negatives);
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
}

}  // namespace

std::vector<std::string> PredictorModel::device_ids() const {
  std::vector<std::string> ids;
  ids.reserve(causality_sets.size());
  for (const auto& [id, set] : causality_sets) ids.push_back(id);
  return ids;
}

std::string dataset_fingerprint(const EventDataset& dataset) {
  auto ids = dataset.device_ids();
  std::sort(ids.begin(), ids.end());
  Fnv1a64 h;
  h.u64(static_cast<std::uint64_t>(dataset.slots_per_event()));
  h.u64(static_cast<std::uint64_t>(dataset.num_events()));
  for (const auto& id : ids) {
    h.u64(id.size());
    h.bytes(id.data(), id.size());
    const auto bits = dataset.device(id).bits();
    h.bytes(bits.data(), bits.size());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h.value()));
  return buf;
}

PredictorModel train(const EventDataset& dataset, const TrainOptions& options,
                     std::vector<DiMatrix>* matrices) {
  if (!(options.threshold_bits >= 0.0)) {
    throw InvalidArgument("threshold must be >= 0");
  }
  if (dataset.slots_per_event() < 2) {
    throw InvalidArgument("training needs L >= 2");
  }
  if (dataset.num_events() < options.min_events && !options.allow_few_events) {
    throw DataError("insufficient events: " +
                    std::to_string(dataset.num_events()) + " < " +
                    std::to_string(options.min_events));
  }

  auto ids = dataset.device_ids();
  std::sort(ids.begin(), ids.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < ids.size(); ++s) {
    for (std::size_t t = 0; t < ids.size(); ++t) {
      if (s != t) pairs.emplace_back(s, t);
    }
  }

  // Each worker fills its own slots, so the result is independent of the
  // thread count.
  std::vector<std::optional<DiMatrix>> results(pairs.size());
  const DiOptions di_options{.smoothing_alpha = options.smoothing_alpha};
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t n = next.fetch_add(1); n < pairs.size();
         n = next.fetch_add(1)) {
      results[n] = di_matrix(dataset, ids[pairs[n].first],
                             ids[pairs[n].second], di_options);
    }
  };
  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(pairs.size(), 1));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        try {
          work();
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next.store(pairs.size());
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  PredictorModel model;
  model.slots_per_event = dataset.slots_per_event();
  model.threshold_bits = options.threshold_bits;
  model.metadata.training_events = dataset.num_events();
  model.metadata.dataset_hash = dataset_fingerprint(dataset);
  model.metadata.smoothing_alpha = options.smoothing_alpha;
  model.metadata.generator_seed = options.generator_seed;
  model.metadata.generator = options.generator;
  for (const auto& id : ids) model.causality_sets[id].source_id = id;

  for (auto& m : results) {
    auto& set = model.causality_sets[m->source_id()];
    for (const auto& c : m->cells()) {
      if (c.di_bits > options.threshold_bits) {
        set.entries.push_back({m->target_id(), c.slot, c.lag, c.di_bits});
      }
    }
  }
  for (auto& [id, set] : model.causality_sets) set.sort_entries();

  if (matrices) {
    matrices->clear();
    matrices->reserve(results.size());
    for (auto& m : results) matrices->push_back(std::move(*m));
  }
  return model;
}

std::vector<Prediction> predict(const PredictorModel& model,
                                std::string_view trigger_device, int slot) {
  const auto it = model.causality_sets.find(trigger_device);
  if (it == model.causality_sets.end()) {
    throw InvalidArgument("unknown trigger device '" +
                          std::string(trigger_device) + "'");
  }
  if (slot < 1 || slot > model.slots_per_event) {
    throw InvalidArgument("trigger slot " + std::to_string(slot) +
                          " outside [1, " +
                          std::to_string(model.slots_per_event) + "]");
  }
  const auto& entries = it->second.entries;

  int matched = 0;
  for (const auto& e : entries) {
    if (e.slot <= slot) matched = std::max(matched, e.slot);
  }
  std::vector<Prediction> out;
  if (matched == 0) return out;
  for (const auto& e : entries) {
    if (e.slot != matched) continue;
    out.push_back({e.target_id, e.slot + e.lag, e.di_bits, e.di_bits / 2.0,
                   e.slot, e.lag});
  }
  // entries are already in causality order, and filtering keeps it.
  return out;
}

EvaluationReport evaluate(const PredictorModel& model,
                          const EventDataset& holdout,
                          double confidence_floor) {
  if (holdout.slots_per_event() != model.slots_per_event) {
    throw DataError("schema mismatch: holdout has L = " +
                    std::to_string(holdout.slots_per_event()) +
                    ", model has L = " +
                    std::to_string(model.slots_per_event));
  }
  auto ids = holdout.device_ids();
  std::sort(ids.begin(), ids.end());
  if (ids != model.device_ids()) {
    throw DataError("schema mismatch: holdout devices differ from model");
  }

  EvaluationReport report;
  report.confidence_floor = confidence_floor;
  for (const auto& id : ids) report.per_device[id];

  std::vector<const ActivityTrace*> traces;
  for (const auto& id : ids) traces.push_back(&holdout.device(id));

  double tp_conf = 0.0;
  double fp_conf = 0.0;
  for (int e = 0; e < holdout.num_events(); ++e) {
    std::optional<std::size_t> trigger;
    int trigger_slot = 0;
    for (std::size_t d = 0; d < traces.size(); ++d) {
      const auto first = traces[d]->first_request(e);
      if (first && (!trigger || *first < trigger_slot)) {
        trigger = d;
        trigger_slot = *first;
      }
    }
    if (!trigger) {
      ++report.events_without_trigger;
      continue;
    }
    ++report.events_scored;

    std::vector<bool> predicted(traces.size(), false);
    for (const auto& p : predict(model, ids[*trigger], trigger_slot)) {
      if (p.normalized_confidence < confidence_floor) continue;
      const std::size_t d = static_cast<std::size_t>(
          std::lower_bound(ids.begin(), ids.end(), p.target_id) - ids.begin());
      predicted[d] = true;
      if (traces[d]->bit(e, p.predicted_slot)) {
        ++report.slot_hits;
        tp_conf += p.normalized_confidence;
      } else {
        ++report.slot_misses;
        fp_conf += p.normalized_confidence;
      }
    }
    for (std::size_t d = 0; d < traces.size(); ++d) {
      if (d == *trigger) continue;
      const bool realized = traces[d]->first_request(e).has_value();
      auto& score = report.per_device[ids[d]];
      if (predicted[d] && realized) ++score.true_positives;
      if (predicted[d] && !realized) ++score.false_positives;
      if (!predicted[d] && realized) ++score.false_negatives;
    }
  }

  for (auto& [id, score] : report.per_device) {
    finalize(score);
    report.overall.true_positives += score.true_positives;
    report.overall.false_positives += score.false_positives;
    report.overall.false_negatives += score.false_negatives;
  }
  finalize(report.overall);
  if (report.slot_hits > 0) {
    report.mean_confidence_true_positive =
        tp_conf / static_cast<double>(report.slot_hits);
  }
  if (report.slot_misses > 0) {
    report.mean_confidence_false_positive =
        fp_conf / static_cast<double>(report.slot_misses);
  }
  return report;
}

}  // namespace mtcdi
