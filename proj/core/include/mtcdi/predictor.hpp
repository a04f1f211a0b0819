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

#ifndef MTCDI_PREDICTOR_HPP_
#define MTCDI_PREDICTOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtcdi/types.hpp"

namespace mtcdi {

struct ModelMetadata {
  std::int64_t training_events = 0;
  std::string dataset_hash;  // fnv1a64 hex, see dataset_fingerprint()
  double smoothing_alpha = 0.0;
  std::optional<std::uint64_t> generator_seed;
  std::optional<std::string> generator;

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

// Learned causality sets, keyed by source device. Every device seen at
// training time has a key, even when its set is empty.
struct PredictorModel {
  int slots_per_event = 0;
  double threshold_bits = 0.0;
  std::map<std::string, CausalitySet, std::less<>> causality_sets;
  ModelMetadata metadata;

  std::vector<std::string> device_ids() const;

  friend bool operator==(const PredictorModel&,
                         const PredictorModel&) = default;
};

inline constexpr double kDefaultThresholdBits = 0.05;
inline constexpr int kDefaultMinEvents = 50;

struct TrainOptions {
  double threshold_bits = kDefaultThresholdBits;
  double smoothing_alpha = 0.0;
  int min_events = kDefaultMinEvents;
  bool allow_few_events = false;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::optional<std::uint64_t> generator_seed;
  std::optional<std::string> generator;
};

// Order-independent 64-bit FNV-1a over device ids, L, E and bits, hex encoded.
std::string dataset_fingerprint(const EventDataset& dataset);

// Scans every ordered device pair and keeps the windows whose DI exceeds the
// threshold. `matrices`, when given, receives the M(M-1) matrices ordered by
// (source, target) id.
//
// Throws DataError for fewer than min_events events (unless allowed) and
// InvalidArgument for a negative threshold or L < 2.
PredictorModel train(const EventDataset& dataset, const TrainOptions& options,
                     std::vector<DiMatrix>* matrices = nullptr);

// Predictions for a trigger at `slot`, using the causality entries recorded
// at that slot, or at the nearest earlier slot that has any. Sorted by
// descending confidence in causality order. Throws InvalidArgument for an
// unknown device or a slot outside [1, L].
std::vector<Prediction> predict(const PredictorModel& model,
                                std::string_view trigger_device, int slot);

struct DeviceScore {
  std::int64_t true_positives = 0;
  std::int64_t false_positives = 0;
  std::int64_t false_negatives = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 0.0;
  bool precision_undefined = true;  // no predictions: reported as 1.0
  bool recall_undefined = true;     // no realized activity: reported as 1.0

  friend bool operator==(const DeviceScore&, const DeviceScore&) = default;
};

// Event-level scoring of predicted active-device sets. For every holdout
// event the earliest requesting device (ties by id) is the trigger; a target
// counts as predicted when any of its predictions clears the confidence
// floor, and as realized when it sends any request in the event.
struct EvaluationReport {
  std::map<std::string, DeviceScore, std::less<>> per_device;
  DeviceScore overall;  // micro-averaged over devices
  std::int64_t events_scored = 0;
  std::int64_t events_without_trigger = 0;
  // Slot-level view of the individual (target, slot) predictions.
  std::int64_t slot_hits = 0;
  std::int64_t slot_misses = 0;
  double mean_confidence_true_positive = 0.0;   // normalized, slot level
  double mean_confidence_false_positive = 0.0;  // normalized, slot level
  double confidence_floor = 0.0;

  friend bool operator==(const EvaluationReport&,
                         const EvaluationReport&) = default;
};

// Throws DataError when the holdout's L or device set differs from the
// model's ("schema mismatch").
EvaluationReport evaluate(const PredictorModel& model,
                          const EventDataset& holdout,
                          double confidence_floor);

}  // namespace mtcdi

#endif  // MTCDI_PREDICTOR_HPP_
