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

#include "mtcdi/model_io.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"
#include "mtcdi/error.hpp"

namespace mtcdi {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw DataError("malformed model: " + what);
}

json score_to_json(const DeviceScore& s) {
  return {{"true_positives", s.true_positives},
          {"false_positives", s.false_positives},
          {"false_negatives", s.false_negatives},
          {"precision", s.precision},
          {"recall", s.recall},
          {"f1", s.f1},
          {"precision_undefined", s.precision_undefined},
          {"recall_undefined", s.recall_undefined}};
}

}  // namespace

std::string save_model(const PredictorModel& model) {
  json doc;
  doc["version"] = kModelSchemaVersion;
  doc["slots_per_event"] = model.slots_per_event;
  doc["threshold_bits"] = model.threshold_bits;
  json sets = json::object();
  for (const auto& [id, set] : model.causality_sets) {
    json entries = json::array();
    for (const auto& e : set.entries) {
      entries.push_back(
          {{"target", e.target_id}, {"k", e.slot}, {"i", e.lag}, {"di_bits", e.di_bits}});
    }
    sets[id] = std::move(entries);
  }
  doc["causality_sets"] = std::move(sets);

  json meta;
  meta["training_events"] = model.metadata.training_events;
  meta["dataset_hash"] = model.metadata.dataset_hash;
  meta["smoothing_alpha"] = model.metadata.smoothing_alpha;
  if (model.metadata.generator_seed) {
    meta["generator_seed"] = *model.metadata.generator_seed;
  }
  if (model.metadata.generator) meta["generator"] = *model.metadata.generator;
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

PredictorModel load_model(std::string_view payload) {
  json doc;
  try {
    doc = json::parse(payload);
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level is not an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    malformed("missing integer 'version'");
  }
  if (const int v = doc["version"].get<int>(); v != kModelSchemaVersion) {
    throw DataError("unsupported model version " + std::to_string(v) +
                    " (reader supports " +
                    std::to_string(kModelSchemaVersion) + ")");
  }

  PredictorModel model;
  try {
    model.slots_per_event = doc.at("slots_per_event").get<int>();
    model.threshold_bits = doc.at("threshold_bits").get<double>();
    const auto& meta = doc.at("metadata");
    model.metadata.training_events = meta.at("training_events").get<std::int64_t>();
    model.metadata.dataset_hash = meta.at("dataset_hash").get<std::string>();
    model.metadata.smoothing_alpha = meta.at("smoothing_alpha").get<double>();
    if (meta.contains("generator_seed")) {
      model.metadata.generator_seed = meta["generator_seed"].get<std::uint64_t>();
    }
    if (meta.contains("generator")) {
      model.metadata.generator = meta["generator"].get<std::string>();
    }
    const auto& sets = doc.at("causality_sets");
    if (!sets.is_object()) malformed("'causality_sets' is not an object");
    for (const auto& [id, entries] : sets.items()) {
      CausalitySet set{id, {}};
      for (const auto& e : entries) {
        set.entries.push_back({e.at("target").get<std::string>(),
                               e.at("k").get<int>(), e.at("i").get<int>(),
                               e.at("di_bits").get<double>()});
      }
      model.causality_sets.emplace(id, std::move(set));
    }
  } catch (const json::exception& e) {
    malformed(e.what());
  }

  if (model.slots_per_event < 2) malformed("slots_per_event < 2");
  if (!(model.threshold_bits >= 0.0)) malformed("negative threshold");
  for (auto& [id, set] : model.causality_sets) {
    for (const auto& e : set.entries) {
      if (e.target_id == id || !model.causality_sets.contains(e.target_id)) {
        malformed("entry of '" + id + "' targets unknown device '" +
                  e.target_id + "'");
      }
      if (e.slot < 1 || e.slot > model.slots_per_event - 1 || e.lag < 0 ||
          e.lag > model.slots_per_event - e.slot - 1) {
        malformed("entry (k=" + std::to_string(e.slot) +
                  ", i=" + std::to_string(e.lag) + ") out of range");
      }
      if (!(e.di_bits > model.threshold_bits && e.di_bits <= 2.0)) {
        malformed("entry DI outside (threshold, 2]");
      }
    }
    set.sort_entries();
  }
  return model;
}

std::string predictions_to_json(std::string_view trigger, int slot,
                                std::span<const Prediction> predictions) {
  json doc;
  doc["trigger"] = std::string(trigger);
  doc["slot"] = slot;
  json list = json::array();
  for (const auto& p : predictions) {
    list.push_back({{"target", p.target_id},
                    {"predicted_slot", p.predicted_slot},
                    {"di_bits", p.confidence},
                    {"normalized_confidence", p.normalized_confidence},
                    {"source_slot", p.source_slot},
                    {"lag", p.lag}});
  }
  doc["predictions"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string evaluation_to_json(const EvaluationReport& report) {
  json doc;
  json devices = json::object();
  for (const auto& [id, s] : report.per_device) devices[id] = score_to_json(s);
  doc["per_device"] = std::move(devices);
  doc["overall"] = score_to_json(report.overall);
  doc["events_scored"] = report.events_scored;
  doc["events_without_trigger"] = report.events_without_trigger;
  doc["slot_hits"] = report.slot_hits;
  doc["slot_misses"] = report.slot_misses;
  doc["mean_confidence_true_positive"] = report.mean_confidence_true_positive;
  doc["mean_confidence_false_positive"] = report.mean_confidence_false_positive;
  doc["confidence_floor"] = report.confidence_floor;
  return doc.dump(2) + "\n";
}

}  // namespace mtcdi
