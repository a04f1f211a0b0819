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

#ifndef MTCDI_MODEL_IO_HPP_
#define MTCDI_MODEL_IO_HPP_

// Model file, version 1:
//
//   {
//     "causality_sets": { "<source>": [ {"di_bits": .., "i": .., "k": ..,
//                                        "target": ".."}, ... ], ... },
//     "metadata": { "dataset_hash": "..", "generator": "..",
//                   "generator_seed": .., "smoothing_alpha": ..,
//                   "training_events": .. },
//     "slots_per_event": L,
//     "threshold_bits": eps,
//     "version": 1
//   }
//
// Keys are sorted; each array is in causality order. generator and
// generator_seed are omitted when the data was not synthetic.

#include <span>
#include <string>
#include <string_view>

#include "mtcdi/predictor.hpp"

namespace mtcdi {

inline constexpr int kModelSchemaVersion = 1;

std::string save_model(const PredictorModel& model);

// Throws DataError("malformed model: ...") for unparsable or structurally
// invalid payloads and DataError("unsupported model version ...") for a
// version other than 1.
PredictorModel load_model(std::string_view payload);

std::string predictions_to_json(std::string_view trigger, int slot,
                                std::span<const Prediction> predictions);

std::string evaluation_to_json(const EvaluationReport& report);

}  // namespace mtcdi

#endif  // MTCDI_MODEL_IO_HPP_
