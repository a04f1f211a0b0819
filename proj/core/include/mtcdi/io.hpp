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

#ifndef MTCDI_IO_HPP_
#define MTCDI_IO_HPP_

// File formats for datasets, generator profiles and DI matrices.
//
// Dataset CSV (UTF-8, LF):
//   event_id,device_id,slot_1,...,slot_L
//   0,T,0,0,1,...
// one row per (event, device), sorted by event_id then device_id, bits as
// 0/1. event_id is 0-based.
//
// DI matrix CSV: header `k,i,di_bits`, one row per cell in (k, i) order.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mtcdi/datagen.hpp"
#include "mtcdi/types.hpp"

namespace mtcdi {

void write_dataset_csv(std::ostream& out, const EventDataset& dataset);
std::string dataset_to_csv(const EventDataset& dataset);

// Throws DataError naming the offending line for malformed input.
EventDataset read_dataset_csv(std::istream& in);
EventDataset parse_dataset_csv(std::string_view text);

void save_dataset_csv(const std::filesystem::path& path,
                      const EventDataset& dataset);
EventDataset load_dataset_csv(const std::filesystem::path& path);

// Profiles file: a JSON object with the GeneratorConfig keys
// (slots_per_event, num_events, seed, profiles[]). Each profile has
// device_id and either active_slots + per_slot_activity_prob or
// coupling {source_id, shift, trigger_prob}. Missing num_events/seed default
// to 1/0. Throws ConfigError.
GeneratorConfig parse_generator_config(std::string_view json_text);
std::string generator_config_to_json(const GeneratorConfig& config);

// Sidecar written next to a generated dataset.
std::string dataset_metadata_json(const GeneratorConfig& config);

void write_di_matrix_csv(std::ostream& out, const DiMatrix& matrix);
std::string di_matrix_to_csv(const DiMatrix& matrix);

// Binary PGM with one block per cell: rows are lags i, columns slots k,
// brightness DI / 2. Cells outside the scan are black.
std::string di_matrix_to_pgm(const DiMatrix& matrix, int cell_pixels = 16);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace mtcdi

#endif  // MTCDI_IO_HPP_
