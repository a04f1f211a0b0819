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

#include "mtcdi/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mtcdi/error.hpp"

namespace mtcdi {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw DataError("line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T json_get(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string("missing key '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_dataset_csv(std::ostream& out, const EventDataset& dataset) {
  const int slots = dataset.slots_per_event();
  out << "event_id,device_id";
  for (int s = 1; s <= slots; ++s) out << ",slot_" << s;
  out << '\n';

  auto ids = dataset.device_ids();
  std::sort(ids.begin(), ids.end());
  std::vector<const ActivityTrace*> traces;
  for (const auto& id : ids) traces.push_back(&dataset.device(id));

  std::string line;
  for (int e = 0; e < dataset.num_events(); ++e) {
    for (std::size_t d = 0; d < ids.size(); ++d) {
      line.clear();
      line += std::to_string(e);
      line += ',';
      line += ids[d];
      for (const auto b : traces[d]->event_row(e)) {
        line += ',';
        line += static_cast<char>('0' + b);
      }
      line += '\n';
      out << line;
    }
  }
}

std::string dataset_to_csv(const EventDataset& dataset) {
  std::ostringstream out;
  write_dataset_csv(out, dataset);
  return out.str();
}

EventDataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw DataError("line 1: empty dataset file");
  const auto header = split_commas(line);
  if (header.size() < 3 || header[0] != "event_id" || header[1] != "device_id") {
    fail_line(line_no, "expected header 'event_id,device_id,slot_1,...'");
  }
  const int slots = static_cast<int>(header.size()) - 2;
  for (int s = 1; s <= slots; ++s) {
    if (header[static_cast<std::size_t>(s) + 1] != "slot_" + std::to_string(s)) {
      fail_line(line_no, "header column " + std::to_string(s + 2) +
                             " should be slot_" + std::to_string(s));
    }
  }

  // device -> event -> row
  std::map<std::string, std::map<long, std::vector<std::uint8_t>>, std::less<>>
      rows;
  long max_event = -1;
  while (next_line()) {
    if (line.empty()) continue;
    const auto cols = split_commas(line);
    if (cols.size() != header.size()) {
      fail_line(line_no, "expected " + std::to_string(header.size()) +
                             " columns, got " + std::to_string(cols.size()));
    }
    long event = -1;
    const auto [ptr, ec] =
        std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), event);
    if (ec != std::errc{} || ptr != cols[0].data() + cols[0].size() ||
        event < 0) {
      fail_line(line_no, "bad event_id '" + std::string(cols[0]) + "'");
    }
    if (cols[1].empty()) fail_line(line_no, "empty device_id");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(slots));
    for (int s = 0; s < slots; ++s) {
      const auto cell = cols[static_cast<std::size_t>(s) + 2];
      if (cell != "0" && cell != "1") {
        fail_line(line_no, "non-binary entry '" + std::string(cell) +
                               "' at slot " + std::to_string(s + 1));
      }
      bits[static_cast<std::size_t>(s)] = cell == "1";
    }
    auto& by_event = rows[std::string(cols[1])];
    if (!by_event.emplace(event, std::move(bits)).second) {
      fail_line(line_no, "duplicate row for event " + std::to_string(event) +
                             ", device " + std::string(cols[1]));
    }
    max_event = std::max(max_event, event);
  }
  if (rows.empty()) throw DataError("dataset file has no rows");

  const long events = max_event + 1;
  std::vector<ActivityTrace> traces;
  for (auto& [id, by_event] : rows) {
    if (static_cast<long>(by_event.size()) != events) {
      throw DataError("event count mismatch: device '" + id + "' has " +
                      std::to_string(by_event.size()) + " of " +
                      std::to_string(events) + " events");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(events) * slots);
    for (auto& [e, row] : by_event) bits.insert(bits.end(), row.begin(), row.end());
    traces.emplace_back(id, slots, std::move(bits));
  }
  return EventDataset(std::move(traces));
}

EventDataset parse_dataset_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dataset_csv(in);
}

void save_dataset_csv(const std::filesystem::path& path,
                      const EventDataset& dataset) {
  write_text_file(path, dataset_to_csv(dataset));
}

EventDataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset '" + path.string() + "'");
  return read_dataset_csv(in);
}

GeneratorConfig parse_generator_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed profiles file: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("profiles file must be an object");

  GeneratorConfig config;
  config.slots_per_event = json_get<int>(doc, "slots_per_event");
  config.num_events = doc.contains("num_events") ? json_get<int>(doc, "num_events") : 1;
  config.seed = doc.contains("seed") ? json_get<std::uint64_t>(doc, "seed") : 0;
  if (!doc.contains("profiles") || !doc["profiles"].is_array()) {
    throw ConfigError("missing 'profiles' array");
  }
  for (const auto& p : doc["profiles"]) {
    DeviceProfile profile;
    profile.device_id = json_get<std::string>(p, "device_id");
    if (p.contains("coupling") && !p["coupling"].is_null()) {
      const auto& c = p["coupling"];
      profile.coupling = Coupling{json_get<std::string>(c, "source_id"),
                                  json_get<int>(c, "shift"),
                                  json_get<double>(c, "trigger_prob")};
      profile.per_slot_activity_prob = 1.0;
    } else {
      const auto slots = json_get<std::vector<int>>(p, "active_slots");
      profile.active_slots.insert(slots.begin(), slots.end());
      profile.per_slot_activity_prob =
          json_get<double>(p, "per_slot_activity_prob");
    }
    config.profiles.push_back(std::move(profile));
  }
  validate_config(config);
  return config;
}

namespace {

json config_to_json(const GeneratorConfig& config) {
  json doc;
  doc["slots_per_event"] = config.slots_per_event;
  doc["num_events"] = config.num_events;
  doc["seed"] = config.seed;
  doc["profiles"] = json::array();
  for (const auto& p : config.profiles) {
    json jp;
    jp["device_id"] = p.device_id;
    if (p.coupling) {
      jp["coupling"] = {{"source_id", p.coupling->source_id},
                        {"shift", p.coupling->shift},
                        {"trigger_prob", p.coupling->trigger_prob}};
    } else {
      jp["active_slots"] =
          std::vector<int>(p.active_slots.begin(), p.active_slots.end());
      jp["per_slot_activity_prob"] = p.per_slot_activity_prob;
    }
    doc["profiles"].push_back(std::move(jp));
  }
  return doc;
}

}  // namespace

std::string generator_config_to_json(const GeneratorConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

std::string dataset_metadata_json(const GeneratorConfig& config) {
  json doc;
  doc["generator"] = std::string(kGeneratorName);
  doc["seed"] = config.seed;
  doc["config"] = config_to_json(config);
  return doc.dump(2) + "\n";
}

void write_di_matrix_csv(std::ostream& out, const DiMatrix& matrix) {
  out << "k,i,di_bits\n";
  for (const auto& c : matrix.cells()) {
    out << c.slot << ',' << c.lag << ',' << format_double(c.di_bits) << '\n';
  }
}

std::string di_matrix_to_csv(const DiMatrix& matrix) {
  std::ostringstream out;
  write_di_matrix_csv(out, matrix);
  return out.str();
}

std::string di_matrix_to_pgm(const DiMatrix& matrix, int cell_pixels) {
  const int slots = matrix.slots_per_event();
  const int cols = slots - 1;  // k = 1..L-1
  const int rows = slots - 1;  // i = 0..L-2
  const int width = cols * cell_pixels;
  const int height = rows * cell_pixels;
  std::string img = "P5\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  const std::size_t header = img.size();
  img.resize(header + static_cast<std::size_t>(width) * height, '\0');
  for (const auto& c : matrix.cells()) {
    const auto level = static_cast<unsigned char>(
        std::clamp(c.di_bits / DiMatrix::kMaxBits, 0.0, 1.0) * 255.0 + 0.5);
    for (int y = 0; y < cell_pixels; ++y) {
      const std::size_t row_start =
          header + static_cast<std::size_t>(c.lag * cell_pixels + y) * width;
      for (int x = 0; x < cell_pixels; ++x) {
        img[row_start + static_cast<std::size_t>((c.slot - 1) * cell_pixels + x)] =
            static_cast<char>(level);
      }
    }
  }
  return img;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mtcdi
