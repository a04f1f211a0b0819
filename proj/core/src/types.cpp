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

#include "mtcdi/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "mtcdi/error.hpp"

namespace mtcdi {

ActivityTrace::ActivityTrace(std::string device_id, int slots_per_event,
                             std::vector<std::uint8_t> bits)
    : device_id_(std::move(device_id)),
      slots_per_event_(slots_per_event),
      bits_(std::move(bits)) {
  if (slots_per_event_ < 1) {
    throw InvalidArgument("trace '" + device_id_ +
                          "': slots_per_event must be positive");
  }
  if (bits_.empty() || bits_.size() % slots_per_event_ != 0) {
    throw InvalidArgument("trace '" + device_id_ + "': " +
                          std::to_string(bits_.size()) +
                          " bits is not a positive multiple of L = " +
                          std::to_string(slots_per_event_));
  }
  num_events_ = static_cast<int>(bits_.size() / slots_per_event_);
  for (std::size_t n = 0; n < bits_.size(); ++n) {
    if (bits_[n] > 1) {
      throw InvalidArgument(
          "trace '" + device_id_ + "': non-binary entry at event " +
          std::to_string(n / slots_per_event_) + ", slot " +
          std::to_string(n % slots_per_event_ + 1));
    }
  }
}

ActivityTrace ActivityTrace::from_rows(
    std::string device_id, const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) {
    throw InvalidArgument("trace '" + device_id + "' has no events");
  }
  const std::size_t width = rows.front().size();
  std::vector<std::uint8_t> bits;
  bits.reserve(rows.size() * width);
  for (std::size_t e = 0; e < rows.size(); ++e) {
    if (rows[e].size() != width) {
      throw InvalidArgument("trace '" + device_id + "': event " +
                            std::to_string(e) + " has " +
                            std::to_string(rows[e].size()) +
                            " slots, expected " + std::to_string(width));
    }
    for (std::size_t s = 0; s < width; ++s) {
      const int v = rows[e][s];
      if (v != 0 && v != 1) {
        throw InvalidArgument("trace '" + device_id +
                              "': non-binary entry at event " +
                              std::to_string(e) + ", slot " +
                              std::to_string(s + 1));
      }
      bits.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return ActivityTrace(std::move(device_id), static_cast<int>(width),
                       std::move(bits));
}

std::optional<int> ActivityTrace::first_request(int event) const {
  const auto row = event_row(event);
  const auto it = std::find(row.begin(), row.end(), std::uint8_t{1});
  if (it == row.end()) return std::nullopt;
  return static_cast<int>(it - row.begin()) + 1;
}

EventDataset::EventDataset(std::vector<ActivityTrace> devices)
    : devices_(std::move(devices)) {
  if (devices_.empty()) throw DataError("dataset has no devices");
  slots_per_event_ = devices_.front().slots_per_event();
  num_events_ = devices_.front().num_events();
  std::set<std::string, std::less<>> seen;
  for (const auto& trace : devices_) {
    if (!seen.insert(trace.device_id()).second) {
      throw DataError("duplicate device id '" + trace.device_id() + "'");
    }
    if (trace.num_events() != num_events_) {
      throw DataError("event count mismatch: device '" + trace.device_id() +
                      "' has " + std::to_string(trace.num_events()) +
                      " events, expected " + std::to_string(num_events_));
    }
    if (trace.slots_per_event() != slots_per_event_) {
      throw DataError("slot count mismatch: device '" + trace.device_id() +
                      "' has L = " + std::to_string(trace.slots_per_event()) +
                      ", expected " + std::to_string(slots_per_event_));
    }
  }
}

std::optional<std::size_t> EventDataset::index_of(
    std::string_view device_id) const {
  for (std::size_t n = 0; n < devices_.size(); ++n) {
    if (devices_[n].device_id() == device_id) return n;
  }
  return std::nullopt;
}

const ActivityTrace& EventDataset::device(std::string_view device_id) const {
  const auto idx = index_of(device_id);
  if (!idx) {
    throw InvalidArgument("unknown device '" + std::string(device_id) + "'");
  }
  return devices_[*idx];
}

std::vector<std::string> EventDataset::device_ids() const {
  std::vector<std::string> ids;
  ids.reserve(devices_.size());
  for (const auto& d : devices_) ids.push_back(d.device_id());
  return ids;
}

std::vector<Violation> validate_dataset(const RawDataset& raw) {
  std::vector<Violation> out;
  if (raw.traces.empty()) {
    out.push_back({Violation::Kind::kEmptyDataset, "dataset has no devices"});
    return out;
  }
  const std::size_t events = raw.traces.front().events.size();
  const std::size_t width = raw.traces.front().events.empty()
                                ? 0
                                : raw.traces.front().events.front().size();
  std::set<std::string, std::less<>> seen;
  for (const auto& trace : raw.traces) {
    const std::string& id = trace.device_id;
    if (!seen.insert(id).second) {
      out.push_back({Violation::Kind::kDuplicateId,
                     "duplicate device id '" + id + "'"});
    }
    if (trace.events.size() != events) {
      out.push_back({Violation::Kind::kEventCountMismatch,
                     "event count mismatch: device '" + id + "' has " +
                         std::to_string(trace.events.size()) +
                         " events, expected " + std::to_string(events)});
    }
    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      const auto& row = trace.events[e];
      if (row.size() != width || width == 0) {
        out.push_back({Violation::Kind::kRaggedRow,
                       "ragged row: device '" + id + "' event " +
                           std::to_string(e) + " has " +
                           std::to_string(row.size()) + " slots, expected " +
                           std::to_string(width)});
      }
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (row[s] != 0 && row[s] != 1) {
          out.push_back({Violation::Kind::kNonBinaryEntry,
                         "non-binary entry at (" + id + ", " +
                             std::to_string(e) + ", " +
                             std::to_string(s + 1) + ")"});
        }
      }
    }
  }
  if (events == 0) {
    out.push_back({Violation::Kind::kEmptyDataset, "dataset has no events"});
  }
  return out;
}

std::vector<Violation> validate_dataset(const EventDataset& dataset) {
  RawDataset raw;
  for (const auto& trace : dataset.devices()) {
    RawTrace rt{trace.device_id(), {}};
    for (int e = 0; e < trace.num_events(); ++e) {
      const auto row = trace.event_row(e);
      rt.events.emplace_back(row.begin(), row.end());
    }
    raw.traces.push_back(std::move(rt));
  }
  return validate_dataset(raw);
}

EventDataset to_dataset(const RawDataset& raw) {
  const auto violations = validate_dataset(raw);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid dataset (" << violations.size() << " violations)";
    for (const auto& v : violations) msg << "\n  " << v.message;
    throw DataError(msg.str());
  }
  std::vector<ActivityTrace> traces;
  traces.reserve(raw.traces.size());
  for (const auto& t : raw.traces) {
    traces.push_back(ActivityTrace::from_rows(t.device_id, t.events));
  }
  return EventDataset(std::move(traces));
}

RawDataset pad_events(const RawDataset& raw) {
  std::size_t longest = 0;
  for (const auto& t : raw.traces) {
    for (const auto& row : t.events) longest = std::max(longest, row.size());
  }
  RawDataset out = raw;
  for (auto& t : out.traces) {
    for (auto& row : t.events) row.resize(longest, 0);
  }
  return out;
}

RawDataset align_to_trigger(const RawDataset& raw) {
  std::size_t events = 0;
  for (const auto& t : raw.traces) events = std::max(events, t.events.size());
  RawDataset out = raw;
  for (std::size_t e = 0; e < events; ++e) {
    std::optional<std::size_t> trigger;
    for (const auto& t : raw.traces) {
      if (e >= t.events.size()) continue;
      const auto& row = t.events[e];
      const auto it = std::find_if(row.begin(), row.end(),
                                   [](int v) { return v != 0; });
      if (it == row.end()) continue;
      const auto pos = static_cast<std::size_t>(it - row.begin());
      trigger = trigger ? std::min(*trigger, pos) : pos;
    }
    if (!trigger || *trigger == 0) continue;
    for (auto& t : out.traces) {
      if (e >= t.events.size()) continue;
      auto& row = t.events[e];
      row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(
                                               std::min(*trigger, row.size())));
    }
  }
  return pad_events(out);
}

JointDistribution::JointDistribution(int arity, std::vector<double> probs,
                                     std::int64_t support_count)
    : arity_(arity), probs_(std::move(probs)), support_count_(support_count) {
  if (arity_ < 1 || arity_ > kMaxArity) {
    throw InvalidArgument("joint arity " + std::to_string(arity_) +
                          " outside [1, 6]");
  }
  if (probs_.size() != (std::size_t{1} << arity_)) {
    throw InvalidArgument("joint table of arity " + std::to_string(arity_) +
                          " needs " + std::to_string(1u << arity_) +
                          " entries, got " + std::to_string(probs_.size()));
  }
  double total = 0.0;
  for (double& p : probs_) {
    // Summing float masses can overshoot 1 by an ulp.
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
      throw InvalidArgument("probability outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", not 1";
    throw InvalidArgument(msg.str());
  }
}

std::size_t DiMatrix::cell_count(int slots_per_event) {
  const auto l = static_cast<std::size_t>(slots_per_event);
  return l * (l - 1) / 2;
}

std::size_t DiMatrix::cell_index(int slots_per_event, int slot, int lag) {
  // Rows k' < k contribute L - k' cells each.
  const auto l = static_cast<std::size_t>(slots_per_event);
  const auto k = static_cast<std::size_t>(slot);
  const std::size_t before = (k - 1) * l - (k - 1) * k / 2;
  return before + static_cast<std::size_t>(lag);
}

DiMatrix::DiMatrix(std::string source_id, std::string target_id,
                   int slots_per_event, std::vector<DiCell> cells)
    : source_id_(std::move(source_id)),
      target_id_(std::move(target_id)),
      slots_per_event_(slots_per_event),
      cells_(std::move(cells)) {
  if (slots_per_event_ < 2) {
    throw InvalidArgument("DI matrix needs L >= 2");
  }
  if (cells_.size() != cell_count(slots_per_event_)) {
    throw InvalidArgument("DI matrix for L = " +
                          std::to_string(slots_per_event_) + " needs " +
                          std::to_string(cell_count(slots_per_event_)) +
                          " cells, got " + std::to_string(cells_.size()));
  }
  std::size_t n = 0;
  for (int k = 1; k <= slots_per_event_ - 1; ++k) {
    for (int i = 0; i <= slots_per_event_ - k - 1; ++i, ++n) {
      DiCell& c = cells_[n];
      if (c.slot != k || c.lag != i) {
        throw InvalidArgument("DI matrix cell " + std::to_string(n) +
                              " has key (" + std::to_string(c.slot) + ", " +
                              std::to_string(c.lag) + "), expected (" +
                              std::to_string(k) + ", " + std::to_string(i) +
                              ")");
      }
      if (!(c.di_bits >= -kRangeTolerance &&
            c.di_bits <= kMaxBits + kRangeTolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "DI " << c.di_bits << " at (k=" << k << ", i=" << i << ") for "
            << source_id_ << "->" << target_id_ << " outside [0, 2]";
        throw InvariantError(msg.str());
      }
      c.di_bits = std::clamp(c.di_bits, 0.0, kMaxBits);
    }
  }
}

const DiCell& DiMatrix::cell(int slot, int lag) const {
  if (slot < 1 || slot > slots_per_event_ - 1 || lag < 0 ||
      lag > slots_per_event_ - slot - 1) {
    throw InvalidArgument("DI key (k=" + std::to_string(slot) +
                          ", i=" + std::to_string(lag) +
                          ") outside scan bounds for L = " +
                          std::to_string(slots_per_event_));
  }
  return cells_[cell_index(slots_per_event_, slot, lag)];
}

double DiMatrix::max() const { return argmax().di_bits; }

double DiMatrix::sum() const {
  double total = 0.0;
  for (const auto& c : cells_) total += c.di_bits;
  return total;
}

const DiCell& DiMatrix::argmax() const {
  return *std::max_element(
      cells_.begin(), cells_.end(),
      [](const DiCell& a, const DiCell& b) { return a.di_bits < b.di_bits; });
}

bool causality_order(const CausalityEntry& a, const CausalityEntry& b) {
  if (a.di_bits != b.di_bits) return a.di_bits > b.di_bits;
  return std::tie(a.lag, a.target_id, a.slot) <
         std::tie(b.lag, b.target_id, b.slot);
}

void CausalitySet::sort_entries() {
  std::sort(entries.begin(), entries.end(), causality_order);
}

}  // namespace mtcdi
