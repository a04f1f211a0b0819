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

#ifndef MTCDI_TYPES_HPP_
#define MTCDI_TYPES_HPP_

// Domain model for event-aligned binary transmission histories.
//
// Conventions used across the library:
//   * slots are 1-based, 1..L, matching how scheduling-request positions are
//     described inside an event;
//   * events are 0-based, 0..E-1;
//   * a 1 bit means the device sent a scheduling request in that slot.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtcdi {

// One device's history: E events x L slots of request indicators.
class ActivityTrace {
 public:
  // `bits` is row-major, one row of `slots_per_event` entries per event.
  // Throws InvalidArgument on non-binary entries or a size that is not a
  // positive multiple of `slots_per_event`.
  ActivityTrace(std::string device_id, int slots_per_event,
                std::vector<std::uint8_t> bits);

  static ActivityTrace from_rows(std::string device_id,
                                 const std::vector<std::vector<int>>& rows);

  const std::string& device_id() const { return device_id_; }
  int slots_per_event() const { return slots_per_event_; }
  int num_events() const { return num_events_; }

  bool bit(int event, int slot) const {
    return bits_[static_cast<std::size_t>(event) * slots_per_event_ +
                 static_cast<std::size_t>(slot - 1)] != 0;
  }
  std::span<const std::uint8_t> event_row(int event) const {
    return {bits_.data() + static_cast<std::size_t>(event) * slots_per_event_,
            static_cast<std::size_t>(slots_per_event_)};
  }
  std::span<const std::uint8_t> bits() const { return bits_; }

  // First slot holding a 1 in `event`, if any.
  std::optional<int> first_request(int event) const;

  friend bool operator==(const ActivityTrace&, const ActivityTrace&) = default;

 private:
  std::string device_id_;
  int slots_per_event_ = 0;
  int num_events_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Aligned traces for M devices sharing event indexing and length L.
class EventDataset {
 public:
  // Throws DataError when the traces disagree on L or E, ids repeat, or the
  // list is empty.
  explicit EventDataset(std::vector<ActivityTrace> devices);

  int slots_per_event() const { return slots_per_event_; }
  int num_events() const { return num_events_; }
  std::size_t num_devices() const { return devices_.size(); }
  std::span<const ActivityTrace> devices() const { return devices_; }

  std::optional<std::size_t> index_of(std::string_view device_id) const;
  // Throws InvalidArgument for an unknown id.
  const ActivityTrace& device(std::string_view device_id) const;

  std::vector<std::string> device_ids() const;

  friend bool operator==(const EventDataset&, const EventDataset&) = default;

 private:
  std::vector<ActivityTrace> devices_;
  int slots_per_event_ = 0;
  int num_events_ = 0;
};

// Unchecked input, as read from an external source before alignment.
// Rows may be ragged and entries may be anything; validate_dataset reports
// what is wrong with it.
struct RawTrace {
  std::string device_id;
  std::vector<std::vector<int>> events;
};

struct RawDataset {
  std::vector<RawTrace> traces;
};

struct Violation {
  enum class Kind {
    kEmptyDataset,
    kDuplicateId,
    kEventCountMismatch,
    kRaggedRow,
    kNonBinaryEntry,
  };
  Kind kind;
  std::string message;
};

std::vector<Violation> validate_dataset(const RawDataset& raw);
std::vector<Violation> validate_dataset(const EventDataset& dataset);

// Throws DataError carrying every violation when `raw` is invalid.
EventDataset to_dataset(const RawDataset& raw);

// Right-pads every event row with zeros to the longest row in the dataset.
// Existing prefixes are left untouched.
RawDataset pad_events(const RawDataset& raw);

// Shifts each event so that slot 1 is the earliest request among all
// devices for that event, then pads to the longest resulting event.
// Events with no request anywhere are left as they are.
RawDataset align_to_trigger(const RawDataset& raw);

// Probability table over n <= 6 binary variables. Bit j of the outcome index
// holds the value of variable j.
class JointDistribution {
 public:
  static constexpr int kMaxArity = 6;

  // Throws InvalidArgument unless 1 <= arity <= 6, probs has 2^arity
  // entries in [0, 1] and they sum to 1 within 1e-12.
  JointDistribution(int arity, std::vector<double> probs,
                    std::int64_t support_count = 0);

  int arity() const { return arity_; }
  std::size_t size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t outcome) const { return probs_[outcome]; }
  std::int64_t support_count() const { return support_count_; }

  friend bool operator==(const JointDistribution&,
                         const JointDistribution&) = default;

 private:
  int arity_ = 0;
  std::vector<double> probs_;
  std::int64_t support_count_ = 0;
};

// One (slot k, lag i) cell of a DI matrix. `raw_di_bits` keeps the value
// before clamping to [0, 2].
struct DiCell {
  int slot = 0;
  int lag = 0;
  double di_bits = 0.0;
  double raw_di_bits = 0.0;

  friend bool operator==(const DiCell&, const DiCell&) = default;
};

// DI from a source to a target device for every 1 <= k <= L-1 and
// 0 <= i <= L-k-1, stored in (k, i) lexicographic order.
class DiMatrix {
 public:
  static constexpr double kRangeTolerance = 1e-9;
  static constexpr double kMaxBits = 2.0;

  // Cells must cover every (k, i) key exactly once, in order. Values outside
  // [-1e-9, 2 + 1e-9] raise InvariantError; the rest are clamped to [0, 2].
  DiMatrix(std::string source_id, std::string target_id, int slots_per_event,
           std::vector<DiCell> cells);

  static std::size_t cell_count(int slots_per_event);
  static std::size_t cell_index(int slots_per_event, int slot, int lag);

  const std::string& source_id() const { return source_id_; }
  const std::string& target_id() const { return target_id_; }
  int slots_per_event() const { return slots_per_event_; }
  std::span<const DiCell> cells() const { return cells_; }

  // Throws InvalidArgument for keys outside the scan bounds.
  const DiCell& cell(int slot, int lag) const;
  double at(int slot, int lag) const { return cell(slot, lag).di_bits; }

  double max() const;
  double sum() const;
  // Largest cell; ties go to the earliest (k, i).
  const DiCell& argmax() const;

 private:
  std::string source_id_;
  std::string target_id_;
  int slots_per_event_ = 0;
  std::vector<DiCell> cells_;
};

struct CausalityEntry {
  std::string target_id;
  int slot = 0;
  int lag = 0;
  double di_bits = 0.0;

  friend bool operator==(const CausalityEntry&,
                         const CausalityEntry&) = default;
};

// Descending DI; ties by smaller lag, then target id, then slot.
bool causality_order(const CausalityEntry& a, const CausalityEntry& b);

// What a source device is learned to cause: every (target, k, i) whose DI
// cleared the model threshold.
struct CausalitySet {
  std::string source_id;
  std::vector<CausalityEntry> entries;

  void sort_entries();

  friend bool operator==(const CausalitySet&, const CausalitySet&) = default;
};

struct Prediction {
  std::string target_id;
  int predicted_slot = 0;
  double confidence = 0.0;             // DI in bits
  double normalized_confidence = 0.0;  // DI / 2
  int source_slot = 0;
  int lag = 0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

}  // namespace mtcdi

#endif  // MTCDI_TYPES_HPP_
