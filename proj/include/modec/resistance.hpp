#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "modec/types.hpp"

namespace modec {

// =============================================================================
// Depth-to-resistance lookup.
//
// Depth 0 means the candidate is novel and always maps to the zero-depth
// value (0 by default), so a penalty term of alpha * resistance(depth)
// vanishes exactly for novel tokens. Depths at or beyond cap_depth share the
// final value.
// =============================================================================

class ResistanceTable {
 public:
  // 1 -> 1.0, 2 -> 3.0, 3 -> 4.0, >= 4 -> 5.0.
  static ResistanceTable default_table();

  // Every depth >= 1 maps to `value`; value 0 removes the penalty entirely.
  static ResistanceTable constant_table(double value);

  // Entries list (depth, value) pairs covering 1..cap_depth exactly once.
  static ResistanceTable from_entries(
      const std::vector<std::pair<int, double>>& entries, int cap_depth,
      double zero_depth_value = 0.0);

  double operator()(std::uint32_t depth) const {
    if (depth >= by_depth_.size()) return by_depth_.back();
    return by_depth_[depth];
  }

  int cap_depth() const { return static_cast<int>(by_depth_.size()) - 1; }
  bool monotone_nondecreasing() const;

  // Values indexed by depth, [0] being the zero-depth value.
  const std::vector<double>& values() const { return by_depth_; }

  bool operator==(const ResistanceTable&) const = default;

 private:
  explicit ResistanceTable(std::vector<double> by_depth)
      : by_depth_(std::move(by_depth)) {}

  std::vector<double> by_depth_;
};

// Knobs shared by the decoding strategies. Strategies read only the fields
// they use; validate() checks every field so one config can drive any of
// them.
struct DecoderConfig {
  double alpha = 0.2;      // re-entry penalty weight
  int top_k = 5;           // candidate-set size for penalized and sampled steps
  int max_steps = 256;     // hard cap on emitted tokens
  int beam_width = 4;
  double nucleus_p = 0.95;  // smallest-mass cutoff, in (0, 1]
  double cs_alpha = 0.6;    // degeneration-penalty weight, in [0, 1]
  std::uint64_t seed = 0;
  ResistanceTable resistance = ResistanceTable::default_table();

  void validate() const;  // throws ConfigError
};

}  // namespace modec
