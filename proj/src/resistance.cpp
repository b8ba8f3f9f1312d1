#include "modec/resistance.hpp"

#include <string>

namespace modec {

ResistanceTable ResistanceTable::default_table() {
  return ResistanceTable({0.0, 1.0, 3.0, 4.0, 5.0});
}

ResistanceTable ResistanceTable::constant_table(double value) {
  if (value < 0.0) throw ConfigError("resistance values must be nonnegative");
  return ResistanceTable({0.0, value});
}

ResistanceTable ResistanceTable::from_entries(
    const std::vector<std::pair<int, double>>& entries, int cap_depth,
    double zero_depth_value) {
  if (cap_depth < 1) throw ConfigError("cap_depth must be at least 1");
  if (zero_depth_value < 0.0)
    throw ConfigError("resistance values must be nonnegative");
  std::vector<double> by_depth(static_cast<std::size_t>(cap_depth) + 1, -1.0);
  by_depth[0] = zero_depth_value;
  for (const auto& [depth, value] : entries) {
    if (depth < 1 || depth > cap_depth)
      throw ConfigError("resistance entry depth " + std::to_string(depth) +
                        " outside [1, cap_depth]");
    if (by_depth[static_cast<std::size_t>(depth)] >= 0.0)
      throw ConfigError("duplicate resistance entry for depth " +
                        std::to_string(depth));
    if (value < 0.0) throw ConfigError("resistance values must be nonnegative");
    by_depth[static_cast<std::size_t>(depth)] = value;
  }
  for (int d = 1; d <= cap_depth; ++d)
    if (by_depth[static_cast<std::size_t>(d)] < 0.0)
      throw ConfigError("missing resistance entry for depth " +
                        std::to_string(d));
  return ResistanceTable(std::move(by_depth));
}

bool ResistanceTable::monotone_nondecreasing() const {
  for (std::size_t d = 1; d < by_depth_.size(); ++d)
    if (by_depth_[d] < by_depth_[d - 1]) return false;
  return true;
}

void DecoderConfig::validate() const {
  if (alpha < 0.0) throw ConfigError("alpha must be nonnegative");
  if (top_k < 1) throw ConfigError("top_k must be positive");
  if (max_steps < 1) throw ConfigError("max_steps must be positive");
  if (beam_width < 1) throw ConfigError("beam_width must be positive");
  if (!(nucleus_p > 0.0 && nucleus_p <= 1.0))
    throw ConfigError("nucleus_p must be in (0, 1]");
  if (!(cs_alpha >= 0.0 && cs_alpha <= 1.0))
    throw ConfigError("cs_alpha must be in [0, 1]");
}

}  // namespace modec
