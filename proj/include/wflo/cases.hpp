#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wflo/layout.hpp"
#include "wflo/scenario.hpp"

namespace wflo {

/// The nine study cases: farm size and candidate pitch (as a multiple of the
/// 40 m rotor diameter) crossed with the three wind conditions.
///   I   2 km x 2 km, 5D pitch (~100 candidates)
///   II  2 km x 2 km, 2D pitch (~625 candidates)
///   III 6 km x 6 km, 5D pitch (~900 candidates)
/// A = unidirectional uniform, B = omnidirectional uniform, C = spread rose.
struct CasePreset {
  std::string_view id;
  Extent extent;
  double spacing;       // candidate pitch / minimum distance, meters
  char wind_condition;  // 'A', 'B', or 'C'
};

inline const std::array<CasePreset, 9>& case_presets() {
  static const std::array<CasePreset, 9> presets{{
      {"IA", {2000.0, 2000.0}, 200.0, 'A'},
      {"IB", {2000.0, 2000.0}, 200.0, 'B'},
      {"IC", {2000.0, 2000.0}, 200.0, 'C'},
      {"IIA", {2000.0, 2000.0}, 80.0, 'A'},
      {"IIB", {2000.0, 2000.0}, 80.0, 'B'},
      {"IIC", {2000.0, 2000.0}, 80.0, 'C'},
      {"IIIA", {6000.0, 6000.0}, 200.0, 'A'},
      {"IIIB", {6000.0, 6000.0}, 200.0, 'B'},
      {"IIIC", {6000.0, 6000.0}, 200.0, 'C'},
  }};
  return presets;
}

inline const CasePreset& find_case(std::string_view id) {
  for (const CasePreset& preset : case_presets())
    if (preset.id == id) return preset;
  throw std::invalid_argument("unknown case id: " + std::string(id) +
                              " (expected IA..IIIC)");
}

inline WindScenario make_scenario(const CasePreset& preset) {
  switch (preset.wind_condition) {
    case 'A': return scenario_unidirectional();
    case 'B': return scenario_omnidirectional();
    case 'C': return scenario_spread();
  }
  throw std::invalid_argument("unknown wind condition");
}

inline WindScenario make_scenario(const CasePreset& preset, const std::vector<WindBin>& rose) {
  if (preset.wind_condition == 'C') return scenario_spread(rose);
  return make_scenario(preset);
}

/// Candidate count of the aligned grid for a preset; the sunflower layout
/// uses the same count so genome lengths match across layout kinds.
inline std::size_t aligned_count(const CasePreset& preset) {
  const auto nx = static_cast<std::size_t>(std::floor(preset.extent.x / preset.spacing));
  const auto ny = static_cast<std::size_t>(std::floor(preset.extent.y / preset.spacing));
  return nx * ny;
}

/// Preset minimum distance for the unstructured pool. Poisson-disk sampling
/// saturates near 0.69 points per min_dist^2 of area, so min_dist is scaled
/// to 0.8x the grid pitch to land the saturated count near the aligned
/// count of the same case; every layout kind then offers a comparable
/// number of candidate positions.
inline double unstructured_min_dist(const CasePreset& preset) { return 0.8 * preset.spacing; }

inline CandidateLayout make_layout(const CasePreset& preset, LayoutKind kind,
                                   std::uint64_t layout_seed = 1) {
  switch (kind) {
    case LayoutKind::aligned: return aligned_grid(preset.extent, preset.spacing);
    case LayoutKind::staggered: return staggered_grid(preset.extent, preset.spacing);
    case LayoutKind::sunflower: return sunflower_layout(preset.extent, aligned_count(preset));
    case LayoutKind::unstructured:
      return unstructured_layout(preset.extent, unstructured_min_dist(preset), layout_seed);
  }
  throw std::invalid_argument("unknown layout kind");
}

}  // namespace wflo
