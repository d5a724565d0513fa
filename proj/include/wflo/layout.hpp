#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wflo/rng.hpp"
#include "wflo/wake.hpp"

namespace wflo {

enum class LayoutKind { aligned, staggered, sunflower, unstructured };

inline std::string_view to_string(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::aligned: return "aligned";
    case LayoutKind::staggered: return "staggered";
    case LayoutKind::sunflower: return "sunflower";
    case LayoutKind::unstructured: return "unstructured";
  }
  throw std::invalid_argument("unknown layout kind");
}

inline LayoutKind layout_kind_from_string(std::string_view name) {
  if (name == "aligned") return LayoutKind::aligned;
  if (name == "staggered") return LayoutKind::staggered;
  if (name == "sunflower") return LayoutKind::sunflower;
  if (name == "unstructured") return LayoutKind::unstructured;
  throw std::invalid_argument("unknown layout kind: " + std::string(name));
}

/// Rectangular farm dimensions in meters.
struct Extent {
  double x = 0.0;
  double y = 0.0;
};

/// Ordered set of admissible turbine positions. Genomes index into
/// `positions`, so the order is part of the contract: for a given
/// (kind, extent, spacing/seed) the generator output is reproducible
/// element for element.
struct CandidateLayout {
  LayoutKind kind = LayoutKind::aligned;
  Extent extent;
  double spacing = 0.0;       // grid pitch or minimum distance; 0 for sunflower
  std::uint64_t seed = 0;     // unstructured only
  std::vector<Point> positions;

  std::size_t size() const { return positions.size(); }
};

/// Fixed angular increment of the Vogel spiral, degrees.
inline constexpr double kGoldenAngleDeg = 137.50776;

namespace detail {

inline void check_grid_args(Extent extent, double spacing, const char* who) {
  if (spacing <= 0.0) throw std::invalid_argument(std::string(who) + ": spacing must be positive");
  if (extent.x < spacing || extent.y < spacing)
    throw std::invalid_argument(std::string(who) + ": extent smaller than one cell");
}

}  // namespace detail

/// Square lattice of cell centers with pitch = spacing, row-major order
/// (y outer, x inner), first center at (spacing/2, spacing/2).
inline CandidateLayout aligned_grid(Extent extent, double spacing) {
  detail::check_grid_args(extent, spacing, "aligned_grid");
  const int nx = static_cast<int>(std::floor(extent.x / spacing));
  const int ny = static_cast<int>(std::floor(extent.y / spacing));
  CandidateLayout out{LayoutKind::aligned, extent, spacing, 0, {}};
  out.positions.reserve(static_cast<std::size_t>(nx) * ny);
  for (int row = 0; row < ny; ++row)
    for (int col = 0; col < nx; ++col)
      out.positions.push_back({spacing / 2.0 + col * spacing, spacing / 2.0 + row * spacing});
  return out;
}

/// Aligned lattice with every odd row shifted +spacing/2 in x. Shifted
/// positions past the extent are dropped, not wrapped, so every candidate
/// stays physical; the loss is at most one position per odd row.
inline CandidateLayout staggered_grid(Extent extent, double spacing) {
  detail::check_grid_args(extent, spacing, "staggered_grid");
  const int nx = static_cast<int>(std::floor(extent.x / spacing));
  const int ny = static_cast<int>(std::floor(extent.y / spacing));
  CandidateLayout out{LayoutKind::staggered, extent, spacing, 0, {}};
  out.positions.reserve(static_cast<std::size_t>(nx) * ny);
  for (int row = 0; row < ny; ++row) {
    const double shift = (row % 2 == 1) ? spacing / 2.0 : 0.0;
    for (int col = 0; col < nx; ++col) {
      const double x = spacing / 2.0 + col * spacing + shift;
      if (x > extent.x) continue;
      out.positions.push_back({x, spacing / 2.0 + row * spacing});
    }
  }
  return out;
}

/// Vogel spiral: point k in [1..n] at radius c*sqrt(k) and angle k times the
/// golden angle, centered on the farm, with c chosen so point n lands on the
/// inscribed circle of the extent.
inline CandidateLayout sunflower_layout(Extent extent, std::size_t count) {
  if (count == 0) throw std::invalid_argument("sunflower_layout: need at least one point");
  const Point center{extent.x / 2.0, extent.y / 2.0};
  const double radius = std::min(extent.x, extent.y) / 2.0;
  const double scale = radius / std::sqrt(static_cast<double>(count));
  CandidateLayout out{LayoutKind::sunflower, extent, 0.0, 0, {}};
  out.positions.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double r = scale * std::sqrt(static_cast<double>(k));
    const double theta = deg_to_rad(static_cast<double>(k) * kGoldenAngleDeg);
    out.positions.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
  }
  return out;
}

/// Poisson-disk sample (dart throwing over a background grid, 30 candidate
/// throws per active point) run to saturation. Deterministic per seed;
/// pairwise distances never drop below min_dist.
inline CandidateLayout unstructured_layout(Extent extent, double min_dist, std::uint64_t seed) {
  if (min_dist <= 0.0)
    throw std::invalid_argument("unstructured_layout: min distance must be positive");
  if (min_dist > std::hypot(extent.x, extent.y))
    throw std::invalid_argument("unstructured_layout: min distance exceeds the farm diagonal");

  constexpr int kThrowsPerPoint = 30;
  const double cell = min_dist / std::numbers::sqrt2;
  const int gx = std::max(1, static_cast<int>(std::ceil(extent.x / cell)));
  const int gy = std::max(1, static_cast<int>(std::ceil(extent.y / cell)));

  std::vector<int> grid(static_cast<std::size_t>(gx) * gy, -1);
  std::vector<Point> points;
  std::vector<std::size_t> active;
  RngStream rng(seed);

  auto cell_index = [&](Point p) {
    const int ix = std::min(gx - 1, static_cast<int>(p.x / cell));
    const int iy = std::min(gy - 1, static_cast<int>(p.y / cell));
    return std::pair<int, int>{ix, iy};
  };
  auto admissible = [&](Point p) {
    const auto [cx, cy] = cell_index(p);
    for (int iy = std::max(0, cy - 2); iy <= std::min(gy - 1, cy + 2); ++iy) {
      for (int ix = std::max(0, cx - 2); ix <= std::min(gx - 1, cx + 2); ++ix) {
        const int idx = grid[static_cast<std::size_t>(iy) * gx + ix];
        if (idx < 0) continue;
        const double dx = points[idx].x - p.x;
        const double dy = points[idx].y - p.y;
        if (dx * dx + dy * dy < min_dist * min_dist) return false;
      }
    }
    return true;
  };
  auto place = [&](Point p) {
    const auto [cx, cy] = cell_index(p);
    grid[static_cast<std::size_t>(cy) * gx + cx] = static_cast<int>(points.size());
    active.push_back(points.size());
    points.push_back(p);
  };

  place({rng.uniform01() * extent.x, rng.uniform01() * extent.y});
  while (!active.empty()) {
    const std::size_t slot = rng.below(active.size());
    const Point base = points[active[slot]];
    bool placed = false;
    for (int t = 0; t < kThrowsPerPoint && !placed; ++t) {
      const double angle = 2.0 * std::numbers::pi * rng.uniform01();
      const double dist = min_dist * (1.0 + rng.uniform01());
      const Point cand{base.x + dist * std::cos(angle), base.y + dist * std::sin(angle)};
      if (cand.x < 0.0 || cand.x > extent.x || cand.y < 0.0 || cand.y > extent.y) continue;
      if (!admissible(cand)) continue;
      place(cand);
      placed = true;
    }
    if (!placed) {
      active[slot] = active.back();
      active.pop_back();
    }
  }

  CandidateLayout out{LayoutKind::unstructured, extent, min_dist, seed, std::move(points)};
  return out;
}

}  // namespace wflo
