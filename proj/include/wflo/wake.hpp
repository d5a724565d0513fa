#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace wflo {

/// Planar position in the fixed east/north frame (x east, y north), meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Fold an angle in degrees into [0, 360).
inline double normalize_deg(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0.0) d += 360.0;
  return d;
}

// ---------------------------------------------------------------------------
// Wake constants
// ---------------------------------------------------------------------------

/// Linear wake-expansion rate, 0.5 / ln(z_h / z_0).
inline double entrainment_constant(double hub_height, double roughness) {
  if (roughness <= 0.0 || hub_height <= roughness)
    throw std::invalid_argument("entrainment_constant: requires z_h > z_0 > 0");
  return 0.5 / std::log(hub_height / roughness);
}

/// Momentum-theory axial induction factor, (1 - sqrt(1 - C_T)) / 2.
inline double axial_induction(double thrust_coeff) {
  if (thrust_coeff < 0.0 || thrust_coeff > 1.0)
    throw std::invalid_argument("axial_induction: C_T outside [0, 1]");
  return (1.0 - std::sqrt(1.0 - thrust_coeff)) / 2.0;
}

/// Effective wake radius immediately behind the rotor, r * sqrt((1-a)/(1-2a)).
inline double initial_wake_radius(double rotor_radius, double induction) {
  if (rotor_radius <= 0.0)
    throw std::invalid_argument("initial_wake_radius: rotor radius must be positive");
  if (induction < 0.0 || induction >= 0.5)
    throw std::invalid_argument("initial_wake_radius: a must lie in [0, 0.5)");
  return rotor_radius * std::sqrt((1.0 - induction) / (1.0 - 2.0 * induction));
}

/// Rotor geometry plus the derived wake constants. Immutable by construction,
/// so the derived fields can never go stale against the inputs.
class TurbineSpec {
 public:
  TurbineSpec(double rotor_radius, double hub_height, double roughness, double thrust_coeff)
      : rotor_radius_(rotor_radius),
        hub_height_(hub_height),
        roughness_(roughness),
        thrust_coeff_(thrust_coeff) {
    if (rotor_radius <= 0.0)
      throw std::invalid_argument("TurbineSpec: rotor radius must be positive");
    if (thrust_coeff <= 0.0 || thrust_coeff >= 1.0)
      throw std::invalid_argument("TurbineSpec: C_T must lie in (0, 1)");
    entrainment_ = wflo::entrainment_constant(hub_height, roughness);
    induction_ = wflo::axial_induction(thrust_coeff);
    wake_radius0_ = wflo::initial_wake_radius(rotor_radius, induction_);
  }

  double rotor_radius() const { return rotor_radius_; }
  double hub_height() const { return hub_height_; }
  double roughness() const { return roughness_; }
  double thrust_coeff() const { return thrust_coeff_; }
  double axial_induction() const { return induction_; }
  double initial_wake_radius() const { return wake_radius0_; }
  double entrainment() const { return entrainment_; }
  double rotor_area() const { return std::numbers::pi * rotor_radius_ * rotor_radius_; }

  /// Wake radius at a downstream distance x, r_1 + alpha_e * x.
  double wake_radius_at(double downstream) const {
    return wake_radius0_ + entrainment_ * downstream;
  }

 private:
  double rotor_radius_;
  double hub_height_;
  double roughness_;
  double thrust_coeff_;
  double entrainment_;
  double induction_;
  double wake_radius0_;
};

/// The rotor used throughout the study cases: D = 40 m, z_h = 60 m,
/// z_0 = 0.3 m, C_T = 0.88.
inline TurbineSpec default_turbine() { return TurbineSpec(20.0, 60.0, 0.3, 0.88); }

// ---------------------------------------------------------------------------
// Single wake and geometry
// ---------------------------------------------------------------------------

/// Fractional velocity deficit at a downstream distance inside a single wake:
/// (1 - sqrt(1 - C_T)) / (1 + alpha_e x / r_1)^2.
inline double single_wake_deficit(double downstream, const TurbineSpec& spec) {
  if (downstream < 0.0)
    throw std::invalid_argument("single_wake_deficit: downstream distance must be >= 0");
  const double growth = 1.0 + spec.entrainment() * downstream / spec.initial_wake_radius();
  return (1.0 - std::sqrt(1.0 - spec.thrust_coeff())) / (growth * growth);
}

/// Coordinates of a point relative to a wake source, expressed in the frame
/// aligned with the wind.
struct WindFramePosition {
  double downstream = 0.0;  // positive when downwind of the source
  double crosswind = 0.0;
};

/// Position of turbine i relative to turbine j in the wind-aligned frame.
/// Wind direction uses the meteorological bearing convention: the direction
/// the wind comes FROM, 0 deg = north, so the downwind unit vector for a
/// bearing phi is (-sin phi, -cos phi).
inline WindFramePosition relative_in_wind_frame(Point pos_i, Point pos_j, double wind_dir_deg) {
  const double phi = deg_to_rad(normalize_deg(wind_dir_deg));
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double dx = pos_i.x - pos_j.x;
  const double dy = pos_i.y - pos_j.y;
  return {-dx * s - dy * c, dx * c - dy * s};
}

/// Area shared by a rotor disc of radius `rotor_radius` and a wake disc of
/// radius `wake_radius` whose centers are `separation` apart (all projected
/// onto the rotor plane). Piecewise: disjoint, fully immersed, or the
/// two-circular-segment lens. acos arguments are clamped to [-1, 1] to absorb
/// floating-point drift at the branch boundaries.
inline double overlap_area(double separation, double rotor_radius, double wake_radius) {
  if (separation < 0.0 || rotor_radius <= 0.0 || wake_radius <= 0.0)
    throw std::invalid_argument("overlap_area: requires d >= 0 and positive radii");
  if (separation >= rotor_radius + wake_radius) return 0.0;
  if (separation <= std::abs(wake_radius - rotor_radius))
    return std::numbers::pi * rotor_radius * rotor_radius;
  const double d1 =
      (wake_radius * wake_radius + separation * separation - rotor_radius * rotor_radius) /
      (2.0 * separation);
  const double d2 = separation - d1;
  const double theta1 = 2.0 * std::acos(std::clamp(d1 / wake_radius, -1.0, 1.0));
  const double theta2 = 2.0 * std::acos(std::clamp(d2 / rotor_radius, -1.0, 1.0));
  return 0.5 * wake_radius * wake_radius * (theta1 - std::sin(theta1)) +
         0.5 * rotor_radius * rotor_radius * (theta2 - std::sin(theta2));
}

namespace detail {

/// Squared deficit-velocity contribution of one wake source at the given
/// relative position, already scaled by the rotor overlap fraction. Zero when
/// the target is not strictly downwind or the wake misses the rotor.
/// FarmPowerModel caches exactly these values, so the cached and direct
/// evaluation paths agree bit for bit.
inline double squared_wake_term(double downstream, double crosswind, double free_speed,
                                const TurbineSpec& spec) {
  if (downstream <= 0.0) return 0.0;
  const double wake_radius = spec.wake_radius_at(downstream);
  const double shared = overlap_area(std::abs(crosswind), spec.rotor_radius(), wake_radius);
  if (shared <= 0.0) return 0.0;
  const double waked = free_speed * (1.0 - single_wake_deficit(downstream, spec));
  const double term = shared / spec.rotor_area() * (free_speed - waked);
  return term * term;
}

}  // namespace detail

/// Effective wind speed at turbine `target`, given the positions of every
/// active turbine. Deficits from all strictly-upwind turbines combine by
/// root-sum-of-squares of deficit velocities, each scaled by its rotor
/// overlap fraction; the result is clamped at zero.
inline double effective_speed(std::size_t target, std::span<const Point> turbines,
                              double wind_dir_deg, double free_speed, const TurbineSpec& spec) {
  if (free_speed <= 0.0)
    throw std::invalid_argument("effective_speed: free-stream speed must be positive");
  double sum = 0.0;
  for (std::size_t j = 0; j < turbines.size(); ++j) {
    if (j == target) continue;
    const WindFramePosition rel =
        relative_in_wind_frame(turbines[target], turbines[j], wind_dir_deg);
    sum += detail::squared_wake_term(rel.downstream, rel.crosswind, free_speed, spec);
  }
  return std::max(0.0, free_speed - std::sqrt(sum));
}

/// Total farm power in kW for the given effective speeds, P = sum 0.3 u^3.
inline double total_power(std::span<const double> speeds) {
  double power = 0.0;
  for (double u : speeds) {
    if (u < 0.0) throw std::invalid_argument("total_power: speeds must be >= 0");
    power += 0.3 * u * u * u;
  }
  return power;
}

// ---------------------------------------------------------------------------
// Velocity field sampling
// ---------------------------------------------------------------------------

struct GridSpec {
  Point origin;
  double cell_size = 0.0;
  int nx = 0;
  int ny = 0;
};

/// Sampled wind speeds over a regular grid, row-major with x fastest.
struct VelocityGrid {
  Point origin;
  double cell_size = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  Point cell_center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * cell_size, origin.y + (iy + 0.5) * cell_size};
  }
};

/// Superposed wind speed field over a grid of zero-radius probes: each cell
/// center takes the full deficit of every wake cone containing it (overlap
/// fraction 1 inside, 0 outside), combined by the same root-sum-of-squares
/// rule as rotor-averaged speeds. Cells upwind of every turbine hold the
/// free-stream speed exactly.
inline VelocityGrid velocity_field(std::span<const Point> turbines, double wind_dir_deg,
                                   double free_speed, const TurbineSpec& spec,
                                   const GridSpec& grid) {
  if (grid.nx < 1 || grid.ny < 1 || grid.cell_size <= 0.0)
    throw std::invalid_argument("velocity_field: grid must have positive size");
  if (free_speed <= 0.0)
    throw std::invalid_argument("velocity_field: free-stream speed must be positive");
  VelocityGrid out{grid.origin, grid.cell_size, grid.nx, grid.ny, {}};
  out.values.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Point probe = out.cell_center(ix, iy);
      double sum = 0.0;
      for (const Point& source : turbines) {
        const WindFramePosition rel = relative_in_wind_frame(probe, source, wind_dir_deg);
        if (rel.downstream <= 0.0) continue;
        if (std::abs(rel.crosswind) >= spec.wake_radius_at(rel.downstream)) continue;
        const double deficit_speed = free_speed * single_wake_deficit(rel.downstream, spec);
        sum += deficit_speed * deficit_speed;
      }
      out.values[static_cast<std::size_t>(iy) * grid.nx + ix] =
          std::max(0.0, free_speed - std::sqrt(sum));
    }
  }
  return out;
}

}  // namespace wflo
