#include "superatom/rydberg_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "superatom/errors.hpp"
#include "superatom/units.hpp"

namespace superatom {

UnitSystem unit_system(std::string_view name) {
  if (name == kNaturalUnits.name) return kNaturalUnits;
  if (name == kMicrometreMicrosecond.name) return kMicrometreMicrosecond;
  throw DomainError("units", "unknown unit system '" + std::string(name) + "'");
}

BlockadeResult blockade_radius(const BlockadeInput& input) {
  if (!(input.c6 > 0.0)) throw DomainError("c6", "must be positive");
  if (!(input.omega_exc > 0.0)) throw DomainError("omega_exc", "must be positive");
  if (!(input.hbar > 0.0)) throw DomainError("hbar", "must be positive");

  const double r_b = std::cbrt(std::sqrt(input.c6 / (input.hbar * input.omega_exc)));
  return {r_b, 4.0 * std::numbers::pi * r_b * r_b * r_b / 3.0};
}

bool is_fully_blockaded(const EnsembleGeometry& geom, double r_b, double safety_factor) {
  return std::max(geom.sigma_r, geom.sigma_z) * safety_factor <= r_b;
}

}  // namespace superatom
