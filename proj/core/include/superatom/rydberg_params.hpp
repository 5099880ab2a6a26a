#pragma once

#include "superatom/geometry.hpp"

namespace superatom {

struct BlockadeInput {
  double c6;         ///< van der Waals coefficient, energy * length^6
  double omega_exc;  ///< excitation bandwidth (angular frequency)
  double hbar = 1.0;
};

struct BlockadeResult {
  double r_b;  ///< blockade radius
  double v_b;  ///< blockade volume 4 pi r_b^3 / 3
};

/// r_b = (c6 / (hbar * omega_exc))^(1/6). Throws DomainError naming the first
/// non-positive field.
BlockadeResult blockade_radius(const BlockadeInput& input);

/// True when the whole cloud fits inside the blockade radius:
/// max(sigma_r, sigma_z) * safety_factor <= r_b.
bool is_fully_blockaded(const EnsembleGeometry& geom, double r_b, double safety_factor = 1.0);

}  // namespace superatom
