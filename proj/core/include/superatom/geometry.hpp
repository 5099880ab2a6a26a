#pragma once

namespace superatom {

/// Gaussian cloud n(r) = n0 exp(-z^2/2sz^2 - (x^2+y^2)/2sr^2) probed by a Gaussian
/// beam of waist w0 and wavelength lambda_opt propagating along z.
struct EnsembleGeometry {
  double sigma_r;
  double sigma_z;
  double n0;
  double w0;
  double lambda_opt;

  /// Throws DomainError for non-positive widths, waist or wavelength, or negative density.
  void validate() const;
};

/// Which of the approximations behind the closed-form overlap hold for a geometry.
/// "Much smaller" is read as a factor `margin` (default 3).
struct RegimeFlags {
  bool wavelength_below_waist;
  bool wavelength_below_sigma_z;
  bool waist_below_sigma_r;

  bool all() const { return wavelength_below_waist && wavelength_below_sigma_z && waist_below_sigma_r; }
};

RegimeFlags regime_flags(const EnsembleGeometry& geom, double margin = 3.0);

}  // namespace superatom
