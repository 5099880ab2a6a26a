#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "superatom/correlations.hpp"
#include "superatom/master_equation.hpp"
#include "superatom/photon_statistics.hpp"

namespace superatom {

struct SourceOptions {
  /// Probability that the imperfect blockade admits a second excitation.
  double leakage = 0.0;
  /// When set, the excitation is written by this pulse from |G> and the single-excitation
  /// part of the resulting state is kept; otherwise storage starts from |W><W|.
  std::optional<DrivePulse> storage_pulse;
  /// Start of retrieval; 0 picks the end of the storage pulse (or 0).
  double t_retrieve = 0.0;
  /// Retrieval window; 0 picks 40 / (kappa + Gamma + gamma_D).
  double horizon = 0.0;
  std::size_t samples = 2001;
  /// g2 grid covers the first g2_window_decays decay times of the emission.
  std::size_t g2_samples = 41;
  double g2_window_decays = 10.0;
  EvolveOptions evolve{};
};

struct SourceRun {
  DensityMatrix3 stored;
  /// Retrieval drive: none, the retrieval is collective spontaneous emission.
  DrivePulse retrieval;
  FluxTrace emitted;
  /// Photon number carried by the emitted pulse (Simpson rule on the flux).
  double emitted_photons = 0.0;
  /// rho_WW(0) kappa / (kappa + Gamma + gamma_D).
  double retrieved_fraction_expected = 0.0;
  /// g2 of the emitted field on its own grid.
  CorrelationGrid emitted_g2;
  /// G2(s0, s0) / I(s0)^2 at the start of retrieval.
  double g2_zero_single = 0.0;
  /// Pulse-integrated g2 of the single-excitation field.
  double g2_integrated_single = 0.0;
  double leakage = 0.0;
  /// Pulse-integrated g2 including the leakage mixture.
  double g2_zero = 0.0;
};

SourceRun run_source(const PhysicalRates& rates, const SourceOptions& options = {});

/// [(1 - eps) G2_single + eps 2 n1^2] / (n1 (1 + eps))^2 for a mixture of one excitation and
/// (with probability eps) two, each retrieved with efficiency n1.
double leakage_g2(double g2_single_numerator, double n1, double leakage);

struct SubtractorOptions {
  /// Observation continues this long after the pulse; 0 picks 6 / (kappa + Gamma + gamma_D).
  double tail = 0.0;
  std::size_t samples = 801;
  std::size_t g2_samples = 41;
  double detection_efficiency = 1.0;
  bool compute_g2 = true;
  EvolveOptions evolve{};
};

struct SubtractorRun {
  DrivePulse input;
  /// Output of the last stage.
  FluxTrace transmitted;
  CorrelationGrid output_g2;
  /// Number of ions detected across the stages.
  PhotonNumberDistribution n_subtracted = PhotonNumberDistribution::fock(0);
  /// (rho_WW + rho_DD) at the end of the window, per stage, times detection efficiency.
  std::vector<double> stage_probability;
  double expected_subtracted = 0.0;
  /// Integrated out / in over the first and last quarter of the pulse, last stage.
  double first_quarter_transmission = 0.0;
  double last_quarter_transmission = 0.0;
  double input_photons = 0.0;
  double output_photons = 0.0;
};

SubtractorRun run_subtractor(const PhysicalRates& rates, const DrivePulse& pulse,
                             const SubtractorOptions& options = {});

/// Mean-field cascade: stage j + 1 is driven by alpha_out = alpha - i sqrt(kappa) <sigma_GW>
/// of stage j. Stages share the rates.
SubtractorRun run_cascade(std::size_t k, const PhysicalRates& rates, const DrivePulse& pulse,
                          const SubtractorOptions& options = {});

/// Composite Simpson on a uniform grid with an odd number of points, trapezoid otherwise.
double integrate_samples(std::span<const double> times, std::span<const double> values);

}  // namespace superatom
