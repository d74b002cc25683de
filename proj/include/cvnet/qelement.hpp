#pragma once

// One graphene-loaded capacitor: two optical sidebands (a2 -> Alice,
// a3 -> Bob) coupled through a squeezed microwave mode b.  All rates and
// frequencies are dimensionless, in units of the microwave frequency ω_m.

#include <complex>

#include <Eigen/Dense>

#include "cvnet/sympgauss.hpp"
#include "cvnet/tolerances.hpp"

namespace cvnet::qelement {

using Complex = std::complex<double>;

/// 6×6 matrix over the ordered operator basis (a2, a2†, a3, a3†, b, b†).
using ComplexBasisMatrix = Eigen::Matrix<Complex, 6, 6>;

enum BasisIndex : int { kA2 = 0, kA2Dag, kA3, kA3Dag, kB, kBDag };

struct ElementParams {
  double gamma_m = 0.0;
  double gamma_2 = 0.0;
  double gamma_3 = 0.0;
  double g2 = 0.0;  // effective beam-splitter coupling a2 <-> b
  double g3 = 0.0;  // effective down-conversion coupling a3 <-> b†

  /// Throws DomainError unless all rates are positive and couplings finite
  /// and non-negative.
  void validate() const;
  ElementParams scaled(double factor) const;
};

/// γ_m = 0.001, γ₂ = γ₃ = 0.02, 𝒢₂ = 0.2, 𝒢₃ = 0.14.
ElementParams reference_parameters();

struct MicrowaveNoise {
  double purity = 1.0;  // (0, 1]
  double depth = 0.0;   // nonclassicality depth, [0, 0.5)
  double phase = 0.0;   // radians

  void validate() const;
};

struct NoiseMoments {
  Complex m;  // ⟨b_in b_in⟩ weight, M e^{iφ}
  double n;   // N
};

NoiseMoments noise_moments(const MicrowaveNoise& noise, const Tolerances& tol = {});

ComplexBasisMatrix drift_matrix(const ElementParams& p);

struct StabilityMargins {
  double s1;
  double s2;
  double s3;
  double min() const;
};

/// Routh-Hurwitz margins; the steady state exists iff all three are positive.
StabilityMargins stability_margins(const ElementParams& p);

/// Largest real part among the eigenvalues of the drift matrix.
double max_drift_real_part(const ElementParams& p);

/// Routh-Hurwitz and direct eigenvalue tests combined.  A decisive
/// disagreement between them throws CriteriaDisagreement.
bool is_stable(const ElementParams& p);

/// T(ω) = F (-A - iω)^{-1} ν - I.
ComplexBasisMatrix transfer_matrix(const ElementParams& p, double omega);

/// diag(N₂, N₃, N_b) with N₂ = N₃ = [[0, 1], [0, 0]], N_b = [[m, n+1], [n, m*]].
ComplexBasisMatrix diffusion_matrix(const NoiseMoments& nm);

/// Symmetrized output spectral covariance at frequency ω for (Alice, Bob).
sympgauss::CovMatrix output_spectral_cm(const ElementParams& p, const MicrowaveNoise& noise,
                                        double omega, const Tolerances& tol = {});

/// Zero-bandwidth stationary covariance of the (Alice, Bob) output pair.
/// Refuses (Unstable) when the element has no steady state.
sympgauss::CovMatrix output_pair_cm(const ElementParams& p, const MicrowaveNoise& noise,
                                    const Tolerances& tol = {});

/// Flat-window average of the spectral covariance over [-bandwidth, bandwidth].
sympgauss::CovMatrix output_bandwidth_cm(const ElementParams& p, const MicrowaveNoise& noise,
                                         double bandwidth, double rel_tol = 1e-8,
                                         const Tolerances& tol = {});

}  // namespace cvnet::qelement
