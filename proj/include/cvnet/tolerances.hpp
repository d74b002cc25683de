#pragma once

namespace cvnet {

// Numerical thresholds shared by the Gaussian-state and element code.
// Every field can be overridden from a run configuration.
struct Tolerances {
  double symmetry = 1e-12;            // |V - V^T| (scaled by max(1, |V|max))
  double physicality = 1e-10;         // min eig of V + iΩ/2
  double positive_definite = 1e-12;   // min eig of V for symplectic spectra
  double pairing = 1e-8;              // relative mismatch of ±iν pairs
  double pseudo_inverse = 1e-12;      // smallest measurable quadrature variance
  double symplectic_check = 1e-12;    // |S Ω S^T - Ω|
  double moments_physicality = 1e-9;  // |M|^2 <= N(N+1) slack
  double alice_condition = 1e12;      // max condition number of the Alice block
  double dispersion_denominator = 1e-30;
};

}  // namespace cvnet
