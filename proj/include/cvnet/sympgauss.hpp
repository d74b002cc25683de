#pragma once

// Gaussian-state algebra over second moments.
//
// Conventions: quadratures are ordered (x1, y1, x2, y2, ..., xn, yn), ħ = 1,
// and the vacuum has variance 1/2 in every quadrature.  Mode indices in this
// API are 0-based.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvnet/tolerances.hpp"

namespace cvnet::sympgauss {

using Matrix = Eigen::MatrixXd;

enum class Quadrature { X, Y };

/// Real symmetric 2n×2n covariance matrix.
///
/// Construction rejects asymmetric input and stores the exact symmetrization.
/// The physicality margin is only populated by `checked()` or `mark_checked()`.
class CovMatrix {
 public:
  explicit CovMatrix(Matrix data, const Tolerances& tol = {});

  static CovMatrix vacuum(int n_modes);
  /// Like the constructor, but also requires V + iΩ/2 ⪰ 0 (throws Unphysical).
  static CovMatrix checked(Matrix data, const Tolerances& tol = {});

  int n_modes() const { return static_cast<int>(data_.rows() / 2); }
  const Matrix& matrix() const { return data_; }
  double operator()(Eigen::Index r, Eigen::Index c) const { return data_(r, c); }

  /// 2×2 block between modes i and j.
  Eigen::Matrix2d block(int i, int j) const;

  bool physicality_checked() const { return margin_.has_value(); }
  std::optional<double> physicality_margin() const { return margin_; }

 private:
  Matrix data_;
  std::optional<double> margin_;
};

/// Ω = ⊕ [[0, 1], [-1, 0]].
Matrix symplectic_form(int n_modes);

/// Split of the modes {0..n-1} into two non-empty complementary sides.
class Bipartition {
 public:
  Bipartition(std::vector<int> side_a, int n_modes);

  static Bipartition one_vs_rest(int mode, int n_modes);

  const std::vector<int>& side_a() const { return side_a_; }
  const std::vector<int>& side_b() const { return side_b_; }
  int n_modes() const { return n_modes_; }

 private:
  std::vector<int> side_a_;
  std::vector<int> side_b_;
  int n_modes_;
};

struct PhysicalityReport {
  bool physical;
  double margin;  // minimum eigenvalue of V + iΩ/2
};

PhysicalityReport is_physical(const CovMatrix& v, const Tolerances& tol = {});

/// Symplectic eigenvalues {ν_k}, ascending, from the spectrum of ΩV.
std::vector<double> symplectic_spectrum(const CovMatrix& v, const Tolerances& tol = {});

/// Flips the sign of the y row/column of every listed mode.
CovMatrix partial_transpose(const CovMatrix& v, std::span<const int> modes);

double min_symplectic_eig_pt(const CovMatrix& v, const Bipartition& part,
                             const Tolerances& tol = {});

/// E_N = max(0, -ln 2η⁻).
double log_negativity(const CovMatrix& v, const Bipartition& part, const Tolerances& tol = {});

/// Optimal coherent-state teleportation fidelity 1 / (1 + 2η⁻).
double fidelity_from_eig(double eta_minus);

/// η = η₀ exp(-α l / 10), α in dB/km and l in km.
double channel_transmissivity(double eta0, double alpha_db_per_km, double distance_km);

/// ηV + (1 - η)/2 I applied to every mode.
CovMatrix lossy_channel(const CovMatrix& v, double eta);

/// Beam-splitter symplectic on modes i, j of an n-mode system, cos θ = √t.
Matrix beamsplitter_symplectic(int n_modes, int i, int j, double t);

CovMatrix beamsplitter(const CovMatrix& v, int i, int j, double t, const Tolerances& tol = {});

/// V -> S V S^T after verifying S Ω S^T = Ω.
CovMatrix symplectic_transform(const CovMatrix& v, const Matrix& s, const Tolerances& tol = {});

/// Gaussian conditioning on a homodyne outcome; the measured mode is removed.
CovMatrix homodyne_condition(const CovMatrix& v, int mode, Quadrature quadrature,
                             const Tolerances& tol = {});

/// Submatrix over the listed modes, in the given order.
CovMatrix reduced_cm(const CovMatrix& v, std::span<const int> modes);

}  // namespace cvnet::sympgauss
