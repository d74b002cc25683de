#include "cvnet/sympgauss.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "cvnet/errors.hpp"

namespace cvnet::sympgauss {

namespace {

void check_mode(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    throw Error(ErrorKind::IndexOutOfRange,
                "mode " + std::to_string(mode) + " outside [0, " + std::to_string(n_modes) + ")");
  }
}

double scale_of(const Matrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

CovMatrix::CovMatrix(Matrix data, const Tolerances& tol) {
  if (data.rows() != data.cols() || data.rows() == 0 || data.rows() % 2 != 0) {
    throw Error(ErrorKind::DomainError, "covariance matrix must be square with even dimension");
  }
  if (!data.allFinite()) {
    throw Error(ErrorKind::DomainError, "covariance matrix has non-finite entries");
  }
  const double asym = (data - data.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.symmetry * scale_of(data)) {
    throw Error(ErrorKind::NotSymmetric, "asymmetry " + std::to_string(asym));
  }
  data_ = 0.5 * (data + data.transpose());
}

CovMatrix CovMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw Error(ErrorKind::DomainError, "n_modes must be positive");
  return CovMatrix(0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes));
}

CovMatrix CovMatrix::checked(Matrix data, const Tolerances& tol) {
  CovMatrix v(std::move(data), tol);
  const auto report = is_physical(v, tol);
  if (!report.physical) {
    throw Error(ErrorKind::Unphysical,
                "V + iΩ/2 has eigenvalue " + std::to_string(report.margin));
  }
  v.margin_ = report.margin;
  return v;
}

Eigen::Matrix2d CovMatrix::block(int i, int j) const {
  check_mode(i, n_modes());
  check_mode(j, n_modes());
  return data_.block<2, 2>(2 * i, 2 * j);
}

Matrix symplectic_form(int n_modes) {
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Bipartition::Bipartition(std::vector<int> side_a, int n_modes) : n_modes_(n_modes) {
  std::sort(side_a.begin(), side_a.end());
  side_a.erase(std::unique(side_a.begin(), side_a.end()), side_a.end());
  for (int m : side_a) check_mode(m, n_modes);
  if (side_a.empty() || static_cast<int>(side_a.size()) == n_modes) {
    throw Error(ErrorKind::DomainError, "both sides of a bipartition must be non-empty");
  }
  for (int m = 0; m < n_modes; ++m) {
    if (!std::binary_search(side_a.begin(), side_a.end(), m)) side_b_.push_back(m);
  }
  side_a_ = std::move(side_a);
}

Bipartition Bipartition::one_vs_rest(int mode, int n_modes) { return Bipartition({mode}, n_modes); }

PhysicalityReport is_physical(const CovMatrix& v, const Tolerances& tol) {
  const int dim = 2 * v.n_modes();
  Eigen::MatrixXcd h(dim, dim);
  const Matrix omega = symplectic_form(v.n_modes());
  h.real() = v.matrix();
  h.imag() = 0.5 * omega;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const double margin = es.eigenvalues().minCoeff();
  return {margin >= -tol.physicality, margin};
}

std::vector<double> symplectic_spectrum(const CovMatrix& v, const Tolerances& tol) {
  const Matrix& m = v.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> pd(m, Eigen::EigenvaluesOnly);
  if (pd.eigenvalues().minCoeff() <= tol.positive_definite) {
    throw Error(ErrorKind::NonPositiveDefinite,
                "minimum eigenvalue " + std::to_string(pd.eigenvalues().minCoeff()));
  }
  Eigen::EigenSolver<Matrix> es(symplectic_form(v.n_modes()) * m, false);
  std::vector<double> moduli;
  moduli.reserve(m.rows());
  for (const auto& ev : es.eigenvalues()) moduli.push_back(std::abs(ev));
  std::sort(moduli.begin(), moduli.end());

  std::vector<double> nu;
  nu.reserve(moduli.size() / 2);
  for (std::size_t k = 0; k < moduli.size(); k += 2) {
    const double a = moduli[k];
    const double b = moduli[k + 1];
    if (std::abs(a - b) > tol.pairing * std::max(a, b)) {
      throw Error(ErrorKind::PairingFailure,
                  "unpaired moduli " + std::to_string(a) + " / " + std::to_string(b));
    }
    nu.push_back(0.5 * (a + b));
  }
  return nu;
}

CovMatrix partial_transpose(const CovMatrix& v, std::span<const int> modes) {
  Eigen::VectorXd sign = Eigen::VectorXd::Ones(2 * v.n_modes());
  for (int m : modes) {
    check_mode(m, v.n_modes());
    sign(2 * m + 1) = -1.0;
  }
  return CovMatrix(sign.asDiagonal() * v.matrix() * sign.asDiagonal());
}

double min_symplectic_eig_pt(const CovMatrix& v, const Bipartition& part, const Tolerances& tol) {
  if (part.n_modes() != v.n_modes()) {
    throw Error(ErrorKind::DomainError, "bipartition does not match the number of modes");
  }
  return symplectic_spectrum(partial_transpose(v, part.side_a()), tol).front();
}

double log_negativity(const CovMatrix& v, const Bipartition& part, const Tolerances& tol) {
  return std::max(0.0, -std::log(2.0 * min_symplectic_eig_pt(v, part, tol)));
}

double fidelity_from_eig(double eta_minus) {
  if (!(eta_minus > 0.0) || !std::isfinite(eta_minus)) {
    throw Error(ErrorKind::NonPositiveInput, "η⁻ must be positive");
  }
  return 1.0 / (1.0 + 2.0 * eta_minus);
}

double channel_transmissivity(double eta0, double alpha_db_per_km, double distance_km) {
  if (!(eta0 > 0.0 && eta0 <= 1.0)) throw Error(ErrorKind::DomainError, "η₀ must lie in (0, 1]");
  if (!(alpha_db_per_km >= 0.0) || !std::isfinite(alpha_db_per_km)) {
    throw Error(ErrorKind::DomainError, "attenuation must be non-negative");
  }
  if (!(distance_km >= 0.0) || !std::isfinite(distance_km)) {
    throw Error(ErrorKind::DomainError, "distance must be non-negative");
  }
  return eta0 * std::exp(-alpha_db_per_km * distance_km / 10.0);
}

CovMatrix lossy_channel(const CovMatrix& v, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::DomainError, "η must lie in [0, 1]");
  const auto dim = v.matrix().rows();
  return CovMatrix(eta * v.matrix() + 0.5 * (1.0 - eta) * Matrix::Identity(dim, dim));
}

Matrix beamsplitter_symplectic(int n_modes, int i, int j, double t) {
  check_mode(i, n_modes);
  check_mode(j, n_modes);
  if (i == j) throw Error(ErrorKind::IndexOutOfRange, "beam splitter needs two distinct modes");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::DomainError, "transmittance must lie in [0, 1]");
  const double c = std::sqrt(t);
  const double s = std::sqrt(1.0 - t);
  Matrix bs = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    const int a = 2 * i + q;
    const int b = 2 * j + q;
    bs(a, a) = c;
    bs(a, b) = s;
    bs(b, a) = -s;
    bs(b, b) = c;
  }
  return bs;
}

CovMatrix beamsplitter(const CovMatrix& v, int i, int j, double t, const Tolerances& tol) {
  return symplectic_transform(v, beamsplitter_symplectic(v.n_modes(), i, j, t), tol);
}

CovMatrix symplectic_transform(const CovMatrix& v, const Matrix& s, const Tolerances& tol) {
  if (s.rows() != v.matrix().rows() || s.cols() != v.matrix().cols()) {
    throw Error(ErrorKind::DomainError, "symplectic matrix has the wrong dimension");
  }
  const Matrix omega = symplectic_form(v.n_modes());
  const double defect = (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
  const double scale = scale_of(s);
  if (defect > tol.symplectic_check * scale * scale) {
    throw Error(ErrorKind::DomainError, "matrix is not symplectic (defect " + std::to_string(defect) + ")");
  }
  return CovMatrix(s * v.matrix() * s.transpose(), tol);
}

CovMatrix homodyne_condition(const CovMatrix& v, int mode, Quadrature quadrature,
                             const Tolerances& tol) {
  const int n = v.n_modes();
  check_mode(mode, n);
  if (n < 2) throw Error(ErrorKind::DomainError, "conditioning needs at least two modes");

  std::vector<int> kept;
  for (int m = 0; m < n; ++m) {
    if (m != mode) kept.push_back(m);
  }
  const int measured_row = 2 * mode + (quadrature == Quadrature::X ? 0 : 1);
  const double variance = v(measured_row, measured_row);
  if (variance < tol.pseudo_inverse) {
    throw Error(ErrorKind::SingularMeasurement, "measured variance " + std::to_string(variance));
  }

  // (Z A Z)^- is rank one: only the measured quadrature survives.
  const int dim = 2 * (n - 1);
  Matrix b(dim, dim);
  Eigen::VectorXd c(dim);
  for (int r = 0; r < dim; ++r) {
    const int vr = 2 * kept[r / 2] + r % 2;
    c(r) = v(vr, measured_row);
    for (int s = 0; s < dim; ++s) b(r, s) = v(vr, 2 * kept[s / 2] + s % 2);
  }
  return CovMatrix(b - c * c.transpose() / variance, tol);
}

CovMatrix reduced_cm(const CovMatrix& v, std::span<const int> modes) {
  if (modes.empty()) throw Error(ErrorKind::DomainError, "no modes selected");
  std::vector<int> seen(modes.begin(), modes.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw Error(ErrorKind::IndexOutOfRange, "duplicate mode in selection");
  }
  for (int m : modes) check_mode(m, v.n_modes());
  const int k = static_cast<int>(modes.size());
  Matrix out(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block<2, 2>(2 * a, 2 * b) = v.matrix().block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
  }
  return CovMatrix(std::move(out));
}

}  // namespace cvnet::sympgauss
