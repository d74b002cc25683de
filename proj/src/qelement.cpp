#include "cvnet/qelement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cvnet/errors.hpp"

namespace cvnet::qelement {

namespace {

using sympgauss::CovMatrix;
using sympgauss::Matrix;
using Matrix4 = Eigen::Matrix4d;

constexpr Complex kI{0.0, 1.0};

// x = (a + a†)/√2, y = (a - a†)/(i√2), applied to each of the three modes.
ComplexBasisMatrix quadrature_map() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexBasisMatrix q = ComplexBasisMatrix::Zero();
  for (int k = 0; k < 3; ++k) {
    q(2 * k, 2 * k) = r;
    q(2 * k, 2 * k + 1) = r;
    q(2 * k + 1, 2 * k) = -kI * r;
    q(2 * k + 1, 2 * k + 1) = kI * r;
  }
  return q;
}

Eigen::Matrix<double, 6, 1> input_couplings(const ElementParams& p) {
  Eigen::Matrix<double, 6, 1> nu;
  nu << std::sqrt(2 * p.gamma_2), std::sqrt(2 * p.gamma_2), std::sqrt(2 * p.gamma_3),
      std::sqrt(2 * p.gamma_3), std::sqrt(2 * p.gamma_m), std::sqrt(2 * p.gamma_m);
  return nu;
}

// No microwave output field is formed, hence the unit entries for b, b†.
Eigen::Matrix<double, 6, 1> output_couplings(const ElementParams& p) {
  Eigen::Matrix<double, 6, 1> f;
  f << std::sqrt(2 * p.gamma_2), std::sqrt(2 * p.gamma_2), std::sqrt(2 * p.gamma_3),
      std::sqrt(2 * p.gamma_3), 1.0, 1.0;
  return f;
}

// Full quadrature-basis spectral matrix Q T(ω) N T^T(-ω) Q^T, optical 4×4 part.
Eigen::Matrix4cd optical_spectrum(const ElementParams& p, const NoiseMoments& nm, double omega) {
  static const ComplexBasisMatrix q = quadrature_map();
  const ComplexBasisMatrix s =
      transfer_matrix(p, omega) * diffusion_matrix(nm) * transfer_matrix(p, -omega).transpose();
  const ComplexBasisMatrix full = q * s * q.transpose();
  return full.topLeftCorner<4, 4>();
}

void check_commutators(const Eigen::Matrix4cd& spectrum, bool full, double omega) {
  const double scale = std::max(1.0, spectrum.cwiseAbs().maxCoeff());
  const double limit = 1e-8 * scale;
  Matrix4 expected = Matrix4::Zero();
  expected(0, 1) = expected(2, 3) = 0.5;
  expected(1, 0) = expected(3, 2) = -0.5;
  Matrix4 remainder = spectrum.imag();
  if (!full) {
    remainder.block<2, 2>(0, 2).setZero();
    remainder.block<2, 2>(2, 0).setZero();
  }
  const double defect = (remainder - expected).cwiseAbs().maxCoeff();
  if (defect > limit) {
    throw Error(ErrorKind::ComputeError, "output commutator check failed at ω = " +
                                             std::to_string(omega) + " (defect " +
                                             std::to_string(defect) + ")");
  }
}

Matrix4 symmetric_real_part(const Eigen::Matrix4cd& spectrum) {
  const Matrix4 re = spectrum.real();
  return 0.5 * (re + re.transpose());
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  Matrix4 value;
  double error;
};

template <typename F>
Segment gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Matrix4 kronrod = kKronrodWeights[7] * f(center);
  Matrix4 gauss = kGaussWeights[3] * f(center);
  for (int k = 0; k < 7; ++k) {
    const Matrix4 sum = f(center - half * kKronrodNodes[k]) + f(center + half * kKronrodNodes[k]);
    kronrod += kKronrodWeights[k] * sum;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * sum;
  }
  return {half * kronrod, half * (kronrod - gauss).cwiseAbs().maxCoeff()};
}

template <typename F>
Matrix4 refine(const F& f, double a, double b, const Segment& whole, double abs_tol, int depth) {
  if (whole.error <= abs_tol || depth == 0) return whole.value;
  const double mid = 0.5 * (a + b);
  const Segment left = gauss_kronrod(f, a, mid);
  const Segment right = gauss_kronrod(f, mid, b);
  return refine(f, a, mid, left, 0.5 * abs_tol, depth - 1) +
         refine(f, mid, b, right, 0.5 * abs_tol, depth - 1);
}

template <typename F>
Matrix4 adaptive_integral(const F& f, double a, double b, double rel_tol) {
  const Segment whole = gauss_kronrod(f, a, b);
  const double abs_tol = rel_tol * std::max(whole.value.cwiseAbs().maxCoeff(), 1e-300);
  return refine(f, a, b, whole, abs_tol, 40);
}

}  // namespace

void ElementParams::validate() const {
  for (double rate : {gamma_m, gamma_2, gamma_3}) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw Error(ErrorKind::DomainError, "decay rates must be positive and finite");
    }
  }
  if (!std::isfinite(g2) || !std::isfinite(g3)) {
    throw Error(ErrorKind::DomainError, "couplings must be finite");
  }
}

ElementParams ElementParams::scaled(double factor) const {
  return {gamma_m * factor, gamma_2 * factor, gamma_3 * factor, g2 * factor, g3 * factor};
}

ElementParams reference_parameters() { return {0.001, 0.02, 0.02, 0.2, 0.14}; }

void MicrowaveNoise::validate() const {
  if (!(purity > 0.0 && purity <= 1.0)) {
    throw Error(ErrorKind::DomainError, "purity must lie in (0, 1]");
  }
  if (!(depth >= 0.0 && depth < 0.5)) {
    throw Error(ErrorKind::DomainError, "nonclassicality depth must lie in [0, 0.5)");
  }
  if (!std::isfinite(phase)) throw Error(ErrorKind::DomainError, "phase must be finite");
}

NoiseMoments noise_moments(const MicrowaveNoise& noise, const Tolerances& tol) {
  noise.validate();
  const double shrink = 1.0 - 2.0 * noise.depth;
  const double base = 1.0 / (4.0 * noise.purity * noise.purity * shrink);
  const double m = base - shrink / 4.0;
  const double n = base + shrink / 4.0;
  if (m * m > n * (n + 1.0) + tol.moments_physicality) {
    throw Error(ErrorKind::DomainError, "noise moments violate |M|^2 <= N(N+1)");
  }
  return {std::polar(m, noise.phase), n};
}

ComplexBasisMatrix drift_matrix(const ElementParams& p) {
  ComplexBasisMatrix a = ComplexBasisMatrix::Zero();
  a(kA2, kA2) = a(kA2Dag, kA2Dag) = -p.gamma_2;
  a(kA3, kA3) = a(kA3Dag, kA3Dag) = -p.gamma_3;
  a(kB, kB) = a(kBDag, kBDag) = -p.gamma_m;

  a(kA2, kB) = -kI * p.g2;
  a(kA2Dag, kBDag) = kI * p.g2;
  a(kA3, kBDag) = -kI * p.g3;
  a(kA3Dag, kB) = kI * p.g3;

  a(kB, kA2) = -kI * p.g2;
  a(kB, kA3Dag) = -kI * p.g3;
  a(kBDag, kA2Dag) = kI * p.g2;
  a(kBDag, kA3) = kI * p.g3;
  return a;
}

double StabilityMargins::min() const { return std::min({s1, s2, s3}); }

StabilityMargins stability_margins(const ElementParams& p) {
  const double g2sq = p.g2 * p.g2;
  const double g3sq = p.g3 * p.g3;
  return {
      p.gamma_m + p.gamma_2 + p.gamma_3,
      p.gamma_m + g2sq / p.gamma_2 - g3sq / p.gamma_3,
      p.gamma_2 + p.gamma_3 + g2sq / (p.gamma_m + p.gamma_3) - g3sq / (p.gamma_m + p.gamma_2),
  };
}

double max_drift_real_part(const ElementParams& p) {
  Eigen::ComplexEigenSolver<ComplexBasisMatrix> es(drift_matrix(p), false);
  return es.eigenvalues().real().maxCoeff();
}

bool is_stable(const ElementParams& p) {
  p.validate();
  const StabilityMargins s = stability_margins(p);
  const double margin = s.min();
  const double leading = max_drift_real_part(p);
  const bool routh_hurwitz = margin > 0.0;
  const bool spectral = leading < 0.0;
  if (routh_hurwitz == spectral) return routh_hurwitz;

  // On the boundary both tests sit at zero up to rounding; call it unstable.
  const double rate_scale = std::max({p.gamma_m, p.gamma_2, p.gamma_3});
  if (std::abs(margin) <= 1e-9 * rate_scale || std::abs(leading) <= 1e-12 * rate_scale) {
    return false;
  }
  throw Error(ErrorKind::CriteriaDisagreement,
              "Routh-Hurwitz min margin " + std::to_string(margin) +
                  " vs max Re(eig) " + std::to_string(leading));
}

ComplexBasisMatrix transfer_matrix(const ElementParams& p, double omega) {
  p.validate();
  const ComplexBasisMatrix resolvent_arg =
      -drift_matrix(p) - kI * omega * ComplexBasisMatrix::Identity();
  Eigen::FullPivLU<ComplexBasisMatrix> lu(resolvent_arg);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw Error(ErrorKind::SingularResolvent, "(-A - iω) is singular at ω = " + std::to_string(omega));
  }
  const ComplexBasisMatrix inverse = lu.inverse();
  return output_couplings(p).asDiagonal() * inverse * input_couplings(p).asDiagonal() -
         ComplexBasisMatrix::Identity();
}

ComplexBasisMatrix diffusion_matrix(const NoiseMoments& nm) {
  ComplexBasisMatrix d = ComplexBasisMatrix::Zero();
  d(kA2, kA2Dag) = 1.0;
  d(kA3, kA3Dag) = 1.0;
  d(kB, kB) = nm.m;
  d(kB, kBDag) = nm.n + 1.0;
  d(kBDag, kB) = nm.n;
  d(kBDag, kBDag) = std::conj(nm.m);
  return d;
}

CovMatrix output_spectral_cm(const ElementParams& p, const MicrowaveNoise& noise, double omega,
                             const Tolerances& tol) {
  const NoiseMoments nm = noise_moments(noise, tol);
  const Eigen::Matrix4cd spectrum = optical_spectrum(p, nm, omega);
  check_commutators(spectrum, omega == 0.0, omega);
  return CovMatrix(symmetric_real_part(spectrum), tol);
}

CovMatrix output_pair_cm(const ElementParams& p, const MicrowaveNoise& noise,
                         const Tolerances& tol) {
  if (!is_stable(p)) {
    const auto s = stability_margins(p);
    throw Error(ErrorKind::Unstable, "no steady state (S = " + std::to_string(s.s1) + ", " +
                                         std::to_string(s.s2) + ", " + std::to_string(s.s3) + ")");
  }
  return output_spectral_cm(p, noise, 0.0, tol);
}

CovMatrix output_bandwidth_cm(const ElementParams& p, const MicrowaveNoise& noise,
                              double bandwidth, double rel_tol, const Tolerances& tol) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw Error(ErrorKind::DomainError, "bandwidth must be positive");
  }
  if (!is_stable(p)) throw Error(ErrorKind::Unstable, "no steady state");
  const NoiseMoments nm = noise_moments(noise, tol);
  const auto integrand = [&](double w) { return symmetric_real_part(optical_spectrum(p, nm, w)); };
  const Matrix4 integral = adaptive_integral(integrand, -bandwidth, bandwidth, rel_tol);
  return CovMatrix(integral / (2.0 * bandwidth), tol);
}

}  // namespace cvnet::qelement
