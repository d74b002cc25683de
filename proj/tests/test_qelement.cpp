#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvnet/errors.hpp"
#include "cvnet/qelement.hpp"

using namespace cvnet;
using namespace cvnet::qelement;
using sympgauss::Bipartition;
using sympgauss::CovMatrix;
using sympgauss::Matrix;

namespace {

const Complex I{0.0, 1.0};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

ElementParams decoupled() {
  ElementParams p = reference_parameters();
  p.g2 = p.g3 = 0.0;
  return p;
}

double pair_log_negativity(const CovMatrix& v) {
  return sympgauss::log_negativity(v, Bipartition::one_vs_rest(0, 2));
}

ElementParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lg(-3.5, -1.0);
  std::uniform_real_distribution<double> g(0.0, 0.4);
  return {std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), g(rng), g(rng)};
}

bool kind_is(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("noise moments") {
  auto a = noise_moments({1.0, 0.0, 0.0});
  CHECK(std::abs(a.m) < 1e-15);
  CHECK(a.n == doctest::Approx(0.5));

  auto b = noise_moments({1.0, 0.497, 0.0});
  CHECK(b.m.real() == doctest::Approx(41.665167).epsilon(1e-7));
  CHECK(b.n == doctest::Approx(41.668167).epsilon(1e-7));
  CHECK(b.m.real() == doctest::Approx(1.0 / 0.024 - 0.0015).epsilon(1e-12));

  auto c = noise_moments({0.5, 0.0, 0.0});
  CHECK(c.m.real() == doctest::Approx(0.75));
  CHECK(c.n == doctest::Approx(1.25));

  auto d = noise_moments({1.0, 0.2, std::numbers::pi / 2});
  CHECK(std::abs(d.m.real()) < 1e-12);
  CHECK(d.m.imag() > 0.0);

  CHECK(kind_is(ErrorKind::DomainError, [] { noise_moments({1.0, 0.5, 0.0}); }));
  CHECK(kind_is(ErrorKind::DomainError, [] { noise_moments({0.0, 0.1, 0.0}); }));
  CHECK(kind_is(ErrorKind::DomainError, [] { noise_moments({1.1, 0.1, 0.0}); }));
}

TEST_CASE("noise moments are physical over the whole range") {
  for (int i = 1; i <= 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double purity = i / 50.0;
      const double depth = 0.497 * j / 49.0;
      const auto nm = noise_moments({purity, depth, 0.3});
      CHECK(std::norm(nm.m) <= nm.n * (nm.n + 1) + 1e-9);
    }
  }
}

TEST_CASE("drift matrix") {
  const auto a0 = drift_matrix(decoupled());
  ComplexBasisMatrix expect = ComplexBasisMatrix::Zero();
  const double diag[] = {-0.02, -0.02, -0.02, -0.02, -0.001, -0.001};
  for (int k = 0; k < 6; ++k) expect(k, k) = diag[k];
  CHECK((a0 - expect).cwiseAbs().maxCoeff() == 0.0);

  const auto a = drift_matrix(reference_parameters());
  CHECK(std::abs(a(kA2, kB) - (-0.2 * I)) < 1e-15);
  CHECK(std::abs(a(kA2Dag, kBDag) - 0.2 * I) < 1e-15);
  CHECK(std::abs(a(kA3, kBDag) - (-0.14 * I)) < 1e-15);
  CHECK(std::abs(a(kA3Dag, kB) - 0.14 * I) < 1e-15);

  // Conjugate-pair structure: the a† row is the conjugate of the a row with
  // every operator swapped for its adjoint.
  const int partner[] = {kA2Dag, kA2, kA3Dag, kA3, kBDag, kB};
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      CHECK(std::abs(a(partner[r], partner[c]) - std::conj(a(r, c))) < 1e-15);
    }
  }
  CHECK(max_drift_real_part(reference_parameters()) < 0.0);
}

TEST_CASE("stability margins") {
  const auto s = stability_margins(reference_parameters());
  CHECK(std::abs(s.s1 - 0.041) < 1e-9);
  CHECK(std::abs(s.s2 - 1.021) < 1e-9);
  CHECK(std::abs(s.s3 - (0.04 + 0.04 / 0.021 - 0.0196 / 0.021)) < 1e-9);
  CHECK(std::abs(s.s3 - 1.01143) < 1e-5);

  auto p = reference_parameters();
  p.g3 = 0.0;
  CHECK(stability_margins(p).s2 == doctest::Approx(p.gamma_m + p.g2 * p.g2 / p.gamma_2));

  p = reference_parameters();
  p.g3 = p.g2;
  CHECK(stability_margins(p).s2 == doctest::Approx(p.gamma_m).epsilon(1e-9));
}

TEST_CASE("stability decision") {
  CHECK(is_stable(reference_parameters()));
  auto p = reference_parameters();
  p.g3 = 0.25;
  CHECK_FALSE(is_stable(p));
  CHECK(is_stable(decoupled()));
}

TEST_CASE("Routh-Hurwitz and eigenvalue tests agree on random parameters") {
  std::mt19937_64 rng(42);
  int stable = 0, unstable = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = random_params(rng);
    const bool rh = stability_margins(p).min() > 0.0;
    const bool eig = max_drift_real_part(p) < 0.0;
    CHECK(rh == eig);
    bool decided = false;
    CHECK_NOTHROW(decided = is_stable(p));
    CHECK(decided == rh);
    (decided ? stable : unstable)++;
  }
  CHECK(stable > 1000);
  CHECK(unstable > 1000);
}

TEST_CASE("output covariance is physical wherever the element is stable") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> depth(0.0, 0.497);
  std::uniform_real_distribution<double> purity(0.05, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto p = random_params(rng);
    const MicrowaveNoise noise{purity(rng), depth(rng), phase(rng)};
    if (!is_stable(p)) continue;
    const auto v = output_pair_cm(p, noise);
    CHECK(sympgauss::is_physical(v).physical);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("transfer matrix of a decoupled element") {
  const auto p = decoupled();
  const auto t0 = transfer_matrix(p, 0.0);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(t0(k, k) - 1.0) < 1e-14);
  const auto tinf = transfer_matrix(p, 1e9);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(tinf(k, k) + 1.0) < 1e-9);
  for (double w : {-3.0, -0.01, 0.005, 0.5, 7.0}) {
    const auto t = transfer_matrix(p, w);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(std::abs(t(k, k)) - 1.0) < 1e-14);
  }
}

TEST_CASE("diffusion matrix") {
  const auto vac = diffusion_matrix({Complex{0.0}, 0.0});
  CHECK(vac(kB, kB) == Complex{0.0});
  CHECK(vac(kB, kBDag) == Complex{1.0});
  CHECK(vac(kBDag, kB) == Complex{0.0});

  const auto sq = diffusion_matrix(noise_moments({1.0, 0.497, 0.0}));
  CHECK(std::abs(sq(kB, kB) - 41.665167) < 1e-6);
  CHECK(std::abs(sq(kB, kBDag) - 42.668167) < 1e-6);
  CHECK(std::abs(sq(kBDag, kB) - 41.668167) < 1e-6);
  CHECK(std::abs(sq(kBDag, kBDag) - 41.665167) < 1e-6);

  for (const int opt : {kA2, kA3}) {
    CHECK(sq(opt, opt) == Complex{0.0});
    CHECK(sq(opt, opt + 1) == Complex{1.0});
    CHECK(sq(opt + 1, opt) == Complex{0.0});
    CHECK(sq(opt + 1, opt + 1) == Complex{0.0});
  }
}

TEST_CASE("decoupled element reflects vacuum for every noise setting") {
  for (double depth : {0.0, 0.2, 0.497}) {
    for (double purity : {0.1, 0.5, 1.0}) {
      for (double phase : {0.0, 1.0, 3.0}) {
        const MicrowaveNoise noise{purity, depth, phase};
        const auto v = output_pair_cm(decoupled(), noise);
        CHECK(max_abs(v.matrix() - 0.5 * Matrix::Identity(4, 4)) < 1e-12);
        CHECK(pair_log_negativity(v) < 1e-12);
        CHECK(max_abs(output_spectral_cm(decoupled(), noise, 0.0).matrix() -
                      0.5 * Matrix::Identity(4, 4)) < 1e-12);
      }
    }
  }
}

TEST_CASE("reference element output") {
  const auto v = output_pair_cm(reference_parameters(), {1.0, 0.497, 0.0});
  CHECK(sympgauss::is_physical(v).physical);
  CHECK(pair_log_negativity(v) > 0.0);
}

TEST_CASE("output is invariant under a common rescaling of rates") {
  const MicrowaveNoise noise{0.8, 0.3, 0.4};
  const auto v = output_pair_cm(reference_parameters(), noise);
  for (double f : {0.1, 3.0, 250.0}) {
    const auto w = output_pair_cm(reference_parameters().scaled(f), noise);
    CHECK(max_abs(v.matrix() - w.matrix()) < 1e-9 * max_abs(v.matrix()));
  }
}

TEST_CASE("spectral covariance is continuous at zero frequency") {
  const auto p = reference_parameters();
  const MicrowaveNoise noise{1.0, 0.497, 0.0};
  const auto v0 = output_pair_cm(p, noise);
  double prev_ratio = 0.0;
  for (double w : {1e-4, 1e-5, 1e-6, 1e-7}) {
    const double diff = max_abs(output_spectral_cm(p, noise, w).matrix() - v0.matrix());
    const double ratio = diff / w;
    if (prev_ratio > 0.0) CHECK(ratio < 2.0 * prev_ratio + 1e-3);
    prev_ratio = ratio;
    CHECK(diff < 1e4 * w);
  }
}

TEST_CASE("narrow-band average approaches the zero-bandwidth covariance") {
  const auto p = reference_parameters();
  const MicrowaveNoise noise{1.0, 0.3, 0.0};
  const auto v0 = output_pair_cm(p, noise);
  const auto vb = output_bandwidth_cm(p, noise, 1e-6);
  CHECK(max_abs(vb.matrix() - v0.matrix()) < 1e-6 * max_abs(v0.matrix()));
  const auto wide = output_bandwidth_cm(p, noise, 0.05);
  CHECK(sympgauss::is_physical(wide).physical);
}

TEST_CASE("unstable elements are refused") {
  auto p = reference_parameters();
  p.g3 = 0.25;
  CHECK(kind_is(ErrorKind::Unstable, [&] { output_pair_cm(p, {}); }));
  CHECK(kind_is(ErrorKind::DomainError, [] { ElementParams{0.0, 0.02, 0.02, 0.2, 0.1}.validate(); }));
}
