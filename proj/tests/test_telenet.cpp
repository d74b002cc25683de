#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cvnet/errors.hpp"
#include "cvnet/telenet.hpp"

using namespace cvnet;
using namespace cvnet::telenet;
using qelement::ElementParams;
using qelement::MicrowaveNoise;
using sympgauss::Matrix;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

CovMatrix reference_pair(double depth) {
  return qelement::output_pair_cm(qelement::reference_parameters(), {1.0, depth, 0.0});
}

NetworkSpec reference_spec(int n, double depth, Channel channel) {
  NetworkSpec spec;
  spec.n_elements = n;
  spec.element = qelement::reference_parameters();
  spec.noise = {1.0, depth, 0.0};
  spec.channel = channel;
  return spec;
}

// Zero the Alice/Bob correlation block of a pair CM.
CovMatrix uncorrelated(const CovMatrix& pair) {
  Matrix m = pair.matrix();
  m.topRightCorner(2, 2).setZero();
  m.bottomLeftCorner(2, 2).setZero();
  return CovMatrix(m);
}

ElementParams random_stable(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lg(-3.0, -1.0);
  std::uniform_real_distribution<double> g(0.01, 0.4);
  for (;;) {
    ElementParams p{std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), g(rng),
                    g(rng)};
    if (qelement::is_stable(p)) return p;
  }
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

TEST_CASE("joint covariance") {
  CHECK(joint_cm(CovMatrix::vacuum(2), 3).matrix() == CovMatrix::vacuum(6).matrix());

  const auto pair = reference_pair(0.497);
  const int n = 3;
  const auto joint = joint_cm(pair, n);
  for (int j = 0; j < n; ++j) {
    const std::vector<int> modes{j, n + j};
    CHECK(sympgauss::reduced_cm(joint, modes).matrix() == pair.matrix());
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      CHECK(max_abs(joint.block(j, k)) == 0.0);
      CHECK(max_abs(joint.block(j, n + k)) == 0.0);
      CHECK(max_abs(joint.block(n + j, n + k)) == 0.0);
    }
  }
  CHECK(kind_is(ErrorKind::DomainError, [&] { joint_cm(pair, 1); }));
}

TEST_CASE("beam-splitter cascade matrix") {
  const auto o2 = bs_cascade_matrix(2);
  Eigen::Matrix2d expect;
  expect << 1, 1, 1, -1;
  expect /= std::sqrt(2.0);
  CHECK((o2 - expect).cwiseAbs().maxCoeff() < 1e-15);

  const auto o5 = bs_cascade_matrix(5);
  CHECK((o5 * o5.transpose() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  for (int c = 0; c < 5; ++c) CHECK(o5(0, c) == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(o5(4, 4) == doctest::Approx(-4 / std::sqrt(20.0)));
  CHECK(kind_is(ErrorKind::DomainError, [] { bs_cascade_matrix(1); }));
}

TEST_CASE("closed-form conditioning") {
  const auto pair = reference_pair(0.497);
  const auto free = uncorrelated(pair);
  const auto blocks = bell_condition_closed_form(free, 4);
  CHECK((blocks.v_diag - free.block(1, 1)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(blocks.v_off.cwiseAbs().maxCoeff() < 1e-15);

  // Large-n limit keeps only the x-conditioning term.
  const Eigen::Matrix2d va = pair.block(0, 0), vb = pair.block(1, 1), c = pair.block(0, 1);
  const Eigen::Matrix2d z1 = Eigen::Vector2d(1, 0).asDiagonal();
  const Eigen::Matrix2d limit = vb - c.transpose() * z1 * va.inverse() * z1 * c;
  const auto big = bell_condition_closed_form(pair, 1000000);
  CHECK((big.v_diag - limit).cwiseAbs().maxCoeff() < 1e-4 * limit.cwiseAbs().maxCoeff());

  const auto two = assemble_bob_cm(bell_condition_closed_form(pair, 2), 2);
  CHECK(sympgauss::is_physical(two).physical);

  Matrix singular = pair.matrix();
  singular.topLeftCorner(2, 2) << 1.0, 1.0, 1.0, 1.0 + 1e-14;
  CHECK(kind_is(ErrorKind::SingularAliceBlock,
                [&] { bell_condition_closed_form(CovMatrix(singular), 3); }));
}

TEST_CASE("assembled Bob covariance") {
  ConditionalBlocks b;
  b.v_diag << 1.2, 0.1, 0.1, 0.9;
  b.v_off.setZero();
  const auto prod = assemble_bob_cm(b, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(max_abs(prod.block(i, j)) == 0.0);
    }
  }

  const auto v = assemble_bob_cm(bell_condition_closed_form(reference_pair(0.497), 4), 4);
  std::vector<int> perm{0, 1, 2, 3};
  do {
    CHECK(sympgauss::reduced_cm(v, perm).matrix() == v.matrix());
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("oracle leaves uncorrelated Bob modes alone") {
  const auto free = uncorrelated(reference_pair(0.3));
  const auto bob = bell_condition_oracle(joint_cm(free, 3), 3);
  const ConditionalBlocks untouched{free.block(1, 1), Eigen::Matrix2d::Zero()};
  CHECK(max_abs(bob.matrix() - assemble_bob_cm(untouched, 3).matrix()) < 1e-14);
}

TEST_CASE("closed form matches the oracle") {
  for (double depth : {0.0, 0.497}) {
    const auto pair = reference_pair(depth);
    for (int n = 2; n <= 6; ++n) {
      const auto closed = assemble_bob_cm(bell_condition_closed_form(pair, n), n);
      const auto oracle = bell_condition_oracle(joint_cm(pair, n), n);
      CHECK(max_abs(closed.matrix() - oracle.matrix()) < 1e-10);
    }
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> depth(0.0, 0.497);
  std::uniform_real_distribution<double> purity(0.2, 1.0);
  for (int sample = 0; sample < 20; ++sample) {
    const auto p = random_stable(rng);
    const auto pair = qelement::output_pair_cm(p, {purity(rng), depth(rng), 0.0});
    for (int n = 2; n <= 6; ++n) {
      const auto closed = assemble_bob_cm(bell_condition_closed_form(pair, n), n);
      const auto oracle = bell_condition_oracle(joint_cm(pair, n), n);
      CHECK(max_abs(closed.matrix() - oracle.matrix()) < 1e-10);
    }
  }
}

TEST_CASE("order of the x measurements does not matter") {
  const auto joint = joint_cm(reference_pair(0.497), 4);
  const auto base = bell_condition_oracle(joint, 4);
  std::vector<int> order{1, 2, 3};
  while (std::next_permutation(order.begin(), order.end())) {
    CHECK(max_abs(bell_condition_oracle(joint, 4, {}, order).matrix() - base.matrix()) < 1e-12);
  }
  CHECK(kind_is(ErrorKind::DomainError, [&] { bell_condition_oracle(joint, 4, {}, {1, 1, 2}); }));
}

TEST_CASE("heterogeneous networks use the oracle") {
  auto spec = reference_spec(3, 0.497, {0.0, 0.0, 1.0});
  const auto homogeneous = conditional_bob_cm(spec);
  spec.overrides[1] = qelement::reference_parameters();
  CHECK(max_abs(conditional_bob_cm(spec).matrix() - homogeneous.matrix()) < 1e-10);

  auto p = qelement::reference_parameters();
  p.g3 = 0.1;
  spec.overrides[1] = p;
  const auto mixed = conditional_bob_cm(spec);
  CHECK(sympgauss::is_physical(mixed).physical);
  CHECK(max_abs(mixed.matrix() - homogeneous.matrix()) > 1e-6);
}

TEST_CASE("network loss") {
  const auto bob = conditional_bob_cm(reference_spec(3, 0.497, {0.0, 0.0, 1.0}));
  CHECK(apply_network_loss(bob, reference_spec(3, 0.497, {0.005, 0.0, 1.0})).matrix() == bob.matrix());
  CHECK(network_transmissivity({0.005, 0.1, 0.99}) == doctest::Approx(0.9899505).epsilon(1e-7));
  const auto vac = apply_network_loss(CovMatrix::vacuum(3), reference_spec(3, 0.0, {0.2, 7.0, 0.9}));
  CHECK(max_abs(vac.matrix() - CovMatrix::vacuum(3).matrix()) < 1e-15);
}

TEST_CASE("pair entanglement and one-vs-rest fidelity") {
  CHECK(pair_entanglement(CovMatrix::vacuum(3), 0, 2) == 0.0);
  CHECK(one_vs_rest_fidelity(CovMatrix::vacuum(3)) == doctest::Approx(0.5));

  const auto v2 = conditional_bob_cm(reference_spec(2, 0.497, {0.0, 0.0, 1.0}));
  const double eta = sympgauss::min_symplectic_eig_pt(v2, sympgauss::Bipartition({1}, 2));
  CHECK(one_vs_rest_fidelity(v2) == doctest::Approx(sympgauss::fidelity_from_eig(eta)).epsilon(1e-12));

  const auto v = conditional_bob_cm(reference_spec(5, 0.497, {0.005, 0.1, 0.99}));
  const double e01 = pair_entanglement(v, 0, 1);
  CHECK(e01 > 0.0);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i != j) CHECK(std::abs(pair_entanglement(v, i, j) - e01) < 1e-12);
    }
  }
  CHECK(kind_is(ErrorKind::DomainError, [&] { pair_entanglement(v, 2, 2); }));
  CHECK(kind_is(ErrorKind::IndexOutOfRange, [&] { pair_entanglement(v, 0, 5); }));
}

TEST_CASE("lossless fidelity clears the threshold for up to four Bob modes") {
  for (int n = 2; n <= 4; ++n) {
    const auto v = conditional_bob_cm(reference_spec(n, 0.497, {0.0, 0.0, 1.0}));
    CHECK(one_vs_rest_fidelity(v) >= 2.0 / 3.0);
  }
}

TEST_CASE("fidelity does not increase with distance") {
  for (int n : {2, 3, 5}) {
    const auto bob = conditional_bob_cm(reference_spec(n, 0.497, {0.005, 0.0, 0.99}));
    double prev = 2.0;
    for (double l = 0.0; l <= 200.0; l += 2.5) {
      const double f = one_vs_rest_fidelity(apply_network_loss(bob, reference_spec(n, 0.497, {0.005, l, 0.99})));
      CHECK(f <= prev + 1e-15);
      prev = f;
    }
  }
}

TEST_CASE("entanglement and fidelity do not increase with the number of modes") {
  for (double depth : {0.0, 0.497}) {
    for (const Channel ch : {Channel{0.0, 0.0, 1.0}, Channel{0.005, 0.1, 0.99}}) {
      double prev_e = 1e9, prev_f = 2.0;
      for (int n = 2; n <= 10; ++n) {
        const auto spec = reference_spec(n, depth, ch);
        const auto v = apply_network_loss(conditional_bob_cm(spec), spec);
        const double e = pair_entanglement(v, 0, 1);
        const double f = one_vs_rest_fidelity(v);
        CHECK(e <= prev_e + 1e-12);
        CHECK(f <= prev_f + 1e-12);
        prev_e = e;
        prev_f = f;
      }
    }
  }
}

TEST_CASE("threshold consistency") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> l(0.0, 400.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = reference_spec(2 + trial % 6, 0.497, {0.005, l(rng), 0.99});
    const auto v = apply_network_loss(conditional_bob_cm(spec), spec);
    CHECK((one_vs_rest_fidelity(v) > 2.0 / 3.0) == (one_vs_rest_eta(v) < 0.25));
  }
}

TEST_CASE("every stage stays physical") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> depth(0.0, 0.497);
  std::uniform_real_distribution<double> purity(0.1, 1.0);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    NetworkSpec spec;
    spec.n_elements = 2 + trial % 7;
    spec.element = random_stable(rng);
    spec.noise = {purity(rng), depth(rng), 0.0};
    spec.channel = {0.005, dist(rng), 0.99};
    const auto pair = qelement::output_pair_cm(spec.element, spec.noise);
    CHECK(sympgauss::is_physical(pair).physical);
    const auto bob = conditional_bob_cm(spec);
    CHECK(sympgauss::is_physical(bob).physical);
    CHECK(sympgauss::is_physical(apply_network_loss(bob, spec)).physical);
  }
}
