#include "cvnet/telenet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cvnet/errors.hpp"

namespace cvnet::telenet {

using sympgauss::Matrix;
using sympgauss::Quadrature;

namespace {

// Relative x-y correlation in the Alice block below which the closed form is used.
constexpr double kClosedFormXY = 1e-12;

}  // namespace

void NetworkSpec::validate() const {
  if (n_elements < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  element.validate();
  noise.validate();
  for (const auto& [index, params] : overrides) {
    if (index < 0 || index >= n_elements) {
      throw Error(ErrorKind::IndexOutOfRange, "override for element " + std::to_string(index));
    }
    params.validate();
  }
  // Range checks for the channel live in channel_transmissivity.
  (void)network_transmissivity(channel);
}

const qelement::ElementParams& NetworkSpec::element_at(int j) const {
  const auto it = overrides.find(j);
  return it == overrides.end() ? element : it->second;
}

CovMatrix joint_cm(const CovMatrix& pair_cm, int n) {
  if (n < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  return joint_cm(std::vector<CovMatrix>(static_cast<std::size_t>(n), pair_cm));
}

CovMatrix joint_cm(const std::vector<CovMatrix>& pair_cms) {
  const int n = static_cast<int>(pair_cms.size());
  if (n < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  Matrix v = Matrix::Zero(4 * n, 4 * n);
  for (int j = 0; j < n; ++j) {
    const CovMatrix& pair = pair_cms[j];
    if (pair.n_modes() != 2) throw Error(ErrorKind::DomainError, "pair CM must have two modes");
    const int alice = 2 * j;
    const int bob = 2 * (n + j);
    v.block<2, 2>(alice, alice) = pair.block(0, 0);
    v.block<2, 2>(bob, bob) = pair.block(1, 1);
    v.block<2, 2>(alice, bob) = pair.block(0, 1);
    v.block<2, 2>(bob, alice) = pair.block(1, 0);
  }
  return CovMatrix(std::move(v));
}

Eigen::MatrixXd bs_cascade_matrix(int n) {
  if (n < 2) throw Error(ErrorKind::DomainError, "cascade needs at least two inputs");
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(n, n);
  o.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (int k = 2; k <= n; ++k) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(k) * (k - 1));
    for (int j = 0; j < k - 1; ++j) o(k - 1, j) = norm;
    o(k - 1, k - 1) = -(k - 1) * norm;
  }
  return o;
}

ConditionalBlocks bell_condition_closed_form(const CovMatrix& pair_cm, int n,
                                             const Tolerances& tol) {
  if (n < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  if (pair_cm.n_modes() != 2) throw Error(ErrorKind::DomainError, "pair CM must have two modes");
  const Eigen::Matrix2d va = pair_cm.block(0, 0);
  const Eigen::Matrix2d vb = pair_cm.block(1, 1);
  const Eigen::Matrix2d c = pair_cm.block(0, 1);

  Eigen::JacobiSVD<Eigen::Matrix2d> svd(va);
  const double smin = svd.singularValues()(1);
  if (!(smin > 0.0) || svd.singularValues()(0) / smin > tol.alice_condition) {
    throw Error(ErrorKind::SingularAliceBlock, "Alice block is ill-conditioned");
  }
  const Eigen::Matrix2d va_inv = va.inverse();
  const Eigen::Matrix2d z1 = Eigen::Vector2d(1.0, 0.0).asDiagonal();
  const Eigen::Matrix2d z2 = Eigen::Vector2d(0.0, 1.0).asDiagonal();

  // c^T carries the Bob-side index of the Alice/Bob correlation.
  const Eigen::Matrix2d x_term = c.transpose() * z1 * va_inv * z1 * c;
  const Eigen::Matrix2d y_term = c.transpose() * z2 * va_inv * z2 * c;
  const double inv_n = 1.0 / n;

  ConditionalBlocks blocks;
  blocks.v_diag = vb - (n - 1) * inv_n * x_term - inv_n * y_term;
  blocks.v_off = inv_n * x_term - inv_n * y_term;
  blocks.v_diag = 0.5 * (blocks.v_diag + blocks.v_diag.transpose()).eval();
  return blocks;
}

CovMatrix assemble_bob_cm(const ConditionalBlocks& blocks, int n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "need at least one Bob mode");
  Matrix v(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      v.block<2, 2>(2 * i, 2 * j) = i == j ? blocks.v_diag : blocks.v_off;
    }
  }
  return CovMatrix(std::move(v));
}

CovMatrix bell_condition_oracle(const CovMatrix& joint, int n, const Tolerances& tol,
                                std::vector<int> x_order) {
  if (n < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  if (joint.n_modes() != 2 * n) throw Error(ErrorKind::DomainError, "joint CM must have 2n modes");
  if (x_order.empty()) {
    x_order.resize(n - 1);
    std::iota(x_order.begin(), x_order.end(), 1);
  }
  {
    std::vector<int> sorted = x_order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(n - 1);
    std::iota(expected.begin(), expected.end(), 1);
    if (sorted != expected) {
      throw Error(ErrorKind::DomainError, "x_order must be a permutation of 1..n-1");
    }
  }

  const Eigen::MatrixXd o = bs_cascade_matrix(n);
  Matrix s = Matrix::Identity(4 * n, 4 * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      s(2 * k, 2 * j) = o(k, j);
      s(2 * k + 1, 2 * j + 1) = o(k, j);
    }
  }
  CovMatrix state = sympgauss::symplectic_transform(joint, s, tol);

  // Cascade outputs occupy the leading modes; track where each one sits.
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  const auto condition = [&](int label, Quadrature q) {
    const auto pos = std::find(labels.begin(), labels.end(), label) - labels.begin();
    state = sympgauss::homodyne_condition(state, static_cast<int>(pos), q, tol);
    labels.erase(labels.begin() + pos);
  };
  condition(0, Quadrature::Y);
  for (int label : x_order) condition(label, Quadrature::X);
  return state;
}

double network_transmissivity(const Channel& channel) {
  return sympgauss::channel_transmissivity(channel.eta0, channel.alpha, channel.distance);
}

CovMatrix apply_network_loss(const CovMatrix& v, const NetworkSpec& spec) {
  return sympgauss::lossy_channel(v, network_transmissivity(spec.channel));
}

double pair_entanglement(const CovMatrix& v, int i, int j, const Tolerances& tol) {
  if (i == j) throw Error(ErrorKind::DomainError, "pair entanglement needs distinct modes");
  const std::vector<int> modes{i, j};
  const CovMatrix pair = sympgauss::reduced_cm(v, modes);
  return sympgauss::log_negativity(pair, sympgauss::Bipartition({0}, 2), tol);
}

double one_vs_rest_eta(const CovMatrix& v, const Tolerances& tol) {
  if (v.n_modes() < 2) throw Error(ErrorKind::DomainError, "need at least two Bob modes");
  return sympgauss::min_symplectic_eig_pt(v, sympgauss::Bipartition::one_vs_rest(0, v.n_modes()),
                                          tol);
}

double one_vs_rest_fidelity(const CovMatrix& v, const Tolerances& tol) {
  return sympgauss::fidelity_from_eig(one_vs_rest_eta(v, tol));
}

bool closed_form_applies(const CovMatrix& pair_cm) {
  const Eigen::Matrix2d va = pair_cm.block(0, 0);
  return std::abs(va(0, 1)) <= kClosedFormXY * std::max(1.0, va.cwiseAbs().maxCoeff());
}

CovMatrix bell_condition(const std::vector<CovMatrix>& pair_cms, const Tolerances& tol) {
  const int n = static_cast<int>(pair_cms.size());
  if (n < 2) throw Error(ErrorKind::DomainError, "network needs at least two elements");
  const bool identical = std::all_of(pair_cms.begin(), pair_cms.end(), [&](const CovMatrix& v) {
    return v.matrix() == pair_cms.front().matrix();
  });
  if (identical && closed_form_applies(pair_cms.front())) {
    return assemble_bob_cm(bell_condition_closed_form(pair_cms.front(), n, tol), n);
  }
  return bell_condition_oracle(joint_cm(pair_cms), n, tol);
}

CovMatrix conditional_bob_cm(const NetworkSpec& spec, const Tolerances& tol) {
  spec.validate();
  std::vector<CovMatrix> pairs;
  pairs.reserve(spec.n_elements);
  for (int j = 0; j < spec.n_elements; ++j) {
    pairs.push_back(qelement::output_pair_cm(spec.element_at(j), spec.noise, tol));
  }
  return bell_condition(pairs, tol);
}

}  // namespace cvnet::telenet
