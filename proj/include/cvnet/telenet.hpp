#pragma once

// N-element teleportation network: joint Alice/Bob covariance, multipartite
// Bell measurement on the Alice modes, channel loss on the Bob modes, and the
// entanglement/fidelity figures of merit.
//
// Joint-state ordering: Alice modes 0..N-1, then Bob modes N..2N-1.

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cvnet/qelement.hpp"
#include "cvnet/sympgauss.hpp"
#include "cvnet/tolerances.hpp"

namespace cvnet::telenet {

using sympgauss::CovMatrix;

struct Channel {
  double alpha = 0.0;     // dB/km
  double distance = 0.0;  // km, identical for every Bob mode
  double eta0 = 1.0;      // detection/coupling inefficiency, (0, 1]
};

struct NetworkSpec {
  int n_elements = 2;
  qelement::ElementParams element;
  qelement::MicrowaveNoise noise;
  Channel channel;
  /// Per-element replacements for `element`, keyed by 0-based element index.
  std::map<int, qelement::ElementParams> overrides;

  void validate() const;
  bool homogeneous() const { return overrides.empty(); }
  const qelement::ElementParams& element_at(int j) const;
};

/// Conditional Bob blocks: every diagonal block is `v_diag`, every
/// off-diagonal block `v_off`.
struct ConditionalBlocks {
  Eigen::Matrix2d v_diag;
  Eigen::Matrix2d v_off;
};

/// Joint 2N-mode covariance of N independent identical pairs.
CovMatrix joint_cm(const CovMatrix& pair_cm, int n);

/// Same for heterogeneous pairs (one 2-mode CM per element).
CovMatrix joint_cm(const std::vector<CovMatrix>& pair_cms);

/// Orthogonal n×n matrix of the beam-splitter cascade.  Row 0 is the
/// symmetric combination; row k mixes the first k+1 inputs.
Eigen::MatrixXd bs_cascade_matrix(int n);

/// Bob-mode conditional blocks after the Bell measurement, in closed form.
ConditionalBlocks bell_condition_closed_form(const CovMatrix& pair_cm, int n,
                                             const Tolerances& tol = {});

/// Fully symmetric n-mode covariance built from the conditional blocks.
CovMatrix assemble_bob_cm(const ConditionalBlocks& blocks, int n);

/// Beam-splitter cascade plus sequential homodyne conditioning on the joint
/// state: y on the symmetric output, x on the others, in the given order of
/// cascade outputs 1..n-1 (default ascending).
CovMatrix bell_condition_oracle(const CovMatrix& joint, int n, const Tolerances& tol = {},
                                std::vector<int> x_order = {});

double network_transmissivity(const Channel& channel);

/// Uniform lossy channel on all Bob modes.
CovMatrix apply_network_loss(const CovMatrix& v, const NetworkSpec& spec);

/// Logarithmic negativity of the (i, j) reduced state.
double pair_entanglement(const CovMatrix& v, int i, int j, const Tolerances& tol = {});

/// Smallest PT symplectic eigenvalue for mode 0 against all others.
double one_vs_rest_eta(const CovMatrix& v, const Tolerances& tol = {});

double one_vs_rest_fidelity(const CovMatrix& v, const Tolerances& tol = {});

/// The closed form treats Z V_a⁻¹ Z as the inverse of the measured variance,
/// which is exact only when the Alice block has no x-y correlation.
bool closed_form_applies(const CovMatrix& pair_cm);

/// Conditional Bob state for one pair CM per element: the closed form when
/// all pairs are identical and it applies, the oracle otherwise.
CovMatrix bell_condition(const std::vector<CovMatrix>& pair_cms, const Tolerances& tol = {});

/// bell_condition on the element outputs of `spec`.
CovMatrix conditional_bob_cm(const NetworkSpec& spec, const Tolerances& tol = {});

}  // namespace cvnet::telenet
