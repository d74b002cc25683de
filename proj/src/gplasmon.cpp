#include "cvnet/gplasmon.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvnet/errors.hpp"

namespace cvnet::gplasmon {

using namespace constants;

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
}  // namespace

void GrapheneDevice::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"n0", n0}, {"C", C}, {"Ar", Ar}, {"T", T}, {"tau", tau}, {"vF", vF}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorKind::DomainError, std::string("device field ") + name + " must be positive");
    }
  }
}

PerturbedScalar chemical_potential(const GrapheneDevice& dev) {
  const double root = std::sqrt(kPi * dev.n0);
  return {kHbar * dev.vF * root, kHbar * dev.vF * dev.C / (kElementaryCharge * root)};
}

Conductivity surface_conductivity(const GrapheneDevice& dev, double omega) {
  dev.validate();
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::DomainError, "angular frequency must be positive");
  }
  const PerturbedScalar mu = chemical_potential(dev);
  const double mu1 = mu.zeroth.real();
  const double mu2 = mu.first.real();
  const double e2 = kElementaryCharge * kElementaryCharge;
  const double kt = kBoltzmann * dev.T;
  const Complex w = omega + kI * 2.0 * kPi / dev.tau;

  Conductivity out;
  out.log_argument = (4.0 * kPi * mu1 - kHbar * w) / (4.0 * kPi * mu1 + kHbar * w);
  out.near_branch_cut = out.log_argument.real() < 0.0 &&
                        std::abs(out.log_argument.imag()) <= 1e-9 * std::abs(out.log_argument);

  out.interband = kI * e2 / (4.0 * kPi * kHbar) * std::log(out.log_argument);
  out.intraband = kI * 2.0 * e2 * kt / (kHbar * kHbar * w) *
                  (mu1 / kt + 2.0 * std::log1p(std::exp(-mu1 / kt)));
  out.sigma.zeroth = out.interband + out.intraband;

  const Complex resonant =
      kI * e2 / (kPi * kHbar) * (w * kHbar) / (4.0 * mu1 * mu1 - w * w * kHbar * kHbar) * mu2;
  const Complex thermal =
      kI * e2 * kt / (kPi * kHbar * kHbar * w) * std::tanh(mu1 / (2.0 * kt)) * mu2 / kt;
  out.sigma.first = resonant + thermal;
  return out;
}

Complex spp_dispersion(Complex sigma1, double omega) {
  if (sigma1 == Complex{0.0, 0.0}) throw Error(ErrorKind::ZeroConductivity, "σ⁽¹⁾ = 0");
  const Complex z_sigma = kVacuumImpedance * sigma1;
  Complex beta = (omega / kSpeedOfLight) * std::sqrt(1.0 - 4.0 / (z_sigma * z_sigma));
  if (beta.imag() < 0.0) beta = -beta;
  return beta;
}

Complex perturbed_dispersion(Complex beta1, Complex sigma1, Complex sigma2,
                             double min_denominator) {
  const Complex half = kVacuumImpedance * sigma1 / 2.0;
  const Complex denominator = sigma1 * (1.0 - half * half);
  if (std::abs(denominator) <= min_denominator) {
    throw Error(ErrorKind::NearSingularDenominator, "operating point sits at the SPP cutoff");
  }
  return beta1 * sigma2 / denominator;
}

PerturbedScalar effective_permittivity(Complex beta1, Complex beta2, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::DomainError, "wavenumber must be positive");
  return {(beta1 / k) * (beta1 / k), 2.0 * beta1 * beta2 / (k * k)};
}

DeviceRow evaluate_device(const GrapheneDevice& dev, double omega) {
  DeviceRow row;
  row.omega = omega;
  row.mu = chemical_potential(dev);
  row.conductivity = surface_conductivity(dev, omega);
  row.beta1 = spp_dispersion(row.conductivity.sigma.zeroth, omega);
  row.beta2 = perturbed_dispersion(row.beta1, row.conductivity.sigma.zeroth,
                                   row.conductivity.sigma.first);
  row.eps = effective_permittivity(row.beta1, row.beta2, omega / kSpeedOfLight);
  return row;
}

}  // namespace cvnet::gplasmon
