#pragma once

// Graphene plasmonic waveguide calculator (SI units throughout).
//
// Each quantity is expanded to first order in the microwave voltage
// amplitude: q = q⁽⁰⁾ + ν q⁽¹⁾ e^{-iω_m t} + c.c.  `PerturbedScalar` holds the
// two coefficients.

#include <complex>

namespace cvnet::gplasmon {

using Complex = std::complex<double>;

// CODATA 2018.
namespace constants {
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K
inline constexpr double kSpeedOfLight = 299792458.0;     // m/s
inline constexpr double kVacuumImpedance = 376.730313668;  // Ω
}  // namespace constants

struct GrapheneDevice {
  double n0 = 0.0;   // intrinsic electron density, m^-2
  double C = 0.0;    // capacitance per unit area, F/m^2
  double Ar = 0.0;   // electrode area, m^2
  double T = 0.0;    // temperature, K
  double tau = 0.0;  // relaxation time, s (Γ = 1/τ)
  double vF = 0.0;   // Fermi velocity, m/s

  void validate() const;
};

struct PerturbedScalar {
  Complex zeroth;
  Complex first;
};

/// Chemical potential in joules.
PerturbedScalar chemical_potential(const GrapheneDevice& dev);

struct Conductivity {
  PerturbedScalar sigma;  // siemens
  Complex interband;      // the two parts of sigma.zeroth
  Complex intraband;
  /// Interband log argument lies on or next to the negative real axis.
  bool near_branch_cut = false;
  Complex log_argument;
};

Conductivity surface_conductivity(const GrapheneDevice& dev, double omega);

/// β⁽¹⁾ = (ω/c) √(1 - 4/(Z₀σ)²), branch with Im β ≥ 0.
Complex spp_dispersion(Complex sigma1, double omega);

/// β⁽²⁾ = β⁽¹⁾σ⁽²⁾ / [σ⁽¹⁾(1 - (Z₀σ⁽¹⁾/2)²)].
Complex perturbed_dispersion(Complex beta1, Complex sigma1, Complex sigma2,
                             double min_denominator = 1e-30);

/// ε⁽¹⁾ = (β⁽¹⁾/k)², ε⁽²⁾ = 2β⁽¹⁾β⁽²⁾/k².
PerturbedScalar effective_permittivity(Complex beta1, Complex beta2, double k);

/// Everything the device calculator reports at one angular frequency.
struct DeviceRow {
  double omega;
  PerturbedScalar mu;
  Conductivity conductivity;
  Complex beta1;
  Complex beta2;
  PerturbedScalar eps;
};

DeviceRow evaluate_device(const GrapheneDevice& dev, double omega);

}  // namespace cvnet::gplasmon
