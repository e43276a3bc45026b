#pragma once

// Single atom coupled to a Gaussian TEM00 mode in free space: the classical
// dipole-oscillator polarizability, the mode coupling beta, and the
// scattering, absorption, and dispersion derived from it.

#include <algorithm>
#include <cmath>
#include <complex>

#include "cavityqed/constants.hpp"
#include "cavityqed/errors.hpp"

namespace cavityqed {

using complex = std::complex<double>;

/// Two-level dipole transition: resonance frequency and linewidth, both in
/// rad/s.
class AtomTransition {
 public:
  AtomTransition(double omega_a, double gamma) : omega_a_(omega_a), gamma_(gamma) {
    detail::require_positive(omega_a, "omega_a");
    detail::require_positive(gamma, "gamma");
  }

  static AtomTransition from_wavelength(double lambda0, double gamma) {
    detail::require_positive(lambda0, "lambda0");
    return AtomTransition(2.0 * pi * si::c / lambda0, gamma);
  }

  double omega_a() const noexcept { return omega_a_; }
  double gamma() const noexcept { return gamma_; }
  double k0() const noexcept { return omega_a_ / si::c; }
  double wavelength() const noexcept { return 2.0 * pi / k0(); }

  // The oscillator model assumes a narrow line; flagged, not rejected.
  bool broad_line() const noexcept { return gamma_ / omega_a_ > 1e-3; }

 private:
  double omega_a_;
  double gamma_;
};

inline double free_space_cooperativity(double k, double waist) {
  return 6.0 / (k * k * waist * waist);
}

/// Gaussian TEM00 mode of wavenumber k (rad/m) and waist w (m).
class GaussianMode {
 public:
  GaussianMode(double k, double waist) : k_(k), waist_(waist) {
    detail::require_positive(k, "k");
    detail::require_positive(waist, "waist");
  }

  static GaussianMode matched(const AtomTransition& atom, double waist) {
    return GaussianMode(atom.k0(), waist);
  }

  double k() const noexcept { return k_; }
  double waist() const noexcept { return waist_; }
  double wavelength() const noexcept { return 2.0 * pi / k_; }
  double rayleigh_range() const noexcept { return pi * waist_ * waist_ / wavelength(); }
  double area() const noexcept { return pi * waist_ * waist_ / 2.0; }
  double eta_fs() const noexcept { return free_space_cooperativity(k_, waist_); }

  // w >~ lambda; outside it the formulas still evaluate but lose accuracy.
  bool paraxial() const noexcept { return k_ * waist_ >= 2.0 * pi; }

 private:
  double k_;
  double waist_;
};

/// Dimensionless coupling beta between a drive amplitude and the amplitude
/// the atom emits into the mode, E_M = i beta E. eta_fs is the geometric
/// cooperativity at the same wavenumber, so that |beta|^2 = eta_fs Im(beta)
/// holds for a physical polarizability.
struct ComplexCoupling {
  complex value;
  double eta_fs = 0.0;

  double optical_theorem_residual() const {
    const double lhs = std::norm(value);
    const double rhs = eta_fs * value.imag();
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  }
};

/// Mode amplitude in sqrt(W); a traveling amplitude carries |value|^2 / 2.
struct ModeAmplitude {
  complex value;

  double power() const noexcept { return std::norm(value) / 2.0; }
  double norm() const noexcept { return std::norm(value); }
};

struct DetuningPair {
  double delta_a = 0.0;  // omega - omega_A
  double delta_c = 0.0;  // omega - omega_c
};

inline double lorentzian_absorptive(double delta, double gamma) {
  return gamma * gamma / (gamma * gamma + 4.0 * delta * delta);
}

inline double lorentzian_dispersive(double delta, double gamma) {
  return -2.0 * delta * gamma / (gamma * gamma + 4.0 * delta * delta);
}

/// Classical radiation-damped oscillator polarizability (SI, C m^2 / V).
inline complex polarizability_exact(double omega, const AtomTransition& atom) {
  detail::require_positive(omega, "omega");
  const double wa = atom.omega_a();
  const double wa2 = wa * wa;
  const double prefactor = 6.0 * pi * si::epsilon0 * si::c * si::c * si::c * atom.gamma() / wa2;
  const complex denominator(wa2 - omega * omega, -(omega * omega * omega / wa2) * atom.gamma());
  return prefactor / denominator;
}

/// beta = k alpha / (pi w^2 eps0) with alpha and k both taken at the drive
/// frequency omega.
inline ComplexCoupling beta_exact(double omega, const AtomTransition& atom, const GaussianMode& mode) {
  const complex alpha = polarizability_exact(omega, atom);
  const double k = omega / si::c;
  const double w = mode.waist();
  return {k / (pi * w * w) * alpha / si::epsilon0, free_space_cooperativity(k, w)};
}

/// Rotating-wave form beta = eta_fs (L_d + i L_a).
inline ComplexCoupling beta_rwa(double delta_a, double gamma, double eta_fs) {
  detail::require_finite(delta_a, "delta_a");
  detail::require_positive(gamma, "gamma");
  detail::require_finite(eta_fs, "eta_fs");
  return {eta_fs * complex(lorentzian_dispersive(delta_a, gamma), lorentzian_absorptive(delta_a, gamma)),
          eta_fs};
}

/// Power scattered into all free-space modes, P_fs = Im(beta) |E|^2.
inline double scattered_power_fs(const ComplexCoupling& beta, const ModeAmplitude& drive) {
  detail::require_finite(beta.value, "beta");
  detail::require_finite(drive.value, "drive");
  return beta.value.imag() * drive.norm();
}

/// Power emitted into both directions of the mode, 2 P_M = |beta E|^2.
inline double mode_emission_bidirectional(const ComplexCoupling& beta, const ModeAmplitude& drive) {
  return std::norm(beta.value) * drive.norm();
}

/// 2 P_M / P_fs. Equals eta_fs for any physical beta.
inline double mode_to_free_space_ratio(const ComplexCoupling& beta) {
  return std::norm(beta.value) / beta.value.imag();
}

/// P_abs / P_in = Im(2 beta), from energy conservation.
inline double absorption_fraction(const ComplexCoupling& beta) { return 2.0 * beta.value.imag(); }

/// Same quantity from the forward interference of the incident field with
/// the forward-scattered field, dropping the O((kw)^-2) |E_M|^2 term.
inline double absorption_fraction_interference(const ComplexCoupling& beta, const ModeAmplitude& drive) {
  const complex e = drive.value;
  const complex em = complex(0.0, 1.0) * beta.value * e;
  return -(e * std::conj(em) + std::conj(e) * em).real() / std::norm(e);
}

/// sigma = Im(2 beta) A.
inline double cross_section(const ComplexCoupling& beta, const GaussianMode& mode) {
  return absorption_fraction(beta) * mode.area();
}

inline double resonant_cross_section(double k0) { return 6.0 * pi / (k0 * k0); }

/// Atom-induced phase shift of the transmitted mode, Re(beta).
inline double phase_shift(const ComplexCoupling& beta) { return beta.value.real(); }

// (1 + i beta) ~ exp(i beta) needs |beta| << 1.
inline bool phase_linearization_valid(const ComplexCoupling& beta) { return std::abs(beta.value) <= 0.1; }

}  // namespace cavityqed
