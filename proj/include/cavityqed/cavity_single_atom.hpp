#pragma once

// One atom at an antinode near the waist of a standing-wave resonator with two
// identical lossless mirrors. Two drive scenarios:
//   driven cavity: light enters through a mirror; the atom absorbs and
//     disperses the circulating field.
//   driven atom: light hits the atom from the side; the atom scatters into
//     the cavity, and the cavity field acts back on the dipole.
//
// Each quantity exists twice: an exact path taking beta (any frequency), and a
// rotating-wave path parameterized only by eta_c, kappa and Gamma.

#include <cmath>
#include <complex>

#include "cavityqed/atom_optics.hpp"

namespace cavityqed {

/// Mirror power transmission q^2 and cavity length L (m).
class CavitySpec {
 public:
  CavitySpec(double q_sq, double length) : q_sq_(q_sq), length_(length) {
    detail::require_positive(q_sq, "q_sq");
    detail::require_positive(length, "length");
    if (q_sq >= 1.0) throw InvalidArgument("mirror transmission q^2 must be < 1");
  }

  static CavitySpec from_kappa_finesse(double kappa, double finesse) {
    detail::require_positive(kappa, "kappa");
    detail::require_positive(finesse, "finesse");
    const double q_sq = pi / finesse;
    return CavitySpec(q_sq, q_sq * si::c / kappa);
  }

  double q_sq() const noexcept { return q_sq_; }
  double q() const noexcept { return std::sqrt(q_sq_); }
  double r_sq() const noexcept { return 1.0 - q_sq_; }
  double length() const noexcept { return length_; }
  /// Energy decay rate (rad/s), also the full linewidth.
  double kappa() const noexcept { return q_sq_ * si::c / length_; }
  double finesse() const noexcept { return pi / q_sq_; }
  double free_spectral_range() const noexcept { return pi * si::c / length_; }

  /// eta_c = 4 eta_fs / q^2 for an atom at an antinode of `mode`.
  double eta_c(const GaussianMode& mode) const { return 4.0 * mode.eta_fs() / q_sq_; }

  // Single-round-trip expansion of r^2 exp(2ikL) needs q^2 << 1.
  bool high_transmission() const noexcept { return q_sq_ > 0.1; }
  bool detuning_in_range(double delta_c) const noexcept {
    return std::abs(delta_c) <= 0.1 * free_spectral_range();
  }

 private:
  double q_sq_;
  double length_;
};

/// Dimensionless parameterization used by all spectra: cooperativity and
/// cavity linewidth in units of the atomic linewidth.
struct AbstractScenario {
  double eta_c = 0.0;
  double kappa_over_gamma = 1.0;
  double gamma = 1.0;

  void validate() const {
    detail::require_finite(eta_c, "eta_c");
    if (eta_c < 0.0) throw InvalidArgument("eta_c must be >= 0");
    detail::require_positive(kappa_over_gamma, "kappa_over_gamma");
    detail::require_positive(gamma, "gamma");
  }
  double kappa() const noexcept { return kappa_over_gamma * gamma; }
};

/// Geometric parameterization: atom, mode matched to it, mirrors.
struct PhysicalScenario {
  AtomTransition atom;
  GaussianMode mode;
  CavitySpec cavity;

  PhysicalScenario(AtomTransition a, double waist, CavitySpec c)
      : atom(a), mode(GaussianMode::matched(a, waist)), cavity(c) {}

  double eta_c() const { return cavity.eta_c(mode); }
  double kappa() const { return cavity.kappa(); }

  AbstractScenario to_abstract() const { return {eta_c(), kappa() / atom.gamma(), atom.gamma()}; }
};

namespace detail {

inline void check_rwa_inputs(double delta_a, double delta_c, double eta_c, double gamma, double kappa) {
  require_finite(delta_a, "delta_a");
  require_finite(delta_c, "delta_c");
  require_finite(eta_c, "eta_c");
  if (eta_c < 0.0) throw InvalidArgument("cooperativity must be >= 0");
  require_positive(gamma, "gamma");
  require_positive(kappa, "kappa");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact path

/// 1 - i 2 delta_c / kappa - i 4 beta / q^2, the inverse round-trip gain of
/// the coupled system. `beta` may be an ensemble-scaled coupling N H beta.
inline complex round_trip_bracket(complex beta, double delta_c, const CavitySpec& cavity) {
  detail::require_finite(beta, "beta");
  detail::require_finite(delta_c, "delta_c");
  if (beta.imag() < 0.0) {
    throw NumericError("Im(beta) < 0 describes gain; the passive cavity model has no steady state");
  }
  const complex i(0.0, 1.0);
  return 1.0 - i * (2.0 * delta_c / cavity.kappa()) - i * 4.0 * beta / cavity.q_sq();
}

/// Traveling intracavity amplitude for light incident through one mirror.
inline ModeAmplitude intracavity_field_driven_cavity(const ComplexCoupling& beta, double delta_c,
                                                     const CavitySpec& cavity, ModeAmplitude incident) {
  const complex i(0.0, 1.0);
  return {i * incident.value / cavity.q() / round_trip_bracket(beta.value, delta_c, cavity)};
}

/// P_tr / P_in with P_tr = q^2 |E_c|^2 / 2.
inline double transmission_exact(const ComplexCoupling& beta, double delta_c, const CavitySpec& cavity) {
  const ModeAmplitude ec = intracavity_field_driven_cavity(beta, delta_c, cavity, {complex(1.0, 0.0)});
  return cavity.q_sq() * ec.norm();
}

/// P_fs / P_in for the driven cavity: Im(4 beta) |E_c|^2 over |E_in|^2 / 2.
inline double fs_emission_driven_cavity_exact(const ComplexCoupling& beta, double delta_c,
                                              const CavitySpec& cavity) {
  const ModeAmplitude ec = intracavity_field_driven_cavity(beta, delta_c, cavity, {complex(1.0, 0.0)});
  return 2.0 * 4.0 * beta.value.imag() * ec.norm();
}

struct DrivenAtomFields {
  ModeAmplitude cavity;    // E_c, traveling intracavity amplitude
  ModeAmplitude emission;  // E_M, the atom's per-pass source amplitude
};

/// Self-consistent fields for an atom driven from the side by `side_drive`
/// and by the standing wave 2 E_c at its antinode.
inline DrivenAtomFields driven_atom_fields(const ComplexCoupling& beta, double delta_c, const CavitySpec& cavity,
                                           ModeAmplitude side_drive) {
  const complex i(0.0, 1.0);
  const complex bracket = round_trip_bracket(beta.value, delta_c, cavity);
  const complex ec = 2.0 * i * beta.value * side_drive.value / cavity.q_sq() / bracket;
  const complex em = i * beta.value * side_drive.value * (1.0 - i * (2.0 * delta_c / cavity.kappa())) / bracket;
  return {{ec}, {em}};
}

/// P_c / P_fs^0: bidirectional cavity output q^2 |E_c|^2 relative to the
/// free-space emission without cavity |beta E_in|^2 / eta_fs.
inline double cavity_emission_exact(const ComplexCoupling& beta, double delta_c, const CavitySpec& cavity) {
  const auto f = driven_atom_fields(beta, delta_c, cavity, {complex(1.0, 0.0)});
  return cavity.q_sq() * f.cavity.norm() * beta.eta_fs / std::norm(beta.value);
}

/// P_fs / P_fs^0 = |E_M|^2 / |beta E_in|^2.
inline double fs_emission_driven_atom_exact(const ComplexCoupling& beta, double delta_c, const CavitySpec& cavity) {
  const auto f = driven_atom_fields(beta, delta_c, cavity, {complex(1.0, 0.0)});
  return f.emission.norm() / std::norm(beta.value);
}

// ---------------------------------------------------------------------------
// Rotating-wave path

/// [1 + eta L_a]^2 + [2 delta_c / kappa + eta L_d]^2.
inline double rwa_denominator(double delta_a, double delta_c, double eta_c, double gamma, double kappa) {
  detail::check_rwa_inputs(delta_a, delta_c, eta_c, gamma, kappa);
  const double absorptive = 1.0 + eta_c * lorentzian_absorptive(delta_a, gamma);
  const double dispersive = 2.0 * delta_c / kappa + eta_c * lorentzian_dispersive(delta_a, gamma);
  return absorptive * absorptive + dispersive * dispersive;
}

inline double transmission_rwa(double delta_a, double delta_c, double eta_c, double gamma, double kappa) {
  return 1.0 / rwa_denominator(delta_a, delta_c, eta_c, gamma, kappa);
}

/// Driven-cavity free-space scattering P_fs / P_in.
inline double fs_emission_driven_cavity_rwa(double delta_a, double delta_c, double eta_c, double gamma,
                                            double kappa) {
  return 2.0 * eta_c * lorentzian_absorptive(delta_a, gamma) /
         rwa_denominator(delta_a, delta_c, eta_c, gamma, kappa);
}

/// Dispersive shift of the cavity resonance in units of kappa.
inline double cavity_shift_rwa(double delta_a, double eta_c, double gamma, double kappa) {
  detail::check_rwa_inputs(delta_a, 0.0, eta_c, gamma, kappa);
  return -0.5 * eta_c * lorentzian_dispersive(delta_a, gamma);
}

// The shift is only a shift while absorption leaves the finesse intact.
inline bool cavity_shift_interpretable(double delta_a, double eta_c, double gamma) {
  return eta_c * lorentzian_absorptive(delta_a, gamma) < 1.0;
}

/// Driven-atom bidirectional cavity emission P_c / P_fs^0.
inline double cavity_emission_rwa(double delta_a, double delta_c, double eta_c, double gamma, double kappa) {
  return eta_c / rwa_denominator(delta_a, delta_c, eta_c, gamma, kappa);
}

/// Driven-atom free-space emission P_fs / P_fs^0.
inline double fs_emission_driven_atom_rwa(double delta_a, double delta_c, double eta_c, double gamma,
                                          double kappa) {
  const double x = 2.0 * delta_c / kappa;
  return (1.0 + x * x) / rwa_denominator(delta_a, delta_c, eta_c, gamma, kappa);
}

/// Transmission of the side beam, T = 1 - (P_fs + P_c) / P_in, where
/// `depth0` is the resonant single-pass absorption without the cavity.
inline double sidebeam_transmission(double delta_a, double delta_c, double eta_c, double gamma, double kappa,
                                    double depth0) {
  detail::require_finite(depth0, "depth0");
  if (depth0 < 0.0 || depth0 > 0.3) {
    throw InvalidArgument("sidebeam depth must lie in [0, 0.3]");
  }
  const double scattered = fs_emission_driven_atom_rwa(delta_a, delta_c, eta_c, gamma, kappa) +
                           cavity_emission_rwa(delta_a, delta_c, eta_c, gamma, kappa);
  return 1.0 - depth0 * lorentzian_absorptive(delta_a, gamma) * scattered;
}

}  // namespace cavityqed
