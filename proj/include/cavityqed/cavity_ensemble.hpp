#pragma once

// N atoms in the standing-wave cavity (axis z), optionally driven by a side
// beam traveling along x. The standing wave weights each atom by cos(k z_j):
// absorption and dispersion go with H = <cos^2 kz>, coherent side-beam
// scattering into the cavity with G = <exp(ikx) cos kz>.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cavityqed/cavity_single_atom.hpp"
#include "cavityqed/ensemble_free_space.hpp"
#include "cavityqed/vec3.hpp"

namespace cavityqed {

class CavityEnsembleLayout {
 public:
  /// `waist` enables the near-axis check; without it radial offsets are not
  /// inspected.
  CavityEnsembleLayout(std::vector<Vec3> positions, double k, std::optional<double> waist = std::nullopt)
      : positions_(std::move(positions)), k_(k), waist_(waist) {
    if (positions_.empty()) throw InvalidArgument("ensemble needs at least one atom");
    for (const auto& r : positions_) {
      if (!finite(r)) throw InvalidArgument("atom positions must be finite");
    }
    detail::require_positive(k, "k");
    if (waist_) detail::require_positive(*waist_, "waist");
  }

  const std::vector<Vec3>& positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  double k() const noexcept { return k_; }

  // Coupling is taken as on-axis for every atom; true when this is false.
  bool radial_warning() const {
    if (!waist_) return false;
    for (const auto& r : positions_) {
      if (std::hypot(r.x, r.y) > *waist_ / 4.0) return true;
    }
    return false;
  }

 private:
  std::vector<Vec3> positions_;
  double k_;
  std::optional<double> waist_;
};

struct CollectiveFactors {
  double H = 1.0;
  complex G = 1.0;
  std::size_t N = 1;

  /// 0 <= H <= 1 and |G|^2 <= H (Cauchy-Schwarz over the cos kz weights).
  bool consistent(double tol = 1e-12) const {
    return H >= -tol && H <= 1.0 + tol && std::norm(G) <= H + tol;
  }
};

/// H and G from one pass over the same positions.
inline CollectiveFactors collective_factors(const CavityEnsembleLayout& layout) {
  const double k = layout.k();
  double h = 0.0;
  complex g = 0.0;
  for (const auto& r : layout.positions()) {
    const double c = std::cos(k * r.z);
    h += c * c;
    g += complex(std::cos(k * r.x), std::sin(k * r.x)) * c;
  }
  const double n = static_cast<double>(layout.size());
  return {h / n, g / n, layout.size()};
}

inline double collective_H(const CavityEnsembleLayout& layout) { return collective_factors(layout).H; }
inline complex collective_G(const CavityEnsembleLayout& layout) { return collective_factors(layout).G; }

namespace detail {

inline double effective_eta(double eta_c, std::size_t n_atoms, double H) {
  require_finite(H, "H");
  if (H < 0.0 || H > 1.0) throw InvalidArgument("H must lie in [0, 1]");
  return H * static_cast<double>(n_atoms) * eta_c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rotating-wave path: the single-atom formulas with eta_c -> H N eta_c.

inline double ensemble_transmission_rwa(double delta_a, double delta_c, double eta_c, std::size_t n_atoms, double H,
                                        double gamma, double kappa) {
  return transmission_rwa(delta_a, delta_c, detail::effective_eta(eta_c, n_atoms, H), gamma, kappa);
}

/// Atoms add their free-space emission incoherently.
inline double ensemble_fs_emission_rwa(double delta_a, double delta_c, double eta_c, std::size_t n_atoms, double H,
                                       double gamma, double kappa) {
  return fs_emission_driven_cavity_rwa(delta_a, delta_c, detail::effective_eta(eta_c, n_atoms, H), gamma, kappa);
}

inline double ensemble_cavity_shift_rwa(double delta_a, double eta_c, std::size_t n_atoms, double H, double gamma,
                                        double kappa) {
  return cavity_shift_rwa(delta_a, detail::effective_eta(eta_c, n_atoms, H), gamma, kappa);
}

/// Side-driven ensemble: P_c^(N) / P_fs^0 for one atom without cavity.
inline double ensemble_cavity_scattering_rwa(double delta_a, double delta_c, double eta_c,
                                             const CollectiveFactors& factors, double gamma, double kappa) {
  if (!factors.consistent()) {
    throw InvalidArgument("collective factors violate |G|^2 <= H <= 1");
  }
  const double n = static_cast<double>(factors.N);
  const double eta_eff = detail::effective_eta(eta_c, factors.N, factors.H);
  return std::norm(factors.G) * n * n * eta_c / rwa_denominator(delta_a, delta_c, eta_eff, gamma, kappa);
}

inline double ensemble_cavity_scattering_rwa(double delta_a, double delta_c, double eta_c, std::size_t n_atoms,
                                             complex G, double H, double gamma, double kappa) {
  return ensemble_cavity_scattering_rwa(delta_a, delta_c, eta_c, CollectiveFactors{H, G, n_atoms}, gamma, kappa);
}

// ---------------------------------------------------------------------------
// Exact path: the cavity sees the coupling N H beta.

inline double ensemble_transmission_exact(const ComplexCoupling& beta, std::size_t n_atoms, double H, double delta_c,
                                          const CavitySpec& cavity) {
  const double scale = detail::effective_eta(1.0, n_atoms, H);
  return transmission_exact({scale * beta.value, beta.eta_fs}, delta_c, cavity);
}

inline double ensemble_fs_emission_exact(const ComplexCoupling& beta, std::size_t n_atoms, double H, double delta_c,
                                         const CavitySpec& cavity) {
  const double scale = detail::effective_eta(1.0, n_atoms, H);
  return fs_emission_driven_cavity_exact({scale * beta.value, beta.eta_fs}, delta_c, cavity);
}

/// Exact P_c^(N) / P_fs^0 with the cavity field
/// E_c = 2 i beta N G E_in / q^2 / bracket(N H beta).
inline double ensemble_cavity_scattering_exact(const ComplexCoupling& beta, const CollectiveFactors& factors,
                                               double delta_c, const CavitySpec& cavity) {
  if (!factors.consistent()) {
    throw InvalidArgument("collective factors violate |G|^2 <= H <= 1");
  }
  const double n = static_cast<double>(factors.N);
  const complex i(0.0, 1.0);
  const complex bracket = round_trip_bracket(n * factors.H * beta.value, delta_c, cavity);
  const complex ec = 2.0 * i * beta.value * n * factors.G / cavity.q_sq() / bracket;
  return cavity.q_sq() * std::norm(ec) * beta.eta_fs / std::norm(beta.value);
}

}  // namespace cavityqed
