#pragma once

// N atoms and one free-space Gaussian mode. Absorption and dispersion add up
// atom by atom regardless of position: in the forward direction the phases of
// the incident and scattered fields cancel, so none of the functions below
// for the driven mode take positions. Scattering from a side beam into the
// mode interferes, and its strength is set by the collective factor F.

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "cavityqed/atom_optics.hpp"
#include "cavityqed/vec3.hpp"

namespace cavityqed {

/// Atom positions (m) with the incident and mode wavevectors (rad/m).
class EnsembleLayout {
 public:
  EnsembleLayout(std::vector<Vec3> positions, Vec3 k_in, Vec3 k_mode)
      : positions_(std::move(positions)), k_in_(k_in), k_mode_(k_mode) {
    if (positions_.empty()) {
      throw InvalidArgument("ensemble needs at least one atom");
    }
    for (const auto& r : positions_) {
      if (!finite(r)) throw InvalidArgument("atom positions must be finite");
    }
    if (!finite(k_in) || !finite(k_mode)) throw InvalidArgument("wavevectors must be finite");
    const double a = norm(k_in);
    const double b = norm(k_mode);
    if (!(a > 0.0) || std::abs(a - b) > 1e-9 * a) {
      throw InvalidArgument("incident and mode wavevectors must have equal nonzero length");
    }
  }

  /// Incident beam along +x, mode along +z, both at wavenumber k.
  static EnsembleLayout perpendicular(std::vector<Vec3> positions, double k) {
    return EnsembleLayout(std::move(positions), {k, 0.0, 0.0}, {0.0, 0.0, k});
  }

  const std::vector<Vec3>& positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  Vec3 k_in() const noexcept { return k_in_; }
  Vec3 k_mode() const noexcept { return k_mode_; }

 private:
  std::vector<Vec3> positions_;
  Vec3 k_in_;
  Vec3 k_mode_;
};

/// F = (1/N) sum_j exp(i (k_in - k_mode) . r_j).
inline complex collective_F(const EnsembleLayout& layout) {
  const Vec3 dk = layout.k_in() - layout.k_mode();
  complex sum = 0.0;
  for (const auto& r : layout.positions()) {
    const double phase = dot(dk, r);
    sum += complex(std::cos(phase), std::sin(phase));
  }
  return sum / static_cast<double>(layout.size());
}

/// P_in - P_abs over P_in = exp(-Im(2 N beta)).
inline double beer_transmission(std::size_t n_atoms, const ComplexCoupling& beta) {
  detail::require_finite(beta.value, "beta");
  return std::exp(-2.0 * static_cast<double>(n_atoms) * beta.value.imag());
}

/// phi_N = Re(N beta).
inline double ensemble_phase(std::size_t n_atoms, const ComplexCoupling& beta) {
  return static_cast<double>(n_atoms) * beta.value.real();
}

/// The side-driven ensemble must not deplete its own drive.
inline bool optically_thin(std::size_t n_atoms, const ComplexCoupling& beta) {
  return 2.0 * static_cast<double>(n_atoms) * beta.value.imag() <= 0.2;
}

/// Unidirectional P_M^(N) / P_fs = |F|^2 N^2 eta_fs / 2.
inline double ensemble_mode_power_ratio(complex F, std::size_t n_atoms, double eta_fs) {
  if (std::abs(F) > 1.0 + 1e-12) {
    throw InvalidArgument("collective factor must satisfy |F| <= 1");
  }
  const double n = static_cast<double>(n_atoms);
  return 0.5 * std::norm(F) * n * n * eta_fs;
}

}  // namespace cavityqed
