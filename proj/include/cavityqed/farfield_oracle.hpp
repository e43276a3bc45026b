#pragma once

// Independent numerical route to the mode coupling: project the far field
// radiated by the driven dipole onto the far-field profile of the Gaussian
// mode, E_M = sqrt(eps0 c) * integral( u_M^* E_rad 2 pi rho drho ), over a
// tangential plane at distance R >> z_R.
//
// The mode profile is its z >> z_R asymptote (waist w R / z_R, parabolic
// wavefront, Gouy phase pi/2). The dipole field keeps the exact 1/r amplitude
// and the exact sin(theta) obliquity averaged over azimuth, so the result
// differs from i beta E at order (kw)^-2, independent of R.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>

#include "cavityqed/atom_optics.hpp"

namespace cavityqed {

struct FarFieldGrid {
  std::size_t radial_points = 512;
  double extent_in_widths = 6.0;  // integrate rho in [0, extent * w(R)]
};

inline constexpr std::size_t kMinFarFieldPoints = 512;
inline constexpr double kMinFarFieldExtent = 6.0;
inline constexpr double kMinFarFieldDistance = 100.0;  // in Rayleigh ranges

/// Projects the field of a dipole with polarizability alpha, driven by mode
/// amplitude `drive` (E at the atom = drive / sqrt(eps0 c A)), onto the
/// mode of wavenumber k and waist w.
inline ModeAmplitude farfield_projection(complex alpha, double k, double waist, double distance,
                                         ModeAmplitude drive = {complex(1.0, 0.0)},
                                         const FarFieldGrid& grid = {}) {
  detail::require_finite(alpha, "alpha");
  const GaussianMode mode(k, waist);
  const double z_r = mode.rayleigh_range();
  detail::require_positive(distance, "distance");
  if (distance < kMinFarFieldDistance * z_r) {
    throw InvalidArgument("far-field plane must lie at R >= 100 z_R");
  }
  if (grid.radial_points < kMinFarFieldPoints || !(grid.extent_in_widths >= kMinFarFieldExtent)) {
    throw ResolutionError("far-field grid needs >= 512 radial points out to >= 6 beam widths");
  }

  const double z = distance;
  const double w_far = waist * z / z_r;
  const double rho_max = grid.extent_in_widths * w_far;
  const std::size_t n = grid.radial_points;
  const double h = rho_max / static_cast<double>(n - 1);

  const complex field_at_atom = drive.value / std::sqrt(si::epsilon0 * si::c * mode.area());
  const complex dipole_prefactor = k * k / (4.0 * pi * si::epsilon0) * alpha * field_at_atom;
  const double mode_norm = std::sqrt(2.0 / (pi * w_far * w_far));
  const complex i(0.0, 1.0);

  complex sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = h * static_cast<double>(j);
    const double r = std::hypot(z, rho);
    const double wavefront = k * z + k * rho * rho / (2.0 * z);
    // <sin theta> over azimuth for polarization perpendicular to the axis.
    const double obliquity = 2.0 / pi * std::comp_ellint_2(rho / r);
    const complex radiated = dipole_prefactor * obliquity * std::exp(i * wavefront) / r;
    const complex mode_conj =
        mode_norm * std::exp(-rho * rho / (w_far * w_far)) * std::exp(-i * (wavefront - pi / 2.0));
    const double weight = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    sum += weight * mode_conj * radiated * (2.0 * pi * rho);
  }
  return {std::sqrt(si::epsilon0 * si::c) * sum * h};
}

/// Oracle for beta_exact: the projected amplitude for the atom's own
/// polarizability at frequency omega.
inline ModeAmplitude farfield_projection_oracle(const AtomTransition& atom, const GaussianMode& mode, double omega,
                                                double distance, const FarFieldGrid& grid = {},
                                                ModeAmplitude drive = {complex(1.0, 0.0)}) {
  const complex alpha = polarizability_exact(omega, atom);
  return farfield_projection(alpha, omega / si::c, mode.waist(), distance, drive, grid);
}

}  // namespace cavityqed
