#pragma once

// Detuning sweeps over the cavity spectra, peak finding for the normal-mode
// splitting, the quantum vacuum Rabi frequency for a physical geometry, and
// the exact-vs-rotating-wave error report.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cavityqed/cavity_single_atom.hpp"

namespace cavityqed {

enum class SpectrumMode { driven_cavity, driven_atom, sidebeam, all };

inline std::optional<SpectrumMode> parse_spectrum_mode(std::string_view s) {
  if (s == "driven_cavity") return SpectrumMode::driven_cavity;
  if (s == "driven_atom") return SpectrumMode::driven_atom;
  if (s == "sidebeam") return SpectrumMode::sidebeam;
  if (s == "all") return SpectrumMode::all;
  return std::nullopt;
}

inline std::string_view to_string(SpectrumMode m) {
  switch (m) {
    case SpectrumMode::driven_cavity: return "driven_cavity";
    case SpectrumMode::driven_atom: return "driven_atom";
    case SpectrumMode::sidebeam: return "sidebeam";
    case SpectrumMode::all: return "all";
  }
  return "unknown";
}

/// What a scan evaluates. Frequencies are in units of Gamma; delta_c follows
/// the probe as delta_c = Delta + (omega_A - omega_c).
struct ScanScenario {
  std::string name = "custom";
  AbstractScenario params;
  SpectrumMode mode = SpectrumMode::all;
  double atom_cavity_offset = 0.0;  // (omega_A - omega_c) / Gamma
  double depth0 = 0.1;              // side-beam resonant absorption without cavity

  void validate() const {
    params.validate();
    detail::require_finite(atom_cavity_offset, "atom_cavity_offset");
    detail::require_finite(depth0, "depth0");
    if (depth0 < 0.0 || depth0 > 0.3) throw InvalidArgument("depth0 must lie in [0, 0.3]");
  }
};

/// Detuning grid in units of Gamma. Points are spaced evenly from dmin to
/// dmax, with the count rounded from the requested step; a grid symmetric
/// about zero is exactly antisymmetric in floating point.
struct DetuningGrid {
  double dmin = -5.0;
  double dmax = 5.0;
  double dstep = 0.01;

  void validate() const {
    detail::require_finite(dmin, "dmin");
    detail::require_finite(dmax, "dmax");
    detail::require_positive(dstep, "dstep");
    if (!(dmax > dmin)) throw InvalidArgument("grid needs dmax > dmin");
    if ((dmax - dmin) / dstep > 1e7) throw InvalidArgument("grid has more than 1e7 points");
  }

  std::size_t size() const {
    validate();
    return static_cast<std::size_t>(std::llround((dmax - dmin) / dstep)) + 1;
  }

  std::vector<double> points() const {
    const std::size_t n = std::max<std::size_t>(size(), 2);
    const double last = static_cast<double>(n - 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = static_cast<double>(n - 1 - i);
      const double b = static_cast<double>(i);
      out[i] = (dmin * a + dmax * b) / last;
    }
    return out;
  }

  double spacing() const { return (dmax - dmin) / static_cast<double>(std::max<std::size_t>(size(), 2) - 1); }
};

struct ScanPreset {
  ScanScenario scenario;
  DetuningGrid grid;
};

/// Named presets: fig3 transmission at kappa = Gamma, fig4 at kappa = 10
/// Gamma, fig5 driven-atom emission, fig6 side-beam transmission window.
inline std::optional<ScanPreset> preset(std::string_view name) {
  if (name == "fig3") return ScanPreset{{"fig3", {10.0, 1.0, 1.0}, SpectrumMode::driven_cavity, 0.0, 0.1}, {-5.0, 5.0, 0.01}};
  if (name == "fig4") return ScanPreset{{"fig4", {10.0, 10.0, 1.0}, SpectrumMode::driven_cavity, 0.0, 0.1}, {-20.0, 20.0, 0.01}};
  if (name == "fig5") return ScanPreset{{"fig5", {10.0, 1.0, 1.0}, SpectrumMode::driven_atom, 0.0, 0.1}, {-5.0, 5.0, 0.01}};
  if (name == "fig6") return ScanPreset{{"fig6", {1.0, 0.1, 1.0}, SpectrumMode::sidebeam, 0.0, 0.1}, {-2.0, 2.0, 0.01}};
  return std::nullopt;
}

enum class Column { transmission, fs_emission, cavity_emission, fs_emission_ratio, sidebeam_T };

inline constexpr std::string_view column_name(Column c) {
  switch (c) {
    case Column::transmission: return "transmission";
    case Column::fs_emission: return "fs_emission";
    case Column::cavity_emission: return "cavity_emission";
    case Column::fs_emission_ratio: return "fs_emission_ratio";
    case Column::sidebeam_T: return "sidebeam_T";
  }
  return "";
}

/// One detuning. Columns outside the selected mode stay empty.
struct SpectrumRow {
  double delta_over_gamma = 0.0;
  double delta_c_over_kappa = 0.0;
  std::optional<double> transmission;       // P_tr / P_in
  std::optional<double> fs_emission;        // P_fs / P_in, driven cavity
  std::optional<double> cavity_emission;    // P_c / P_fs^0, driven atom
  std::optional<double> fs_emission_ratio;  // P_fs / P_fs^0, driven atom
  std::optional<double> sidebeam_T;

  std::optional<double> get(Column c) const {
    switch (c) {
      case Column::transmission: return transmission;
      case Column::fs_emission: return fs_emission;
      case Column::cavity_emission: return cavity_emission;
      case Column::fs_emission_ratio: return fs_emission_ratio;
      case Column::sidebeam_T: return sidebeam_T;
    }
    return std::nullopt;
  }
};

struct SpectrumTable {
  ScanScenario scenario;
  DetuningGrid grid;
  std::vector<SpectrumRow> rows;

  /// Strictly increasing grid, nonnegative power ratios, T <= 1.
  bool valid() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (i > 0 && !(r.delta_over_gamma > rows[i - 1].delta_over_gamma)) return false;
      for (auto v : {r.transmission, r.fs_emission, r.cavity_emission, r.fs_emission_ratio}) {
        if (v && !(*v >= 0.0)) return false;
      }
      if (r.transmission && *r.transmission > 1.0 + 1e-12) return false;
      if (r.sidebeam_T && *r.sidebeam_T > 1.0 + 1e-12) return false;
    }
    return true;
  }

  std::vector<double> column(Column c) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
      const auto v = r.get(c);
      if (!v) throw InvalidArgument(std::string("column ") + std::string(column_name(c)) + " not present in scan");
      out.push_back(*v);
    }
    return out;
  }
};

namespace detail {

inline bool wants(SpectrumMode selected, SpectrumMode m) {
  return selected == SpectrumMode::all || selected == m;
}

}  // namespace detail

/// Evaluates the rotating-wave spectra row by row.
inline SpectrumTable scan(const ScanScenario& scenario, const DetuningGrid& grid) {
  scenario.validate();
  grid.validate();
  const double gamma = scenario.params.gamma;
  const double kappa = scenario.params.kappa();
  const double eta = scenario.params.eta_c;

  SpectrumTable table{scenario, grid, {}};
  for (double d : grid.points()) {
    SpectrumRow row;
    const double delta_a = d * gamma;
    const double delta_c = (d + scenario.atom_cavity_offset) * gamma;
    row.delta_over_gamma = d;
    row.delta_c_over_kappa = delta_c / kappa;
    if (detail::wants(scenario.mode, SpectrumMode::driven_cavity)) {
      row.transmission = transmission_rwa(delta_a, delta_c, eta, gamma, kappa);
      row.fs_emission = fs_emission_driven_cavity_rwa(delta_a, delta_c, eta, gamma, kappa);
    }
    if (detail::wants(scenario.mode, SpectrumMode::driven_atom) ||
        detail::wants(scenario.mode, SpectrumMode::sidebeam)) {
      row.cavity_emission = cavity_emission_rwa(delta_a, delta_c, eta, gamma, kappa);
      row.fs_emission_ratio = fs_emission_driven_atom_rwa(delta_a, delta_c, eta, gamma, kappa);
    }
    if (detail::wants(scenario.mode, SpectrumMode::sidebeam)) {
      row.sidebeam_T = sidebeam_transmission(delta_a, delta_c, eta, gamma, kappa, scenario.depth0);
    }
    table.rows.push_back(row);
  }
  return table;
}

/// Exact-beta spectra for a geometric scenario; the cavity resonance sits at
/// omega_A - offset * Gamma.
inline SpectrumTable scan_exact(const PhysicalScenario& phys, const ScanScenario& scenario, const DetuningGrid& grid) {
  grid.validate();
  const double gamma = phys.atom.gamma();
  const double kappa = phys.kappa();
  ScanScenario described = scenario;
  described.params = phys.to_abstract();
  described.validate();

  SpectrumTable table{described, grid, {}};
  for (double d : grid.points()) {
    const double omega = phys.atom.omega_a() + d * gamma;
    const double delta_c = (d + scenario.atom_cavity_offset) * gamma;
    const ComplexCoupling beta = beta_exact(omega, phys.atom, phys.mode);
    SpectrumRow row;
    row.delta_over_gamma = d;
    row.delta_c_over_kappa = delta_c / kappa;
    if (detail::wants(scenario.mode, SpectrumMode::driven_cavity)) {
      row.transmission = transmission_exact(beta, delta_c, phys.cavity);
      row.fs_emission = fs_emission_driven_cavity_exact(beta, delta_c, phys.cavity);
    }
    if (detail::wants(scenario.mode, SpectrumMode::driven_atom) ||
        detail::wants(scenario.mode, SpectrumMode::sidebeam)) {
      row.cavity_emission = cavity_emission_exact(beta, delta_c, phys.cavity);
      row.fs_emission_ratio = fs_emission_driven_atom_exact(beta, delta_c, phys.cavity);
    }
    if (detail::wants(scenario.mode, SpectrumMode::sidebeam)) {
      const double absorption = beta.value.imag() / beta.eta_fs;
      row.sidebeam_T = 1.0 - described.depth0 * absorption * (*row.cavity_emission + *row.fs_emission_ratio);
    }
    table.rows.push_back(row);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Peaks

struct Peak {
  double position = 0.0;  // units of Gamma
  double height = 0.0;
};

struct PeakReport {
  std::vector<Peak> peaks;  // ordered by position
  std::optional<double> splitting;
  bool grid_resolves_splitting = false;  // step <= Gamma/50
};

/// Interior local maxima (3-point test), refined by a parabola through the
/// neighbors. The splitting is the distance between the two highest peaks.
inline PeakReport find_peaks(const SpectrumTable& table, Column column) {
  const std::vector<double> y = table.column(column);
  PeakReport report;
  if (y.size() < 3) return report;
  const double h = table.rows[1].delta_over_gamma - table.rows[0].delta_over_gamma;
  report.grid_resolves_splitting = h <= 1.0 / 50.0 + 1e-15;

  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const double curvature = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double offset = 0.0;
    if (curvature < 0.0) offset = 0.5 * (y[i - 1] - y[i + 1]) / curvature;
    offset = std::clamp(offset, -0.5, 0.5);
    const double x = table.rows[i].delta_over_gamma + offset * h;
    const double peak = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * offset;
    report.peaks.push_back({x, peak});
  }

  if (report.peaks.size() >= 2) {
    std::vector<Peak> by_height = report.peaks;
    std::partial_sort(by_height.begin(), by_height.begin() + 2, by_height.end(),
                      [](const Peak& a, const Peak& b) { return a.height > b.height; });
    report.splitting = std::abs(by_height[1].position - by_height[0].position);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Classical vs quantum coupling

/// Normal-mode splitting 2 g_cl = sqrt(eta kappa Gamma).
inline double vacuum_rabi_classical(double eta_c, double kappa, double gamma) {
  detail::require_finite(eta_c, "eta_c");
  if (eta_c < 0.0) throw InvalidArgument("eta_c must be >= 0");
  detail::require_positive(kappa, "kappa");
  detail::require_positive(gamma, "gamma");
  return std::sqrt(eta_c * kappa * gamma);
}

using Scenario = std::variant<AbstractScenario, PhysicalScenario>;

/// Single-photon coupling g = mu sqrt(omega_0 / (2 eps0 hbar V)) with the
/// dipole moment recovered from the decay rate, Gamma = k0^3 mu^2 / (3 pi
/// eps0 hbar), and the standing-wave mode volume V = pi w^2 L / 4.
inline double g_quantum(const AtomTransition& atom, const GaussianMode& mode, double cavity_length) {
  detail::require_positive(cavity_length, "cavity_length");
  const double k0 = atom.k0();
  const double mu = std::sqrt(atom.gamma() * 3.0 * pi * si::epsilon0 * si::hbar / (k0 * k0 * k0));
  const double volume = pi * mode.waist() * mode.waist() * cavity_length / 4.0;
  return mu * std::sqrt(atom.omega_a() / (2.0 * si::epsilon0 * si::hbar * volume));
}

inline double g_quantum(const Scenario& scenario) {
  if (const auto* phys = std::get_if<PhysicalScenario>(&scenario)) {
    return g_quantum(phys->atom, phys->mode, phys->cavity.length());
  }
  throw UnsupportedOperation("g_quantum needs a geometric scenario (wavelength, waist, length, mirrors)");
}

// ---------------------------------------------------------------------------
// Exact vs rotating-wave

struct RwaErrorRow {
  double delta_over_gamma = 0.0;
  double transmission = 0.0;  // relative differences
  double fs_emission = 0.0;
  double cavity_emission = 0.0;
  double fs_emission_ratio = 0.0;

  double max() const { return std::max({transmission, fs_emission, cavity_emission, fs_emission_ratio}); }
};

struct RwaErrorReport {
  std::vector<RwaErrorRow> rows;
  double max_error = 0.0;
};

/// Relative differences between the exact-beta spectra and the rotating-wave
/// spectra at the same eta_c, kappa, Gamma. The cavity resonance sits at
/// omega_A - offset * Gamma.
inline RwaErrorReport rwa_error_report(const PhysicalScenario& phys, const DetuningGrid& grid,
                                       double atom_cavity_offset = 0.0) {
  grid.validate();
  const double gamma = phys.atom.gamma();
  const double kappa = phys.kappa();
  const double eta = phys.eta_c();
  auto rel = [](double exact, double approx) {
    const double scale = std::max(std::abs(exact), std::abs(approx));
    return scale > 0.0 ? std::abs(exact - approx) / scale : 0.0;
  };

  RwaErrorReport report;
  for (double d : grid.points()) {
    const double delta_a = d * gamma;
    const double delta_c = (d + atom_cavity_offset) * gamma;
    const ComplexCoupling beta = beta_exact(phys.atom.omega_a() + delta_a, phys.atom, phys.mode);
    RwaErrorRow row;
    row.delta_over_gamma = d;
    row.transmission = rel(transmission_exact(beta, delta_c, phys.cavity),
                           transmission_rwa(delta_a, delta_c, eta, gamma, kappa));
    row.fs_emission = rel(fs_emission_driven_cavity_exact(beta, delta_c, phys.cavity),
                          fs_emission_driven_cavity_rwa(delta_a, delta_c, eta, gamma, kappa));
    row.cavity_emission = rel(cavity_emission_exact(beta, delta_c, phys.cavity),
                              cavity_emission_rwa(delta_a, delta_c, eta, gamma, kappa));
    row.fs_emission_ratio = rel(fs_emission_driven_atom_exact(beta, delta_c, phys.cavity),
                                fs_emission_driven_atom_rwa(delta_a, delta_c, eta, gamma, kappa));
    report.max_error = std::max(report.max_error, row.max());
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cavityqed
