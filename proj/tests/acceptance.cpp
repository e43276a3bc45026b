// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cavityqed/cavityqed.hpp"

using namespace cavityqed;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(double v) { return format_double(v, 6); }

const SpectrumRow& center_row(const SpectrumTable& t) {
  const SpectrumRow* best = &t.rows.front();
  for (const auto& r : t.rows) {
    if (std::abs(r.delta_over_gamma) < std::abs(best->delta_over_gamma)) best = &r;
  }
  return *best;
}

Outcome resonant_transmission() {
  const auto p = *preset("fig3");
  const SpectrumTable table = scan(p.scenario, p.grid);
  const SpectrumRow& r = center_row(table);
  const double t = *r.transmission;
  const double fs = *r.fs_emission;
  const bool ok = r.delta_over_gamma == 0.0 && std::abs(t - 1.0 / 121.0) <= 1e-6 && std::abs(fs - 20.0 / 121.0) <= 1e-6;
  return {ok, "T(0)=" + fmt(t) + " P_fs/P_in(0)=" + fmt(fs)};
}

Outcome normal_mode_splitting() {
  const auto p = *preset("fig3");
  const PeakReport r10 = find_peaks(scan(p.scenario, p.grid), Column::transmission);
  ScanScenario strong = p.scenario;
  strong.params.eta_c = 100.0;
  const PeakReport r100 = find_peaks(scan(strong, {-10.0, 10.0, 0.01}), Column::transmission);
  if (!r10.splitting || !r100.splitting) return {false, "splitting not found"};
  const double dev10 = std::abs(*r10.splitting / std::sqrt(10.0) - 1.0);
  const double dev100 = std::abs(*r100.splitting / 10.0 - 1.0);
  return {dev10 <= 0.05 && dev100 <= 0.01 && r10.grid_resolves_splitting,
          "eta=10 dev " + fmt(dev10) + ", eta=100 dev " + fmt(dev100)};
}

Outcome eit_window() {
  const auto p = *preset("fig6");
  const SpectrumTable t = scan(p.scenario, p.grid);
  std::size_t c = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::abs(t.rows[i].delta_over_gamma) < std::abs(t.rows[c].delta_over_gamma)) c = i;
  }
  const double t0 = *t.rows[c].sidebeam_T;
  const bool local_max = *t.rows[c - 1].sidebeam_T < t0 && *t.rows[c + 1].sidebeam_T < t0;
  double dip = 1.0;
  for (const auto& r : t.rows) {
    const double a = std::abs(r.delta_over_gamma);
    if (a >= 0.1 && a <= 1.0) dip = std::min(dip, *r.sidebeam_T);
  }
  return {std::abs(t0 - 0.95) <= 1e-6 && local_max && dip < 0.92, "T(0)=" + fmt(t0) + " min T(0.1..1)=" + fmt(dip)};
}

Outcome driven_atom_suppression() {
  const double fs = fs_emission_driven_atom_rwa(0, 0, 10, 1, 1);
  const double pc = cavity_emission_rwa(0, 0, 10, 1, 1);
  const CavitySpec cavity(1e-4, 1e-3);
  const double eta_fs = 10.0 * cavity.q_sq() / 4.0;
  const ComplexCoupling b{complex(0.0, eta_fs), eta_fs};
  const double exact_ratio = cavity_emission_exact(b, 0.0, cavity) / fs_emission_driven_atom_exact(b, 0.0, cavity);
  const bool ok = std::abs(fs - 1.0 / 121.0) <= 1e-6 && std::abs(pc - 10.0 / 121.0) <= 1e-6 &&
                  std::abs(pc / fs - 10.0) <= 1e-12 * 10.0 && std::abs(exact_ratio - 10.0) <= 1e-12 * 10.0;
  return {ok, "P_fs=" + fmt(fs) + " P_c=" + fmt(pc) + " ratio=" + format_double(pc / fs, 15)};
}

Outcome optical_theorem() {
  const AtomTransition atom = AtomTransition::from_wavelength(780e-9, 2.0 * pi * 6.07e6);
  const GaussianMode mode = GaussianMode::matched(atom, 20e-6);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double omega = atom.omega_a() * (0.5 + i / 999.0);
    worst = std::max(worst, beta_exact(omega, atom, mode).optical_theorem_residual());
  }
  return {worst <= 1e-9, "max residual " + fmt(worst)};
}

Outcome classical_quantum() {
  CounterRng rng(20111, 1);
  auto u = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double lambda = u(0.4e-6, 1.6e-6);
    const AtomTransition atom = AtomTransition::from_wavelength(lambda, 2.0 * pi * u(1e6, 3e7));
    const PhysicalScenario phys(atom, u(5.0, 100.0) * lambda,
                                CavitySpec(std::pow(10.0, u(-6.0, -2.0)), std::pow(10.0, u(1.0, 5.0)) * lambda));
    const double g = g_quantum(Scenario{phys});
    const double g_cl = 0.5 * std::sqrt(phys.eta_c() * phys.kappa() * atom.gamma());
    worst = std::max(worst, std::abs(g - g_cl) / g_cl);
  }
  return {worst <= 1e-10, "max relative deviation " + fmt(worst)};
}

Outcome ensemble_moments() {
  const double k = 2.0 * pi / 780e-9;
  const LayoutSpec spec{LayoutKind::uniform_random, 50, 10.0, 7, 2};
  auto z = [&](const char* name, double expected) {
    const auto e = monte_carlo(spec, k, *named_estimator(name), 10000);
    return std::abs(e.mean - expected) / e.std_error;
  };
  const double zf = z("F2", 1.0 / 50.0);
  const double zh = z("H", 0.5);
  const double zg = z("G2", 1.0 / 100.0);
  return {zf <= 5.0 && zh <= 5.0 && zg <= 5.0, "z(|F|^2)=" + fmt(zf) + " z(H)=" + fmt(zh) + " z(|G|^2)=" + fmt(zg)};
}

Outcome ordered_limits() {
  const double k = 2.0 * pi / 780e-9;
  bool ok = true;
  double worst_f = 0.0, worst_ratio = 0.0, prev_fs = 0.0, prev_cav = 0.0;
  for (std::size_t n : {4, 8, 16}) {
    const auto pos = generate_positions({LayoutKind::bragg_lattice, n, 10.0, 0, 2}, k);
    const complex F = collective_F(EnsembleLayout::perpendicular(pos, k));
    worst_f = std::max(worst_f, std::abs(std::abs(F) - 1.0));
    const double fs = ensemble_mode_power_ratio(F, n, 0.01);
    // Far detuned: the ensemble does not load the cavity.
    const CollectiveFactors cf = collective_factors(CavityEnsembleLayout(pos, k));
    const double cav = ensemble_cavity_scattering_rwa(1e6, 1e6, 1e-3, cf, 1.0, 1.0);
    if (prev_fs > 0.0) {
      worst_ratio = std::max({worst_ratio, std::abs(fs / prev_fs - 4.0), std::abs(cav / prev_cav - 4.0)});
    }
    prev_fs = fs;
    prev_cav = cav;
  }
  ok = worst_f <= 1e-12 && worst_ratio <= 1e-12;
  const auto comm = generate_positions({LayoutKind::commensurate, 40, 10.0, 0, 2}, k);
  const double f_comm = std::abs(collective_F(EnsembleLayout::perpendicular(comm, k)));
  ok = ok && f_comm <= 1e-12;
  return {ok, "Bragg ||F|-1|=" + fmt(worst_f) + " quadrupling dev " + fmt(worst_ratio) + " commensurate |F|=" +
                  fmt(f_comm)};
}

Outcome farfield_oracle() {
  const AtomTransition atom = AtomTransition::from_wavelength(780e-9, 2.0 * pi * 6.07e6);
  std::vector<double> errors;
  std::ostringstream detail;
  for (double kw : {20.0, 30.0, 50.0}) {
    const GaussianMode mode(atom.k0(), kw / atom.k0());
    const ModeAmplitude got = farfield_projection_oracle(atom, mode, atom.omega_a(), 200.0 * mode.rayleigh_range());
    const complex expected = complex(0.0, 1.0) * beta_exact(atom.omega_a(), atom, mode).value;
    errors.push_back(std::abs(got.value - expected) / std::abs(expected));
    detail << "kw=" << kw << ":" << fmt(errors.back()) << ' ';
  }
  bool ok = errors[0] < 0.01 && errors[1] < 0.01 && errors[2] < 0.01 && errors[0] > errors[1] && errors[1] > errors[2];
  // (kw)^2 * error roughly constant.
  const double c20 = errors[0] * 400.0, c30 = errors[1] * 900.0, c50 = errors[2] * 2500.0;
  ok = ok && std::abs(c30 / c20 - 1.0) < 0.15 && std::abs(c50 / c20 - 1.0) < 0.15;
  return {ok, detail.str()};
}

Outcome beer_law() {
  const double eta_fs = 0.013;
  const ComplexCoupling b = beta_rwa(0.0, 1.0, eta_fs);
  double worst = 0.0;
  for (std::size_t n = 0; static_cast<double>(n) * eta_fs <= 2.0; ++n) {
    const double expected = std::exp(-2.0 * static_cast<double>(n) * eta_fs);
    worst = std::max(worst, std::abs(beer_transmission(n, b) - expected) / expected);
  }
  bool quadratic = true;
  for (double eta : {5.0, 10.0, 50.0}) {
    quadratic = quadratic && transmission_rwa(0, 0, eta, 1, 1) > std::exp(-2.0 * eta);
  }
  return {worst <= 1e-12 && quadratic, "Beer max rel dev " + fmt(worst) + (quadratic ? ", (1+eta)^-2 > e^-2eta" : "")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"resonant strong-coupling transmission", resonant_transmission},
      {"normal-mode splitting", normal_mode_splitting},
      {"EIT window", eit_window},
      {"driven-atom suppression", driven_atom_suppression},
      {"optical theorem", optical_theorem},
      {"classical-quantum correspondence", classical_quantum},
      {"ensemble moments", ensemble_moments},
      {"ordered-ensemble limits", ordered_limits},
      {"far-field oracle", farfield_oracle},
      {"Beer's law vs cavity", beer_law},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::printf("%s  %2d  %-40s %s\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", index - failures, criteria.size(), seconds);
  return failures == 0 ? 0 : 1;
}
