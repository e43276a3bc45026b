#pragma once

// Cross-module identity checks, each reduced to a residual compared against a
// fixed tolerance. Used by `cavityqed check`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cavityqed/atom_optics.hpp"
#include "cavityqed/cavity_ensemble.hpp"
#include "cavityqed/cavity_single_atom.hpp"
#include "cavityqed/distribution_sampler.hpp"
#include "cavityqed/ensemble_free_space.hpp"
#include "cavityqed/farfield_oracle.hpp"
#include "cavityqed/spectra_analysis.hpp"

namespace cavityqed {

struct CheckOptions {
  // Test hook: scales every exact beta by (1 + perturb_beta).
  double perturb_beta = 0.0;
  std::uint64_t seed = 2011;
  std::size_t mc_samples = 2000;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

namespace detail {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

inline CheckResult make_check(std::string name, double residual, double tolerance) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  return {std::move(name), residual, tolerance, ok};
}

}  // namespace detail

inline std::vector<CheckResult> run_invariant_suite(const CheckOptions& opt = {}) {
  using detail::make_check;
  using detail::rel_diff;
  std::vector<CheckResult> out;

  const AtomTransition atom = AtomTransition::from_wavelength(780e-9, 2.0 * pi * 6.07e6);
  const GaussianMode mode = GaussianMode::matched(atom, 20e-6);
  auto beta_at = [&](double omega, const AtomTransition& a, const GaussianMode& m) {
    ComplexCoupling b = beta_exact(omega, a, m);
    b.value *= 1.0 + opt.perturb_beta;
    return b;
  };
  CounterRng rng(opt.seed, 0xc0ffee);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };

  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double omega = atom.omega_a() * (0.5 + static_cast<double>(i) / 999.0);
      worst = std::max(worst, beta_at(omega, atom, mode).optical_theorem_residual());
    }
    out.push_back(make_check("optical theorem", worst, 1e-9));
  }

  {
    double worst = 0.0;
    const ModeAmplitude drive{complex(0.7, -1.1)};
    for (int i = -100; i <= 100; ++i) {
      const ComplexCoupling b = beta_at(atom.omega_a() + i * 0.05 * atom.gamma(), atom, mode);
      const double by_energy = absorption_fraction(b);
      worst = std::max(worst, rel_diff(by_energy, scattered_power_fs(b, drive) / drive.power()));
      worst = std::max(worst, rel_diff(by_energy, absorption_fraction_interference(b, drive)));
    }
    out.push_back(make_check("absorption consistency", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (int i = -500; i <= 500; ++i) {
      const double d = i * 0.037;
      const double ld = lorentzian_dispersive(d, 1.0);
      worst = std::max(worst, std::abs(ld + 2.0 * d * lorentzian_absorptive(d, 1.0)));
    }
    out.push_back(make_check("lorentzian identity", worst, 1e-12));
  }

  {
    // |beta_rwa - beta_exact| / |beta_exact| against 2(|Delta| + Gamma)/omega_A + 1e-6.
    const AtomTransition narrow(atom.omega_a(), 1e-7 * atom.omega_a());
    const GaussianMode m = GaussianMode::matched(narrow, 20e-6);
    double worst = 0.0;
    for (int i = -1000; i <= 1000; i += 5) {
      const double delta = i * narrow.gamma();
      const ComplexCoupling exact = beta_at(narrow.omega_a() + delta, narrow, m);
      const ComplexCoupling rwa = beta_rwa(delta, narrow.gamma(), m.eta_fs());
      const double err = std::abs(rwa.value - exact.value) / std::abs(exact.value);
      const double bound = 2.0 * (std::abs(delta) + narrow.gamma()) / narrow.omega_a() + 1e-6;
      worst = std::max(worst, err / bound);
    }
    out.push_back(make_check("rwa convergence (error / bound)", worst, 1.0));
  }

  {
    double worst = 0.0;
    for (double eta : {0.05, 1.0, 10.0}) {
      for (int i = -200; i <= 200; ++i) {
        const double dc = i * 0.05;
        for (double da : {0.0, 0.3, -2.0}) {
          const double ratio = fs_emission_driven_cavity_rwa(da, dc, eta, 1.0, 1.0) / transmission_rwa(da, dc, eta, 1.0, 1.0);
          worst = std::max(worst, rel_diff(ratio, 2.0 * eta * lorentzian_absorptive(da, 1.0)));
        }
      }
    }
    out.push_back(make_check("ratio law", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (double eta : {0.05, 1.0, 10.0, 100.0}) {
      const double sum = transmission_rwa(0, 0, eta, 1, 1) + fs_emission_driven_cavity_rwa(0, 0, eta, 1, 1);
      worst = std::max(worst, rel_diff(sum, (1.0 + 2.0 * eta) / ((1.0 + eta) * (1.0 + eta))));
    }
    out.push_back(make_check("resonant bookkeeping", worst, 1e-12));
  }

  {
    // P_c / P_fs = eta_c kappa^2 / (kappa^2 + 4 delta_c^2) on the exact path,
    // with eta_c taken at the drive frequency.
    const CavitySpec cavity(1e-4, 1e-3);
    double worst = 0.0;
    for (int i = -50; i <= 50; ++i) {
      const double dc = i * 0.1 * cavity.kappa();
      const ComplexCoupling b = beta_at(atom.omega_a() + 0.3 * i * atom.gamma(), atom, mode);
      const double ratio = cavity_emission_exact(b, dc, cavity) / fs_emission_driven_atom_exact(b, dc, cavity);
      const double k2 = cavity.kappa() * cavity.kappa();
      const double eta = 4.0 * b.eta_fs / cavity.q_sq();
      worst = std::max(worst, rel_diff(ratio, eta * k2 / (k2 + 4.0 * dc * dc)));
    }
    out.push_back(make_check("driven-atom emission ratio", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (const char* name : {"fig3", "fig4", "fig5", "fig6"}) {
      ScanScenario sc = preset(name)->scenario;
      sc.mode = SpectrumMode::all;
      const SpectrumTable t = scan(sc, preset(name)->grid);
      const std::size_t n = t.rows.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& a = t.rows[i];
        const auto& b = t.rows[n - 1 - i];
        for (Column c : {Column::transmission, Column::fs_emission, Column::cavity_emission,
                         Column::fs_emission_ratio, Column::sidebeam_T}) {
          worst = std::max(worst, rel_diff(*a.get(c), *b.get(c)));
        }
      }
    }
    out.push_back(make_check("spectral symmetry", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double lambda = uniform(0.4e-6, 1.6e-6);
      const AtomTransition a = AtomTransition::from_wavelength(lambda, 2.0 * pi * uniform(1e6, 3e7));
      const double waist = uniform(5.0, 100.0) * lambda;
      const CavitySpec cavity(std::pow(10.0, uniform(-6.0, -2.0)), std::pow(10.0, uniform(1.0, 5.0)) * lambda);
      const PhysicalScenario phys(a, waist, cavity);
      const double g = g_quantum(Scenario{phys});
      const double g_cl = vacuum_rabi_classical(phys.eta_c(), phys.kappa(), a.gamma()) / 2.0;
      worst = std::max(worst, rel_diff(g, g_cl));
    }
    out.push_back(make_check("g_cl == g", worst, 1e-10));
  }

  {
    double worst = 0.0;
    for (double q_sq : {1e-6, 1e-4, 1e-2}) {
      const CavitySpec cavity(q_sq, 0.01);
      const double k = mode.k();
      const double w = mode.waist();
      worst = std::max(worst, rel_diff(cavity.eta_c(mode), 24.0 * cavity.finesse() / (pi * k * k * w * w)));
    }
    out.push_back(make_check("cavity cooperativity identity", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const LayoutSpec spec{LayoutKind::uniform_random, 1 + s % 37, 10.0, opt.seed, 2};
      const auto pos = generate_positions(spec, mode.k(), s);
      const complex F = collective_F(EnsembleLayout::perpendicular(pos, mode.k()));
      const CollectiveFactors c = collective_factors(CavityEnsembleLayout(pos, mode.k()));
      worst = std::max({worst, std::abs(F) - 1.0, std::norm(c.G) - c.H, c.H - 1.0, -c.H});
    }
    out.push_back(make_check("collective factor bounds", std::max(worst, 0.0), 1e-12));
  }

  {
    double worst = 0.0;
    const ComplexCoupling b = beta_at(atom.omega_a(), atom, mode);
    for (std::size_t n = 0; static_cast<double>(n) * b.eta_fs <= 2.0; n += 7) {
      const double expected = std::exp(-2.0 * static_cast<double>(n) * mode.eta_fs());
      worst = std::max(worst, rel_diff(beer_transmission(n, b), expected));
    }
    out.push_back(make_check("beer's law", worst, 1e-12));
  }

  {
    // Resonant cavity transmission falls only quadratically with eta.
    double worst = 0.0;
    for (double eta : {5.0, 10.0, 50.0}) {
      worst = std::max(worst, std::exp(-2.0 * eta) / transmission_rwa(0, 0, eta, 1, 1));
    }
    out.push_back(make_check("cavity vs beer transmission (ratio)", worst, 1.0 - 1e-12));
  }

  {
    const double k0 = atom.k0();
    const GaussianMode m(k0, 30.0 / k0);
    const ModeAmplitude projected = farfield_projection_oracle(atom, m, atom.omega_a(), 200.0 * m.rayleigh_range());
    const complex expected = complex(0.0, 1.0) * beta_at(atom.omega_a(), atom, m).value;
    out.push_back(make_check("far-field projection (kw = 30)", std::abs(projected.value - expected) / std::abs(expected),
                             0.01));
  }

  {
    const double k = mode.k();
    const std::size_t n_atoms = 50;
    const LayoutSpec spec{LayoutKind::uniform_random, n_atoms, 10.0, opt.seed, 2};
    double worst = 0.0;
    auto z = [&](const char* estimator, double expected) {
      const auto est = monte_carlo(spec, k, *named_estimator(estimator), opt.mc_samples);
      worst = std::max(worst, std::abs(est.mean - expected) / est.std_error);
    };
    z("F2", 1.0 / n_atoms);
    z("H", 0.5);
    z("G2", 0.5 / n_atoms);
    out.push_back(make_check("ensemble moments (max z-score)", worst, 5.0));
  }

  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace cavityqed
