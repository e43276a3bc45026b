#include <gtest/gtest.h>

#include <cmath>

#include "cavityqed/cavity_ensemble.hpp"
#include "cavityqed/distribution_sampler.hpp"

using namespace cavityqed;

namespace {

constexpr double kK = 2.0 * pi / 780e-9;
const CavitySpec kCavity(1e-4, 1e-3);

CavityEnsembleLayout layout_of(LayoutKind kind, std::size_t n, std::uint64_t seed = 1, std::uint64_t sample = 0) {
  return generate_cavity({kind, n, 10.0, seed, 2}, kK, sample);
}

}  // namespace

TEST(CollectiveH, Antinodes) { EXPECT_NEAR(collective_H(layout_of(LayoutKind::antinode_lattice, 9)), 1.0, 1e-14); }

TEST(CollectiveH, Nodes) { EXPECT_NEAR(collective_H(layout_of(LayoutKind::node_lattice, 9)), 0.0, 1e-14); }

TEST(CollectiveH, RandomAverageIsHalf) {
  const auto est = monte_carlo({LayoutKind::uniform_random, 100, 10.0, 5, 2}, kK, *named_estimator("H"), 10000);
  EXPECT_LE(std::abs(est.mean - 0.5) / est.std_error, 5.0);
}

TEST(CollectiveG, OrderedLatticeIsOne) {
  const complex g = collective_G(layout_of(LayoutKind::bragg_lattice, 25));
  EXPECT_NEAR(std::abs(g - complex(1.0, 0.0)), 0.0, 1e-12);
}

TEST(CollectiveG, SingleAtomAtOrigin) {
  const CollectiveFactors f = collective_factors(CavityEnsembleLayout({Vec3{}}, kK));
  EXPECT_DOUBLE_EQ(f.H, 1.0);
  EXPECT_DOUBLE_EQ(f.G.real(), 1.0);
  EXPECT_DOUBLE_EQ(f.G.imag(), 0.0);
  EXPECT_EQ(f.N, 1u);
}

TEST(CollectiveG, RandomMoments) {
  const LayoutSpec spec{LayoutKind::uniform_random, 100, 10.0, 17, 2};
  const auto g2 = monte_carlo(spec, kK, *named_estimator("G2"), 10000);
  const auto re = monte_carlo(spec, kK, *named_estimator("ReG"), 10000);
  const auto im = monte_carlo(spec, kK, *named_estimator("ImG"), 10000);
  EXPECT_LE(std::abs(g2.mean - 1.0 / 200.0) / g2.std_error, 5.0);
  EXPECT_LE(std::abs(re.mean) / re.std_error, 5.0);
  EXPECT_LE(std::abs(im.mean) / im.std_error, 5.0);
}

TEST(CollectiveFactors, CauchySchwarzForEveryLayout) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const CollectiveFactors f = collective_factors(layout_of(LayoutKind::uniform_random, 1 + s % 13, 8, s));
    EXPECT_LE(std::norm(f.G), f.H + 1e-15);
    EXPECT_TRUE(f.consistent());
  }
}

TEST(CavityEnsembleLayout, Validation) {
  EXPECT_THROW(CavityEnsembleLayout({}, kK), InvalidArgument);
  EXPECT_THROW(CavityEnsembleLayout({Vec3{0, 0, std::nan("")}}, kK), InvalidArgument);
  EXPECT_FALSE(CavityEnsembleLayout({Vec3{1e-6, 0, 0}}, kK).radial_warning());
  EXPECT_TRUE(CavityEnsembleLayout({Vec3{10e-6, 0, 0}}, kK, 20e-6).radial_warning());
  EXPECT_FALSE(CavityEnsembleLayout({Vec3{1e-6, 0, 0}}, kK, 20e-6).radial_warning());
}

TEST(EnsembleRwa, SingleAtomReduction) {
  for (double d : {-2.0, 0.0, 0.4, 3.0}) {
    const double dc = 0.6 * d + 0.1;
    EXPECT_NEAR(ensemble_transmission_rwa(d, dc, 4.0, 1, 1.0, 1, 2), transmission_rwa(d, dc, 4.0, 1, 2), 1e-15);
    EXPECT_NEAR(ensemble_fs_emission_rwa(d, dc, 4.0, 1, 1.0, 1, 2), fs_emission_driven_cavity_rwa(d, dc, 4.0, 1, 2),
                1e-15);
    EXPECT_NEAR(ensemble_cavity_shift_rwa(d, 4.0, 1, 1.0, 1, 2), cavity_shift_rwa(d, 4.0, 1, 2), 1e-15);
    EXPECT_NEAR(ensemble_cavity_scattering_rwa(d, dc, 4.0, 1, complex(1.0, 0.0), 1.0, 1, 2),
                cavity_emission_rwa(d, dc, 4.0, 1, 2), 1e-15);
  }
}

TEST(EnsembleRwa, EffectiveCooperativity) {
  EXPECT_NEAR(ensemble_transmission_rwa(0, 0, 2.0, 10, 0.5, 1, 1), 1.0 / 121.0, 1e-15);
  EXPECT_NEAR(ensemble_fs_emission_rwa(0, 0, 2.0, 10, 0.5, 1, 1), 20.0 / 121.0, 1e-15);
  EXPECT_NEAR(ensemble_transmission_rwa(0, 0.7, 2.0, 10, 0.0, 1, 1), 1.0 / (1.0 + 0.49 * 4.0), 1e-15);
  EXPECT_EQ(ensemble_fs_emission_rwa(0, 0.7, 2.0, 10, 0.0, 1, 1), 0.0);
}

TEST(EnsembleRwa, Shift) {
  EXPECT_EQ(ensemble_cavity_shift_rwa(0.0, 0.2, 100, 0.5, 1, 1), 0.0);
  EXPECT_NEAR(ensemble_cavity_shift_rwa(10.0, 0.2, 100, 0.5, 1, 1), 0.25, 0.25 * 0.01);
  const double s1 = ensemble_cavity_shift_rwa(7.0, 0.2, 100, 0.5, 1, 1);
  const double s3 = ensemble_cavity_shift_rwa(7.0, 0.2, 300, 0.5, 1, 1);
  EXPECT_NEAR(s3 / s1, 3.0, 1e-13);
}

TEST(EnsembleRwa, AbsorptionMonotonicInH) {
  double previous = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double h = 0.1 * i;
    const double absorbed = ensemble_fs_emission_rwa(0.0, 0.0, 0.05, 20, h, 1, 1) /
                            ensemble_transmission_rwa(0.0, 0.0, 0.05, 20, h, 1, 1);
    EXPECT_GE(absorbed, previous);
    previous = absorbed;
  }
}

TEST(EnsembleRwa, OrderedScatteringScalesAsNSquared) {
  // Far detuned so that the cavity is not loaded by the ensemble.
  double previous = 0.0;
  for (std::size_t n : {4, 8, 16}) {
    const CollectiveFactors f = collective_factors(layout_of(LayoutKind::bragg_lattice, n));
    const double p = ensemble_cavity_scattering_rwa(1e6, 1e6, 1e-3, f, 1.0, 1.0);
    if (previous > 0.0) {
      EXPECT_NEAR(p / previous, 4.0, 1e-12);
    }
    previous = p;
  }
}

TEST(EnsembleRwa, RandomScatteringScalesAsN) {
  // <|G|^2> N^2 = N / 2.
  const double eta = 1e-3;
  for (std::size_t n : {20, 80}) {
    const auto g2 = monte_carlo({LayoutKind::uniform_random, n, 10.0, 23, 2}, kK, *named_estimator("G2"), 4000);
    const double atoms = static_cast<double>(n);
    const double mean_power = g2.mean * atoms * atoms * eta;
    EXPECT_NEAR(mean_power / (0.5 * atoms * eta), 1.0, 5.0 * g2.std_error / g2.mean);
  }
}

TEST(EnsembleRwa, InconsistentFactorsRejected) {
  EXPECT_THROW(ensemble_cavity_scattering_rwa(0, 0, 1.0, 4, complex(0.9, 0.0), 0.5, 1, 1), InvalidArgument);
  EXPECT_THROW(ensemble_transmission_rwa(0, 0, 1.0, 4, 1.5, 1, 1), InvalidArgument);
}

TEST(EnsembleExact, SingleAtomReduction) {
  const ComplexCoupling b{complex(0.3e-5, 1e-5), 1.09e-5};
  const CollectiveFactors one{1.0, 1.0, 1};
  for (double dc : {-1.0, 0.0, 0.5}) {
    const double d = dc * kCavity.kappa();
    EXPECT_NEAR(ensemble_transmission_exact(b, 1, 1.0, d, kCavity), transmission_exact(b, d, kCavity), 1e-15);
    EXPECT_NEAR(ensemble_fs_emission_exact(b, 1, 1.0, d, kCavity), fs_emission_driven_cavity_exact(b, d, kCavity),
                1e-15);
    EXPECT_NEAR(ensemble_cavity_scattering_exact(b, one, d, kCavity), cavity_emission_exact(b, d, kCavity), 1e-13);
  }
}

TEST(EnsembleExact, EffectiveCooperativity) {
  const double eta_fs = 10.0 * kCavity.q_sq() / 4.0 / 5.0;  // N H eta_c = 10 with N = 10, H = 1/2
  const ComplexCoupling b{complex(0.0, eta_fs), eta_fs};
  EXPECT_NEAR(ensemble_transmission_exact(b, 10, 0.5, 0.0, kCavity), 1.0 / 121.0, 1e-14);
  EXPECT_NEAR(ensemble_fs_emission_exact(b, 10, 0.5, 0.0, kCavity), 20.0 / 121.0, 1e-14);
}
