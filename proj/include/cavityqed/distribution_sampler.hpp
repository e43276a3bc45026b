#pragma once

// Seedable atom-position layouts (random and ordered) and a Monte-Carlo engine
// for ensemble averages of collective factors.
//
// Randomness comes from a counter-based generator keyed by (seed, sample
// index): every sample owns an independent stream, so samples can be drawn in
// any order on any number of threads and still reproduce bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <istream>
#include <locale>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cavityqed/cavity_ensemble.hpp"
#include "cavityqed/ensemble_free_space.hpp"
#include "cavityqed/format.hpp"
#include "cavityqed/vec3.hpp"

namespace cavityqed {

// ---------------------------------------------------------------------------
// Counter-based random stream

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// The i-th output is a pure function of (seed, stream, i). Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Layouts

enum class LayoutKind { uniform_random, antinode_lattice, node_lattice, bragg_lattice, commensurate };

inline std::optional<LayoutKind> parse_layout_kind(std::string_view s) {
  if (s == "uniform" || s == "uniform_random") return LayoutKind::uniform_random;
  if (s == "antinode" || s == "antinode_lattice") return LayoutKind::antinode_lattice;
  if (s == "node" || s == "node_lattice") return LayoutKind::node_lattice;
  if (s == "bragg" || s == "bragg_lattice") return LayoutKind::bragg_lattice;
  if (s == "commensurate") return LayoutKind::commensurate;
  return std::nullopt;
}

inline std::string_view to_string(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::uniform_random: return "uniform_random";
    case LayoutKind::antinode_lattice: return "antinode_lattice";
    case LayoutKind::node_lattice: return "node_lattice";
    case LayoutKind::bragg_lattice: return "bragg_lattice";
    case LayoutKind::commensurate: return "commensurate";
  }
  return "unknown";
}

struct LayoutSpec {
  LayoutKind kind = LayoutKind::uniform_random;
  std::size_t n_atoms = 1;
  double extent = 10.0;  // in wavelengths, per axis (uniform_random only)
  std::uint64_t seed = 0;
  int per_wavelength = 2;  // commensurate only

  void validate() const {
    if (n_atoms < 1) throw InvalidArgument("layout needs N >= 1");
    detail::require_positive(extent, "extent");
    if (kind == LayoutKind::commensurate) {
      if (per_wavelength < 2) throw InvalidArgument("commensurate layout needs n >= 2 atoms per wavelength");
      if (n_atoms % static_cast<std::size_t>(per_wavelength) != 0) {
        throw InvalidArgument("commensurate layout needs N to be a whole number of periods");
      }
    }
    if (static_cast<int>(kind) < 0 || static_cast<int>(kind) > static_cast<int>(LayoutKind::commensurate)) {
      throw InvalidArgument("unsupported layout kind");
    }
  }
};

/// Positions (m) for sample `sample_index` of `spec`, in the perpendicular
/// geometry: side beam along +x, mode or cavity axis along z.
///
///   uniform_random    i.i.d. uniform in a cube of `extent` wavelengths
///   antinode_lattice  z_j = j lambda/2 on the axis; cos^2(k z_j) = 1
///   node_lattice      z_j = (2j+1) lambda/4 on the axis; cos(k z_j) = 0
///   bragg_lattice     square lattice of pitch lambda in the x-z plane; every
///                     phase (k_in - k_mode).r_j and k x_j is a multiple of 2 pi
///   commensurate      n atoms per wavelength of the grating k_in - k_mode,
///                     spaced along (x - z)/sqrt(2)
inline std::vector<Vec3> generate_positions(const LayoutSpec& spec, double k, std::uint64_t sample_index = 0) {
  spec.validate();
  detail::require_positive(k, "k");
  const double lambda = 2.0 * pi / k;
  const std::size_t n = spec.n_atoms;
  std::vector<Vec3> out;
  out.reserve(n);

  switch (spec.kind) {
    case LayoutKind::uniform_random: {
      CounterRng rng(spec.seed, sample_index);
      const double side = spec.extent * lambda;
      for (std::size_t j = 0; j < n; ++j) {
        const double x = rng.uniform() * side;
        const double y = rng.uniform() * side;
        const double z = rng.uniform() * side;
        out.push_back({x, y, z});
      }
      break;
    }
    case LayoutKind::antinode_lattice:
      for (std::size_t j = 0; j < n; ++j) out.push_back({0.0, 0.0, static_cast<double>(j) * lambda / 2.0});
      break;
    case LayoutKind::node_lattice:
      for (std::size_t j = 0; j < n; ++j) {
        out.push_back({0.0, 0.0, static_cast<double>(2 * j + 1) * lambda / 4.0});
      }
      break;
    case LayoutKind::bragg_lattice: {
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (std::size_t j = 0; j < n; ++j) {
        out.push_back({static_cast<double>(j % side) * lambda, 0.0, static_cast<double>(j / side) * lambda});
      }
      break;
    }
    case LayoutKind::commensurate: {
      const double step = lambda / (static_cast<double>(spec.per_wavelength) * std::sqrt(2.0));
      const double u = 1.0 / std::sqrt(2.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double s = static_cast<double>(j) * step;
        out.push_back({s * u, 0.0, -s * u});
      }
      break;
    }
  }
  return out;
}

inline EnsembleLayout generate_free_space(const LayoutSpec& spec, double k, std::uint64_t sample_index = 0) {
  return EnsembleLayout::perpendicular(generate_positions(spec, k, sample_index), k);
}

inline CavityEnsembleLayout generate_cavity(const LayoutSpec& spec, double k, std::uint64_t sample_index = 0,
                                            std::optional<double> waist = std::nullopt) {
  return CavityEnsembleLayout(generate_positions(spec, k, sample_index), k, waist);
}

// ---------------------------------------------------------------------------
// Layout CSV: header `index,x,y,z`, coordinates in units of lambda.

inline void write_layout_csv(std::ostream& os, const std::vector<Vec3>& positions, double wavelength) {
  os << "index,x,y,z\n";
  for (std::size_t j = 0; j < positions.size(); ++j) {
    const Vec3& r = positions[j];
    os << j << ',' << format_double(r.x / wavelength) << ',' << format_double(r.y / wavelength) << ','
       << format_double(r.z / wavelength) << '\n';
  }
}

inline std::vector<Vec3> read_layout_csv(std::istream& is, double wavelength) {
  std::string line;
  if (!std::getline(is, line) || line != "index,x,y,z") {
    throw InvalidArgument("layout CSV must start with header index,x,y,z");
  }
  std::vector<Vec3> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    row.imbue(std::locale::classic());
    std::size_t index = 0;
    double x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(row >> index >> c1 >> x >> c2 >> y >> c3 >> z) || c1 != ',' || c2 != ',' || c3 != ',' ||
        index != out.size()) {
      throw InvalidArgument("malformed layout CSV row: " + line);
    }
    out.push_back({x * wavelength, y * wavelength, z * wavelength});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo averaging

struct CollectiveFactorEstimate {
  double mean = 0.0;
  double second_moment = 0.0;  // <x^2>
  double std_dev = 0.0;        // sample standard deviation
  double std_error = 0.0;      // std_dev / sqrt(n)
  std::size_t n_samples = 0;
};

using Estimator = std::function<double(const std::vector<Vec3>& positions, double k)>;

/// Average of `estimator` over `n_samples` independent layouts of `spec`.
/// Sample s uses stream s of spec.seed; the reduction runs in sample order,
/// so the result does not depend on `threads` (0 = hardware concurrency).
template <class Fn>
CollectiveFactorEstimate monte_carlo(const LayoutSpec& spec, double k, Fn&& estimator, std::size_t n_samples,
                                     unsigned threads = 0) {
  spec.validate();
  if (n_samples < 2) throw InvalidArgument("monte_carlo needs at least 2 samples");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_samples));

  std::vector<double> values(n_samples);
  std::mutex error_mutex;
  std::optional<std::size_t> failed_index;
  std::string failure;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      try {
        values[s] = estimator(generate_positions(spec, k, s), k);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!failed_index || s < *failed_index) {
          failed_index = s;
          failure = e.what();
        }
        return;
      }
    }
  };

  if (threads == 1) {
    work(0, n_samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_samples + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n_samples; begin += chunk) {
      pool.emplace_back(work, begin, std::min(n_samples, begin + chunk));
    }
  }
  if (failed_index) throw EstimatorError(*failed_index, failure);

  const double n = static_cast<double>(n_samples);
  double sum = 0.0, sum_sq = 0.0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double std_dev = std::sqrt(ss / (n - 1.0));
  return {mean, sum_sq / n, std_dev, std_dev / std::sqrt(n), n_samples};
}

/// Estimators by CLI name: F2 = |F|^2, ReF, ImF, H, G2 = |G|^2, ReG, ImG.
/// F uses the perpendicular free-space geometry; G and H the cavity one.
inline std::optional<Estimator> named_estimator(std::string_view name) {
  auto free_space = [](auto f) -> Estimator {
    return [f](const std::vector<Vec3>& pos, double k) { return f(collective_F(EnsembleLayout::perpendicular(pos, k))); };
  };
  auto cavity = [](auto f) -> Estimator {
    return [f](const std::vector<Vec3>& pos, double k) { return f(collective_factors(CavityEnsembleLayout(pos, k))); };
  };
  if (name == "F2") return free_space([](complex F) { return std::norm(F); });
  if (name == "ReF") return free_space([](complex F) { return F.real(); });
  if (name == "ImF") return free_space([](complex F) { return F.imag(); });
  if (name == "H") return cavity([](const CollectiveFactors& c) { return c.H; });
  if (name == "G2") return cavity([](const CollectiveFactors& c) { return std::norm(c.G); });
  if (name == "ReG") return cavity([](const CollectiveFactors& c) { return c.G.real(); });
  if (name == "ImG") return cavity([](const CollectiveFactors& c) { return c.G.imag(); });
  return std::nullopt;
}

}  // namespace cavityqed
