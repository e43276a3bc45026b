#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cavityqed {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A formula was evaluated where it has no finite solution (e.g. a gain medium
// making the cavity round-trip bracket vanish).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature grid too coarse or too short for the requested accuracy.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by the Monte-Carlo engine when an estimator throws; carries the
// index of the offending sample.
class EstimatorError : public std::runtime_error {
 public:
  EstimatorError(std::size_t sample_index, const std::string& what)
      : std::runtime_error("estimator failed at sample " +
                           std::to_string(sample_index) + ": " + what),
        sample_index_(sample_index) {}

  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

inline void require_finite(std::complex<double> v, const char* name) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

inline void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (!(v > 0.0)) {
    throw InvalidArgument(std::string(name) + " must be > 0");
  }
}

}  // namespace detail
}  // namespace cavityqed
