#pragma once

// Shared vocabulary for Fourier analysis on the three built-in compact
// homogeneous spaces: the circle T, the group SU(2), and the sphere S^2
// (as SU(2) modulo its diagonal torus).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homfour {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Backend { Torus, SU2, Sphere2 };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

// A caller error: bad parameter, violated precondition, capacity overrun.
class invalid_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arithmetic produced something unusable (non-finite samples, failed
// decomposition, divergent tail).
class numerical_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest representation dimension we agree to store densely (l <= 100).
inline constexpr int kMaxDim = 201;
inline constexpr double kMaxIndex = 100.0;

// One class-one irreducible representation: its index (m on the torus,
// l on SU(2) in half-integer steps, l on S^2), matrix dimension, the number
// of subgroup-invariant basis vectors, and its spectral size.
struct Dual {
  Backend backend{Backend::Torus};
  double index{0.0};
  int dim{1};
  int inv{1};
  double eig{1.0};
};

// Canonical constructor; validates the index against the backend's ladder
// and fills dim/inv/eig. Torus: any integer m. SU2: l in 0, 1/2, 1, ...
// Sphere2: integer l >= 0.
Dual make_dual(Backend backend, double index);

// Spectral size without building the full object.
double spectral_eig(Backend backend, double index);

inline bool same_rep(const Dual& a, const Dual& b) {
  return a.backend == b.backend && a.index == b.index;
}

// Orders by spectral size, ties broken by index. This is the enumeration
// order and the key order of every coefficient map.
struct DualLess {
  bool operator()(const Dual& a, const Dual& b) const {
    if (a.eig != b.eig) return a.eig < b.eig;
    return a.index < b.index;
  }
};

// Deterministic summation: fixed-shape pairwise reduction, independent of
// chunking and thread count.
double pairwise_sum(std::span<const double> xs);
complexd pairwise_sum(std::span<const complexd> xs);

// Exact float formatting at 17 significant digits, locale free. Report
// values go through this so frozen oracles reproduce byte for byte.
std::string format_double(double x);

// Shortest representation that round-trips; for identifiers and labels.
std::string format_compact(double x);

// log(n!) with n up to a few thousand, extended precision.
long double log_factorial(int n);

inline bool is_half_integer(double x) {
  return x >= 0.0 && 2.0 * x == static_cast<double>(static_cast<long long>(2.0 * x + 0.5));
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace homfour
