#include "homfour/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace homfour {

namespace {

constexpr double kPi = std::numbers::pi;

// i^n for integer n, exact in all four cases.
complexd unit_power(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// d^l_{m',m}(beta) by the explicit alternating sum over long double
// log-magnitudes. Both half-angle factors are nonnegative on [0, pi], so the
// only signs are the (-1)^k of the sum itself and cancellation stays mild
// enough for ~1e-14 relative accuracy at l = 100.
long double little_d_entry(double l, double mp, double m, long double c, long double s) {
  const int a1 = static_cast<int>(std::lround(l + mp));
  const int a2 = static_cast<int>(std::lround(l - mp));
  const int a3 = static_cast<int>(std::lround(l + m));
  const int a4 = static_cast<int>(std::lround(l - m));
  const long double pref =
      0.5L * (log_factorial(a1) + log_factorial(a2) + log_factorial(a3) + log_factorial(a4));
  const int kmin = std::max(0, static_cast<int>(std::lround(m - mp)));
  const int kmax = std::min(a3, a2);
  const long double lc = c > 0.0L ? std::log(c) : 0.0L;
  const long double ls = s > 0.0L ? std::log(s) : 0.0L;
  const int dm = static_cast<int>(std::lround(mp - m));
  long double acc = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const int e_c = a3 + a2 - 2 * k;  // exponent of cos(beta/2)
    const int e_s = 2 * k + dm;       // exponent of sin(beta/2)
    if ((e_c > 0 && c == 0.0L) || (e_s > 0 && s == 0.0L)) continue;
    const long double lmag = pref - log_factorial(a3 - k) - log_factorial(k) -
                             log_factorial(a2 - k) - log_factorial(k + dm) +
                             e_c * lc + e_s * ls;
    const long double term = std::exp(lmag);
    acc += ((k + dm) % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

GroupPoint identity_point(Backend backend) { return GroupPoint{backend, 0.0, 0.0, 0.0}; }

std::vector<Dual> dual_enumerate(Backend backend, double L) {
  std::vector<Dual> out;
  if (!(L >= 1.0)) return out;
  switch (backend) {
    case Backend::Torus: {
      out.push_back(make_dual(backend, 0.0));
      for (double m = 1.0; spectral_eig(backend, m) <= L; m += 1.0) {
        out.push_back(make_dual(backend, -m));
        out.push_back(make_dual(backend, m));
      }
      break;
    }
    case Backend::SU2: {
      for (double l = 0.0; spectral_eig(backend, l) <= L; l += 0.5)
        out.push_back(make_dual(backend, l));
      break;
    }
    case Backend::Sphere2: {
      for (double l = 0.0; spectral_eig(backend, l) <= L; l += 1.0)
        out.push_back(make_dual(backend, l));
      break;
    }
  }
  return out;
}

double max_enumerated_index(Backend backend, double L) {
  if (!(L >= 1.0)) return -1.0;
  const double step = backend == Backend::SU2 ? 0.5 : 1.0;
  double best = -1.0;
  for (double l = 0.0; spectral_eig(backend, l) <= L; l += step) best = l;
  return best;
}

double character(double l, double t) {
  if (!is_half_integer(l)) throw invalid_parameter("character needs a half-integer l >= 0");
  const double s = std::sin(kPi * t);
  if (std::abs(s) < 1e-12) {
    // l'Hopital at integral t: (2l+1) cos((2l+1) pi t) / cos(pi t).
    const double n = std::round(t);
    const double num = std::cos((2.0 * l + 1.0) * kPi * n);
    const double den = std::cos(kPi * n);
    return (2.0 * l + 1.0) * num / den;
  }
  return std::sin((2.0 * l + 1.0) * kPi * t) / s;
}

Eigen::MatrixXd wigner_little_d(double l, double beta) {
  if (!is_half_integer(l)) throw invalid_parameter("wigner_little_d needs half-integer l >= 0");
  if (l > kMaxIndex) throw invalid_parameter("wigner_little_d exceeds the dimension cap");
  const int dim = static_cast<int>(std::lround(2.0 * l)) + 1;
  const long double c = std::cos(static_cast<long double>(beta) / 2.0L);
  const long double s = std::sin(static_cast<long double>(beta) / 2.0L);
  Eigen::MatrixXd d(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const double mp = l - a;
    for (int b = 0; b < dim; ++b) {
      const double m = l - b;
      d(a, b) = static_cast<double>(little_d_entry(l, mp, m, std::abs(c), std::abs(s)));
    }
  }
  return d;
}

Matrix wigner_matrix(double l, const GroupPoint& u) {
  if (u.backend != Backend::SU2) throw invalid_parameter("wigner_matrix needs an SU2 point");
  const int dim = static_cast<int>(std::lround(2.0 * l)) + 1;
  const Eigen::MatrixXd d = wigner_little_d(l, u.c1);
  const double phi = 2.0 * kPi * u.c0;
  Matrix T(dim, dim);
  std::vector<complexd> row_phase(dim), col_phase(dim);
  for (int a = 0; a < dim; ++a) {
    const double ma = l - a;
    row_phase[a] = std::polar(1.0, phi * ma);
    col_phase[a] = std::polar(1.0, u.c2 * ma);
  }
  for (int a = 0; a < dim; ++a) {
    const long two_ma = std::lround(2.0 * (l - a));
    for (int b = 0; b < dim; ++b) {
      const long two_mb = std::lround(2.0 * (l - b));
      // Phase i^{m_b - m_a}: conjugating the y-rotation into an x-rotation.
      const complexd tw = unit_power((two_mb - two_ma) / 2);
      T(a, b) = row_phase[a] * tw * d(a, b) * col_phase[b];
    }
  }
  return T;
}

Eigen::Matrix2cd su2_matrix(const GroupPoint& u) {
  if (u.backend != Backend::SU2) throw invalid_parameter("su2_matrix needs an SU2 point");
  const double phi = 2.0 * kPi * u.c0;
  const double half = u.c1 / 2.0;
  const complexd a = std::cos(half) * std::polar(1.0, (phi + u.c2) / 2.0);
  const complexd b = complexd(0.0, 1.0) * std::sin(half) * std::polar(1.0, (phi - u.c2) / 2.0);
  Eigen::Matrix2cd m;
  m << a, b, -std::conj(b), std::conj(a);
  return m;
}

GroupPoint su2_point_from_matrix(const Eigen::Matrix2cd& m) {
  if (std::abs(m.determinant() - 1.0) > 1e-9 ||
      (m * m.adjoint() - Eigen::Matrix2cd::Identity()).norm() > 1e-9)
    throw invalid_parameter("su2_point_from_matrix needs a special unitary matrix");
  const complexd a = m(0, 0);
  const complexd b = m(0, 1);
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  double phi, psi;
  if (std::abs(b) < 1e-13) {
    phi = 2.0 * std::arg(a);
    psi = 0.0;
  } else if (std::abs(a) < 1e-13) {
    phi = 2.0 * std::arg(b) - kPi;
    psi = 0.0;
  } else {
    phi = std::arg(a) + std::arg(b) - kPi / 2.0;
    psi = std::arg(a) - std::arg(b) + kPi / 2.0;
  }
  // Canonical windows: t in [0,1), psi in [-2pi, 2pi). The two coordinates
  // are only defined jointly mod (phi, psi) -> (phi + 2pi, psi - 2pi), which
  // is what the shift below uses.
  const double four_pi = 4.0 * kPi;
  phi -= four_pi * std::floor(phi / four_pi);
  if (phi >= 2.0 * kPi) {
    phi -= 2.0 * kPi;
    psi += 2.0 * kPi;
  }
  psi -= four_pi * std::floor((psi + 2.0 * kPi) / four_pi);
  GroupPoint u{Backend::SU2, phi / (2.0 * kPi), theta, psi};
  if (u.c0 >= 1.0) u.c0 -= 1.0;  // guard the open end against rounding
  return u;
}

Eigen::VectorXcd sphere_column(int l, const GroupPoint& x) {
  if (x.backend != Backend::Sphere2) throw invalid_parameter("sphere_column needs a sphere point");
  if (l < 0 || l > static_cast<int>(kMaxIndex))
    throw invalid_parameter("sphere_column index out of range");
  const int dim = 2 * l + 1;
  const long double c = std::cos(static_cast<long double>(x.c0) / 2.0L);
  const long double s = std::sin(static_cast<long double>(x.c0) / 2.0L);
  Eigen::VectorXcd v(dim);
  // Basis order m = 0, +1, -1, +2, -2, ...: the invariant vector comes first.
  for (int j = 0; j < dim; ++j) {
    const int mj = (j == 0) ? 0 : ((j % 2 == 1) ? (j + 1) / 2 : -(j / 2));
    const double dval =
        static_cast<double>(little_d_entry(l, mj, 0.0, std::abs(c), std::abs(s)));
    v[j] = std::polar(1.0, x.c1 * mj) * unit_power(-mj) * dval;
  }
  return v;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw invalid_parameter("gauss_legendre needs n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule haar_quadrature(Backend backend, int resolution) {
  if (resolution < 4) throw invalid_parameter("haar_quadrature needs resolution >= 4");
  QuadratureRule rule;
  rule.backend = backend;
  rule.resolution = resolution;
  switch (backend) {
    case Backend::Torus: {
      rule.n0 = resolution;
      rule.n1 = rule.n2 = 1;
      rule.nodes.reserve(resolution);
      rule.weights.assign(resolution, 1.0 / resolution);
      for (int j = 0; j < resolution; ++j)
        rule.nodes.push_back({backend, static_cast<double>(j) / resolution, 0.0, 0.0});
      break;
    }
    case Backend::SU2: {
      const int nt = resolution;
      const int nth = resolution;
      const int npsi = resolution + (resolution % 2);  // even count; see header
      rule.n0 = nt;
      rule.n1 = nth;
      rule.n2 = npsi;
      std::vector<double> gx, gw;
      gauss_legendre(nth, gx, gw);
      rule.nodes.reserve(static_cast<std::size_t>(nt) * nth * npsi);
      rule.weights.reserve(rule.nodes.capacity());
      for (int a = 0; a < nt; ++a) {
        const double t = static_cast<double>(a) / nt;
        for (int j = 0; j < nth; ++j) {
          const double theta = std::acos(gx[j]);
          const double w = gw[j] / (2.0 * nt * npsi);
          for (int b = 0; b < npsi; ++b) {
            const double psi = -2.0 * kPi + 4.0 * kPi * b / npsi;
            rule.nodes.push_back({backend, t, theta, psi});
            rule.weights.push_back(w);
          }
        }
      }
      break;
    }
    case Backend::Sphere2: {
      const int nth = resolution;
      const int nphi = resolution;
      rule.n0 = nth;
      rule.n1 = nphi;
      rule.n2 = 1;
      std::vector<double> gx, gw;
      gauss_legendre(nth, gx, gw);
      rule.nodes.reserve(static_cast<std::size_t>(nth) * nphi);
      rule.weights.reserve(rule.nodes.capacity());
      for (int j = 0; j < nth; ++j) {
        const double theta = std::acos(gx[j]);
        const double w = gw[j] / (2.0 * nphi);
        for (int k = 0; k < nphi; ++k) {
          const double phi = 2.0 * kPi * k / nphi;
          rule.nodes.push_back({backend, theta, phi, 0.0});
          rule.weights.push_back(w);
        }
      }
      break;
    }
  }
  // Normalize the total weight to exactly 1 so constants integrate exactly.
  const double total = pairwise_sum(std::span<const double>(rule.weights));
  for (double& w : rule.weights) w /= total;
  return rule;
}

double quadrature_band_limit(const QuadratureRule& rule) {
  const double raw = (rule.resolution - 2.0) / 4.0;
  const double step = rule.backend == Backend::SU2 ? 0.5 : 1.0;
  return std::floor(raw / step) * step;
}

double class_function_norm(const std::function<double(double)>& f, double p, int panels) {
  if (p < 1.0) throw invalid_parameter("class_function_norm requires p >= 1");
  if (panels < 1) throw invalid_parameter("class_function_norm needs panels >= 1");
  static const auto g16 = [] {
    std::pair<std::vector<double>, std::vector<double>> nw;
    gauss_legendre(16, nw.first, nw.second);
    return nw;
  }();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(panels) * 16);
  const double h = 1.0 / panels;
  for (int j = 0; j < panels; ++j) {
    const double mid = (j + 0.5) * h;
    for (int q = 0; q < 16; ++q) {
      const double t = mid + 0.5 * h * g16.first[q];
      const double v = f(t);
      if (!std::isfinite(v)) throw numerical_failure("class_function_norm hit a non-finite value");
      const double density = 2.0 * std::sin(kPi * t) * std::sin(kPi * t);
      terms.push_back(0.5 * h * g16.second[q] * std::pow(std::abs(v), p) * density);
    }
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

std::string quadrature_to_csv(const QuadratureRule& rule) {
  std::ostringstream out;
  switch (rule.backend) {
    case Backend::Torus: out << "x,weight\n"; break;
    case Backend::SU2: out << "t,theta,psi,weight\n"; break;
    case Backend::Sphere2: out << "theta,phi,weight\n"; break;
  }
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const GroupPoint& n = rule.nodes[i];
    out << format_double(n.c0);
    if (rule.backend != Backend::Torus) out << ',' << format_double(n.c1);
    if (rule.backend == Backend::SU2) out << ',' << format_double(n.c2);
    out << ',' << format_double(rule.weights[i]) << '\n';
  }
  return out.str();
}

}  // namespace homfour
