#include "homfour/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace homfour {

namespace {

constexpr double kPi = std::numbers::pi;

complexd unit_power(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

bool has_grid(const QuadratureRule& rule) {
  return rule.n0 > 0 &&
         static_cast<std::size_t>(rule.n0) * rule.n1 * rule.n2 == rule.nodes.size();
}

// X^l(theta): the little-d matrix conjugated by diag(i^-m), i.e. the
// representation of the x-axis rotation. Entry (a, b) carries i^{m_b - m_a}.
Matrix x_matrix(double l, double theta) {
  const Eigen::MatrixXd d = wigner_little_d(l, theta);
  const int dim = d.rows();
  Matrix X(dim, dim);
  // m_b - m_a = (l - b) - (l - a) = a - b.
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) X(a, b) = unit_power(a - b) * d(a, b);
  return X;
}

// d^l_{m,0}(theta) for m = 0, +1, -1, ..., matching the sphere basis order.
Eigen::VectorXd sphere_d_column(int l, double theta) {
  const Eigen::MatrixXd d = wigner_little_d(static_cast<double>(l), theta);
  Eigen::VectorXd col(2 * l + 1);
  for (int j = 0; j < 2 * l + 1; ++j) {
    const int mj = (j == 0) ? 0 : ((j % 2 == 1) ? (j + 1) / 2 : -(j / 2));
    col[j] = d(l - mj, l);  // row m = mj, column m = 0 in ladder order
  }
  return col;
}

int sphere_m_of(int j) { return (j == 0) ? 0 : ((j % 2 == 1) ? (j + 1) / 2 : -(j / 2)); }

void check_band(const QuadratureRule& rule, Backend backend, double L) {
  if (quadrature_band_limit(rule) < max_enumerated_index(backend, L))
    throw invalid_parameter(
        "quadrature resolution is below the band limit the transform needs");
}

}  // namespace

SampledFunction sample(std::shared_ptr<const QuadratureRule> rule,
                       const std::function<complexd(const GroupPoint&)>& f) {
  if (!rule) throw invalid_parameter("sample needs a quadrature rule");
  SampledFunction out;
  out.rule = std::move(rule);
  out.values.reserve(out.rule->nodes.size());
  for (const GroupPoint& x : out.rule->nodes) out.values.push_back(f(x));
  return out;
}

CoefficientField forward_transform(const SampledFunction& f, double L) {
  const QuadratureRule& rule = *f.rule;
  if (f.values.size() != rule.nodes.size())
    throw invalid_parameter("sampled function does not match its rule");
  check_band(rule, rule.backend, L);
  CoefficientField out(rule.backend);
  const std::vector<Dual> duals = dual_enumerate(rule.backend, L);

  if (rule.backend == Backend::Torus) {
    for (const Dual& pi : duals) {
      std::vector<complexd> terms(rule.nodes.size());
      for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        terms[k] = rule.weights[k] * f.values[k] *
                   std::polar(1.0, -2.0 * kPi * pi.index * rule.nodes[k].c0);
      Matrix m(1, 1);
      m(0, 0) = pairwise_sum(std::span<const complexd>(terms));
      out.set_projected(pi, std::move(m));
    }
    return out;
  }

  if (rule.backend == Backend::SU2 && has_grid(rule)) {
    const int nt = rule.n0, nth = rule.n1, npsi = rule.n2;
    // Gather theta slabs once; slab j holds values at (t_a, theta_j, psi_b).
    std::vector<Matrix> slabs(nth, Matrix(nt, npsi));
    std::vector<double> wj(nth), tj(nth), psib(npsi), ta(nt);
    for (int j = 0; j < nth; ++j) {
      wj[j] = rule.weights[static_cast<std::size_t>(j) * npsi];
      tj[j] = rule.nodes[static_cast<std::size_t>(j) * npsi].c1;
    }
    for (int a = 0; a < nt; ++a)
      ta[a] = rule.nodes[(static_cast<std::size_t>(a) * nth) * npsi].c0;
    for (int b = 0; b < npsi; ++b) psib[b] = rule.nodes[b].c2;
    for (int a = 0; a < nt; ++a)
      for (int j = 0; j < nth; ++j)
        for (int b = 0; b < npsi; ++b)
          slabs[j](a, b) = f.values[(static_cast<std::size_t>(a) * nth + j) * npsi + b];

    for (const Dual& pi : duals) {
      const int dim = pi.dim;
      const double l = pi.index;
      Matrix ephi(nt, dim), epsi(npsi, dim);
      for (int c = 0; c < dim; ++c) {
        const double mc = l - c;
        for (int a = 0; a < nt; ++a) ephi(a, c) = std::polar(1.0, -2.0 * kPi * ta[a] * mc);
        for (int b = 0; b < npsi; ++b) epsi(b, c) = std::polar(1.0, -psib[b] * mc);
      }
      Matrix acc = Matrix::Zero(dim, dim);
      for (int j = 0; j < nth; ++j) {
        const Matrix m1 = slabs[j] * epsi;              // (nt x dim), sums psi
        const Matrix m2 = ephi.transpose() * m1;        // (dim x dim), sums t
        const Matrix x = x_matrix(l, tj[j]);
        acc.noalias() += wj[j] * (x.conjugate().cwiseProduct(m2)).transpose();
      }
      out.set_projected(pi, std::move(acc));
    }
    return out;
  }

  if (rule.backend == Backend::Sphere2 && has_grid(rule)) {
    const int nth = rule.n0, nphi = rule.n1;
    const double lmax = max_enumerated_index(rule.backend, L);
    const int mmax = static_cast<int>(lmax);
    // G(j, m) = sum_k f(theta_j, phi_k) e^{-i m phi_k}, m = -mmax..mmax.
    Matrix G(nth, 2 * mmax + 1);
    for (int j = 0; j < nth; ++j) {
      for (int m = -mmax; m <= mmax; ++m) {
        complexd acc = 0.0;
        for (int k = 0; k < nphi; ++k) {
          const GroupPoint& x = rule.nodes[static_cast<std::size_t>(j) * nphi + k];
          acc += f.values[static_cast<std::size_t>(j) * nphi + k] *
                 std::polar(1.0, -x.c1 * m);
        }
        G(j, m + mmax) = acc;
      }
    }
    for (const Dual& pi : duals) {
      const int li = static_cast<int>(pi.index);
      Matrix m = Matrix::Zero(pi.dim, pi.dim);
      for (int j = 0; j < nth; ++j) {
        const double w = rule.weights[static_cast<std::size_t>(j) * nphi];
        const Eigen::VectorXd dcol = sphere_d_column(li, rule.nodes[static_cast<std::size_t>(j) * nphi].c0);
        for (int q = 0; q < pi.dim; ++q) {
          const int mq = sphere_m_of(q);
          m(0, q) += w * dcol[q] * unit_power(mq) * G(j, mq + mmax);
        }
      }
      out.set_projected(pi, std::move(m));
    }
    return out;
  }

  // Generic per-node fallback for hand-built rules.
  for (const Dual& pi : duals) {
    Matrix acc = Matrix::Zero(pi.dim, pi.dim);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      Matrix T;
      if (rule.backend == Backend::SU2) {
        T = wigner_matrix(pi.index, rule.nodes[k]);
      } else {
        T = Matrix::Zero(pi.dim, pi.dim);
        T.col(0) = sphere_column(static_cast<int>(pi.index), rule.nodes[k]);
      }
      acc.noalias() += rule.weights[k] * f.values[k] * T.adjoint();
    }
    out.set_projected(pi, std::move(acc));
  }
  return out;
}

complexd evaluate(const CoefficientField& sigma, const GroupPoint& x) {
  if (x.backend != sigma.backend()) throw invalid_parameter("evaluate: backend mismatch");
  std::vector<complexd> terms;
  terms.reserve(sigma.size());
  for (const auto& [pi, v] : sigma.entries()) {
    switch (sigma.backend()) {
      case Backend::Torus:
        terms.push_back(v(0, 0) * std::polar(1.0, 2.0 * kPi * pi.index * x.c0));
        break;
      case Backend::SU2:
        terms.push_back(static_cast<double>(pi.dim) *
                        (v * wigner_matrix(pi.index, x)).trace());
        break;
      case Backend::Sphere2: {
        const Eigen::VectorXcd col = sphere_column(static_cast<int>(pi.index), x);
        complexd acc = 0.0;
        for (int q = 0; q < pi.dim; ++q) acc += v(0, q) * col[q];
        terms.push_back(static_cast<double>(pi.dim) * acc);
        break;
      }
    }
  }
  return pairwise_sum(std::span<const complexd>(terms));
}

SampledFunction inverse_transform(const CoefficientField& sigma,
                                  std::shared_ptr<const QuadratureRule> rule_ptr) {
  if (!rule_ptr) throw invalid_parameter("inverse_transform needs a quadrature rule");
  const QuadratureRule& rule = *rule_ptr;
  if (rule.backend != sigma.backend())
    throw invalid_parameter("inverse_transform: backend mismatch");
  SampledFunction out;
  out.rule = rule_ptr;
  out.values.assign(rule.nodes.size(), complexd{0.0, 0.0});

  if (rule.backend == Backend::Torus) {
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      std::vector<complexd> terms;
      terms.reserve(sigma.size());
      for (const auto& [pi, v] : sigma.entries())
        terms.push_back(v(0, 0) * std::polar(1.0, 2.0 * kPi * pi.index * rule.nodes[k].c0));
      out.values[k] = pairwise_sum(std::span<const complexd>(terms));
    }
    return out;
  }

  if (rule.backend == Backend::SU2 && has_grid(rule)) {
    const int nt = rule.n0, nth = rule.n1, npsi = rule.n2;
    std::vector<double> tj(nth), psib(npsi), ta(nt);
    for (int j = 0; j < nth; ++j) tj[j] = rule.nodes[static_cast<std::size_t>(j) * npsi].c1;
    for (int a = 0; a < nt; ++a)
      ta[a] = rule.nodes[(static_cast<std::size_t>(a) * nth) * npsi].c0;
    for (int b = 0; b < npsi; ++b) psib[b] = rule.nodes[b].c2;
    std::vector<Matrix> slabs(nth, Matrix::Zero(nt, npsi));

    for (const auto& [pi, v] : sigma.entries()) {
      const int dim = pi.dim;
      const double l = pi.index;
      Matrix ephi(nt, dim), epsi(npsi, dim);
      for (int c = 0; c < dim; ++c) {
        const double mc = l - c;
        for (int a = 0; a < nt; ++a) ephi(a, c) = std::polar(1.0, 2.0 * kPi * ta[a] * mc);
        for (int b = 0; b < npsi; ++b) epsi(b, c) = std::polar(1.0, psib[b] * mc);
      }
      for (int j = 0; j < nth; ++j) {
        const Matrix g = x_matrix(l, tj[j]).cwiseProduct(v.transpose());  // (c, r)
        const Matrix m1 = g * epsi.transpose();                           // (dim x npsi)
        slabs[j].noalias() += static_cast<double>(dim) * (ephi * m1);
      }
    }
    for (int a = 0; a < nt; ++a)
      for (int j = 0; j < nth; ++j)
        for (int b = 0; b < npsi; ++b)
          out.values[(static_cast<std::size_t>(a) * nth + j) * npsi + b] = slabs[j](a, b);
    return out;
  }

  if (rule.backend == Backend::Sphere2 && has_grid(rule)) {
    const int nth = rule.n0, nphi = rule.n1;
    const int mmax = static_cast<int>(sigma.max_index());
    Matrix A = Matrix::Zero(nth, 2 * mmax + 1);
    for (int j = 0; j < nth; ++j) {
      const double theta = rule.nodes[static_cast<std::size_t>(j) * nphi].c0;
      for (const auto& [pi, v] : sigma.entries()) {
        const int li = static_cast<int>(pi.index);
        const Eigen::VectorXd dcol = sphere_d_column(li, theta);
        for (int q = 0; q < pi.dim; ++q) {
          const int mq = sphere_m_of(q);
          A(j, mq + mmax) += static_cast<double>(pi.dim) * v(0, q) * unit_power(-mq) * dcol[q];
        }
      }
    }
    for (int j = 0; j < nth; ++j)
      for (int k = 0; k < nphi; ++k) {
        const GroupPoint& x = rule.nodes[static_cast<std::size_t>(j) * nphi + k];
        complexd acc = 0.0;
        for (int m = -mmax; m <= mmax; ++m)
          acc += A(j, m + mmax) * std::polar(1.0, x.c1 * m);
        out.values[static_cast<std::size_t>(j) * nphi + k] = acc;
      }
    return out;
  }

  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    out.values[k] = evaluate(sigma, rule.nodes[k]);
  return out;
}

double lp_quadrature_norm(const SampledFunction& f, double p) {
  if (p < 1.0) throw invalid_parameter("lp_quadrature_norm requires p >= 1");
  std::vector<double> terms(f.values.size());
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double a = std::abs(f.values[k]);
    if (!std::isfinite(a)) throw numerical_failure("lp_quadrature_norm hit a non-finite value");
    terms[k] = f.rule->weights[k] * std::pow(a, p);
  }
  return std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / p);
}

complexd quadrature_inner(const SampledFunction& f, const SampledFunction& g) {
  if (f.backend() != g.backend() || f.values.size() != g.values.size())
    throw invalid_parameter("quadrature_inner needs matching rules");
  std::vector<complexd> terms(f.values.size());
  for (std::size_t k = 0; k < f.values.size(); ++k)
    terms[k] = f.rule->weights[k] * f.values[k] * std::conj(g.values[k]);
  return pairwise_sum(std::span<const complexd>(terms));
}

FamilySpec FamilySpec::parse(Backend backend, const std::string& text) {
  FamilySpec spec;
  spec.backend = backend;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind == "heat") spec.kind = Kind::Heat;
  else if (kind == "bessel") spec.kind = Kind::Bessel;
  else if (kind == "dirichlet") spec.kind = Kind::DirichletKernel;
  else if (kind == "random") spec.kind = Kind::RandomBandlimited;
  else if (kind == "monotone") spec.kind = Kind::MonotoneCentral;
  else throw invalid_parameter("unknown family kind: " + kind);

  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::istringstream in(rest);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw invalid_parameter("family parameter must look like key=value: " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    double num = 0.0;
    std::uint64_t unum = 0;
    try {
      if (key == "seed") unum = std::stoull(val);
      else num = std::stod(val);
    } catch (const std::logic_error&) {
      throw invalid_parameter("malformed family parameter: " + item);
    }
    if (key == "t") spec.t = num;
    else if (key == "s") spec.s = num;
    else if (key == "N") spec.N = num;
    else if (key == "L") spec.L = num;
    else if (key == "alpha") spec.alpha = num;
    else if (key == "seed") spec.seed = unum;
    else throw invalid_parameter("unknown family parameter: " + key);
  }
  if (!(spec.t > 0.0)) throw invalid_parameter("heat time must be positive");
  if (!(spec.s > 0.0)) throw invalid_parameter("bessel order must be positive");
  if (!(spec.alpha > 0.0)) throw invalid_parameter("monotone exponent must be positive");
  if (spec.N < 0.0 || spec.L < 0.0) throw invalid_parameter("cutoffs must be nonnegative");
  return spec;
}

std::string FamilySpec::id() const {
  switch (kind) {
    case Kind::Heat: return "heat:t=" + format_compact(t);
    case Kind::Bessel: return "bessel:s=" + format_compact(s);
    case Kind::DirichletKernel: return "dirichlet:N=" + format_compact(N);
    case Kind::RandomBandlimited:
      return "random:seed=" + std::to_string(seed) + ",L=" + format_compact(L);
    case Kind::MonotoneCentral:
      return "monotone:alpha=" + format_compact(alpha) + ",L=" + format_compact(L);
  }
  throw invalid_parameter("unknown family kind");
}

CoefficientField synthesize_family(const FamilySpec& spec, double cutoff) {
  CoefficientField out(spec.backend);
  std::mt19937_64 rng(spec.seed);
  // Box-Muller over the raw 53-bit stream keeps the draw sequence identical
  // across platforms; std::normal_distribution does not promise that.
  auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto gaussian_pair = [&](double& g1, double& g2) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    g1 = r * std::cos(2.0 * kPi * u2);
    g2 = r * std::sin(2.0 * kPi * u2);
  };

  for (const Dual& pi : dual_enumerate(spec.backend, cutoff)) {
    auto restricted_identity = [&pi] {
      Matrix m = Matrix::Zero(pi.dim, pi.dim);
      for (int i = 0; i < pi.inv; ++i) m(i, i) = 1.0;
      return m;
    };
    switch (spec.kind) {
      case FamilySpec::Kind::Heat:
        out.set_projected(pi, std::exp(-spec.t * (pi.eig * pi.eig - 1.0)) *
                                  restricted_identity());
        break;
      case FamilySpec::Kind::Bessel:
        out.set_projected(pi, std::pow(pi.eig, -spec.s) * restricted_identity());
        break;
      case FamilySpec::Kind::DirichletKernel:
        if (pi.eig <= spec.N) out.set_projected(pi, restricted_identity());
        break;
      case FamilySpec::Kind::MonotoneCentral: {
        if (std::abs(pi.index) > spec.L) break;
        const double base = spec.backend == Backend::Torus ? 1.0 + std::abs(pi.index)
                                                           : 2.0 * pi.index + 1.0;
        out.set_projected(pi, std::pow(base, -spec.alpha) * restricted_identity());
        break;
      }
      case FamilySpec::Kind::RandomBandlimited: {
        if (std::abs(pi.index) > spec.L) break;
        Matrix m = Matrix::Zero(pi.dim, pi.dim);
        for (int i = 0; i < pi.inv; ++i)
          for (int j = 0; j < pi.dim; ++j) {
            double g1, g2;
            gaussian_pair(g1, g2);
            m(i, j) = complexd(g1, g2) / std::numbers::sqrt2;
          }
        out.set_projected(pi, std::move(m));
        break;
      }
    }
  }
  return out;
}

double schur_orthogonality_error(const std::shared_ptr<const QuadratureRule>& rule_ptr,
                                 double L) {
  if (!rule_ptr) throw invalid_parameter("orthogonality check needs a quadrature rule");
  const QuadratureRule& rule = *rule_ptr;
  if (rule.backend != Backend::SU2)
    throw invalid_parameter("the matrix-element orthogonality check runs on su2");
  const std::vector<Dual> duals = dual_enumerate(Backend::SU2, L);
  if (duals.empty()) throw invalid_parameter("no representations below the cutoff");
  // Pairwise products of band-L elements live in band 2L, so the rule must be
  // exact well past the transform's own requirement.
  if (quadrature_band_limit(rule) < 2.0 * max_enumerated_index(Backend::SU2, L))
    throw invalid_parameter("orthogonality products reach band 2L; raise the resolution");

  int n = 0;
  for (const Dual& pi : duals) n += pi.dim * pi.dim;
  Matrix gram = Matrix::Zero(n, n);

  if (has_grid(rule)) {
    const int nt = rule.n0, nth = rule.n1, npsi = rule.n2;
    std::vector<double> ta(nt), psib(npsi);
    for (int a = 0; a < nt; ++a)
      ta[a] = rule.nodes[static_cast<std::size_t>(a) * nth * npsi].c0;
    for (int b = 0; b < npsi; ++b) psib[b] = rule.nodes[b].c2;
    Matrix elems(n, static_cast<std::size_t>(nt) * npsi);
    for (int j = 0; j < nth; ++j) {
      const double theta = rule.nodes[static_cast<std::size_t>(j) * npsi].c1;
      const double wj = rule.weights[static_cast<std::size_t>(j) * npsi];
      int row = 0;
      for (const Dual& pi : duals) {
        const Matrix x = x_matrix(pi.index, theta);
        const double scale = std::sqrt(static_cast<double>(pi.dim));
        for (int r = 0; r < pi.dim; ++r) {
          const double mr = pi.index - r;
          for (int c = 0; c < pi.dim; ++c, ++row) {
            const double mc = pi.index - c;
            const complexd base = scale * x(r, c);
            for (int a = 0; a < nt; ++a) {
              const complexd pa = base * std::polar(1.0, 2.0 * kPi * ta[a] * mr);
              for (int b = 0; b < npsi; ++b)
                elems(row, static_cast<std::size_t>(a) * npsi + b) =
                    pa * std::polar(1.0, psib[b] * mc);
            }
          }
        }
      }
      gram.selfadjointView<Eigen::Lower>().rankUpdate(elems, wj);
    }
  } else {
    Matrix col(n, 1);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      int row = 0;
      for (const Dual& pi : duals) {
        const Matrix t = std::sqrt(static_cast<double>(pi.dim)) *
                         wigner_matrix(pi.index, rule.nodes[k]);
        for (int r = 0; r < pi.dim; ++r)
          for (int c = 0; c < pi.dim; ++c, ++row) col(row, 0) = t(r, c);
      }
      gram.selfadjointView<Eigen::Lower>().rankUpdate(col, rule.weights[k]);
    }
  }

  const Matrix full = gram.selfadjointView<Eigen::Lower>();
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dev = std::max(dev, std::abs(full(i, j) - ((i == j) ? 1.0 : 0.0)));
  return dev;
}

std::string function_to_csv(const SampledFunction& f) {
  std::ostringstream out;
  switch (f.backend()) {
    case Backend::Torus: out << "x,re,im\n"; break;
    case Backend::SU2: out << "t,theta,psi,re,im\n"; break;
    case Backend::Sphere2: out << "theta,phi,re,im\n"; break;
  }
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const GroupPoint& n = f.rule->nodes[k];
    out << format_double(n.c0);
    if (f.backend() != Backend::Torus) out << ',' << format_double(n.c1);
    if (f.backend() == Backend::SU2) out << ',' << format_double(n.c2);
    out << ',' << format_double(f.values[k].real()) << ',' << format_double(f.values[k].imag())
        << '\n';
  }
  return out.str();
}

}  // namespace homfour
