#include "homfour/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace homfour {

namespace {

constexpr double kPi = std::numbers::pi;

double dirichlet_sum(double l, double t) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2.0 * l) + 1);
  for (double k = 0.0; k <= l; k += 0.5) terms.push_back((2.0 * k + 1.0) * character(k, t));
  return pairwise_sum(std::span<const double>(terms));
}

// sigma_l as the largest eigenvalue magnitude of the entry.
std::vector<std::pair<double, double>> scalar_shadow(const CoefficientField& fhat) {
  std::vector<std::pair<double, double>> out;
  out.reserve(fhat.size());
  for (const auto& [pi, v] : fhat.entries()) {
    Eigen::ComplexEigenSolver<Matrix> es(v, false);
    double top = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      top = std::max(top, std::abs(es.eigenvalues()[i]));
    out.emplace_back(pi.index, top);
  }
  return out;
}

}  // namespace

double dirichlet_kernel(double l, double t, DirichletMethod method) {
  if (!is_half_integer(l)) throw invalid_parameter("dirichlet_kernel needs half-integer l >= 0");
  if (method == DirichletMethod::Sum) return dirichlet_sum(l, t);
  const double s = std::sin(kPi * t);
  if (std::abs(s) < 1e-6) return dirichlet_sum(l, t);
  const double a = (2.0 * l + 1.0) * kPi * t;
  const double b = (2.0 * l + 2.0) * kPi * t;
  return (std::sin(a) + std::sin(b)) * std::cos(kPi * t) / (2.0 * s * s * s) -
         ((2.0 * l + 1.0) * std::cos(a) + (2.0 * l + 2.0) * std::cos(b)) / (2.0 * s * s);
}

double dirichlet_estimate_constant(double l_max, std::span<const double> t_grid) {
  if (!(l_max >= 0.0)) throw invalid_parameter("dirichlet_estimate_constant needs l_max >= 0");
  if (t_grid.empty()) throw invalid_parameter("dirichlet_estimate_constant needs a grid");
  double best = 0.0;
  for (double l = 0.0; l <= l_max; l += 0.5) {
    for (double t : t_grid) {
      const double d = dirichlet_kernel(l, t, DirichletMethod::Closed);
      best = std::max(best, t * t * std::abs(d) / (2.0 * l + 1.0));
    }
  }
  return best;
}

CoefficientField partial_sum(const CoefficientField& fhat, double N) {
  CoefficientField out(fhat.backend());
  for (const auto& [pi, v] : fhat.entries())
    if (std::abs(pi.index) <= N) out.set_projected(pi, v);
  return out;
}

std::vector<ConvergenceRow> convergence_study(const CoefficientField& fhat, double p,
                                              std::span<const double> Ns,
                                              bool assert_theorem_range,
                                              const LpNorm& norm) {
  if (assert_theorem_range) {
    if (fhat.backend() != Backend::SU2)
      throw invalid_parameter("convergence_study: the theorem range is an SU(2) statement");
    if (!(p > 1.5 && p < 2.5))
      throw invalid_parameter("convergence_study: theorem range needs 3/2 < p < 5/2");
    for (const auto& [pi, v] : fhat.entries()) {
      const complexd mean = v.trace() / static_cast<double>(pi.dim);
      Matrix dev = v;
      dev.diagonal().array() -= mean;
      if (dev.norm() > 1e-12 * std::max(1.0, v.norm()))
        throw invalid_parameter("convergence_study: theorem range needs a central field");
    }
  }
  std::vector<double> cuts(Ns.begin(), Ns.end());
  std::sort(cuts.begin(), cuts.end());
  std::vector<ConvergenceRow> rows;
  rows.reserve(cuts.size());
  for (double N : cuts) {
    CoefficientField tail(fhat.backend());
    for (const auto& [pi, v] : fhat.entries())
      if (std::abs(pi.index) > N) tail.set_projected(pi, v);
    rows.push_back({N, p, norm(tail, p)});
  }
  return rows;
}

MonotoneDiagnostics check_monotone(const CoefficientField& fhat) {
  if (fhat.backend() != Backend::SU2)
    throw invalid_parameter("check_monotone is an SU(2) diagnostic");
  MonotoneDiagnostics diag;
  diag.eigen_ratio_low = 1.0;
  diag.eigen_ratio_high = 1.0;
  bool all_normal = true;
  bool all_nonneg = true;
  for (const auto& [pi, v] : fhat.entries()) {
    const double scale = std::max(1.0, v.norm());
    const double nres = (v * v.adjoint() - v.adjoint() * v).cwiseAbs().maxCoeff();
    diag.normality_residual = std::max(diag.normality_residual, nres);
    if (nres > 1e-10 * scale) all_normal = false;
    if ((v - v.adjoint()).norm() > 1e-10 * scale) {
      all_nonneg = false;
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(v, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -1e-10 * scale) all_nonneg = false;
    }
    Eigen::ComplexEigenSolver<Matrix> es(v, false);
    double top = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      top = std::max(top, std::abs(es.eigenvalues()[i]));
    if (top > 0.0) {
      double low = 1.0;
      for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double a = std::abs(es.eigenvalues()[i]);
        if (a > 1e-12 * top) low = std::min(low, a / top);
      }
      diag.eigen_ratio_low = std::min(diag.eigen_ratio_low, low);
      diag.eigen_ratio_high = std::max(diag.eigen_ratio_high, 1.0 / low);
    }
  }
  diag.is_almost_scalar = all_normal;
  diag.is_nonneg = all_nonneg;
  diag.is_d_sigma_decreasing = true;
  const auto shadow = scalar_shadow(fhat);
  for (std::size_t i = 1; i < shadow.size(); ++i) {
    const double prev = (2.0 * shadow[i - 1].first + 1.0) * shadow[i - 1].second;
    const double cur = (2.0 * shadow[i].first + 1.0) * shadow[i].second;
    if (cur > prev * (1.0 + 1e-12)) {
      diag.is_d_sigma_decreasing = false;
      if (!diag.first_violation_index) diag.first_violation_index = shadow[i].first;
    }
  }
  return diag;
}

NonOscillation check_nonoscillation(const CoefficientField& fhat, double xi_cap,
                                    std::optional<double> tail_exponent) {
  if (fhat.backend() != Backend::SU2)
    throw invalid_parameter("check_nonoscillation is an SU(2) diagnostic");
  NonOscillation out;
  if (tail_exponent && !(*tail_exponent > 1.0)) {
    out.holds = false;
    out.C = std::numeric_limits<double>::infinity();
    out.note = "tail exponent <= 1: the coefficient tail is not summable";
    return out;
  }
  const auto shadow = scalar_shadow(fhat);
  if (shadow.empty()) throw invalid_parameter("check_nonoscillation needs a nonempty field");
  // Suffix sums of sigma_l over the truncation, plus the closed-form tail
  // remainder sum_{2l+1 > 2T+1} (2l+1)^{-alpha} <= (2T+1)^{1-alpha}/(alpha-1)
  // when an exponent is declared.
  double worst = 0.0;
  for (std::size_t i = 0; i < shadow.size(); ++i) {
    if (shadow[i].first > xi_cap) break;
    if (!(shadow[i].second > 0.0)) {
      out.holds = false;
      out.C = std::numeric_limits<double>::infinity();
      out.note = "sigma vanishes inside the tested range";
      return out;
    }
    double tail = 0.0;
    for (std::size_t j = i; j < shadow.size(); ++j) tail += shadow[j].second;
    if (tail_exponent) {
      const double T2 = 2.0 * shadow.back().first + 1.0;
      tail += std::pow(T2, 1.0 - *tail_exponent) / (*tail_exponent - 1.0);
    }
    worst = std::max(worst, tail / ((2.0 * shadow[i].first + 1.0) * shadow[i].second));
  }
  out.holds = true;
  out.C = worst;
  out.note = tail_exponent ? "closed-form tail remainder included"
                           : "checked on the truncation only";
  return out;
}

CriterionReport criterion_report(const FamilySpec& family, double p, int panels) {
  if (family.kind != FamilySpec::Kind::MonotoneCentral)
    throw invalid_parameter("criterion_report covers the power-decay central family");
  CriterionReport rep;
  rep.alpha = family.alpha;
  rep.p = p;
  rep.L = family.L;
  const double cutoff = spectral_eig(family.backend, family.L);
  const CoefficientField fhat = synthesize_family(family, cutoff);

  if (family.backend == Backend::SU2) {
    if (!(p > 1.5 && p <= 2.0))
      throw invalid_parameter("criterion_report on SU(2) requires 3/2 < p <= 2");
    const MonotoneDiagnostics diag = check_monotone(fhat);
    if (!diag.is_almost_scalar || !diag.is_nonneg || !diag.is_d_sigma_decreasing)
      throw invalid_parameter(
          "criterion_report precondition failed: the field is not monotone "
          "(almost scalar + nonnegative + (2l+1) sigma_l non-increasing)");
    const NonOscillation osc = check_nonoscillation(fhat, family.L, family.alpha);
    if (!osc.holds)
      throw invalid_parameter("criterion_report precondition failed: " + osc.note);
    std::vector<double> rhs_terms, planch_terms;
    for (const auto& [pi, v] : fhat.entries()) {
      rhs_terms.push_back(std::pow(2.0 * pi.index + 1.0, 2.5 * p - 4.0) *
                          std::pow(v.norm(), p));
      planch_terms.push_back(pi.dim * v.squaredNorm());
    }
    rep.rhs = pairwise_sum(std::span<const double>(rhs_terms));
    if (p == 2.0) {
      rep.lhs = pairwise_sum(std::span<const double>(planch_terms));
      rep.rhs = rep.lhs;
      rep.notes = "p=2: both sides are the Plancherel sum; nonosc C=" + format_double(osc.C);
    } else {
      rep.lhs = std::pow(central_norm_source(panels)(fhat, p), p);
      rep.notes = "nonosc C=" + format_double(osc.C);
    }
  } else if (family.backend == Backend::Torus) {
    if (!(p > 1.0 && p <= 2.0))
      throw invalid_parameter("criterion_report on the torus requires 1 < p <= 2");
    // Classical analogue: |hat f| symmetric and non-increasing in |m|.
    double prev = std::numeric_limits<double>::infinity();
    for (double m = 0.0; m <= family.L; m += 1.0) {
      const Matrix* plus = fhat.find(make_dual(Backend::Torus, m));
      const Matrix* minus = fhat.find(make_dual(Backend::Torus, -m));
      const double vp = plus ? std::abs((*plus)(0, 0)) : 0.0;
      const double vm = minus ? std::abs((*minus)(0, 0)) : 0.0;
      if (std::abs(vp - vm) > 1e-12 * std::max(1.0, vp))
        throw invalid_parameter("criterion_report precondition failed: not symmetric in m");
      if (vp > prev * (1.0 + 1e-12))
        throw invalid_parameter("criterion_report precondition failed: not decreasing in |m|");
      prev = vp;
    }
    std::vector<double> rhs_terms, planch_terms;
    for (const auto& [pi, v] : fhat.entries()) {
      rhs_terms.push_back(std::pow(1.0 + std::abs(pi.index), p - 2.0) *
                          std::pow(std::abs(v(0, 0)), p));
      planch_terms.push_back(std::norm(v(0, 0)));
    }
    rep.rhs = pairwise_sum(std::span<const double>(rhs_terms));
    if (p == 2.0) {
      rep.lhs = pairwise_sum(std::span<const double>(planch_terms));
      rep.rhs = rep.lhs;
      rep.notes = "p=2: both sides are the Parseval sum";
    } else {
      rep.lhs = std::pow(central_norm_source(panels)(fhat, p), p);
    }
  } else {
    throw invalid_parameter("criterion_report covers the SU(2) and torus backends");
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

double net_norm(const CoefficientField& fhat, double p) {
  const Backend backend = fhat.backend();
  if (backend == Backend::Sphere2)
    throw invalid_parameter("net_norm covers the SU(2) and torus backends");
  if (!(p > 1.0 && p <= 2.0)) throw invalid_parameter("net_norm requires 1 < p <= 2");
  const int n = backend == Backend::SU2 ? 3 : 1;
  const std::vector<Dual> duals = dual_enumerate(backend, fhat.max_eig());
  if (duals.empty()) return 0.0;

  // Prefix data at the distinct-eigenvalue boundaries: each nested cutoff set
  // is {xi : eig(xi) <= v}, its measure, and the magnitude of its trace sum.
  struct Level {
    double mu;
    double quotient;  // |sum of dim * Tr| / mu
  };
  std::vector<Level> levels;
  double mu = 0.0;
  complexd trace_sum = 0.0;
  for (std::size_t i = 0; i < duals.size(); ++i) {
    mu += static_cast<double>(duals[i].dim) * duals[i].inv;
    if (const Matrix* v = fhat.find(duals[i]))
      trace_sum += static_cast<double>(duals[i].dim) * v->trace();
    if (i + 1 < duals.size() && duals[i + 1].eig == duals[i].eig) continue;
    levels.push_back({mu, std::abs(trace_sum) / mu});
  }
  // suffix_best[j] = max quotient over levels with measure >= levels[j].mu.
  std::vector<double> suffix_best(levels.size());
  double running = 0.0;
  for (std::size_t j = levels.size(); j-- > 0;) {
    running = std::max(running, levels[j].quotient);
    suffix_best[j] = running;
  }
  std::vector<double> mus(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) mus[j] = levels[j].mu;

  std::vector<double> terms;
  terms.reserve(duals.size());
  for (const Dual& pi : duals) {
    const double floor_mu = std::pow(pi.eig, n);
    const auto it = std::lower_bound(mus.begin(), mus.end(), floor_mu);
    if (it == mus.end()) continue;  // no admissible cutoff at this truncation
    const double sup = suffix_best[static_cast<std::size_t>(it - mus.begin())];
    terms.push_back(static_cast<double>(pi.dim) * pi.inv *
                    std::pow(pi.eig, n * (p - 2.0)) * std::pow(sup, p));
  }
  return pairwise_sum(std::span<const double>(terms));
}

}  // namespace homfour
