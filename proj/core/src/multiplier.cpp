#include "homfour/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace homfour {

void Symbol::set(const Dual& pi, const Matrix& value, double tol) {
  if (pi.backend != backend_) throw invalid_parameter("symbol backend mismatch");
  if (value.rows() != pi.dim || value.cols() != pi.dim)
    throw invalid_parameter("symbol entry must be dim x dim");
  for (int i = 0; i < pi.dim; ++i)
    for (int j = 0; j < pi.dim; ++j)
      if ((i >= pi.inv || j >= pi.inv) && std::abs(value(i, j)) > tol)
        throw invalid_parameter("symbol entry must live on the invariant block");
  Matrix v = value;
  for (int i = 0; i < pi.dim; ++i)
    for (int j = 0; j < pi.dim; ++j)
      if (i >= pi.inv || j >= pi.inv) v(i, j) = 0.0;
  entries_[pi] = std::move(v);
}

std::vector<std::pair<Dual, double>> Symbol::op_norms() const {
  std::vector<std::pair<Dual, double>> out;
  out.reserve(entries_.size());
  for (const auto& [pi, v] : entries_) {
    const Eigen::JacobiSVD<Matrix> svd(v.topLeftCorner(pi.inv, pi.inv));
    out.emplace_back(pi, svd.singularValues().size() ? svd.singularValues()[0] : 0.0);
  }
  return out;
}

Symbol Symbol::from_spec(Backend backend, const std::string& text, double cutoff) {
  Symbol sym(backend);
  if (text.rfind("randdiag:", 0) == 0) {
    // Reuse the family key=value parser for seed and L.
    const FamilySpec spec =
        FamilySpec::parse(backend, "random:" + text.substr(std::string("randdiag:").size()));
    std::mt19937_64 rng(spec.seed);
    auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (const Dual& pi : dual_enumerate(backend, cutoff)) {
      if (std::abs(pi.index) > spec.L) continue;
      Matrix m = Matrix::Zero(pi.dim, pi.dim);
      for (int i = 0; i < pi.inv; ++i) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        m(i, i) = std::abs(std::sqrt(-2.0 * std::log(1.0 - u1)) *
                           std::cos(2.0 * std::numbers::pi * u2));
      }
      sym.set(pi, m);
    }
    return sym;
  }
  const CoefficientField field = synthesize_family(FamilySpec::parse(backend, text), cutoff);
  for (const auto& [pi, v] : field.entries()) sym.set(pi, v);
  return sym;
}

CoefficientField apply_multiplier(const Symbol& sigma, const CoefficientField& fhat) {
  if (sigma.backend() != fhat.backend())
    throw invalid_parameter("apply_multiplier: backend mismatch");
  CoefficientField out(fhat.backend());
  for (const auto& [pi, v] : fhat.entries()) {
    auto it = sigma.entries().find(pi);
    if (it == sigma.entries().end()) continue;
    out.set_projected(pi, it->second * v);
  }
  return out;
}

double multiplier_bound(const Symbol& sigma, double p, double q, double L) {
  if (!(p > 1.0 && p <= 2.0 && q >= 2.0))
    throw invalid_parameter("multiplier_bound requires 1 < p <= 2 <= q");
  const double gamma = 1.0 / p - 1.0 / q;
  std::vector<std::pair<double, double>> atoms;
  for (const auto& [pi, s] : sigma.op_norms())
    if (pi.eig <= L) atoms.emplace_back(s, static_cast<double>(pi.dim) * pi.inv);
  return level_sup(std::move(atoms), gamma);
}

OpNormEstimate empirical_opnorm(const Symbol& sigma, double p, double q,
                                std::span<const FamilySpec> trials,
                                std::shared_ptr<const QuadratureRule> rule,
                                double cutoff) {
  if (trials.empty()) throw invalid_parameter("empirical_opnorm needs at least one trial");
  if (!rule) throw invalid_parameter("empirical_opnorm needs a quadrature rule");
  OpNormEstimate best;
  bool any = false;
  for (const FamilySpec& trial : trials) {
    if (trial.backend != sigma.backend())
      throw invalid_parameter("empirical_opnorm: trial backend mismatch");
    const CoefficientField fhat = synthesize_family(trial, cutoff);
    const double nf = lp_quadrature_norm(inverse_transform(fhat, rule), p);
    if (!(nf > 0.0)) continue;
    const CoefficientField ghat = apply_multiplier(sigma, fhat);
    const double ng = lp_quadrature_norm(inverse_transform(ghat, rule), q);
    any = true;
    if (ng / nf > best.lower) {
      best.lower = ng / nf;
      best.witness = trial;
    }
  }
  if (!any) throw invalid_parameter("empirical_opnorm: every trial had zero norm");
  return best;
}

double noninvariant_bound(std::span<const DerivativeSymbols> family, double p, double q,
                          double L, int order) {
  if (order < 0) throw invalid_parameter("noninvariant_bound requires order >= 0");
  if (family.empty()) throw invalid_parameter("noninvariant_bound needs derivative data");
  const std::size_t dim = family.front().alpha.size();
  const std::size_t grid = family.front().at_grid_points.size();
  if (grid == 0) throw invalid_parameter("noninvariant_bound needs a nonempty grid");
  std::set<std::vector<int>> seen;
  for (const DerivativeSymbols& ds : family) {
    if (ds.alpha.size() != dim)
      throw invalid_parameter("noninvariant_bound: inconsistent multi-index length");
    if (ds.at_grid_points.size() != grid)
      throw invalid_parameter("noninvariant_bound: inconsistent grid sizes");
    for (int a : ds.alpha)
      if (a < 0) throw invalid_parameter("noninvariant_bound: negative multi-index");
    if (!seen.insert(ds.alpha).second)
      throw invalid_parameter("noninvariant_bound: duplicate multi-index");
  }
  // Every multi-index of weight <= order must be present.
  std::vector<std::vector<int>> required;
  std::vector<int> cur(dim, 0);
  const std::function<void(std::size_t, int)> gen = [&](std::size_t pos, int left) {
    if (pos == dim) {
      required.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[pos] = a;
      gen(pos + 1, left - a);
    }
    cur[pos] = 0;
  };
  gen(0, order);
  for (const auto& alpha : required)
    if (!seen.count(alpha))
      throw invalid_parameter("noninvariant_bound: missing a multi-index with |alpha| <= order");

  std::vector<double> terms;
  for (const DerivativeSymbols& ds : family) {
    int weight = 0;
    for (int a : ds.alpha) weight += a;
    if (weight > order) continue;
    double worst = 0.0;
    for (const Symbol& at_u : ds.at_grid_points)
      worst = std::max(worst, multiplier_bound(at_u, p, q, L));
    terms.push_back(worst);
  }
  return pairwise_sum(std::span<const double>(terms));
}

}  // namespace homfour
