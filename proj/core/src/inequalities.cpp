#include "homfour/inequalities.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace homfour {

namespace {

int manifold_dim(Backend b) {
  switch (b) {
    case Backend::Torus: return 1;
    case Backend::SU2: return 3;
    case Backend::Sphere2: return 2;
  }
  throw invalid_parameter("unknown backend enum value");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// The common left side: sum over the support of
//   dim * inv^{p(1/p - 1/2)} * ||hat f(pi)||_HS^p * phi(pi)^{2-p}.
// Hardy-Littlewood is the phi = eig^{-n} instance, so computing both
// inequalities through this one function makes their agreement exact.
double weighted_power_sum(const CoefficientField& fhat, double p, const Weight& phi) {
  const double kexp = p * (1.0 / p - 0.5);
  std::vector<double> terms;
  terms.reserve(fhat.size());
  for (const auto& [pi, v] : fhat.entries())
    terms.push_back(pi.dim * std::pow(static_cast<double>(pi.inv), kexp) *
                    std::pow(v.norm(), p) * std::pow(phi(pi), 2.0 - p));
  return pairwise_sum(std::span<const double>(terms));
}

double plancherel_sum(const CoefficientField& fhat) {
  std::vector<double> terms;
  terms.reserve(fhat.size());
  for (const auto& [pi, v] : fhat.entries()) terms.push_back(pi.dim * v.squaredNorm());
  return pairwise_sum(std::span<const double>(terms));
}

double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

}  // namespace

std::string InequalityReport::csv_header() {
  return "name,p,b,phi,cutoff,family,lhs,rhs,ratio";
}

std::string InequalityReport::csv_row() const {
  std::ostringstream out;
  out << csv_field(name) << ',' << format_double(p) << ',' << format_double(b) << ','
      << csv_field(phi_id) << ',' << format_double(cutoff) << ',' << csv_field(family_id)
      << ',' << format_double(lhs) << ',' << format_double(rhs) << ','
      << format_double(ratio);
  return out.str();
}

std::string InequalityReport::json_record() const {
  std::ostringstream out;
  out << "{\"name\":" << nlohmann::json(name).dump() << ",\"p\":" << format_double(p)
      << ",\"b\":" << format_double(b) << ",\"phi\":" << nlohmann::json(phi_id).dump()
      << ",\"cutoff\":" << format_double(cutoff) << ",\"family\":"
      << nlohmann::json(family_id).dump() << ",\"lhs\":" << format_double(lhs)
      << ",\"rhs\":" << format_double(rhs) << ",\"ratio\":" << format_double(ratio)
      << ",\"notes\":" << nlohmann::json(notes).dump() << "}";
  return out.str();
}

double weyl_counting(Backend backend, double L) {
  const auto duals = dual_enumerate(backend, L);
  return plancherel_measure(duals);
}

double level_sup(std::vector<std::pair<double, double>> value_weight, double gamma) {
  std::erase_if(value_weight, [](const auto& vw) { return !(vw.first > 0.0); });
  if (value_weight.empty()) return 0.0;
  std::sort(value_weight.begin(), value_weight.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < value_weight.size(); ++i) {
    cum += value_weight[i].second;
    // Evaluate once per distinct value, after all ties are in.
    if (i + 1 < value_weight.size() && value_weight[i + 1].first == value_weight[i].first)
      continue;
    best = std::max(best, value_weight[i].first * std::pow(cum, gamma));
  }
  return best;
}

double m_phi(Backend backend, const Weight& phi, double L) {
  std::vector<std::pair<double, double>> atoms;
  for (const Dual& pi : dual_enumerate(backend, L))
    atoms.emplace_back(phi(pi), static_cast<double>(pi.dim) * pi.inv);
  return level_sup(std::move(atoms), 1.0);
}

LpNorm quadrature_norm_source(std::shared_ptr<const QuadratureRule> rule) {
  if (!rule) throw invalid_parameter("quadrature_norm_source needs a rule");
  return [rule](const CoefficientField& fhat, double p) {
    return lp_quadrature_norm(inverse_transform(fhat, rule), p);
  };
}

LpNorm central_norm_source(int panels) {
  return [panels](const CoefficientField& fhat, double p) -> double {
    switch (fhat.backend()) {
      case Backend::Torus: {
        const int mmax = static_cast<int>(fhat.max_index());
        const int n = panels > 0 ? panels : std::max(512, 8 * (mmax + 1));
        static thread_local std::vector<double> gx, gw;
        if (gx.empty()) gauss_legendre(16, gx, gw);
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(n) * 16);
        const double h = 1.0 / n;
        for (int j = 0; j < n; ++j) {
          for (int q = 0; q < 16; ++q) {
            const double x = (j + 0.5) * h + 0.5 * h * gx[q];
            complexd f = 0.0;
            for (const auto& [pi, v] : fhat.entries())
              f += v(0, 0) * std::polar(1.0, 2.0 * std::numbers::pi * pi.index * x);
            terms.push_back(0.5 * h * gw[q] * std::pow(std::abs(f), p));
          }
        }
        return std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / p);
      }
      case Backend::SU2: {
        // Central means every coefficient is a scalar matrix; then f reduces
        // to a character series in the torus coordinate.
        std::vector<std::pair<double, complexd>> series;  // (index, trace)
        for (const auto& [pi, v] : fhat.entries()) {
          const complexd mean = v.trace() / static_cast<double>(pi.dim);
          Matrix dev = v;
          dev.diagonal().array() -= mean;
          if (dev.norm() > 1e-12 * std::max(1.0, v.norm()))
            throw invalid_parameter("central_norm_source: SU(2) field is not central");
          // f = sum dim * Tr(sigma pi) = sum (dim * mean) chi, so the series
          // coefficient is the full trace, not the eigenvalue.
          series.emplace_back(pi.index, v.trace());
        }
        const int lmax2 = static_cast<int>(2.0 * fhat.max_index());
        int n = panels > 0 ? panels : std::max(512, 2 * (lmax2 + 4));
        n += n % 2;
        return class_function_norm(
            [&series](double t) {
              complexd acc = 0.0;
              for (const auto& [l, trace] : series) acc += trace * character(l, t);
              return std::abs(acc);
            },
            p, n);
      }
      case Backend::Sphere2:
        throw invalid_parameter(
            "central_norm_source supports the torus and central SU(2) fields");
    }
    throw invalid_parameter("unknown backend enum value");
  };
}

std::vector<InequalityReport> hardy_littlewood_report(const CoefficientField& fhat,
                                                      double p, const LpNorm& norm,
                                                      const std::string& family_id) {
  if (!(p > 1.0 && p <= 2.0))
    throw invalid_parameter("hardy_littlewood_report requires 1 < p <= 2");
  const Weight phi = Weight::eig_power(-manifold_dim(fhat.backend()));
  std::vector<InequalityReport> out;
  InequalityReport r;
  r.name = "hardy-littlewood";
  r.p = p;
  r.phi_id = phi.id();
  r.cutoff = fhat.max_eig();
  r.family_id = family_id;
  r.lhs = weighted_power_sum(fhat, p, phi);
  if (p == 2.0) {
    r.rhs = r.lhs;
    r.notes = "p=2: both sides are the Plancherel sum";
  } else {
    r.rhs = std::pow(norm(fhat, p), p);
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  out.push_back(r);
  if (fhat.backend() == Backend::Torus) {
    // Literal classical weight (1 + |m|)^{p-2} rather than its spectral
    // equivalent (1 + m^2)^{(p-2)/2}; the two are comparable, not equal.
    const Weight lit = Weight::index_power(-1.0);
    InequalityReport r2 = r;
    r2.name = "hardy-littlewood-literal";
    r2.phi_id = lit.id();
    r2.lhs = weighted_power_sum(fhat, p, lit);
    if (p == 2.0) {
      r2.rhs = r2.lhs;
    }
    r2.ratio = safe_ratio(r2.lhs, r2.rhs);
    out.push_back(r2);
  }
  return out;
}

std::vector<InequalityReport> hardy_littlewood_dual_report(const CoefficientField& fhat,
                                                           double p, const LpNorm& norm,
                                                           const std::string& family_id) {
  if (!(p >= 2.0)) throw invalid_parameter("hardy_littlewood_dual_report requires p >= 2");
  const Weight phi = Weight::eig_power(-manifold_dim(fhat.backend()));
  std::vector<InequalityReport> out;
  InequalityReport r;
  r.name = "hardy-littlewood-dual";
  r.p = p;
  r.phi_id = phi.id();
  r.cutoff = fhat.max_eig();
  r.family_id = family_id;
  r.rhs = weighted_power_sum(fhat, p, phi);
  if (p == 2.0) {
    r.lhs = r.rhs;
    r.notes = "p=2: both sides are the Plancherel sum";
  } else {
    r.lhs = std::pow(norm(fhat, p), p);
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  out.push_back(r);
  if (fhat.backend() == Backend::Torus) {
    const Weight lit = Weight::index_power(-1.0);
    InequalityReport r2 = r;
    r2.name = "hardy-littlewood-dual-literal";
    r2.phi_id = lit.id();
    r2.rhs = weighted_power_sum(fhat, p, lit);
    if (p == 2.0) {
      r2.lhs = r2.rhs;
    }
    r2.ratio = safe_ratio(r2.lhs, r2.rhs);
    out.push_back(r2);
  }
  return out;
}

InequalityReport hausdorff_young_report(const CoefficientField& fhat, double p,
                                        const LpNorm& norm, const std::string& family_id) {
  if (!(p > 1.0 && p <= 2.0))
    throw invalid_parameter("hausdorff_young_report requires 1 < p <= 2");
  InequalityReport r;
  r.name = "hausdorff-young";
  r.p = p;
  r.cutoff = fhat.max_eig();
  r.family_id = family_id;
  if (p == 2.0) {
    r.lhs = std::sqrt(plancherel_sum(fhat));
    r.rhs = r.lhs;
    r.notes = "p=2: both sides are the Plancherel norm";
  } else {
    const double pprime = p / (p - 1.0);
    r.lhs = lp_norm_hs(fhat, pprime);
    r.rhs = norm(fhat, p);
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

InequalityReport paley_report(const CoefficientField& fhat, double p, const Weight& phi,
                              const LpNorm& norm, double cutoff,
                              const std::string& family_id) {
  if (!(p > 1.0 && p <= 2.0)) throw invalid_parameter("paley_report requires 1 < p <= 2");
  const double M = m_phi(fhat.backend(), phi, cutoff);
  InequalityReport r;
  r.name = "paley";
  r.p = p;
  r.phi_id = phi.id();
  r.cutoff = cutoff;
  r.family_id = family_id;
  r.lhs = std::pow(weighted_power_sum(fhat, p, phi), 1.0 / p);
  if (p == 2.0) {
    r.rhs = r.lhs;
    r.notes = "p=2: the weight drops out and both sides are the Plancherel norm";
  } else {
    if (!(M > 0.0)) throw invalid_parameter("paley_report: M_phi vanished");
    r.rhs = std::pow(M, (2.0 - p) / p) * norm(fhat, p);
    r.notes = "mphi=" + format_double(M);
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

InequalityReport hyp_report(const CoefficientField& fhat, double p, double b,
                            const Weight& phi, const LpNorm& norm, double cutoff,
                            const std::string& family_id) {
  if (!(p > 1.0 && p <= 2.0)) throw invalid_parameter("hyp_report requires 1 < p <= 2");
  const double pprime = p / (p - 1.0);
  if (!(b >= p - 1e-12 && b <= pprime + 1e-12))
    throw invalid_parameter("hyp_report requires p <= b <= p'");
  const double e = 1.0 / b - 1.0 / pprime;
  const double M = m_phi(fhat.backend(), phi, cutoff);
  InequalityReport r;
  r.name = "hausdorff-young-paley";
  r.p = p;
  r.b = b;
  r.phi_id = phi.id();
  r.cutoff = cutoff;
  r.family_id = family_id;
  const double kexp = b * (1.0 / b - 0.5);
  std::vector<double> terms;
  terms.reserve(fhat.size());
  for (const auto& [pi, v] : fhat.entries())
    terms.push_back(pi.dim * std::pow(static_cast<double>(pi.inv), kexp) *
                    std::pow(v.norm() * std::pow(phi(pi), e), b));
  r.lhs = std::pow(pairwise_sum(std::span<const double>(terms)), 1.0 / b);
  if (p == 2.0) {
    r.rhs = r.lhs;
    r.notes = "p=2: both sides are the Plancherel norm";
  } else {
    if (!(M > 0.0)) throw invalid_parameter("hyp_report: M_phi vanished");
    r.rhs = std::pow(M, e) * norm(fhat, p);
    r.notes = "mphi=" + format_double(M);
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

}  // namespace homfour
