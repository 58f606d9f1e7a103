#pragma once

// Both sides of the dual-norm inequalities as ratio reports, the weighted
// level functional M_phi that controls them, and the spectral counting
// function.

#include "homfour/transform.hpp"

namespace homfour {

struct InequalityReport {
  std::string name;
  double p{0.0};
  double b{0.0};  // 0 when the inequality has no second exponent
  std::string phi_id;
  double cutoff{0.0};
  std::string family_id;
  double lhs{0.0};
  double rhs{0.0};
  double ratio{0.0};
  std::string notes;

  static std::string csv_header();  // name,p,b,phi,cutoff,family,lhs,rhs,ratio
  std::string csv_row() const;
  std::string json_record() const;
};

// N(L) = sum of dim * inv over spectral size <= L.
double weyl_counting(Backend backend, double L);

// sup over s > 0 of s * (measure of {phi >= s}) across the truncated dual;
// exact, evaluated at the distinct values of phi.
double m_phi(Backend backend, const Weight& phi, double L);

// sup s * (sum of weights with value >= s)^gamma over s > 0, for a finite
// list of (value, weight) atoms. The running ingredient of M_phi, the
// multiplier bound, and the weak-type norms.
double level_sup(std::vector<std::pair<double, double>> value_weight, double gamma);

// How reports obtain an L^p function norm from a coefficient field.
using LpNorm = std::function<double(const CoefficientField&, double)>;

// Inverse transform + p-th power quadrature sum over the rule.
LpNorm quadrature_norm_source(std::shared_ptr<const QuadratureRule> rule);

// One-dimensional reduction for conjugation invariant fields on SU(2) and
// arbitrary fields on the torus; panels = 0 sizes the panel count from the
// band limit. Throws if an SU(2) field is not central.
LpNorm central_norm_source(int panels = 0);

// Left side: sum dim * inv^{p(1/p-1/2)} * eig^{n(p-2)} * ||hat f||_HS^p with
// n the manifold dimension; right side: ||f||_p^p. For the torus a second
// report with the literal weight (1+|m|)^{p-2} is appended. 1 < p <= 2.
std::vector<InequalityReport> hardy_littlewood_report(
    const CoefficientField& fhat, double p, const LpNorm& norm,
    const std::string& family_id = "");

// Reversed direction for p >= 2: lhs = ||f||_p^p, rhs = the weighted sum.
// Torus gets the literal-weight companion row as well.
std::vector<InequalityReport> hardy_littlewood_dual_report(
    const CoefficientField& fhat, double p, const LpNorm& norm,
    const std::string& family_id = "");

// lhs = l^{p'} dual norm of hat f, rhs = ||f||_p. 1 < p <= 2.
InequalityReport hausdorff_young_report(const CoefficientField& fhat, double p,
                                        const LpNorm& norm,
                                        const std::string& family_id = "");

// lhs = (sum dim inv^{p(1/p-1/2)} ||hat f||_HS^p phi^{2-p})^{1/p},
// rhs = M_phi^{(2-p)/p} ||f||_p. 1 < p <= 2, phi > 0.
InequalityReport paley_report(const CoefficientField& fhat, double p,
                              const Weight& phi, const LpNorm& norm,
                              double cutoff, const std::string& family_id = "");

// The interpolated family: 1 < p <= b <= p'. b = p recovers the Paley row,
// b = p' the Hausdorff-Young row.
InequalityReport hyp_report(const CoefficientField& fhat, double p, double b,
                            const Weight& phi, const LpNorm& norm,
                            double cutoff, const std::string& family_id = "");

}  // namespace homfour
