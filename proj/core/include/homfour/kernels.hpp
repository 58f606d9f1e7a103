#pragma once

// Dirichlet kernels on SU(2), index-cutoff partial sums, the monotonicity
// and non-oscillation predicates, the two-sided integrability criterion
// experiment, and net norms over nested spectral cutoffs.

#include "homfour/inequalities.hpp"

#include <optional>

namespace homfour {

enum class DirichletMethod { Sum, Closed };

// D_l(t) = sum over k = 0, 1/2, ..., l of (2k+1) character(k, t).
// The closed method evaluates the telescoped form
//   [(sin((2l+1)pi t) + sin((2l+2)pi t)) cos(pi t)] / (2 sin^3(pi t))
// - [(2l+1) cos((2l+1)pi t) + (2l+2) cos((2l+2)pi t)] / (2 sin^2(pi t)),
// falling back to the sum when |sin(pi t)| < 1e-6. Both agree to 1e-9 away
// from the endpoints. At integral t the limit sum of (2k+1)^2 is returned.
double dirichlet_kernel(double l, double t, DirichletMethod method = DirichletMethod::Sum);

// max over l <= l_max (half-integer ladder) and t in the grid of
// t^2 |D_l(t)| / (2l+1); bounded uniformly in l_max.
double dirichlet_estimate_constant(double l_max, std::span<const double> t_grid);

// Truncation to ladder index <= N (|m| <= N on the torus). A projection.
CoefficientField partial_sum(const CoefficientField& fhat, double N);

struct ConvergenceRow {
  double N{0.0};
  double p{0.0};
  double error{0.0};  // ||S_N f - f||_p
};

// Partial-sum error table over the cutoffs in Ns. When assert_theorem_range
// is set the input must be conjugation invariant (SU(2)) and p must lie in
// (3/2, 5/2), the range where mean convergence is guaranteed; otherwise the
// rows are recorded without any claim.
std::vector<ConvergenceRow> convergence_study(const CoefficientField& fhat,
                                              double p, std::span<const double> Ns,
                                              bool assert_theorem_range,
                                              const LpNorm& norm);

struct MonotoneDiagnostics {
  bool is_almost_scalar{false};      // all entries normal, nonzero eigenvalues comparable
  double eigen_ratio_low{0.0};       // extreme ratios |lambda| / max|lambda| over entries
  double eigen_ratio_high{0.0};
  double normality_residual{0.0};    // max ||AA* - A*A||_max
  bool is_nonneg{false};             // every entry nonnegative definite
  bool is_d_sigma_decreasing{false}; // (2l+1) sigma_l non-increasing
  std::optional<double> first_violation_index;
};

// SU(2) only; sigma_l taken as the largest eigenvalue magnitude per entry.
MonotoneDiagnostics check_monotone(const CoefficientField& fhat);

struct NonOscillation {
  bool holds{false};
  double C{0.0};  // smallest admissible constant over the truncation
  std::string note;
};

// For each ladder point xi <= xi_cap tests the tail sum of sigma_l against
// C * (2 xi + 1) sigma_xi. Families carry a closed-form tail exponent alpha
// (tail summable iff alpha > 1); numeric fields without one are checked on
// the truncation only, with a note.
NonOscillation check_nonoscillation(const CoefficientField& fhat, double xi_cap,
                                    std::optional<double> tail_exponent = std::nullopt);

struct CriterionReport {
  double alpha{0.0};
  double p{0.0};
  double L{0.0};
  double lhs{0.0};   // ||f||_p^p
  double rhs{0.0};   // weighted coefficient sum
  double ratio{0.0};
  std::string notes;
};

// Two-sided comparison for the power-decay central family: on SU(2),
// ||f||_p^p against sum (2l+1)^{5p/2-4} ||hat f(l)||_HS^p with 3/2 < p <= 2;
// on the torus against sum (1+|m|)^{p-2} |hat f(m)|^p with 1 < p <= 2.
// At p = 2 both sides coincide exactly (Parseval) and the ratio is 1.
// Preconditions (monotonicity, non-oscillation) are re-checked and named on
// failure.
CriterionReport criterion_report(const FamilySpec& family, double p, int panels = 0);

// Net norm over nested spectral cutoffs Q (measure at least eig^n):
// sum dim*inv * eig^{n(p-2)} * (sup_Q |sum over Q of dim * Tr hat f| / mu(Q))^p.
// SU(2) (n = 3) and torus (n = 1) backends.
double net_norm(const CoefficientField& fhat, double p);

}  // namespace homfour
