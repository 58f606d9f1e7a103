#pragma once

// Fourier multipliers: symbols acting on coefficient fields, the level-set
// upper bound for the L^p -> L^q operator norm, certified empirical lower
// bounds, and the aggregated bound for non-invariant operators.

#include "homfour/inequalities.hpp"

namespace homfour {

// A multiplier symbol: rep -> dim x dim matrix supported on the upper-left
// inv x inv block (acting on coefficient fields preserves their row pattern).
class Symbol {
 public:
  explicit Symbol(Backend backend) : backend_(backend) {}

  Backend backend() const { return backend_; }
  void set(const Dual& pi, const Matrix& value, double tol = 0.0);
  const std::map<Dual, Matrix, DualLess>& entries() const { return entries_; }

  // Operator norm (largest singular value) per entry.
  std::vector<std::pair<Dual, double>> op_norms() const;

  // Spectral-profile symbols, same grammar as the test families plus
  // "randdiag:seed=..,L=..": heat, bessel, dirichlet (sharp truncation),
  // random diagonal. Profiles multiply the restricted identity.
  static Symbol from_spec(Backend backend, const std::string& text, double cutoff);

 private:
  Backend backend_;
  std::map<Dual, Matrix, DualLess> entries_;
};

// Entrywise matrix product sigma(pi) * hat f(pi) over the field's support;
// reps without a symbol entry are annihilated.
CoefficientField apply_multiplier(const Symbol& sigma, const CoefficientField& fhat);

// sup over s > 0 of s * (measure of {||sigma(pi)||_op > s, eig <= L})^{1/p-1/q}
// for 1 < p <= 2 <= q < infinity. The sup of the step function is exact: the
// limit from below at each distinct operator-norm level equals the value of
// s * (measure of {>= s})^{...} at the level itself, so no epsilon shift is
// needed. At p = q = 2 this degenerates to the top level, sup ||sigma||_op.
double multiplier_bound(const Symbol& sigma, double p, double q, double L);

struct OpNormEstimate {
  double lower{0.0};     // max over trials of ||Af||_q / ||f||_p
  FamilySpec witness;    // the maximizing trial
};

// Certified lower bound on the operator norm via a family of trial inputs.
OpNormEstimate empirical_opnorm(const Symbol& sigma, double p, double q,
                                std::span<const FamilySpec> trials,
                                std::shared_ptr<const QuadratureRule> rule,
                                double cutoff);

// One derivative order of a non-invariant symbol: the multi-index and the
// symbol observed at each grid point of the base manifold.
struct DerivativeSymbols {
  std::vector<int> alpha;
  std::vector<Symbol> at_grid_points;
};

// sum over |alpha| <= order of max over grid points of the level-set bound.
// Every multi-index with |alpha| <= order must appear, each with the same
// nonempty grid size.
double noninvariant_bound(std::span<const DerivativeSymbols> family, double p,
                          double q, double L, int order);

}  // namespace homfour
