#pragma once

// Discrete weighted measure spaces, distribution functions, weak-type norms,
// and the Marcinkiewicz interpolation check used on the Paley operator.

#include "homfour/dual.hpp"

namespace homfour {

// Finite positive measure on a positional index set.
struct DiscreteMeasureSpace {
  std::vector<double> nu;  // strictly positive atoms

  void validate() const;
  double total() const;
};

// Sequence of matrices with per-index invariant count kappa; the scalar
// shadow is |h|(i) = ||h(i)||_HS / sqrt(kappa(i)).
struct MatrixSequence {
  std::vector<Matrix> mats;
  std::vector<int> kappa;

  std::size_t size() const { return mats.size(); }
  double scalar(std::size_t i) const;
};

// nu{ |h| >= y }; y > 0. Non-increasing and right-continuous in y.
double distribution_function(const MatrixSequence& h,
                             const DiscreteMeasureSpace& space, double y);

// sum_i |h|(i)^p nu_i
double sequence_lp_p(const MatrixSequence& h, const DiscreteMeasureSpace& space,
                     double p);

// p * integral y^{p-1} nu{|h| >= y} dy, integrated exactly over the finite
// level set (no quadrature). Equals sequence_lp_p up to rounding.
double layer_cake_integral(const MatrixSequence& h,
                           const DiscreteMeasureSpace& space, double p);

struct WeakTypeSample {
  double input_norm{0.0};  // ||f||_{L^p}
  MatrixSequence output;   // A f
};

struct WeakTypeResult {
  double M{0.0};
  int skipped{0};  // samples dropped for zero input norm
};

// Least M with nu{|Af| >= y} <= (M ||f||_p / y)^p across samples; exact over
// the finite level sets.
WeakTypeResult weak_type_norm(std::span<const WeakTypeSample> samples,
                              const DiscreteMeasureSpace& space, double p);

struct MarcinkiewiczReport {
  double theta{0.0};
  double interpolated_constant{0.0};  // M1^{1-theta} M2^theta
  double max_ratio{0.0};  // strong-type ratio over samples, against that constant
};

// 1/p = (1-theta)/p1 + theta/p2 with p1 < p < p2; reports the worst ratio of
// the strong l^p(nu) norm of Af to M1^{1-theta} M2^theta ||f||_p.
MarcinkiewiczReport marcinkiewicz_check(double p1, double p2, double p, double M1,
                                        double M2,
                                        std::span<const WeakTypeSample> samples,
                                        const DiscreteMeasureSpace& space);

// The Paley operator pieces for a weight phi on the duals of a field:
// h(pi) = hat f(pi) / phi(pi) with kappa = inv, so |h| = ||hat f||_HS /
// (sqrt(inv) phi); the matching measure is nu = phi^2 * dim * inv.
MatrixSequence paley_sequence(const CoefficientField& fhat, const Weight& phi);
DiscreteMeasureSpace paley_space(std::span<const Dual> duals, const Weight& phi);

}  // namespace homfour
