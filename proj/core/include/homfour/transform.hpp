#pragma once

// Forward and inverse Fourier transforms between sampled functions and
// coefficient fields, plus the named families of test functions every
// experiment draws from.

#include "homfour/dual.hpp"
#include "homfour/group.hpp"

#include <memory>

namespace homfour {

struct SampledFunction {
  std::shared_ptr<const QuadratureRule> rule;
  std::vector<complexd> values;  // one per node

  Backend backend() const { return rule->backend; }
};

SampledFunction sample(std::shared_ptr<const QuadratureRule> rule,
                       const std::function<complexd(const GroupPoint&)>& f);

// hat f(pi) = integral f(u) pi(u)^* du for every spectral size <= L.
// Requires the rule to be exact at that band limit (see quadrature_band_limit);
// otherwise throws invalid_parameter. Forbidden rows are zeroed exactly.
CoefficientField forward_transform(const SampledFunction& f, double L);

// f(x) = sum over the support of dim * Tr(sigma(pi) pi(x)).
complexd evaluate(const CoefficientField& sigma, const GroupPoint& x);
SampledFunction inverse_transform(const CoefficientField& sigma,
                                  std::shared_ptr<const QuadratureRule> rule);

// (sum_k w_k |f_k|^p)^{1/p}
double lp_quadrature_norm(const SampledFunction& f, double p);
// sum_k w_k f_k conj(g_k)
complexd quadrature_inner(const SampledFunction& f, const SampledFunction& g);

// Named generators. Heat and Bessel are scalar spectral profiles times the
// restricted identity; DirichletKernel keeps the restricted identity below a
// spectral cutoff; MonotoneCentral is the power-decay central family
// ((1+|m|)^-alpha on the torus); RandomBandlimited fills admissible entries
// with seeded complex Gaussians.
struct FamilySpec {
  enum class Kind { Heat, Bessel, DirichletKernel, RandomBandlimited, MonotoneCentral };

  Kind kind{Kind::Heat};
  Backend backend{Backend::SU2};
  double t{0.1};        // Heat diffusion time, > 0
  double s{2.0};        // Bessel decay order, > 0
  double N{4.0};        // DirichletKernel spectral cutoff
  double L{8.0};        // band index cutoff (RandomBandlimited, MonotoneCentral)
  double alpha{2.0};    // MonotoneCentral decay exponent, > 0
  std::uint64_t seed{1};

  // Grammar: "heat:t=0.1" | "bessel:s=2" | "dirichlet:N=5" |
  //          "random:seed=1,L=8" | "monotone:alpha=2,L=20"
  static FamilySpec parse(Backend backend, const std::string& text);
  std::string id() const;
};

// Build the coefficient field of a family. `cutoff` truncates spectrally
// (Heat and Bessel have infinite support); families with their own band
// cutoff also respect it.
CoefficientField synthesize_family(const FamilySpec& spec, double cutoff);

// CSV with node coordinates and the complex value at each node.
std::string function_to_csv(const SampledFunction& f);

// Quadrature quality diagnostic on SU(2): Gram matrix of the matrix elements
// sqrt(dim) pi_{rc} for all pi with spectral size <= L under the discrete
// inner product, returned as the max absolute deviation from the identity.
// Zero in exact arithmetic whenever the rule integrates band 2L exactly.
double schur_orthogonality_error(const std::shared_ptr<const QuadratureRule>& rule,
                                 double L);

}  // namespace homfour
