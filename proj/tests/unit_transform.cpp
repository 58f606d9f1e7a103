#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homfour/transform.hpp"

#include <cmath>
#include <memory>
#include <numbers>

using namespace homfour;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const QuadratureRule> rule_for(Backend b, int res) {
  return std::make_shared<QuadratureRule>(haar_quadrature(b, res));
}

double field_distance(const CoefficientField& a, const CoefficientField& b) {
  double worst = 0.0;
  for (const auto& [pi, v] : a.entries()) {
    const Matrix* w = b.find(pi);
    const double d = w ? (v - *w).cwiseAbs().maxCoeff() : v.cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
  }
  for (const auto& [pi, w] : b.entries()) {
    if (!a.find(pi)) worst = std::max(worst, w.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

TEST_CASE("forward then inverse reproduces a bandlimited function on every backend") {
  for (Backend b : {Backend::Torus, Backend::SU2, Backend::Sphere2}) {
    const double L = spectral_eig(b, b == Backend::SU2 ? 2.5 : 3.0);
    const auto rule = rule_for(b, 48);
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::RandomBandlimited;
    spec.backend = b;
    spec.L = 3.0;
    spec.seed = 11;
    const CoefficientField sigma = synthesize_family(spec, L);
    REQUIRE(!sigma.empty());
    const SampledFunction f = inverse_transform(sigma, rule);
    const CoefficientField back = forward_transform(f, L);
    CHECK(field_distance(sigma, back) < 1e-12);
  }
}

TEST_CASE("hand-built rule without grid extents takes the per-node path and agrees") {
  const auto fast = rule_for(Backend::SU2, 24);
  auto slow_rule = std::make_shared<QuadratureRule>(*fast);
  slow_rule->n0 = slow_rule->n1 = slow_rule->n2 = 0;
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::RandomBandlimited;
  spec.backend = Backend::SU2;
  spec.L = 1.5;
  spec.seed = 3;
  const CoefficientField sigma = synthesize_family(spec, spectral_eig(Backend::SU2, 1.5));
  const SampledFunction f_fast = inverse_transform(sigma, fast);
  const SampledFunction f_slow = inverse_transform(sigma, slow_rule);
  REQUIRE(f_fast.values.size() == f_slow.values.size());
  double dv = 0.0;
  for (std::size_t i = 0; i < f_fast.values.size(); ++i)
    dv = std::max(dv, std::abs(f_fast.values[i] - f_slow.values[i]));
  CHECK(dv < 1e-12);

  const CoefficientField a = forward_transform(f_fast, spectral_eig(Backend::SU2, 1.5));
  const CoefficientField b = forward_transform(f_slow, spectral_eig(Backend::SU2, 1.5));
  CHECK(field_distance(a, b) < 1e-12);
}

TEST_CASE("plancherel identity holds at quadrature precision") {
  for (Backend b : {Backend::Torus, Backend::SU2, Backend::Sphere2}) {
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::RandomBandlimited;
    spec.backend = b;
    spec.L = 2.0;
    spec.seed = 7;
    const CoefficientField sigma = synthesize_family(spec, spectral_eig(b, 2.0));
    const SampledFunction f = inverse_transform(sigma, rule_for(b, 48));
    const double left = lp_quadrature_norm(f, 2.0);
    const double right = lp_norm_hs(sigma, 2.0);
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
}

TEST_CASE("evaluate matches the sampled inverse transform node by node") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::RandomBandlimited;
  spec.backend = Backend::SU2;
  spec.L = 1.0;
  spec.seed = 19;
  const CoefficientField sigma = synthesize_family(spec, spectral_eig(Backend::SU2, 1.0));
  const auto rule = rule_for(Backend::SU2, 16);
  const SampledFunction f = inverse_transform(sigma, rule);
  for (std::size_t i = 0; i < rule->nodes.size(); i += 37) {
    CHECK(std::abs(f.values[i] - evaluate(sigma, rule->nodes[i])) < 1e-12);
  }
}

TEST_CASE("forward_transform refuses a rule below the requested band") {
  const auto rule = rule_for(Backend::SU2, 12);  // band limit 2.5
  const SampledFunction f = sample(rule, [](const GroupPoint&) { return complexd(1.0, 0.0); });
  CHECK_THROWS_AS(forward_transform(f, 6.0), invalid_parameter);
}

TEST_CASE("family specs parse, print ids, and reject malformed text") {
  const FamilySpec h = FamilySpec::parse(Backend::SU2, "heat:t=0.25");
  CHECK(h.kind == FamilySpec::Kind::Heat);
  CHECK(h.t == 0.25);
  CHECK(h.id() == "heat:t=0.25");

  const FamilySpec r = FamilySpec::parse(Backend::Torus, "random:seed=5,L=12");
  CHECK(r.seed == 5);
  CHECK(r.L == 12.0);
  CHECK(r.id() == "random:seed=5,L=12");

  const FamilySpec m = FamilySpec::parse(Backend::SU2, "monotone:alpha=1.5,L=20");
  CHECK(m.alpha == 1.5);

  CHECK_THROWS_AS(FamilySpec::parse(Backend::SU2, "heat:t=-1"), invalid_parameter);
  CHECK_THROWS_AS(FamilySpec::parse(Backend::SU2, "nosuch:a=1"), invalid_parameter);
  CHECK_THROWS_AS(FamilySpec::parse(Backend::SU2, "heat:tt=0.1"), invalid_parameter);
}

TEST_CASE("heat family carries the frozen scalar profile") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::Heat;
  spec.backend = Backend::SU2;
  spec.t = 0.1;
  const CoefficientField sigma = synthesize_family(spec, spectral_eig(Backend::SU2, 3.0));
  const Dual pi = make_dual(Backend::SU2, 0.5);
  const Matrix* v = sigma.find(pi);
  REQUIRE(v != nullptr);
  // exp(-t l(l+1)) at l=1/2, t=0.1: frozen independently.
  CHECK((*v)(0, 0).real() == doctest::Approx(0.92774348632855286).epsilon(1e-15));
  CHECK((*v)(1, 1).real() == doctest::Approx(0.92774348632855286).epsilon(1e-15));
  CHECK(std::abs((*v)(0, 1)) == 0.0);
}

TEST_CASE("monotone central family puts the documented scalar on each block") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::MonotoneCentral;
  spec.backend = Backend::SU2;
  spec.alpha = 2.0;
  spec.L = 10.0;
  const CoefficientField sigma = synthesize_family(spec, spectral_eig(Backend::SU2, 14.0));
  const Dual pi = make_dual(Backend::SU2, 2.0);
  const Matrix* v = sigma.find(pi);
  REQUIRE(v != nullptr);
  CHECK((*v)(3, 3).real() == doctest::Approx(std::pow(5.0, -2.0)).epsilon(1e-15));
  // The spec's own band cutoff caps the support below a larger truncation.
  CHECK(sigma.max_index() == 10.0);

  // Torus variant: (1 + |m|)^-alpha, symmetric in m.
  spec.backend = Backend::Torus;
  const CoefficientField tor = synthesize_family(spec, spectral_eig(Backend::Torus, 14.0));
  const Matrix* w = tor.find(make_dual(Backend::Torus, -3.0));
  REQUIRE(w != nullptr);
  CHECK((*w)(0, 0).real() == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("random bandlimited families are seed-deterministic and seed-sensitive") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::RandomBandlimited;
  spec.backend = Backend::Sphere2;
  spec.L = 4.0;
  spec.seed = 42;
  const CoefficientField a = synthesize_family(spec, spectral_eig(Backend::Sphere2, 4.0));
  const CoefficientField b = synthesize_family(spec, spectral_eig(Backend::Sphere2, 4.0));
  CHECK(field_distance(a, b) == 0.0);
  spec.seed = 43;
  const CoefficientField c = synthesize_family(spec, spectral_eig(Backend::Sphere2, 4.0));
  CHECK(field_distance(a, c) > 1e-3);

  // Sphere entries only occupy the single invariant row.
  for (const auto& [pi, v] : a.entries()) {
    for (int r = 1; r < v.rows(); ++r) CHECK(v.row(r).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("quadrature_inner recovers orthogonality of matrix elements") {
  const auto rule = rule_for(Backend::SU2, 24);
  const auto elem = [&](double l, int r, int c) {
    return sample(rule, [=](const GroupPoint& u) { return wigner_matrix(l, u)(r, c); });
  };
  const SampledFunction a = elem(1.0, 0, 1);
  const SampledFunction b = elem(1.0, 0, 1);
  const SampledFunction c = elem(1.0, 1, 1);
  const SampledFunction d = elem(0.5, 0, 0);
  // <pi_rc, pi_rc> = 1/dim; distinct elements and distinct reps integrate to 0.
  CHECK(std::abs(quadrature_inner(a, b) - complexd(1.0 / 3.0, 0.0)) < 1e-13);
  CHECK(std::abs(quadrature_inner(a, c)) < 1e-13);
  CHECK(std::abs(quadrature_inner(a, d)) < 1e-13);
}

TEST_CASE("schur orthogonality error is tiny for an exact rule and guards misuse") {
  const auto rule = rule_for(Backend::SU2, 24);
  CHECK(schur_orthogonality_error(rule, spectral_eig(Backend::SU2, 1.0)) < 1e-10);
  // Band 2L exceeds the rule: refuse rather than report garbage.
  CHECK_THROWS_AS(schur_orthogonality_error(rule, spectral_eig(Backend::SU2, 4.0)),
                  invalid_parameter);
  const auto torus = rule_for(Backend::Torus, 24);
  CHECK_THROWS_AS(schur_orthogonality_error(torus, 2.0), invalid_parameter);
}

TEST_CASE("sphere zonal function has the frozen squared norm") {
  // f = P_1(cos theta): ||f||_2^2 = 1/3 by Legendre orthogonality.
  const auto rule = rule_for(Backend::Sphere2, 24);
  const SampledFunction f = sample(rule, [](const GroupPoint& x) {
    return complexd(std::cos(x.c0), 0.0);
  });
  const double n2 = lp_quadrature_norm(f, 2.0);
  CHECK(n2 * n2 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("function csv carries coordinates and complex parts per node") {
  const auto rule = rule_for(Backend::Torus, 8);
  const SampledFunction f = sample(rule, [](const GroupPoint& x) {
    return complexd(std::cos(2.0 * kPi * x.c0), std::sin(2.0 * kPi * x.c0));
  });
  const std::string csv = function_to_csv(f);
  CHECK(csv.rfind("x,re,im\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + rule->nodes.size());
}
