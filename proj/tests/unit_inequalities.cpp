#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homfour/inequalities.hpp"

#include <cmath>
#include <memory>

using namespace homfour;

namespace {

std::shared_ptr<const QuadratureRule> rule_for(Backend b, int res) {
  return std::make_shared<QuadratureRule>(haar_quadrature(b, res));
}

CoefficientField monotone_su2(double alpha, double L) {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::MonotoneCentral;
  spec.backend = Backend::SU2;
  spec.alpha = alpha;
  spec.L = L;
  return synthesize_family(spec, spectral_eig(Backend::SU2, L));
}

}  // namespace

TEST_CASE("weyl_counting returns the exact integer counts") {
  CHECK(weyl_counting(Backend::SU2, 1.5) == 5.0);
  CHECK(weyl_counting(Backend::SU2, 20.0) == 20540.0);
  CHECK(weyl_counting(Backend::SU2, 100.0) == 2646700.0);
  CHECK(weyl_counting(Backend::Torus, 2.5) == 5.0);
  CHECK(weyl_counting(Backend::Sphere2, 2.7) == 9.0);  // l = 0, 1, 2
}

TEST_CASE("m_phi frozen values") {
  // sup s * mu{eig^-3 >= s} over l <= 50, stable once the tail decays:
  // frozen from an independent enumeration.
  CHECK(m_phi(Backend::SU2, Weight::eig_power(-3.0), 50.0) ==
        doctest::Approx(2.989058871028293).epsilon(1e-14));
  CHECK(m_phi(Backend::SU2, Weight::eig_power(-3.0), 100.0) ==
        doctest::Approx(2.989058871028293).epsilon(1e-14));
  // Torus with the literal weight at cutoff 50: the sup lands on m = +-49,
  // value (1/50) * 99 = 1.98 exactly.
  CHECK(m_phi(Backend::Torus, Weight::index_power(-1.0), 50.0) ==
        doctest::Approx(1.98).epsilon(1e-14));
}

TEST_CASE("level_sup hand cases") {
  // Atoms (value, weight): sup of v * cum(v)^gamma at distinct values.
  // values 3 (w 1), 1 (w 4): gamma=1 -> max(3*1, 1*5) = 5.
  CHECK(level_sup({{3.0, 1.0}, {1.0, 4.0}}, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
  // gamma = 0 gives the plain sup of values.
  CHECK(level_sup({{3.0, 1.0}, {1.0, 4.0}}, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  // Nonpositive values are dropped; all dropped -> 0.
  CHECK(level_sup({{-1.0, 2.0}, {0.0, 5.0}}, 1.0) == 0.0);
  // Duplicate values pool their weight before the cumulative sum.
  CHECK(level_sup({{2.0, 1.0}, {2.0, 1.0}, {1.0, 1.0}}, 1.0) ==
        doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("hardy-littlewood report reproduces the frozen left side") {
  const CoefficientField fhat = monotone_su2(2.0, 10.0);
  const LpNorm norm = central_norm_source();
  const auto rows = hardy_littlewood_report(fhat, 1.5, norm, "monotone:alpha=2,L=10");
  REQUIRE(rows.size() == 1);
  // sum over the half-integer ladder of (2l+1)^{2-2p} (1+l(l+1))^{1.5(p-2)}
  // at p = 1.5, frozen independently.
  CHECK(rows[0].lhs == doctest::Approx(1.7212647565382659).epsilon(1e-13));
  CHECK(rows[0].name == "hardy-littlewood");
  CHECK(rows[0].ratio == doctest::Approx(rows[0].lhs / rows[0].rhs).epsilon(1e-15));
}

TEST_CASE("hardy-littlewood at p = 2 collapses to the Plancherel identity") {
  const CoefficientField fhat = monotone_su2(2.0, 6.0);
  const auto rows = hardy_littlewood_report(fhat, 2.0, central_norm_source(), "m");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ratio == 1.0);  // bitwise: both sides are the same sum
  CHECK(rows[0].notes.find("Plancherel") != std::string::npos);
}

TEST_CASE("torus reports append the literal-weight companion row") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::MonotoneCentral;
  spec.backend = Backend::Torus;
  spec.alpha = 2.0;
  spec.L = 8.0;
  const CoefficientField fhat = synthesize_family(spec, spectral_eig(Backend::Torus, 8.0));
  const auto rows = hardy_littlewood_report(fhat, 1.5, central_norm_source(), "m");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].name == "hardy-littlewood");
  CHECK(rows[1].name == "hardy-littlewood-literal");
  CHECK(rows[0].phi_id != rows[1].phi_id);
  CHECK(rows[1].rhs == rows[0].rhs);  // same function norm on the right
}

TEST_CASE("hardy-littlewood domain checks") {
  const CoefficientField fhat = monotone_su2(2.0, 4.0);
  const LpNorm norm = central_norm_source();
  CHECK_THROWS_AS(hardy_littlewood_report(fhat, 1.0, norm), invalid_parameter);
  CHECK_THROWS_AS(hardy_littlewood_report(fhat, 2.5, norm), invalid_parameter);
  CHECK_THROWS_AS(hardy_littlewood_dual_report(fhat, 1.5, norm), invalid_parameter);
}

TEST_CASE("dual direction on a single torus frequency has closed ratios") {
  // f = e^{2 pi i 3 x}: ||f||_p = 1 for all p, lhs = 1.
  CoefficientField fhat(Backend::Torus);
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  fhat.set(make_dual(Backend::Torus, 3.0), one);
  const auto rows = hardy_littlewood_dual_report(fhat, 4.0, central_norm_source(), "e3");
  REQUIRE(rows.size() == 2);
  // eig weight: rhs = (1+9)^{(4-2)/2} = 10, ratio 0.1.
  CHECK(rows[0].ratio == doctest::Approx(0.1).epsilon(1e-12));
  // literal weight: rhs = (1+3)^{4-2} = 16, ratio 1/16.
  CHECK(rows[1].ratio == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("hausdorff-young on a single matrix element has frozen sides") {
  // f(u) = pi^1_{1,1}(u) (the middle element of the spin-1 matrix), so
  // hat f(pi_1) = E_{11}/3. lhs = (d^{1-p'/2} ||E_11/3||^{p'}_{S^{p'}})^{1/p'}
  // = 3^{2/p'-3/2+1/p'-...}: frozen as 0.40031231839200088 at p = 1.5.
  CoefficientField fhat(Backend::SU2);
  Matrix v = Matrix::Zero(3, 3);
  v(1, 1) = complexd(1.0 / 3.0, 0.0);
  fhat.set(make_dual(Backend::SU2, 1.0), v);

  const auto rule = rule_for(Backend::SU2, 48);
  const LpNorm norm = quadrature_norm_source(rule);
  const InequalityReport r = hausdorff_young_report(fhat, 1.5, norm, "pi1_11");
  CHECK(r.lhs == doctest::Approx(0.40031231839200088).epsilon(1e-13));
  // ||pi^1_{1,1}||_{3/2}: the element is cos(theta); the closed value is
  // (2/5)^{2/3}. Gauss-Legendre converges slowly through the |cos|^{3/2}
  // kink, hence the loose tolerance.
  CHECK(r.rhs == doctest::Approx(0.54288352331898138).epsilon(5e-4));
  CHECK(r.ratio < 1.0);

  const InequalityReport r2 = hausdorff_young_report(fhat, 2.0, norm, "pi1_11");
  CHECK(r2.ratio == 1.0);
}

TEST_CASE("paley report reproduces the frozen left side and ties to hardy-littlewood") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::Heat;
  spec.backend = Backend::SU2;
  spec.t = 0.2;
  const double cutoff = 6.0;
  const CoefficientField fhat = synthesize_family(spec, cutoff);
  const LpNorm norm = central_norm_source();
  const Weight phi = Weight::eig_power(-3.0);

  const InequalityReport paley = paley_report(fhat, 1.5, phi, norm, cutoff, "heat");
  CHECK(paley.lhs == doctest::Approx(4.19899500217136).epsilon(1e-13));

  // With phi = eig^{-3} the Paley sum is the Hardy-Littlewood sum: lhs^p
  // must match the report's weighted power sum.
  const auto hl = hardy_littlewood_report(fhat, 1.5, norm, "heat");
  CHECK(std::pow(paley.lhs, 1.5) == doctest::Approx(hl[0].lhs).epsilon(1e-13));

  const InequalityReport p2 = paley_report(fhat, 2.0, phi, norm, cutoff, "heat");
  CHECK(p2.ratio == 1.0);

  CHECK_THROWS_AS(paley_report(fhat, 0.9, phi, norm, cutoff, "heat"), invalid_parameter);
}

TEST_CASE("hyp interpolation hits paley at b = p and hausdorff-young at b = p'") {
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::Heat;
  spec.backend = Backend::SU2;
  spec.t = 0.15;
  const double cutoff = 5.0;
  const CoefficientField fhat = synthesize_family(spec, cutoff);
  const LpNorm norm = central_norm_source();
  const Weight phi = Weight::eig_power(-3.0);
  const double p = 1.5, pp = 3.0;

  const InequalityReport at_p = hyp_report(fhat, p, p, phi, norm, cutoff, "heat");
  const InequalityReport paley = paley_report(fhat, p, phi, norm, cutoff, "heat");
  CHECK(at_p.lhs == doctest::Approx(paley.lhs).epsilon(1e-13));
  CHECK(at_p.rhs == doctest::Approx(paley.rhs).epsilon(1e-13));

  const InequalityReport at_pp = hyp_report(fhat, p, pp, phi, norm, cutoff, "heat");
  const InequalityReport hy = hausdorff_young_report(fhat, p, norm, "heat");
  CHECK(at_pp.lhs == doctest::Approx(hy.lhs).epsilon(1e-13));
  CHECK(at_pp.rhs == doctest::Approx(hy.rhs).epsilon(1e-13));

  // Interior exponent: the ratio is log-convex in 1/b, so the midpoint is
  // dominated by the geometric mean of the endpoint ratios (Hoelder with
  // exponents p/((1-theta)b) and p'/(theta b); here 1/2 = (1/p + 1/p')/2
  // puts theta at 1/2). The constant is exactly one.
  const InequalityReport mid = hyp_report(fhat, p, 2.0, phi, norm, cutoff, "heat");
  CHECK(mid.ratio > 0.0);
  CHECK(mid.ratio <= std::sqrt(at_p.ratio * at_pp.ratio) * (1.0 + 1e-12));

  CHECK_THROWS_AS(hyp_report(fhat, p, 1.2, phi, norm, cutoff, "heat"), invalid_parameter);
  CHECK_THROWS_AS(hyp_report(fhat, p, 3.5, phi, norm, cutoff, "heat"), invalid_parameter);
}

TEST_CASE("reports serialize to csv and json with quoting") {
  InequalityReport r;
  r.name = "paley";
  r.p = 1.5;
  r.b = 0.0;
  r.phi_id = "eig^-3";
  r.cutoff = 6.0;
  r.family_id = "heat:t=0.2";
  r.lhs = 4.0;
  r.rhs = 8.0;
  r.ratio = 0.5;
  r.notes = "has, comma and \"quote\"";

  CHECK(InequalityReport::csv_header() == "name,p,b,phi,cutoff,family,lhs,rhs,ratio");
  const std::string row = r.csv_row();
  CHECK(row.find("paley,1.5,0,eig^-3,6,heat:t=0.2,4,8,0.5") == 0);

  const std::string js = r.json_record();
  CHECK(js.find("\"name\":\"paley\"") != std::string::npos);
  CHECK(js.find("\\\"quote\\\"") != std::string::npos);
  CHECK(js.find("\"ratio\":0.5") != std::string::npos);
}

TEST_CASE("central and quadrature norms agree on central fields") {
  // Positive function (heat kernel): |f|^p is smooth, both quadratures
  // converge fast, agreement is tight.
  FamilySpec heat;
  heat.kind = FamilySpec::Kind::Heat;
  heat.backend = Backend::SU2;
  heat.t = 0.3;
  const CoefficientField pos = synthesize_family(heat, spectral_eig(Backend::SU2, 8.0));
  const LpNorm central = central_norm_source();
  const LpNorm quad = quadrature_norm_source(rule_for(Backend::SU2, 64));
  for (double p : {1.0, 1.5, 2.0}) {
    CHECK(central(pos, p) == doctest::Approx(quad(pos, p)).epsilon(1e-9));
  }

  // Sign-changing function: |f|^p has kinks for p < 2, so the two rules only
  // agree to the kink-limited quadrature accuracy.
  const CoefficientField osc = monotone_su2(1.5, 6.0);
  for (double p : {1.0, 1.5}) {
    CHECK(central(osc, p) == doctest::Approx(quad(osc, p)).epsilon(1e-4));
  }
  CHECK(central(osc, 2.0) == doctest::Approx(quad(osc, 2.0)).epsilon(1e-12));
}

TEST_CASE("central norm carries the full trace of each block") {
  // f = 2 chi_{1/2}: hat f(1/2) = I, so ||f||_2 = lp_norm_hs = 2, and
  // ||f||_1 = 2 ||chi_{1/2}||_1 = 16/(3 pi). A dropped trace factor would
  // report 2/sqrt(dim) instead; this is the regression guard for that bug.
  CoefficientField fhat(Backend::SU2);
  fhat.set(make_dual(Backend::SU2, 0.5), Matrix::Identity(2, 2));
  const LpNorm central = central_norm_source();
  CHECK(central(fhat, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(central(fhat, 1.0) == doctest::Approx(2.0 * 0.84882636315677518).epsilon(1e-12));
}

TEST_CASE("central norm source refuses non-central and sphere inputs") {
  CoefficientField off(Backend::SU2);
  Matrix v = Matrix::Zero(3, 3);
  v(0, 1) = 1.0;
  off.set(make_dual(Backend::SU2, 1.0), v);
  const LpNorm central = central_norm_source();
  CHECK_THROWS_AS(central(off, 2.0), invalid_parameter);

  CoefficientField sph(Backend::Sphere2);
  Matrix w = Matrix::Zero(3, 3);
  w(0, 0) = 1.0;
  sph.set(make_dual(Backend::Sphere2, 1.0), w);
  CHECK_THROWS_AS(central(sph, 2.0), invalid_parameter);
}
