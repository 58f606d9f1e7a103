#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "homfour/dual.hpp"

#include <cmath>

using namespace homfour;

TEST_CASE("make_dual fills dimensions and spectral sizes per backend") {
  const Dual m = make_dual(Backend::Torus, -3.0);
  CHECK(m.dim == 1);
  CHECK(m.inv == 1);
  CHECK(m.eig == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));

  const Dual l32 = make_dual(Backend::SU2, 1.5);
  CHECK(l32.dim == 4);
  CHECK(l32.inv == 4);
  CHECK(l32.eig == doctest::Approx(std::sqrt(1.0 + 1.5 * 2.5)).epsilon(1e-15));

  const Dual s2 = make_dual(Backend::Sphere2, 2.0);
  CHECK(s2.dim == 5);
  CHECK(s2.inv == 1);
  CHECK(s2.eig == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
}

TEST_CASE("make_dual rejects indices off the ladder") {
  CHECK_THROWS_AS(make_dual(Backend::Torus, 0.5), invalid_parameter);
  CHECK_THROWS_AS(make_dual(Backend::SU2, 0.3), invalid_parameter);
  CHECK_THROWS_AS(make_dual(Backend::SU2, -0.5), invalid_parameter);
  CHECK_THROWS_AS(make_dual(Backend::Sphere2, 1.5), invalid_parameter);
  CHECK_THROWS_AS(make_dual(Backend::SU2, 101.0), invalid_parameter);
}

TEST_CASE("plancherel_measure sums dim * inv and rejects mixed backends") {
  std::vector<Dual> duals = {make_dual(Backend::SU2, 0.0), make_dual(Backend::SU2, 0.5),
                             make_dual(Backend::SU2, 1.0)};
  CHECK(plancherel_measure(duals) == 14.0);
  duals.push_back(make_dual(Backend::Torus, 1.0));
  CHECK_THROWS_AS(plancherel_measure(duals), invalid_parameter);
}

TEST_CASE("pairwise_sum is exact on integers and handles complex terms") {
  std::vector<double> xs;
  for (int i = 1; i <= 1000; ++i) xs.push_back(i);
  CHECK(pairwise_sum(std::span<const double>(xs)) == 500500.0);

  std::vector<complexd> zs = {{1.0, 2.0}, {3.0, -1.0}, {-4.0, 0.5}};
  const complexd z = pairwise_sum(std::span<const complexd>(zs));
  CHECK(z.real() == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(z.imag() == doctest::Approx(1.5).epsilon(1e-16));
}

TEST_CASE("coefficient fields enforce the class-one row pattern") {
  CoefficientField f(Backend::Sphere2);
  const Dual pi = make_dual(Backend::Sphere2, 1.0);
  Matrix bad = Matrix::Zero(3, 3);
  bad(1, 0) = 0.5;  // row 1 is forbidden when inv = 1
  CHECK_THROWS_AS(f.set(pi, bad), invalid_parameter);

  f.set_projected(pi, bad);
  CHECK(f.find(pi)->cwiseAbs().maxCoeff() == 0.0);

  Matrix wrong_shape = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(f.set(pi, wrong_shape), invalid_parameter);

  Matrix ok = Matrix::Zero(3, 3);
  ok(0, 2) = complexd(1.0, -2.0);
  f.set(pi, ok);
  CHECK(f.max_index() == 1.0);
  CHECK(f.max_eig() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("field arithmetic scales and merges supports") {
  CoefficientField a(Backend::Torus), b(Backend::Torus);
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  a.set(make_dual(Backend::Torus, 0.0), one);
  a.set(make_dual(Backend::Torus, 2.0), one);
  b.set(make_dual(Backend::Torus, 2.0), one);
  b.set(make_dual(Backend::Torus, -5.0), one);

  a *= complexd(2.0, 0.0);
  a += b;
  CHECK(a.size() == 3);
  CHECK((*a.find(make_dual(Backend::Torus, 0.0)))(0, 0) == complexd(2.0, 0.0));
  CHECK((*a.find(make_dual(Backend::Torus, 2.0)))(0, 0) == complexd(3.0, 0.0));
  CHECK((*a.find(make_dual(Backend::Torus, -5.0)))(0, 0) == complexd(1.0, 0.0));
}

TEST_CASE("lp_norm_hs closed values on a single identity coefficient") {
  CoefficientField f(Backend::SU2);
  f.set(make_dual(Backend::SU2, 0.5), Matrix::Identity(2, 2));
  // p=2: sqrt(d ||I||_HS^2) = sqrt(2 * 2) = 2; p=1: d k^{1/2} ||I||_HS = 4.
  CHECK(lp_norm_hs(f, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lp_norm_hs(f, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(lp_norm_hs(f, 0.5), invalid_parameter);
}

TEST_CASE("schatten norm of a frozen 3x3 and the embedding into the hs norm") {
  // Independently computed singular values of this fixed matrix:
  // sum = 5.5970319298946762, root-sum-square = 3.8487010795851631.
  CoefficientField f(Backend::SU2);
  Matrix a(3, 3);
  a << complexd(1.0, 0.5), complexd(-0.25, 1.0), complexd(0.75, 0.0),
      complexd(0.0, -1.5), complexd(2.0, 0.25), complexd(-1.0, 0.5),
      complexd(0.5, 0.5), complexd(0.25, -0.75), complexd(1.5, -1.0);
  f.set(make_dual(Backend::SU2, 1.0), a);

  CHECK(lp_norm_schatten(f, 1.0) ==
        doctest::Approx(3.0 * 5.5970319298946762).epsilon(1e-13));
  CHECK(lp_norm_hs(f, 2.0) ==
        doctest::Approx(std::sqrt(3.0) * 3.8487010795851631).epsilon(1e-13));

  for (double p : {1.0, 1.25, 1.5, 1.75}) {
    CHECK(lp_norm_schatten(f, p) <= lp_norm_hs(f, p) * (1.0 + 1e-12));
  }
  CHECK(lp_norm_schatten(f, 2.0) ==
        doctest::Approx(lp_norm_hs(f, 2.0)).epsilon(1e-12));
}

TEST_CASE("weights parse, print stable ids, and reject nonpositive values") {
  const Weight eig3 = Weight::parse("eig:-3");
  CHECK(eig3.id() == "eig^-3");
  const Dual pi = make_dual(Backend::SU2, 2.0);
  CHECK(eig3(pi) == doctest::Approx(std::pow(7.0, -1.5)).epsilon(1e-14));

  const Weight lit = Weight::parse("poly:-1");
  CHECK(lit.id() == "(1+|idx|)^-1");
  CHECK(lit(make_dual(Backend::Torus, -4.0)) == doctest::Approx(0.2).epsilon(1e-15));

  const Weight c = Weight::parse("const:2.5");
  CHECK(c(pi) == 2.5);

  CHECK_THROWS_AS(Weight::parse("garbage:1"), invalid_parameter);
  CHECK_THROWS_AS(Weight::constant(0.0), invalid_parameter);
  CHECK_THROWS_AS(Weight::parse("const:-1"), invalid_parameter);
}

TEST_CASE("format_double prints 17 significant digits and format_compact round-trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_compact(0.1) == "0.1");
  CHECK(std::stod(format_compact(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("field json round-trips and validates the row pattern on input") {
  CoefficientField f(Backend::SU2);
  Matrix m(2, 2);
  m << complexd(0.5, -1.0), complexd(0.0, 2.0), complexd(1.5, 0.0), complexd(-0.25, 0.75);
  f.set(make_dual(Backend::SU2, 0.5), m);

  const CoefficientField g = field_from_json(field_to_json(f));
  CHECK(g.backend() == Backend::SU2);
  REQUIRE(g.find(make_dual(Backend::SU2, 0.5)) != nullptr);
  CHECK((*g.find(make_dual(Backend::SU2, 0.5)) - m).cwiseAbs().maxCoeff() == 0.0);

  // A sphere entry with mass on a forbidden row must be rejected.
  const std::string bad = R"({"backend":"sphere2","entries":[{"index":1,)"
                          R"("re":[[0,0,0],[1,0,0],[0,0,0]],)"
                          R"("im":[[0,0,0],[0,0,0],[0,0,0]]}]})";
  CHECK_THROWS_AS(field_from_json(bad), invalid_parameter);
}
