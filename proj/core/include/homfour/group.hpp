#pragma once

// Group backends: points, Haar-measure quadrature, representation matrices,
// characters, and the one-dimensional reduction of integrals of conjugation
// invariant functions on SU(2).

#include "homfour/common.hpp"

#include <functional>

namespace homfour {

// Coordinates per backend:
//   Torus:   c0 = x in [0,1)
//   SU2:     c0 = t in [0,1), c1 = theta in [0,pi], c2 = psi in [-2pi,2pi)
//   Sphere2: c0 = theta in [0,pi], c1 = phi in [0,2pi)
struct GroupPoint {
  Backend backend{Backend::Torus};
  double c0{0.0};
  double c1{0.0};
  double c2{0.0};
};

GroupPoint identity_point(Backend backend);

struct QuadratureRule {
  Backend backend{Backend::Torus};
  int resolution{0};
  std::vector<GroupPoint> nodes;
  std::vector<double> weights;  // positive, sum to 1
  // Product-grid extents when the rule is a full tensor grid (set by
  // haar_quadrature): node i = (a, j, b) laid out as (a * n1 + j) * n2 + b
  // over axes (t, theta, psi) on SU2, (theta, phi) on the sphere with n2 = 1,
  // and (x) on the torus with n1 = n2 = 1. All zero for hand-built rules;
  // transforms then fall back to a per-node path.
  int n0{0}, n1{0}, n2{0};
};

// All representations with spectral size <= L, ordered by size then index.
// L below the trivial representation's size gives an empty list.
std::vector<Dual> dual_enumerate(Backend backend, double L);

// Largest ladder index among the listed duals; -1 if none.
double max_enumerated_index(Backend backend, double L);

// sin((2l+1) pi t) / sin(pi t); the limit value 2l+1 at integral t.
double character(double l, double t);

// Wigner rotation matrix d^l(beta) for exp(-i beta J_y), real
// (2l+1) x (2l+1), rows and columns ordered m = l, l-1, ..., -l.
Eigen::MatrixXd wigner_little_d(double l, double beta);

// The (2l+1)-dimensional unitary representation of SU(2) at the Euler point
// u = z(2 pi t) x(theta) z(psi). T^{1/2} reproduces the defining 2x2 matrix
// entrywise; the trace at theta = psi = 0 is character(l, t).
Matrix wigner_matrix(double l, const GroupPoint& u);

// Defining 2x2 matrix of an SU2 Euler point and its (exact) inverse map.
Eigen::Matrix2cd su2_matrix(const GroupPoint& u);
GroupPoint su2_point_from_matrix(const Eigen::Matrix2cd& m);

// First column of the sphere representation: component j holds the matrix
// element pairing basis vector j against the subgroup-invariant vector.
// Entry 0 is the zonal function P_l(cos theta). Integer l only.
Eigen::VectorXcd sphere_column(int l, const GroupPoint& x);

// Probability Haar quadrature. Torus: uniform nodes. SU2: uniform periodic
// nodes in t and psi (psi count rounded up to even; see below) with
// Gauss-Legendre in cos theta. Sphere2: Gauss-Legendre in cos theta, uniform
// in phi. Exact on products of matrix elements up to band limit l_max
// whenever resolution >= 2 * (2 l_max + 1); the even psi count annihilates
// the half-integer frequency differences between integer and half-integer
// spins, which uniform t nodes alone would miss.
QuadratureRule haar_quadrature(Backend backend, int resolution);

// Band limit the rule is exact for, per the rule above.
double quadrature_band_limit(const QuadratureRule& rule);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// (integral_0^1 |f(t)|^p * 2 sin^2(pi t) dt)^{1/p}: the L^p norm of a
// conjugation invariant function on SU(2) reduced to the torus coordinate.
// Composite 16-point Gauss panels; pass panels >= 2*(2 l_max + 2) to resolve
// characters up to l_max (the default handles l_max <= 126).
double class_function_norm(const std::function<double(double)>& f, double p,
                           int panels = 512);

// Node coordinates and weight, one row per node.
std::string quadrature_to_csv(const QuadratureRule& rule);

}  // namespace homfour
