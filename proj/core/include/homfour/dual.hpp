#pragma once

// The dual side of the Fourier transform: finitely supported fields of
// matrix coefficients over the set of class-one representations, the
// counting measure weighted by dim * inv, and the l^p norms built on it.

#include "homfour/common.hpp"

#include <functional>
#include <map>
#include <optional>

namespace homfour {

// sum over Q of dim * inv; the natural measure on the dual.
double plancherel_measure(std::span<const Dual> duals);

// A finitely supported map rep -> dim x dim complex matrix. Entries keep the
// class-one zero pattern: rows past the invariant count vanish.
class CoefficientField {
 public:
  explicit CoefficientField(Backend backend) : backend_(backend) {}

  Backend backend() const { return backend_; }

  // Stores a copy of `value` (shape dim x dim). Throws invalid_parameter on
  // a shape mismatch or when a forbidden row carries mass above `tol`.
  void set(const Dual& pi, const Matrix& value, double tol = 0.0);
  // Same but silently projects onto the admissible rows (used by transforms,
  // whose postcondition is "forbidden rows zeroed exactly").
  void set_projected(const Dual& pi, Matrix value);

  const Matrix* find(const Dual& pi) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const std::map<Dual, Matrix, DualLess>& entries() const { return entries_; }
  std::map<Dual, Matrix, DualLess>& mutable_entries() { return entries_; }

  // Largest ladder index present (0 when empty). Drives quadrature
  // resolution requirements.
  double max_index() const;
  double max_eig() const;

  CoefficientField& operator*=(complexd c);
  CoefficientField& operator+=(const CoefficientField& other);

 private:
  Backend backend_;
  std::map<Dual, Matrix, DualLess> entries_;
};

// (sum dim * inv^{p(1/p - 1/2)} * ||sigma||_HS^p)^{1/p}. At p = 2 this is the
// Plancherel norm.
double lp_norm_hs(const CoefficientField& sigma, double p);

// (sum dim * ||sigma||_{S^p}^p)^{1/p} with the Schatten norm from singular
// values.
double lp_norm_schatten(const CoefficientField& sigma, double p);

// Strictly positive weight sequence over the dual, with a printable identity
// so reports can name it.
class Weight {
 public:
  // phi = eig^a
  static Weight eig_power(double a);
  // phi = (1 + |index|)^a
  static Weight index_power(double a);
  static Weight constant(double c);
  static Weight table(std::map<double, double> by_index, std::string id);

  // Grammar: "eig:a" | "poly:a" | "const:c" (a, c real).
  static Weight parse(const std::string& spec);

  double operator()(const Dual& pi) const;
  const std::string& id() const { return id_; }

 private:
  Weight(std::function<double(const Dual&)> f, std::string id)
      : f_(std::move(f)), id_(std::move(id)) {}
  std::function<double(const Dual&)> f_;
  std::string id_;
};

// (sum |a(pi)|^p * omega(pi))^{1/p} over the support of `a`.
double weighted_lp_norm(const std::map<Dual, complexd, DualLess>& a, double p,
                        const Weight& omega);

// JSON round-trip of a coefficient field:
//   {"backend": "...", "entries": [{"index": x, "re": [[..]], "im": [[..]]}]}
std::string field_to_json(const CoefficientField& field);
CoefficientField field_from_json(const std::string& text);

}  // namespace homfour
