#include "homfour/dual.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <mutex>

namespace homfour {

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Torus: return "torus";
    case Backend::SU2: return "su2";
    case Backend::Sphere2: return "sphere2";
  }
  throw invalid_parameter("unknown backend enum value");
}

Backend backend_from_name(const std::string& name) {
  if (name == "torus") return Backend::Torus;
  if (name == "su2") return Backend::SU2;
  if (name == "sphere2") return Backend::Sphere2;
  throw invalid_parameter("unknown backend: " + name);
}

double spectral_eig(Backend backend, double index) {
  if (backend == Backend::Torus) return std::sqrt(1.0 + index * index);
  return std::sqrt(1.0 + index * (index + 1.0));
}

Dual make_dual(Backend backend, double index) {
  Dual d;
  d.backend = backend;
  d.index = index;
  switch (backend) {
    case Backend::Torus: {
      if (index != std::floor(index) || std::abs(index) > 1e7)
        throw invalid_parameter("torus index must be an integer of moderate size");
      d.dim = 1;
      d.inv = 1;
      break;
    }
    case Backend::SU2: {
      if (!is_half_integer(index))
        throw invalid_parameter("SU(2) index must be a nonnegative half-integer");
      if (index > kMaxIndex)
        throw invalid_parameter("SU(2) index exceeds the dimension cap (l <= 100)");
      d.dim = static_cast<int>(2.0 * index) + 1;
      d.inv = d.dim;
      break;
    }
    case Backend::Sphere2: {
      if (index < 0.0 || index != std::floor(index))
        throw invalid_parameter("sphere index must be a nonnegative integer");
      if (index > kMaxIndex)
        throw invalid_parameter("sphere index exceeds the dimension cap (l <= 100)");
      d.dim = static_cast<int>(2.0 * index) + 1;
      d.inv = 1;
      break;
    }
  }
  d.eig = spectral_eig(backend, index);
  return d;
}

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs.first(half)) + pairwise_sum_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_sum_impl(xs); }
complexd pairwise_sum(std::span<const complexd> xs) { return pairwise_sum_impl(xs); }

std::string format_double(double x) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) throw numerical_failure("double formatting failed");
  return std::string(buf.data(), ptr);
}

std::string format_compact(double x) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw numerical_failure("double formatting failed");
  return std::string(buf.data(), ptr);
}

long double log_factorial(int n) {
  if (n < 0) throw invalid_parameter("log_factorial of a negative integer");
  constexpr int kTableSize = 1024;
  static const auto table = [] {
    std::array<long double, kTableSize> t{};
    t[0] = 0.0L;
    for (int i = 1; i < kTableSize; ++i) t[i] = t[i - 1] + std::log(static_cast<long double>(i));
    return t;
  }();
  if (n < kTableSize) return table[n];
  return std::lgammal(static_cast<long double>(n) + 1.0L);
}

double plancherel_measure(std::span<const Dual> duals) {
  if (duals.empty()) return 0.0;
  const Backend b = duals.front().backend;
  std::vector<double> terms;
  terms.reserve(duals.size());
  for (const Dual& d : duals) {
    if (d.backend != b) throw invalid_parameter("plancherel_measure: mixed backends");
    terms.push_back(static_cast<double>(d.dim) * d.inv);
  }
  return pairwise_sum(terms);
}

void CoefficientField::set(const Dual& pi, const Matrix& value, double tol) {
  if (pi.backend != backend_) throw invalid_parameter("coefficient backend mismatch");
  if (value.rows() != pi.dim || value.cols() != pi.dim)
    throw invalid_parameter("coefficient must be dim x dim");
  for (int i = pi.inv; i < pi.dim; ++i)
    for (int j = 0; j < pi.dim; ++j)
      if (std::abs(value(i, j)) > tol)
        throw invalid_parameter("coefficient violates the class-one row pattern");
  set_projected(pi, value);
}

void CoefficientField::set_projected(const Dual& pi, Matrix value) {
  if (pi.backend != backend_) throw invalid_parameter("coefficient backend mismatch");
  if (value.rows() != pi.dim || value.cols() != pi.dim)
    throw invalid_parameter("coefficient must be dim x dim");
  for (int i = pi.inv; i < pi.dim; ++i) value.row(i).setZero();
  entries_[pi] = std::move(value);
}

const Matrix* CoefficientField::find(const Dual& pi) const {
  auto it = entries_.find(pi);
  return it == entries_.end() ? nullptr : &it->second;
}

double CoefficientField::max_index() const {
  double m = 0.0;
  for (const auto& [pi, v] : entries_) m = std::max(m, std::abs(pi.index));
  return m;
}

double CoefficientField::max_eig() const {
  double m = 0.0;
  for (const auto& [pi, v] : entries_) m = std::max(m, pi.eig);
  return m;
}

CoefficientField& CoefficientField::operator*=(complexd c) {
  for (auto& [pi, v] : entries_) v *= c;
  return *this;
}

CoefficientField& CoefficientField::operator+=(const CoefficientField& other) {
  if (other.backend_ != backend_) throw invalid_parameter("field backend mismatch");
  for (const auto& [pi, v] : other.entries_) {
    auto it = entries_.find(pi);
    if (it == entries_.end())
      entries_[pi] = v;
    else
      it->second += v;
  }
  return *this;
}

double lp_norm_hs(const CoefficientField& sigma, double p) {
  if (p < 1.0) throw invalid_parameter("lp_norm_hs requires p >= 1");
  std::vector<double> terms;
  terms.reserve(sigma.size());
  const double kexp = p * (1.0 / p - 0.5);
  for (const auto& [pi, v] : sigma.entries()) {
    const double hs = v.norm();
    terms.push_back(pi.dim * std::pow(static_cast<double>(pi.inv), kexp) * std::pow(hs, p));
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double lp_norm_schatten(const CoefficientField& sigma, double p) {
  if (p < 1.0) throw invalid_parameter("lp_norm_schatten requires p >= 1");
  std::vector<double> terms;
  terms.reserve(sigma.size());
  for (const auto& [pi, v] : sigma.entries()) {
    Eigen::JacobiSVD<Matrix> svd(v);
    double sp = 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      sp += std::pow(svd.singularValues()[i], p);
    terms.push_back(pi.dim * sp);
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

Weight Weight::eig_power(double a) {
  return Weight([a](const Dual& pi) { return std::pow(pi.eig, a); },
                "eig^" + format_compact(a));
}

Weight Weight::index_power(double a) {
  return Weight([a](const Dual& pi) { return std::pow(1.0 + std::abs(pi.index), a); },
                "(1+|idx|)^" + format_compact(a));
}

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw invalid_parameter("constant weight must be positive");
  return Weight([c](const Dual&) { return c; }, "const:" + format_compact(c));
}

Weight Weight::table(std::map<double, double> by_index, std::string id) {
  for (const auto& [k, v] : by_index)
    if (!(v > 0.0)) throw invalid_parameter("table weight must be positive");
  return Weight(
      [t = std::move(by_index)](const Dual& pi) {
        auto it = t.find(pi.index);
        if (it == t.end()) throw invalid_parameter("weight table missing an index");
        return it->second;
      },
      std::move(id));
}

Weight Weight::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw invalid_parameter("weight spec must look like kind:value, got " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  double v = 0.0;
  auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size())
    throw invalid_parameter("weight spec has a malformed number: " + spec);
  if (kind == "eig") return eig_power(v);
  if (kind == "poly") return index_power(v);
  if (kind == "const") return constant(v);
  throw invalid_parameter("unknown weight kind: " + kind);
}

double Weight::operator()(const Dual& pi) const {
  const double v = f_(pi);
  if (!(v > 0.0)) throw invalid_parameter("weight must be strictly positive");
  return v;
}

double weighted_lp_norm(const std::map<Dual, complexd, DualLess>& a, double p,
                        const Weight& omega) {
  if (p < 1.0) throw invalid_parameter("weighted_lp_norm requires p >= 1");
  std::vector<double> terms;
  terms.reserve(a.size());
  for (const auto& [pi, v] : a) terms.push_back(std::pow(std::abs(v), p) * omega(pi));
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

std::string field_to_json(const CoefficientField& field) {
  nlohmann::json root;
  root["backend"] = backend_name(field.backend());
  auto& entries = root["entries"] = nlohmann::json::array();
  for (const auto& [pi, v] : field.entries()) {
    nlohmann::json e;
    e["index"] = pi.index;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int i = 0; i < v.rows(); ++i) {
      nlohmann::json rrow = nlohmann::json::array(), irow = nlohmann::json::array();
      for (int j = 0; j < v.cols(); ++j) {
        rrow.push_back(v(i, j).real());
        irow.push_back(v(i, j).imag());
      }
      re.push_back(std::move(rrow));
      im.push_back(std::move(irow));
    }
    e["re"] = std::move(re);
    e["im"] = std::move(im);
    entries.push_back(std::move(e));
  }
  return root.dump();
}

CoefficientField field_from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_parameter(std::string("coefficient JSON malformed: ") + e.what());
  }
  if (!root.contains("backend") || !root.contains("entries"))
    throw invalid_parameter("coefficient JSON needs backend and entries");
  CoefficientField field(backend_from_name(root["backend"].get<std::string>()));
  for (const auto& e : root["entries"]) {
    const Dual pi = make_dual(field.backend(), e.at("index").get<double>());
    const auto& re = e.at("re");
    const auto& im = e.at("im");
    if (static_cast<int>(re.size()) != pi.dim || static_cast<int>(im.size()) != pi.dim)
      throw invalid_parameter("coefficient JSON entry has wrong shape");
    Matrix v(pi.dim, pi.dim);
    for (int i = 0; i < pi.dim; ++i) {
      if (static_cast<int>(re[i].size()) != pi.dim || static_cast<int>(im[i].size()) != pi.dim)
        throw invalid_parameter("coefficient JSON entry has wrong shape");
      for (int j = 0; j < pi.dim; ++j)
        v(i, j) = complexd(re[i][j].get<double>(), im[i][j].get<double>());
    }
    field.set(pi, v);  // validates the class-one pattern
  }
  return field;
}

}  // namespace homfour
