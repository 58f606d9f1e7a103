// homfour: experiment driver for the Fourier-analysis library.
//
// Subcommand families:
//   verify  plancherel | roundtrip | schur | dirichlet
//   report  hl | hl-dual | hy | paley | hyp | criterion | netnorm
//   bound   multiplier | noninvariant
//   study   convergence | weyl | mphi | interpolation
//   sweep
//
// Every option doubles as a key in the flat key=value config file passed via
// --config; command-line flags override the file. When --out is given the
// table goes to that file and a run manifest (version, command, effective
// config) is written next to it as <out>.manifest; without --out the table
// prints to stdout and the manifest to stderr. Exit codes: 0 success,
// 2 invalid configuration, 3 numerical failure.

#include "CLI11.hpp"

#include "homfour/interpolate.hpp"
#include "homfour/kernels.hpp"
#include "homfour/multiplier.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

namespace {

using namespace homfour;

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string backend = "su2";
  double lmax = 8.0;
  int resolution = 48;
  double p = 1.5;
  double q = 2.0;
  double b = 0.0;  // 0 = pick the interpolation midpoint
  std::string phi;
  std::string family;
  std::string symbol = "heat:t=0.1";
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  std::string norm = "quadrature";
  int panels = 0;
  std::string cutoffs;
  int tgrid = 400;
  int order = 1;
  int gridpoints = 6;
  bool empirical = false;
  int trials = 8;
  std::string target = "hl";
  std::string grid_p;
  std::string grid_alpha = "1.5,2,3";
  std::string grid_family;
  std::string dump_quadrature;
  std::string dump_function;
};

// ---------------------------------------------------------------- utilities

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw invalid_parameter(std::string(what) + ": not a number: " + tok);
    }
  }
  return out;
}

int thread_count() {
  const char* env = std::getenv("HOMFOUR_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return std::clamp(n, 1, 64);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_parameter("cannot open output file: " + path);
  out << body;
  if (!out) throw numerical_failure("short write to " + path);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Small result table; `numeric` marks columns whose pre-formatted values can
// be emitted as raw JSON numbers.
struct Table {
  std::vector<std::string> cols;
  std::vector<bool> numeric;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string table_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t j = 0; j < t.cols.size(); ++j)
    out << (j ? "," : "") << csv_quote(t.cols[j]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_quote(row[j]);
    out << '\n';
  }
  return out.str();
}

std::string table_json(const Table& t) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out << "{";
    for (std::size_t j = 0; j < t.cols.size(); ++j) {
      out << (j ? "," : "") << nlohmann::json(t.cols[j]).dump() << ":";
      if (t.numeric[j])
        out << (t.rows[i][j].empty() ? std::string("null") : t.rows[i][j]);
      else
        out << nlohmann::json(t.rows[i][j]).dump();
    }
    out << "}" << (i + 1 < t.rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

std::string reports_csv(std::span<const InequalityReport> rows) {
  std::ostringstream out;
  out << InequalityReport::csv_header() << '\n';
  for (const auto& r : rows) out << r.csv_row() << '\n';
  return out.str();
}

std::string reports_json(std::span<const InequalityReport> rows) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << rows[i].json_record() << (i + 1 < rows.size() ? "," : "") << "\n";
  out << "]\n";
  return out.str();
}

// --------------------------------------------------------------- run context

struct Context {
  Options opt;
  Backend backend{Backend::SU2};
  double cutoff_eig{0.0};  // spectral size matching --lmax
  std::string command;
  std::shared_ptr<const QuadratureRule> rule;  // built lazily

  const std::shared_ptr<const QuadratureRule>& quadrature() {
    if (!rule)
      rule = std::make_shared<QuadratureRule>(haar_quadrature(backend, opt.resolution));
    return rule;
  }

  LpNorm norm_source() {
    if (opt.norm == "central") return central_norm_source(opt.panels);
    return quadrature_norm_source(quadrature());
  }

  Weight weight() const {
    if (!opt.phi.empty()) return Weight::parse(opt.phi);
    const double n = backend == Backend::Torus ? 1.0 : backend == Backend::Sphere2 ? 2.0 : 3.0;
    return Weight::eig_power(-n);
  }

  std::vector<FamilySpec> families() const {
    std::vector<FamilySpec> out;
    if (!opt.family.empty()) {
      for (const std::string& spec : split(opt.family, ';'))
        out.push_back(FamilySpec::parse(backend, spec));
      return out;
    }
    const std::string L = format_compact(opt.lmax);
    out.push_back(FamilySpec::parse(backend, "heat:t=0.1"));
    out.push_back(FamilySpec::parse(backend, "bessel:s=2"));
    out.push_back(FamilySpec::parse(backend, "dirichlet:N=" + format_compact(opt.lmax / 2.0)));
    out.push_back(FamilySpec::parse(backend, "monotone:alpha=2,L=" + L));
    out.push_back(FamilySpec::parse(backend,
                                    "random:seed=" + std::to_string(opt.seed) + ",L=" + L));
    out.push_back(FamilySpec::parse(backend,
                                    "random:seed=" + std::to_string(opt.seed + 1) + ",L=" + L));
    return out;
  }

  std::vector<double> cutoff_list(std::initializer_list<double> fallback) const {
    if (opt.cutoffs.empty()) return fallback;
    return parse_numbers(opt.cutoffs, "cutoffs");
  }
};

std::vector<std::pair<std::string, std::string>> effective_config(const Options& o) {
  return {
      {"b", format_compact(o.b)},
      {"backend", o.backend},
      {"cutoffs", o.cutoffs},
      {"dump-function", o.dump_function},
      {"dump-quadrature", o.dump_quadrature},
      {"empirical", o.empirical ? "true" : "false"},
      {"family", o.family},
      {"format", o.format},
      {"grid-alpha", o.grid_alpha},
      {"grid-family", o.grid_family},
      {"grid-p", o.grid_p},
      {"gridpoints", std::to_string(o.gridpoints)},
      {"lmax", format_compact(o.lmax)},
      {"norm", o.norm},
      {"order", std::to_string(o.order)},
      {"out", o.out},
      {"p", format_compact(o.p)},
      {"panels", std::to_string(o.panels)},
      {"phi", o.phi},
      {"q", format_compact(o.q)},
      {"resolution", std::to_string(o.resolution)},
      {"seed", std::to_string(o.seed)},
      {"symbol", o.symbol},
      {"target", o.target},
      {"tgrid", std::to_string(o.tgrid)},
      {"trials", std::to_string(o.trials)},
  };
}

// Values with separators are quoted so the manifest parses back through
// --config unchanged (the config reader treats bare commas as list items).
std::string config_quote(const std::string& value) {
  if (value.find_first_of(", \t\"#;") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string manifest_text(const Context& ctx) {
  std::ostringstream out;
  out << "# homfour run manifest\n";
  out << "# version=" << kVersion << '\n';
  out << "# command=" << ctx.command << '\n';
  for (const auto& [key, value] : effective_config(ctx.opt))
    out << key << '=' << config_quote(value) << '\n';
  return out.str();
}

// Table to --out (or stdout) plus the manifest alongside.
void emit(const Context& ctx, const std::string& body, const std::string& summary) {
  if (ctx.opt.out.empty()) {
    std::cout << body;
    std::cerr << manifest_text(ctx);
    return;
  }
  write_file(ctx.opt.out, body);
  write_file(ctx.opt.out + ".manifest", manifest_text(ctx));
  if (!summary.empty()) std::cout << summary << '\n';
  std::cout << "wrote " << ctx.opt.out << " and " << ctx.opt.out << ".manifest\n";
}

void emit_table(const Context& ctx, const Table& t, const std::string& summary) {
  emit(ctx, ctx.opt.format == "json" ? table_json(t) : table_csv(t), summary);
}

void emit_reports(const Context& ctx, std::span<const InequalityReport> rows,
                  const std::string& summary) {
  emit(ctx, ctx.opt.format == "json" ? reports_json(rows) : reports_csv(rows), summary);
}

void handle_dumps(Context& ctx) {
  if (!ctx.opt.dump_quadrature.empty())
    write_file(ctx.opt.dump_quadrature, quadrature_to_csv(*ctx.quadrature()));
  if (!ctx.opt.dump_function.empty()) {
    const std::vector<FamilySpec> fams = ctx.families();
    const CoefficientField fhat = synthesize_family(fams.front(), ctx.cutoff_eig);
    write_file(ctx.opt.dump_function, function_to_csv(inverse_transform(fhat, ctx.quadrature())));
  }
}

// ------------------------------------------------------------------- verify

void run_verify_plancherel(Context& ctx) {
  Table t{{"family", "check", "value"}, {false, false, true}, {}};
  double worst = 0.0;
  for (const FamilySpec& fam : ctx.families()) {
    const CoefficientField fhat = synthesize_family(fam, ctx.cutoff_eig);
    const SampledFunction f = inverse_transform(fhat, ctx.quadrature());
    const double quad = std::pow(lp_quadrature_norm(f, 2.0), 2.0);
    const double exact = std::pow(lp_norm_hs(fhat, 2.0), 2.0);
    const double err = std::abs(quad - exact) / std::max(exact, 1e-300);
    worst = std::max(worst, err);
    t.add({fam.id(), "plancherel_rel_error", format_double(err)});
  }
  t.add({"all", "max_plancherel_rel_error", format_double(worst)});
  emit_table(ctx, t, "max relative Plancherel error = " + format_double(worst));
}

void run_verify_roundtrip(Context& ctx) {
  Table t{{"family", "check", "value"}, {false, false, true}, {}};
  double worst = 0.0;
  for (const FamilySpec& fam : ctx.families()) {
    const CoefficientField fhat = synthesize_family(fam, ctx.cutoff_eig);
    const SampledFunction f = inverse_transform(fhat, ctx.quadrature());
    const CoefficientField back = forward_transform(f, ctx.cutoff_eig);
    double err = 0.0;
    for (const auto& [pi, mat] : back.entries()) {
      const Matrix* orig = fhat.find(pi);
      const Matrix diff = orig ? (mat - *orig).eval() : mat;
      err = std::max(err, diff.cwiseAbs().maxCoeff());
    }
    for (const auto& [pi, mat] : fhat.entries())
      if (!back.find(pi)) err = std::max(err, mat.cwiseAbs().maxCoeff());
    worst = std::max(worst, err);
    t.add({fam.id(), "roundtrip_max_error", format_double(err)});
  }
  t.add({"all", "max_roundtrip_error", format_double(worst)});
  emit_table(ctx, t, "max round-trip coefficient error = " + format_double(worst));
}

void run_verify_schur(Context& ctx) {
  const double dev = schur_orthogonality_error(ctx.quadrature(), ctx.cutoff_eig);
  Table t{{"check", "lmax", "value"}, {false, true, true}, {}};
  t.add({"gram_max_deviation", format_double(ctx.opt.lmax), format_double(dev)});
  emit_table(ctx, t, "max Gram deviation from identity = " + format_double(dev));
}

void run_verify_dirichlet(Context& ctx) {
  if (ctx.opt.tgrid < 1) throw invalid_parameter("tgrid must be at least 1");
  std::vector<double> grid;
  for (int i = 1; i <= ctx.opt.tgrid; ++i) grid.push_back(i / (2.0 * ctx.opt.tgrid));
  Table t{{"quantity", "l", "value"}, {false, true, true}, {}};
  double worst = 0.0;
  for (double l = 0.0; l <= ctx.opt.lmax; l += 0.5) {
    double err = 0.0;
    for (double tt : grid) {
      if (std::abs(std::sin(kPi * tt)) < 1e-3) continue;
      const double a = dirichlet_kernel(l, tt, DirichletMethod::Sum);
      const double c = dirichlet_kernel(l, tt, DirichletMethod::Closed);
      err = std::max(err, std::abs(a - c) / std::max({1.0, std::abs(a), std::abs(c)}));
    }
    worst = std::max(worst, err);
    t.add({"closed_vs_sum_rel_error", format_double(l), format_double(err)});
  }
  const double c_full = dirichlet_estimate_constant(ctx.opt.lmax, grid);
  const double c_half = dirichlet_estimate_constant(ctx.opt.lmax / 2.0, grid);
  t.add({"estimate_constant", format_double(ctx.opt.lmax), format_double(c_full)});
  t.add({"estimate_constant", format_double(ctx.opt.lmax / 2.0), format_double(c_half)});
  emit_table(ctx, t, "max closed-vs-sum relative error = " + format_double(worst));
}

// ------------------------------------------------------------------- report

InequalityReport criterion_row(const FamilySpec& fam, double p, int panels) {
  const CriterionReport r = criterion_report(fam, p, panels);
  InequalityReport row;
  row.name = "criterion";
  row.p = p;
  row.b = r.alpha;  // the family exponent rides in the b column
  row.cutoff = r.L;
  row.family_id = fam.id();
  row.lhs = r.lhs;
  row.rhs = r.rhs;
  row.ratio = r.ratio;
  row.notes = r.notes;
  return row;
}

std::vector<InequalityReport> evaluate_report(Context& ctx, const std::string& kind,
                                              const FamilySpec& fam, double p,
                                              const LpNorm& norm) {
  const CoefficientField fhat = synthesize_family(fam, ctx.cutoff_eig);
  if (kind == "hl") return hardy_littlewood_report(fhat, p, norm, fam.id());
  if (kind == "hl-dual") return hardy_littlewood_dual_report(fhat, p, norm, fam.id());
  if (kind == "hy") return {hausdorff_young_report(fhat, p, norm, fam.id())};
  if (kind == "paley")
    return {paley_report(fhat, p, ctx.weight(), norm, ctx.cutoff_eig, fam.id())};
  if (kind == "hyp") {
    const double pp = p / (p - 1.0);
    const double b = ctx.opt.b > 0.0 ? ctx.opt.b : 0.5 * (p + pp);
    return {hyp_report(fhat, p, b, ctx.weight(), norm, ctx.cutoff_eig, fam.id())};
  }
  if (kind == "netnorm") {
    InequalityReport row;
    row.name = "netnorm";
    row.p = p;
    row.cutoff = ctx.opt.lmax;
    row.family_id = fam.id();
    row.lhs = net_norm(fhat, p);
    row.rhs = std::pow(norm(fhat, p), p);
    row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
    row.notes = "net power sum over nested cutoffs vs the p-th power of the norm";
    return {row};
  }
  throw invalid_parameter("unknown report kind: " + kind);
}

void run_report(Context& ctx, const std::string& kind) {
  std::vector<InequalityReport> rows;
  if (kind == "criterion") {
    FamilySpec fam =
        ctx.opt.family.empty()
            ? FamilySpec::parse(ctx.backend, "monotone:alpha=2,L=" + format_compact(ctx.opt.lmax))
            : FamilySpec::parse(ctx.backend, split(ctx.opt.family, ';').front());
    rows.push_back(criterion_row(fam, ctx.opt.p, ctx.opt.panels));
  } else {
    const LpNorm norm = ctx.norm_source();
    for (const FamilySpec& fam : ctx.families()) {
      const auto batch = evaluate_report(ctx, kind, fam, ctx.opt.p, norm);
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
  }
  double max_ratio = 0.0;
  for (const auto& r : rows) max_ratio = std::max(max_ratio, r.ratio);
  emit_reports(ctx, rows, "rows = " + std::to_string(rows.size()) +
                              ", max ratio = " + format_double(max_ratio));
}

// -------------------------------------------------------------------- bound

void run_bound_multiplier(Context& ctx) {
  const Symbol sigma = Symbol::from_spec(ctx.backend, ctx.opt.symbol, ctx.cutoff_eig);
  const double bound = multiplier_bound(sigma, ctx.opt.p, ctx.opt.q, ctx.cutoff_eig);
  Table t{{"symbol", "p", "q", "cutoff", "bound", "empirical", "witness"},
          {false, true, true, true, true, true, false},
          {}};
  std::string empirical_s, witness_s;
  std::string summary = "multiplier bound = " + format_double(bound);
  if (ctx.opt.empirical) {
    std::vector<FamilySpec> trials = ctx.families();
    for (int i = 0; i < ctx.opt.trials; ++i)
      trials.push_back(FamilySpec::parse(
          ctx.backend, "random:seed=" + std::to_string(ctx.opt.seed + 10 + i) +
                           ",L=" + format_compact(ctx.opt.lmax)));
    const OpNormEstimate est =
        empirical_opnorm(sigma, ctx.opt.p, ctx.opt.q, trials, ctx.quadrature(), ctx.cutoff_eig);
    empirical_s = format_double(est.lower);
    witness_s = est.witness.id();
    summary += ", empirical lower bound = " + empirical_s;
  }
  t.add({ctx.opt.symbol, format_double(ctx.opt.p), format_double(ctx.opt.q),
         format_double(ctx.opt.lmax), format_double(bound), empirical_s, witness_s});
  emit_table(ctx, t, summary);
}

// Synthetic non-invariant demo: the base symbol modulated by
// a(u) = 1 + cos(2 pi c0) / 2, whose c0-derivatives are closed form. Every
// multi-index up to the requested order is populated; derivatives along the
// other coordinates vanish.
void run_bound_noninvariant(Context& ctx) {
  if (ctx.opt.gridpoints < 1) throw invalid_parameter("gridpoints must be at least 1");
  const Symbol base = Symbol::from_spec(ctx.backend, ctx.opt.symbol, ctx.cutoff_eig);
  const int dims = ctx.backend == Backend::Torus ? 1 : ctx.backend == Backend::Sphere2 ? 2 : 3;

  std::vector<std::vector<int>> alphas;
  std::vector<int> alpha(dims, 0);
  const std::function<void(int, int)> gen = [&](int pos, int room) {
    if (pos == dims) {
      alphas.push_back(alpha);
      return;
    }
    for (int a = 0; a <= room; ++a) {
      alpha[pos] = a;
      gen(pos + 1, room - a);
    }
    alpha[pos] = 0;
  };
  gen(0, ctx.opt.order);

  std::vector<DerivativeSymbols> family;
  for (const auto& a : alphas) {
    DerivativeSymbols ds;
    ds.alpha = a;
    const int a0 = a[0];
    const bool transverse = std::accumulate(a.begin() + 1, a.end(), 0) > 0;
    for (int g = 0; g < ctx.opt.gridpoints; ++g) {
      const double c0 = static_cast<double>(g) / ctx.opt.gridpoints;
      double scale = 0.0;
      if (!transverse) {
        scale = a0 == 0 ? 1.0 + 0.5 * std::cos(2.0 * kPi * c0)
                        : 0.5 * std::pow(2.0 * kPi, a0) *
                              std::cos(2.0 * kPi * c0 + a0 * kPi / 2.0);
      }
      Symbol at(ctx.backend);
      for (const auto& [pi, mat] : base.entries()) at.set(pi, scale * mat);
      ds.at_grid_points.push_back(std::move(at));
    }
    family.push_back(std::move(ds));
  }

  const double bound =
      noninvariant_bound(family, ctx.opt.p, ctx.opt.q, ctx.cutoff_eig, ctx.opt.order);
  Table t{{"symbol", "p", "q", "cutoff", "order", "gridpoints", "bound"},
          {false, true, true, true, true, true, true},
          {}};
  t.add({ctx.opt.symbol, format_double(ctx.opt.p), format_double(ctx.opt.q),
         format_double(ctx.opt.lmax), std::to_string(ctx.opt.order),
         std::to_string(ctx.opt.gridpoints), format_double(bound)});
  emit_table(ctx, t, "aggregated non-invariant bound = " + format_double(bound));
}

// -------------------------------------------------------------------- study

void run_study_convergence(Context& ctx) {
  const FamilySpec fam =
      ctx.opt.family.empty()
          ? FamilySpec::parse(ctx.backend, "monotone:alpha=2,L=" + format_compact(ctx.opt.lmax))
          : FamilySpec::parse(ctx.backend, split(ctx.opt.family, ';').front());
  std::vector<double> Ns = ctx.cutoff_list({});
  if (Ns.empty())
    for (double n = 1.0; n <= ctx.opt.lmax / 2.0; n *= 2.0) Ns.push_back(n);
  if (Ns.empty()) Ns.push_back(1.0);
  const CoefficientField fhat = synthesize_family(fam, ctx.cutoff_eig);
  const bool theorem_range = ctx.backend == Backend::SU2 &&
                             fam.kind == FamilySpec::Kind::MonotoneCentral &&
                             ctx.opt.p > 1.5 && ctx.opt.p < 2.5;
  const auto rows = convergence_study(fhat, ctx.opt.p, Ns, theorem_range, ctx.norm_source());
  Table t{{"N", "p", "error"}, {true, true, true}, {}};
  for (const auto& r : rows)
    t.add({format_double(r.N), format_double(r.p), format_double(r.error)});
  emit_table(ctx, t, "partial-sum rows = " + std::to_string(rows.size()));
}

void run_study_weyl(Context& ctx) {
  const double n = ctx.backend == Backend::Torus ? 1.0
                   : ctx.backend == Backend::Sphere2 ? 2.0
                                                     : 3.0;
  Table t{{"L", "count", "normalized"}, {true, true, true}, {}};
  for (double L : ctx.cutoff_list({5.0, 10.0, 20.0, 40.0, 80.0})) {
    if (L <= 0.0) throw invalid_parameter("weyl cutoffs must be positive");
    const double count = weyl_counting(ctx.backend, L);
    t.add({format_double(L), format_double(count), format_double(count / std::pow(L, n))});
  }
  emit_table(ctx, t, "spectral counting rows = " + std::to_string(t.rows.size()));
}

void run_study_mphi(Context& ctx) {
  const Weight phi = ctx.weight();
  Table t{{"L", "mphi"}, {true, true}, {}};
  for (double L : ctx.cutoff_list({25.0, 50.0, 100.0}))
    t.add({format_double(L), format_double(m_phi(ctx.backend, phi, L))});
  emit_table(ctx, t, "M_phi rows for phi = " + phi.id());
}

void run_study_interpolation(Context& ctx) {
  const Weight phi = ctx.weight();
  const LpNorm norm = ctx.norm_source();
  const double p = ctx.opt.p;
  if (!(p > 1.0 && p < 2.0))
    throw invalid_parameter("interpolation study wants 1 < p < 2 between the endpoints");

  double weak1 = 0.0, weak2 = 0.0, strong_ratio = 0.0;
  int skipped = 0;
  const double theta = 2.0 * (1.0 - 1.0 / p);
  // Endpoint weak norms first, then the interpolated strong bound per family
  // (each family carries its own support measure).
  std::vector<std::pair<WeakTypeSample, DiscreteMeasureSpace>> prepared;
  for (const FamilySpec& fam : ctx.families()) {
    const CoefficientField fhat = synthesize_family(fam, ctx.cutoff_eig);
    std::vector<Dual> support;
    for (const auto& [pi, mat] : fhat.entries()) support.push_back(pi);
    const DiscreteMeasureSpace space = paley_space(support, phi);
    const MatrixSequence seq = paley_sequence(fhat, phi);

    WeakTypeSample s1{norm(fhat, 1.0), seq};
    WeakTypeSample s2{lp_norm_hs(fhat, 2.0), seq};
    const WeakTypeResult r1 = weak_type_norm(std::span(&s1, 1), space, 1.0);
    const WeakTypeResult r2 = weak_type_norm(std::span(&s2, 1), space, 2.0);
    weak1 = std::max(weak1, r1.M);
    weak2 = std::max(weak2, r2.M);
    skipped += r1.skipped + r2.skipped;
    prepared.push_back({WeakTypeSample{norm(fhat, p), seq}, space});
  }
  if (!(weak1 > 0.0) || !(weak2 > 0.0))
    throw numerical_failure("endpoint weak-type norms vanished over the corpus");
  double interp_const = 0.0;
  for (const auto& [sample, space] : prepared) {
    const MarcinkiewiczReport r =
        marcinkiewicz_check(1.0, 2.0, p, weak1, weak2, std::span(&sample, 1), space);
    interp_const = r.interpolated_constant;
    strong_ratio = std::max(strong_ratio, r.max_ratio);
  }

  Table t{{"quantity", "value"}, {false, true}, {}};
  t.add({"weak_type_p1", format_double(weak1)});
  t.add({"weak_type_p2", format_double(weak2)});
  t.add({"m_phi", format_double(m_phi(ctx.backend, phi, ctx.cutoff_eig))});
  t.add({"theta", format_double(theta)});
  t.add({"interpolated_constant", format_double(interp_const)});
  t.add({"max_strong_ratio", format_double(strong_ratio)});
  t.add({"skipped_samples", format_double(skipped)});
  emit_table(ctx, t, "interpolated strong ratio = " + format_double(strong_ratio));
}

// -------------------------------------------------------------------- sweep

struct SweepCell {
  double p{0.0};
  FamilySpec family;
};

void run_sweep(Context& ctx) {
  static const std::vector<std::string> kTargets = {"hl",  "hl-dual",   "hy",
                                                    "paley", "hyp",     "criterion",
                                                    "netnorm"};
  if (std::find(kTargets.begin(), kTargets.end(), ctx.opt.target) == kTargets.end())
    throw invalid_parameter("unknown sweep target: " + ctx.opt.target);

  const std::vector<double> ps =
      ctx.opt.grid_p.empty() ? std::vector<double>{ctx.opt.p}
                             : parse_numbers(ctx.opt.grid_p, "grid-p");
  std::vector<FamilySpec> fams;
  if (ctx.opt.target == "criterion") {
    for (double a : parse_numbers(ctx.opt.grid_alpha, "grid-alpha"))
      fams.push_back(FamilySpec::parse(
          ctx.backend,
          "monotone:alpha=" + format_compact(a) + ",L=" + format_compact(ctx.opt.lmax)));
  } else if (!ctx.opt.grid_family.empty()) {
    for (const std::string& spec : split(ctx.opt.grid_family, ';'))
      fams.push_back(FamilySpec::parse(ctx.backend, spec));
  } else {
    fams = ctx.families();
  }

  std::vector<SweepCell> cells;
  for (double p : ps)
    for (const FamilySpec& fam : fams) cells.push_back({p, fam});

  if (cells.empty()) {
    std::cerr << "warning: empty sweep grid, nothing to do\n";
    emit_reports(ctx, {}, "empty sweep grid");
    return;
  }

  // The norm source is shared read-only across cells; builds happen up front.
  const LpNorm norm = ctx.opt.target == "criterion" ? LpNorm{} : ctx.norm_source();

  std::vector<std::vector<InequalityReport>> results(cells.size());
  std::vector<std::string> failures(cells.size());
  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1)) {
      try {
        if (ctx.opt.target == "criterion")
          results[i] = {criterion_row(cells[i].family, cells[i].p, ctx.opt.panels)};
        else
          results[i] = evaluate_report(ctx, ctx.opt.target, cells[i].family, cells[i].p, norm);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  const int nthreads = std::min<int>(thread_count(), static_cast<int>(cells.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Ordered assembly: rows come out in grid order no matter the thread count.
  std::vector<InequalityReport> rows;
  std::size_t failed = 0;
  double max_ratio = 0.0, min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!failures[i].empty()) {
      ++failed;
      InequalityReport row;
      row.name = ctx.opt.target;
      row.p = cells[i].p;
      row.family_id = cells[i].family.id();
      row.cutoff = ctx.opt.lmax;
      row.notes = "error: " + failures[i];
      rows.push_back(std::move(row));
      continue;
    }
    for (const auto& r : results[i]) {
      max_ratio = std::max(max_ratio, r.ratio);
      min_ratio = std::min(min_ratio, r.ratio);
      rows.push_back(r);
    }
  }
  const std::string cells_note = std::to_string(cells.size()) + " cells, " +
                                 std::to_string(failed) + " failed";
  if (failed < cells.size()) {
    InequalityReport hi;
    hi.name = "envelope-max-ratio";
    hi.ratio = max_ratio;
    hi.notes = cells_note;
    InequalityReport lo;
    lo.name = "envelope-min-ratio";
    lo.ratio = min_ratio;
    lo.notes = cells_note;
    rows.push_back(std::move(hi));
    rows.push_back(std::move(lo));
  }
  emit_reports(ctx, rows, "sweep: " + cells_note + ", max ratio = " + format_double(max_ratio));
  if (failed == cells.size()) throw numerical_failure("every sweep cell failed");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Fourier experiments on the torus, SU(2), and the 2-sphere"};
  app.set_config("--config", "", "flat key=value config file; flags override it");
  app.option_defaults()->always_capture_default();

  app.add_option("--backend", opt.backend, "torus | su2 | sphere2");
  app.add_option("--lmax", opt.lmax, "ladder index cutoff");
  app.add_option("--resolution", opt.resolution, "quadrature resolution per axis");
  app.add_option("--p", opt.p, "primary Lebesgue exponent");
  app.add_option("--q", opt.q, "target exponent for multiplier bounds");
  app.add_option("--b", opt.b, "interpolation exponent in [p, p']; 0 picks the midpoint");
  app.add_option("--phi", opt.phi, "weight spec eig:a | poly:a | const:c (default eig:-dim)");
  app.add_option("--family", opt.family, "semicolon-separated family specs (default corpus)");
  app.add_option("--symbol", opt.symbol, "multiplier symbol spec");
  app.add_option("--seed", opt.seed, "base seed for the random corpus");
  app.add_option("--out", opt.out, "output file (stdout when empty)");
  app.add_option("--format", opt.format, "csv | json");
  app.add_option("--norm", opt.norm, "function-norm source: quadrature | central");
  app.add_option("--panels", opt.panels, "panel count for the central norm (0 = auto)");
  app.add_option("--cutoffs", opt.cutoffs, "comma-separated cutoffs for the studies");
  app.add_option("--tgrid", opt.tgrid, "t-grid size for verify dirichlet");
  app.add_option("--order", opt.order, "derivative order for bound noninvariant");
  app.add_option("--gridpoints", opt.gridpoints, "base-manifold grid for bound noninvariant");
  app.add_flag("--empirical", opt.empirical, "also compute the empirical lower bound");
  app.add_option("--trials", opt.trials, "extra random trials for --empirical");
  app.add_option("--target", opt.target, "sweep target report");
  app.add_option("--grid-p", opt.grid_p, "comma-separated p grid for sweep");
  app.add_option("--grid-alpha", opt.grid_alpha, "comma-separated alpha grid (criterion sweep)");
  app.add_option("--grid-family", opt.grid_family, "semicolon-separated family grid for sweep");
  app.add_option("--dump-quadrature", opt.dump_quadrature, "write the quadrature rule CSV here");
  app.add_option("--dump-function", opt.dump_function, "write the first family's samples here");

  std::string command;
  const auto tag = [&command](const std::string& name) {
    return [&command, name] { command = name; };
  };
  auto* verify = app.add_subcommand("verify", "numerical identity checks");
  verify->fallthrough();
  verify->add_subcommand("plancherel", "norm identity under the transform")
      ->fallthrough()
      ->callback(tag("verify plancherel"));
  verify->add_subcommand("roundtrip", "forward after inverse returns the coefficients")
      ->fallthrough()
      ->callback(tag("verify roundtrip"));
  verify->add_subcommand("schur", "orthogonality of the su2 matrix elements")
      ->fallthrough()
      ->callback(tag("verify schur"));
  verify->add_subcommand("dirichlet", "closed form of the Dirichlet kernel vs its sum")
      ->fallthrough()
      ->callback(tag("verify dirichlet"));
  verify->require_subcommand(1);

  auto* report = app.add_subcommand("report", "two-sided inequality reports");
  report->fallthrough();
  const std::pair<const char*, const char*> kinds[] = {
      {"hl", "weighted sequence norm vs function norm"},
      {"hl-dual", "dual weighted bound for p >= 2"},
      {"hy", "Schatten sequence norm vs function norm"},
      {"paley", "weighted-level sequence norm vs function norm"},
      {"hyp", "interpolated weighted bound for p <= b <= p'"},
      {"criterion", "two-sided central integrability check"},
      {"netnorm", "boundary-prefix net norm"},
  };
  for (const auto& [kind, blurb] : kinds)
    report->add_subcommand(kind, blurb)->fallthrough()->callback(
        tag(std::string("report ") + kind));
  report->require_subcommand(1);

  auto* bound = app.add_subcommand("bound", "operator norm bounds");
  bound->fallthrough();
  bound->add_subcommand("multiplier", "level-set bound for an invariant multiplier")
      ->fallthrough()
      ->callback(tag("bound multiplier"));
  bound->add_subcommand("noninvariant", "aggregated bound for a modulated symbol")
      ->fallthrough()
      ->callback(tag("bound noninvariant"));
  bound->require_subcommand(1);

  auto* study = app.add_subcommand("study", "asymptotic and interpolation studies");
  study->fallthrough();
  study->add_subcommand("convergence", "partial-sum error decay")
      ->fallthrough()
      ->callback(tag("study convergence"));
  study->add_subcommand("weyl", "spectral counting growth")
      ->fallthrough()
      ->callback(tag("study weyl"));
  study->add_subcommand("mphi", "weighted level functional across cutoffs")
      ->fallthrough()
      ->callback(tag("study mphi"));
  study->add_subcommand("interpolation", "weak endpoints and the interpolated bound")
      ->fallthrough()
      ->callback(tag("study interpolation"));
  study->require_subcommand(1);

  app.add_subcommand("sweep", "grid of report cells with envelope rows")
      ->fallthrough()
      ->callback(tag("sweep"));
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Context ctx;
    ctx.opt = opt;
    ctx.backend = backend_from_name(opt.backend);
    if (opt.format != "csv" && opt.format != "json")
      throw invalid_parameter("format must be csv or json");
    if (opt.norm != "quadrature" && opt.norm != "central")
      throw invalid_parameter("norm must be quadrature or central");
    ctx.cutoff_eig = spectral_eig(ctx.backend, opt.lmax);
    ctx.command = command;

    handle_dumps(ctx);
    if (command == "verify plancherel") run_verify_plancherel(ctx);
    else if (command == "verify roundtrip") run_verify_roundtrip(ctx);
    else if (command == "verify schur") run_verify_schur(ctx);
    else if (command == "verify dirichlet") run_verify_dirichlet(ctx);
    else if (command.rfind("report ", 0) == 0) run_report(ctx, command.substr(7));
    else if (command == "bound multiplier") run_bound_multiplier(ctx);
    else if (command == "bound noninvariant") run_bound_noninvariant(ctx);
    else if (command == "study convergence") run_study_convergence(ctx);
    else if (command == "study weyl") run_study_weyl(ctx);
    else if (command == "study mphi") run_study_mphi(ctx);
    else if (command == "study interpolation") run_study_interpolation(ctx);
    else if (command == "sweep") run_sweep(ctx);
    else throw invalid_parameter("unknown command");
  } catch (const invalid_parameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
