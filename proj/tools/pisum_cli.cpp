// pisum: command-line front end for principal indefinite sums.
//
//   pisum eval      --fn ln --x 0.5,1,7
//   pisum constants --fn psi2g
//   pisum verify    --fn psi2g --suite inequalities
//   pisum expand    --fn psi2g --x 10 --q 6
//   pisum tabulate  --fn psi2g --from 0.1 --to 5 --step 0.1
//   pisum catalog
//
// Exit codes: 0 ok, 2 input/parse/classification, 3 convergence, 4 identity violation.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pisum/pisum.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pisum;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_convergence = 3;
constexpr int exit_violation = 4;

struct cli_failure {
  int code;
  std::string message;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Evaluates f(0..n-1) on a small pool; results keep input order.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct run_config {
  std::string fn;
  std::string expr_text;
  std::optional<int> p;
  std::string shape;
  double tol = 1e-9;
  std::string format;
  std::uint64_t seed = 0;
  std::string offset = "none";
  bool unsafe = false;

  std::vector<double> xs;
  std::vector<int> ms;
  std::vector<double> as;
  std::vector<std::string> suites;
  int q = 6;
  double from = 1.0, to = 10.0, step = 1.0;
  std::string strategy = "auto";
};

struct target {
  gfunction g;
  const catalog_entry* entry = nullptr;
  std::string label;
  bool minimal_p = true;
};

convexity parse_shape(const std::string& s) {
  if (s == "convex") return convexity::convex;
  if (s == "concave") return convexity::concave;
  throw cli_failure{exit_input, "--shape must be convex or concave"};
}

convexity certify_shape(const gfunction& g, int p, std::uint64_t seed) {
  const shape_options opt;
  std::mt19937_64 rng(seed);
  for (double x0 = 1.0; x0 <= 1024.0; x0 *= 2.0) {
    const convexity c = kp_check(g, p, x0, x0 + opt.window_width, rng, opt.samples, opt.eps_rel);
    if (c != convexity::neither) return c;
  }
  throw classification_error("no window in [1, 1088] certifies " + std::to_string(p) + "-convexity or concavity");
}

target resolve(const run_config& cfg) {
  const bool has_fn = !cfg.fn.empty(), has_expr = !cfg.expr_text.empty();
  if (has_fn == has_expr) throw cli_failure{exit_input, "exactly one of --fn and --expr is required"};
  if (cfg.tol < 1e-12) throw cli_failure{exit_input, "--tol must be >= 1e-12"};
  if (cfg.p && (*cfg.p < 0 || *cfg.p > max_shape_p)) throw cli_failure{exit_input, "--p must lie in [0, 6]"};
  if (has_fn) {
    const catalog_entry* e = nullptr;
    try {
      e = &builtin(cfg.fn);
    } catch (const error& ex) {
      throw cli_failure{exit_input, ex.what()};
    }
    target t{e->g, e, e->name, true};
    if (cfg.p || !cfg.shape.empty()) {
      const int p = cfg.p.value_or(e->g.p());
      convexity c = e->g.shape();
      if (!cfg.shape.empty()) {
        c = parse_shape(cfg.shape);
      } else if (p != e->g.p()) {
        try {
          c = certify_shape(e->g, p, cfg.seed);
        } catch (const classification_error& ex) {
          throw cli_failure{exit_input, ex.what()};
        }
      }
      t.g = e->g.with_class(p, c);
      t.minimal_p = is_minimal_p(t.g, p);
    }
    return t;
  }
  std::optional<expr> e;
  try {
    e = parse(cfg.expr_text);
  } catch (const parse_error& ex) {
    throw cli_failure{exit_input, ex.what()};
  }
  const gfunction raw = gfunction::from_expr(*e);
  try {
    shape_options opt;
    opt.seed = cfg.seed;
    if (cfg.p && !cfg.shape.empty()) {
      return target{raw.with_class(*cfg.p, parse_shape(cfg.shape)), nullptr, e->to_string(),
                    is_minimal_p(raw, *cfg.p)};
    }
    if (cfg.p) {
      return target{raw.with_class(*cfg.p, certify_shape(raw, *cfg.p, cfg.seed)), nullptr, e->to_string(),
                    is_minimal_p(raw, *cfg.p)};
    }
    const shape_report r = classify(raw, opt);
    const convexity c = cfg.shape.empty() ? r.shape : parse_shape(cfg.shape);
    return target{raw.with_class(r.p, c), nullptr, e->to_string(), r.minimal_p};
  } catch (const classification_error& ex) {
    throw cli_failure{exit_input, ex.what()};
  } catch (const domain_error& ex) {
    throw cli_failure{exit_input, std::string("cannot classify: ") + ex.what()};
  }
}

double named_offset(const target& t, const run_config& cfg, double x) {
  if (cfg.offset == "none") return 0.0;
  if (!t.entry) throw cli_failure{exit_input, "--offset named requires a catalog function (--fn)"};
  return t.entry->named_offset(x);
}

void ensure_sigma(const target& t) {
  try {
    asymptotic_constant(t.g);
  } catch (const convergence_error& ex) {
    throw cli_failure{exit_convergence, std::string("sigma[g]: ") + ex.what()};
  }
}

json header(const target& t) {
  json j;
  j["function"] = t.label;
  j["p"] = t.g.p();
  j["shape"] = to_string(t.g.shape());
  return j;
}

struct table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void print_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
  }
};

const std::string& output_format(const run_config& cfg, const std::string& fallback) {
  const std::string& f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw cli_failure{exit_input, "--format must be csv or json"};
  return f;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const run_config& cfg) {
  const target t = resolve(cfg);
  if (cfg.xs.empty()) throw cli_failure{exit_input, "eval needs --x"};
  for (double x : cfg.xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw cli_failure{exit_input, "every --x value must be positive"};
  }
  if (cfg.strategy == "auto" || cfg.strategy == "gregory") ensure_sigma(t);

  struct row {
    sigma_result r;
    double offset = 0.0;
    bool ok = true;
  };
  const auto rows = parallel_map(cfg.xs.size(), [&](std::size_t i) {
    const double x = cfg.xs[i];
    row out;
    out.offset = named_offset(t, cfg, x);
    try {
      if (cfg.strategy == "auto") {
        out.r = sigma(t.g, x);
      } else if (cfg.strategy == "direct") {
        out.r = sigma_direct(t.g, t.g.p(), x, std::max(cfg.tol * 1e-3, 1e-13));
      } else if (cfg.strategy == "eulerian") {
        out.r = sigma_eulerian(t.g, t.g.p(), x, std::max(cfg.tol * 1e-3, 1e-13));
      } else {
        out.r = sigma_gregory(t.g, t.g.p(), x, gregory_shift(x), 8);
      }
      out.ok = std::isfinite(out.r.value) &&
               (out.r.used == strategy::gregory || out.r.err_estimate <= cfg.tol);
    } catch (const convergence_error& ex) {
      out.r.value = ex.best_estimate();
      out.r.err_estimate = ex.err_estimate();
      out.ok = false;
    }
    return out;
  });

  bool all_ok = true;
  const std::string& f = output_format(cfg, "csv");
  if (f == "csv") {
    table tb{{"x", "value", "err_estimate", "strategy", "status"}, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      all_ok = all_ok && r.ok;
      tb.rows.push_back({fmt(cfg.xs[i]), fmt(r.r.value + r.offset), fmt(r.r.err_estimate), to_string(r.r.used),
                         r.ok ? "ok" : "unconverged"});
    }
    tb.print_csv(std::cout);
  } else {
    json j = header(t);
    j["offset"] = cfg.offset;
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      all_ok = all_ok && r.ok;
      j["rows"].push_back({{"x", num(cfg.xs[i])},
                           {"value", num(r.r.value + r.offset)},
                           {"err_estimate", num(r.r.err_estimate)},
                           {"strategy", to_string(r.r.used)},
                           {"terms_used", r.r.terms_used},
                           {"status", r.ok ? "ok" : "unconverged"}});
    }
    std::cout << j.dump(2) << '\n';
  }
  return all_ok ? exit_ok : exit_convergence;
}

// ----------------------------------------------------------- constants

int cmd_constants(const run_config& cfg) {
  const target t = resolve(cfg);
  if (!t.minimal_p && !cfg.unsafe) {
    throw cli_failure{exit_input, "p = " + std::to_string(t.g.p()) + " is not minimal; gamma[g] needs the minimal p "
                                  "(use --unsafe to override)"};
  }
  constants_report r;
  try {
    r = compute_constants(t.g, true);
  } catch (const convergence_error& ex) {
    throw cli_failure{exit_convergence, ex.what()};
  }
  const std::string& f = output_format(cfg, "json");
  if (f == "json") {
    json j = header(t);
    j["sigma"] = num(r.sigma);
    j["gamma"] = num(r.gamma_gen);
    j["err"] = num(r.err);
    j["method"] = r.method;
    j["minimal_p"] = t.minimal_p;
    std::cout << j.dump(2) << '\n';
  } else {
    table tb{{"function", "p", "shape", "sigma", "gamma", "err"}, {}};
    tb.rows.push_back({t.label, std::to_string(r.p), to_string(r.shape), fmt(r.sigma), fmt(r.gamma_gen), fmt(r.err)});
    tb.print_csv(std::cout);
  }
  return exit_ok;
}

// -------------------------------------------------------------- verify

struct suite_result {
  residual_report report;
  double tolerance = 0.0;
  bool pass = true;
  std::string note;
};

residual_report named_report(std::string id) {
  residual_report r;
  r.identity = std::move(id);
  return r;
}

template <class T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

suite_result finish(residual_report rep, double tol, std::string note = {}) {
  suite_result s;
  s.pass = rep.max_abs <= tol;
  s.report = std::move(rep);
  s.tolerance = tol;
  s.note = std::move(note);
  return s;
}

// Residuals that should shrink toward 0 along the listed points: pass when
// magnitudes never grow (beyond roundoff) within each group and the last is small.
suite_result decay_result(residual_report rep, std::size_t group, double final_tol, std::string note) {
  suite_result s;
  s.tolerance = final_tol;
  s.note = std::move(note);
  for (std::size_t start = 0; start < rep.residuals.size(); start += group) {
    const std::size_t end = std::min(rep.residuals.size(), start + group);
    for (std::size_t i = start + 1; i < end; ++i) {
      const double slack = 1e-12 * std::max({1.0, std::abs(rep.lhs[i]), std::abs(rep.rhs[i])});
      if (std::abs(rep.residuals[i]) > std::abs(rep.residuals[i - 1]) + slack) s.pass = false;
    }
    if (std::abs(rep.residuals[end - 1]) > final_tol) s.pass = false;
  }
  s.report = std::move(rep);
  return s;
}

std::vector<suite_result> run_suite(const std::string& suite, const target& t, const run_config& cfg) {
  const bool psi2 = t.entry && t.entry->name == "psi2g" && t.g.p() == 2;
  std::vector<suite_result> out;
  const gfunction& g = t.g;

  if (suite == "raabe") {
    residual_report rep = named_report("raabe");
    for (double x : or_default(cfg.xs, {0.5, 1.0, 2.0, 5.0, 10.0})) {
      const sides s = raabe_sides(g, x);
      rep.add({x}, s.lhs, s.rhs);
    }
    out.push_back(finish(std::move(rep), 1e-7));
  } else if (suite == "mult") {
    residual_report rep = named_report("mult");
    const auto xs = or_default(cfg.xs, {0.3, 1.0, 2.7, 8.0});
    for (int m : or_default(cfg.ms, {1, 2, 3, 5})) {
      if (m < 1) throw cli_failure{exit_input, "--m values must be >= 1"};
      const auto sd = mult_sides(g, m, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) rep.add({static_cast<double>(m), xs[i]}, sd[i].lhs, sd[i].rhs);
    }
    out.push_back(finish(std::move(rep), 1e-7));
  } else if (suite == "wendel") {
    residual_report rep = named_report("wendel");
    const auto as = or_default(cfg.as, {0.25, 1.5, 3.0});
    const auto xs = or_default(cfg.xs, {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0});
    for (double a : as) {
      for (double x : xs) {
        const double lhs = sigma(g, x + a).value - sigma(g, x).value;
        double rhs = 0.0;
        if (g.p() > 0) {
          const auto d = forward_diffs(g, x, g.p() - 1);
          for (int j = 1; j <= g.p(); ++j) rhs += gen_binomial(a, j) * d[static_cast<std::size_t>(j - 1)];
        }
        rep.add({a, x}, lhs, rhs);
      }
    }
    out.push_back(decay_result(std::move(rep), xs.size(), 1e-2, "residual must shrink along x for each a"));
  } else if (suite == "stirling") {
    residual_report rep = named_report("stirling");
    const auto xs = or_default(cfg.xs, {1.0, 4.0, 16.0, 64.0, 256.0, 1024.0});
    for (double x : xs) rep.add({x}, binet(g, g.p(), x), 0.0);
    out.push_back(decay_result(std::move(rep), xs.size(), 1e-2, "generalized Binet function must vanish at infinity"));
  } else if (!psi2) {
    throw cli_failure{exit_input, "suite '" + suite + "' is defined for --fn psi2g only"};
  } else if (suite == "webster") {
    residual_report rep = named_report("webster");
    for (int m : or_default(cfg.ms, {1, 2, 5})) {
      if (m < 1) throw cli_failure{exit_input, "--m values must be >= 1"};
      for (double x : or_default(cfg.xs, {0.7, 1.0, 2.5})) {
        const sides s = webster_sides(m, x);
        rep.add({static_cast<double>(m), x}, s.lhs, s.rhs);
      }
    }
    out.push_back(finish(std::move(rep), 1e-7));
  } else if (suite == "wallis") {
    const auto w = wallis_extrapolated_psi2(10000);
    residual_report r1 = named_report("wallis-g"), r2 = named_report("wallis-psi2");
    r1.add({10000.0}, w.first, wallis_limit1_closed());
    r2.add({10000.0}, w.second, wallis_limit2_closed());
    out.push_back(finish(std::move(r1), 1e-3, "Richardson over n = 1250..10000"));
    out.push_back(finish(std::move(r2), 1e-3, "Richardson over n = 1250..10000"));
  } else if (suite == "reflection") {
    residual_report rep = named_report("reflection");
    for (double x : or_default(cfg.xs, {0.1, 0.25, 0.5, 0.75, 0.9})) {
      if (!(x > 0.0 && x < 1.0)) throw cli_failure{exit_input, "reflection needs x in (0, 1)"};
      const sides s = reflection_sides_psi2(x);
      rep.add({x}, s.lhs, s.rhs);
    }
    out.push_back(finish(std::move(rep), 1e-7));
  } else if (suite == "taylor") {
    residual_report rep = named_report("taylor");
    for (double x : or_default(cfg.xs, {-0.5, -0.25, 0.25, 0.5})) {
      if (!(std::abs(x) <= 0.75)) throw cli_failure{exit_input, "taylor needs |x| <= 0.75"};
      rep.add({x}, taylor_psi2(x, 60), engine_psi2(1.0 + x));
    }
    out.push_back(finish(std::move(rep), 1e-9, "N = 60 partial sum against the engine"));
  } else if (suite == "euler-series") {
    residual_report rep = named_report("euler-series");
    rep.add({60.0}, euler_series_accelerated(60, 12), euler_series_closed());
    out.push_back(finish(std::move(rep), 1e-10, "partial sums S_48..S_60 averaged pairwise 12 times"));
  } else if (suite == "inequalities") {
    std::vector<double> xs = cfg.xs, as = cfg.as;
    if (xs.empty()) {
      for (int i = 0; i < 20; ++i) xs.push_back(0.25 * std::pow(1.35, i));
    }
    if (as.empty()) {
      for (int k = 0; k < 10; ++k) as.push_back(0.4 * k);
    }
    residual_report rep = named_report("inequalities");
    std::string skipped;
    int na = 0;
    const auto reports = parallel_map(xs.size() * as.size(), [&](std::size_t i) {
      return inequality_report_psi2(xs[i / as.size()], as[i % as.size()]);
    });
    bool holds = true;
    for (const auto& r : reports) {
      for (std::size_t c = 0; c < r.chains.size(); ++c) {
        const auto& ch = r.chains[c];
        if (!ch.applicable) {
          ++na;
          continue;
        }
        holds = holds && ch.holds;
        rep.add({r.x, r.a, static_cast<double>(c)}, ch.worst_violation, 0.0);
      }
    }
    suite_result s;
    s.report = std::move(rep);
    s.pass = holds;
    s.tolerance = 1e-9;
    s.note = "chains 0 wendel, 1 webster, 2 gautschi, 3 stirling; residual = worst ordering violation; " +
             std::to_string(na) + " gautschi points not applicable (x + floor(a) < x0)";
    out.push_back(std::move(s));

    residual_report ab = named_report("alpha-beta");
    bool ab_ok = true;
    for (int i = 0; i <= 200; ++i) {
      const double x = 0.1 * std::pow(500.0, i / 200.0);
      const auto [alpha, beta] = bounds_alpha_beta(x);
      const double v = engine_psi2(x);
      const double tol = 1e-9 * std::max(1.0, std::abs(v));
      const double viol = std::max({alpha - v, v - beta, 0.0});
      ab_ok = ab_ok && viol <= tol;
      ab.add({x}, viol, 0.0);
    }
    suite_result s2;
    s2.report = std::move(ab);
    s2.pass = ab_ok;
    s2.tolerance = 1e-9;
    s2.note = "alpha(x) <= psi_{-2}(x) <= beta(x) on x in [0.1, 50]; residual = violation";
    out.push_back(std::move(s2));

    residual_report gap = named_report("alpha-beta-sup-gap");
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = std::pow(10.0, -10.0 + i * (std::log10(50.0) + 10.0) / 400.0);
      const auto [alpha, beta] = bounds_alpha_beta(x);
      sup = std::max(sup, beta - alpha);
    }
    gap.add({50.0}, sup, alpha_beta_sup_gap_closed());
    out.push_back(finish(std::move(gap), 1e-3, "sup over (0, 50] on a log grid from 1e-10"));
  } else {
    throw cli_failure{exit_input, "unknown suite '" + suite + "'"};
  }
  return out;
}

int cmd_verify(const run_config& cfg) {
  const target t = resolve(cfg);
  ensure_sigma(t);
  static const std::vector<std::string> generic{"raabe", "mult", "wendel", "stirling"};
  static const std::vector<std::string> psi2_only{"webster", "wallis", "reflection", "taylor", "euler-series",
                                                  "inequalities"};
  const bool psi2 = t.entry && t.entry->name == "psi2g" && t.g.p() == 2;
  std::vector<std::string> suites;
  for (const auto& s : or_default(cfg.suites, {"all"})) {
    if (s == "all") {
      suites.insert(suites.end(), generic.begin(), generic.end());
      if (psi2) suites.insert(suites.end(), psi2_only.begin(), psi2_only.end());
    } else {
      suites.push_back(s);
    }
  }
  std::vector<suite_result> results;
  try {
    for (const auto& s : suites) {
      auto r = run_suite(s, t, cfg);
      results.insert(results.end(), r.begin(), r.end());
    }
  } catch (const convergence_error& ex) {
    throw cli_failure{exit_convergence, ex.what()};
  }
  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.pass;

  const std::string& f = output_format(cfg, "json");
  if (f == "json") {
    json j = header(t);
    j["reports"] = json::array();
    for (const auto& r : results) {
      json rep;
      rep["identity"] = r.report.identity;
      rep["tolerance"] = r.tolerance;
      rep["pass"] = r.pass;
      rep["max_abs"] = num(r.report.max_abs);
      rep["note"] = r.note;
      rep["points"] = json::array();
      for (const auto& p : r.report.points) {
        json pt = json::array();
        for (double v : p) pt.push_back(num(v));
        rep["points"].push_back(pt);
      }
      auto arr = [](const std::vector<double>& v) {
        json a = json::array();
        for (double d : v) a.push_back(num(d));
        return a;
      };
      rep["lhs"] = arr(r.report.lhs);
      rep["rhs"] = arr(r.report.rhs);
      rep["residuals"] = arr(r.report.residuals);
      j["reports"].push_back(rep);
    }
    j["pass"] = all_pass;
    std::cout << j.dump(2) << '\n';
  } else {
    table tb{{"identity", "point", "lhs", "rhs", "residual", "tolerance", "pass"}, {}};
    for (const auto& r : results) {
      for (std::size_t i = 0; i < r.report.residuals.size(); ++i) {
        std::string pt;
        for (std::size_t k = 0; k < r.report.points[i].size(); ++k) pt += (k ? ";" : "") + fmt(r.report.points[i][k]);
        tb.rows.push_back({r.report.identity, pt, fmt(r.report.lhs[i]), fmt(r.report.rhs[i]),
                           fmt(r.report.residuals[i]), fmt(r.tolerance), r.pass ? "true" : "false"});
      }
    }
    tb.print_csv(std::cout);
  }
  return all_pass ? exit_ok : exit_violation;
}

// -------------------------------------------------------------- expand

int cmd_expand(const run_config& cfg) {
  const target t = resolve(cfg);
  if (cfg.q < 0 || cfg.q > 8) throw cli_failure{exit_input, "--q must lie in [0, 8]"};
  const int m = cfg.ms.empty() ? 1 : cfg.ms.front();
  if (m < 1) throw cli_failure{exit_input, "--m must be >= 1"};
  const double x = cfg.xs.empty() ? 10.0 : cfg.xs.front();
  if (!(x > 0.0)) throw cli_failure{exit_input, "--x must be positive"};
  ensure_sigma(t);
  expansion_result e;
  try {
    e = asym_expansion(t.g, x, cfg.q, m);
  } catch (const error& ex) {
    throw cli_failure{exit_input, ex.what()};
  }
  const double off = named_offset(t, cfg, x);
  const double target_value = multisection_average(t.g, x, m);

  const std::string& f = output_format(cfg, "csv");
  if (f == "csv") {
    table tb{{"term", "k", "coefficient", "value"}, {}};
    for (const auto& term : e.terms) {
      tb.rows.push_back({"bernoulli", std::to_string(term.k), fmt(term.coefficient), fmt(term.value)});
    }
    tb.rows.push_back({"main", "", "", fmt(e.main_part + off)});
    tb.rows.push_back({"total", "", "", fmt(e.total + off)});
    tb.rows.push_back({"sigma_average", "", "", fmt(target_value + off)});
    tb.rows.push_back({"remainder", "", "", fmt(target_value - e.total)});
    tb.print_csv(std::cout);
  } else {
    json j = header(t);
    j["x"] = x;
    j["q"] = cfg.q;
    j["m"] = m;
    j["offset"] = cfg.offset;
    j["terms"] = json::array();
    for (const auto& term : e.terms) {
      j["terms"].push_back({{"k", term.k}, {"coefficient", num(term.coefficient)}, {"value", num(term.value)}});
    }
    j["main"] = num(e.main_part + off);
    j["total"] = num(e.total + off);
    j["sigma_average"] = num(target_value + off);
    j["remainder"] = num(target_value - e.total);
    std::cout << j.dump(2) << '\n';
  }
  return exit_ok;
}

// ------------------------------------------------------------ tabulate

int cmd_tabulate(const run_config& cfg) {
  const target t = resolve(cfg);
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.from) || !std::isfinite(cfg.to)) {
    throw cli_failure{exit_input, "tabulate needs finite --from/--to and --step > 0"};
  }
  std::vector<double> xs;
  for (std::int64_t i = 0;; ++i) {
    const double x = cfg.from + static_cast<double>(i) * cfg.step;
    if (x > cfg.to + 1e-9 * cfg.step) break;
    if (!(x > 0.0)) throw cli_failure{exit_input, "tabulate range must lie in (0, inf)"};
    xs.push_back(x);
    if (xs.size() > 1000000) throw cli_failure{exit_input, "tabulate range too long"};
  }
  const bool psi2 = t.entry && t.entry->name == "psi2g" && t.g.p() == 2;
  if (!xs.empty()) ensure_sigma(t);
  struct row {
    double sigma, named, binet, alpha, beta;
  };
  const auto rows = parallel_map(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    row r{};
    r.sigma = sigma(t.g, x).value;
    r.named = t.entry ? r.sigma + t.entry->named_offset(x) : NAN;
    r.binet = binet(t.g, t.g.p(), x);
    if (psi2) std::tie(r.alpha, r.beta) = bounds_alpha_beta(x);
    return r;
  });
  const std::string& f = output_format(cfg, "csv");
  if (f == "csv") {
    table tb{{"x", "sigma", "named", "binet", "alpha", "beta"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& r = rows[i];
      tb.rows.push_back({fmt(xs[i]), fmt(r.sigma), t.entry ? fmt(r.named) : "", fmt(r.binet),
                         psi2 ? fmt(r.alpha) : "", psi2 ? fmt(r.beta) : ""});
    }
    tb.print_csv(std::cout);
  } else {
    json j = header(t);
    j["rows"] = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& r = rows[i];
      j["rows"].push_back({{"x", num(xs[i])},
                           {"sigma", num(r.sigma)},
                           {"named", t.entry ? num(r.named) : json(nullptr)},
                           {"binet", num(r.binet)},
                           {"alpha", psi2 ? num(r.alpha) : json(nullptr)},
                           {"beta", psi2 ? num(r.beta) : json(nullptr)}});
    }
    std::cout << j.dump(2) << '\n';
  }
  return exit_ok;
}

// ------------------------------------------------------------- catalog

int cmd_catalog(const run_config& cfg) {
  const std::string& f = output_format(cfg, "csv");
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  if (f == "csv") {
    table tb{{"name", "p", "shape", "named_function", "offset", "sigma_closed", "gamma_closed"}, {}};
    for (const auto& n : catalog_names()) {
      const auto& e = builtin(n);
      tb.rows.push_back({e.name, std::to_string(e.g.p()), to_string(e.g.shape()), e.named_function, fmt(e.offset),
                         opt(e.sigma_closed), opt(e.gamma_closed)});
    }
    tb.print_csv(std::cout);
  } else {
    json j = json::array();
    for (const auto& n : catalog_names()) {
      const auto& e = builtin(n);
      j.push_back({{"name", e.name},
                   {"p", e.g.p()},
                   {"shape", to_string(e.g.shape())},
                   {"named_function", e.named_function},
                   {"offset", e.offset},
                   {"sigma_closed", e.sigma_closed ? json(*e.sigma_closed) : json(nullptr)},
                   {"gamma_closed", e.gamma_closed ? json(*e.gamma_closed) : json(nullptr)}});
    }
    std::cout << j.dump(2) << '\n';
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::cout.imbue(std::locale::classic());

  run_config cfg;
  CLI::App app{"Principal indefinite sums: evaluation, constants, identities, expansions"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--fn", cfg.fn, "catalog function (ln, psi2g, xlnx, recip)");
  app.add_option("--expr", cfg.expr_text, "g(x) as an expression, e.g. \"x*ln(x)\"");
  app.add_option("--p", cfg.p, "override p");
  app.add_option("--shape", cfg.shape, "override shape (convex|concave)");
  app.add_option("--tol", cfg.tol, "tolerance (default 1e-9)");
  app.add_option("--format", cfg.format, "csv|json");
  app.add_option("--seed", cfg.seed, "seed for randomized classification (default 0)");

  auto* eval = app.add_subcommand("eval", "evaluate Sigma g at points");
  eval->add_option("--x", cfg.xs, "comma-separated points")->delimiter(',');
  eval->add_option("--offset", cfg.offset, "none|named")->check(CLI::IsMember({"none", "named"}));
  eval->add_option("--strategy", cfg.strategy, "auto|direct|eulerian|gregory")
      ->check(CLI::IsMember({"auto", "direct", "eulerian", "gregory"}));

  auto* constants = app.add_subcommand("constants", "sigma[g] and gamma[g]");
  constants->add_flag("--unsafe", cfg.unsafe, "allow a non-minimal p for gamma[g]");

  auto* verify = app.add_subcommand("verify", "run identity suites");
  verify->add_option("--suite", cfg.suites,
                     "raabe,mult,webster,wallis,reflection,taylor,euler-series,inequalities,stirling,wendel,all")
      ->delimiter(',');
  verify->add_option("--x", cfg.xs, "points")->delimiter(',');
  verify->add_option("--m", cfg.ms, "multipliers")->delimiter(',');
  verify->add_option("--a", cfg.as, "shifts")->delimiter(',');

  auto* expand = app.add_subcommand("expand", "asymptotic expansion with Bernoulli terms");
  expand->add_option("--x", cfg.xs, "point (default 10)")->delimiter(',');
  expand->add_option("--q", cfg.q, "number of Bernoulli terms (0..8, default 6)");
  expand->add_option("--m", cfg.ms, "multisection order (default 1)")->delimiter(',');
  expand->add_option("--offset", cfg.offset, "none|named")->check(CLI::IsMember({"none", "named"}));

  auto* tabulate = app.add_subcommand("tabulate", "plot-ready table over a range");
  tabulate->add_option("--from", cfg.from, "start");
  tabulate->add_option("--to", cfg.to, "end (inclusive)");
  tabulate->add_option("--step", cfg.step, "step");

  auto* catalog = app.add_subcommand("catalog", "list built-in functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (eval->parsed()) return cmd_eval(cfg);
    if (constants->parsed()) return cmd_constants(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (expand->parsed()) return cmd_expand(cfg);
    if (tabulate->parsed()) return cmd_tabulate(cfg);
    if (catalog->parsed()) return cmd_catalog(cfg);
  } catch (const cli_failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const classification_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_convergence;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}
