#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gabor/amalgam.hpp"
#include "gabor/errors.hpp"
#include "gabor/experiments.hpp"
#include "gabor/frame.hpp"
#include "gabor/janssen.hpp"
#include "gabor/parallel.hpp"
#include "gabor/walnut.hpp"
#include "gabor/window.hpp"

namespace gabor::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::size_t threads = 0;
  std::optional<std::uint64_t> seed;
  std::string method = "walnut";
  std::string depths = "1,2,3";
  std::string q = "inf";
  std::string window;
  std::string p_flag;
  std::string q_flag;
  std::optional<int> L;
  std::optional<int> N;
  std::optional<double> tol;
};

/// Command-line flags take precedence over the matching config fields.
void overlay(json& j, const Options& o) {
  if (!o.p_flag.empty()) j["p"] = o.p_flag;
  if (!o.q_flag.empty()) j["q"] = o.q_flag;
  if (o.L) j["L"] = *o.L;
  if (o.N) j["N"] = *o.N;
  if (o.tol) j["tol"] = *o.tol;
}

void dump_into(std::string& s, const json& v) {
  switch (v.type()) {
    case json::value_t::object: {
      s += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) s += ',';
        first = false;
        s += json(key).dump();
        s += ':';
        dump_into(s, item);
      }
      s += '}';
      break;
    }
    case json::value_t::array: {
      s += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        dump_into(s, v[i]);
      }
      s += ']';
      break;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isnan(d)) {
        s += "\"nan\"";
      } else if (std::isinf(d)) {
        s += d > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        s += buf;
        if (std::string_view(buf).find_first_of(".e") == std::string_view::npos) s += ".0";
      }
      break;
    }
    default:
      s += v.dump();
  }
}

json read_config(const std::string& path) {
  if (path.empty()) throw ConfigError("--config <path> is required for this command");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("schema")) throw ConfigError("config lacks the \"schema\" field");
  if (j.at("schema") != "v1") throw ConfigError("unsupported config schema; expected \"v1\"");
  return j;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("config lacks required field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

Exponent exponent(const json& j, const char* key, Exponent fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) return Exponent::parse(v.get<std::string>());
  if (!v.is_number()) throw ConfigError(std::string("exponent \"") + key + "\" must be a number or \"inf\"");
  return Exponent(v.get<double>());
}

ExponentPair exponents(const json& j) {
  return {exponent(j, "p", Exponent(2.0)), exponent(j, "q", Exponent(2.0))};
}

json exponent_json(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

Grid grid_of(const json& j) { return field<GridSpec>(j, "grid").make(); }

GaborSystem system_of(const json& j, const Grid& grid) {
  const auto g = sample_window(field<WindowSpec>(j, "g"), grid);
  const auto gamma = j.contains("gamma") ? sample_window(field<WindowSpec>(j, "gamma"), grid) : g;
  return GaborSystem(g, gamma, field<double>(j, "a"), field<double>(j, "b"));
}

std::uint64_t seed_of(const Options& o, const json& j, const char* purpose) {
  if (o.seed) return *o.seed;
  if (j.contains("seed")) return field<std::uint64_t>(j, "seed");
  throw ConfigError(std::string(purpose) + " needs a seed (--seed or \"seed\" in the config)");
}

/// Writes a table to --out if given, otherwise to `out`. Returns true for a file.
bool write_table(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return false;
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot open \"" + path + "\" for writing");
  body(file);
  return true;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_sidecar(const std::string& path, json meta) {
  meta["timestamp"] = utc_timestamp();
  meta["threads"] = thread_count();
  std::ofstream file(path + ".meta.json");
  if (!file) throw ConfigError("cannot write metadata sidecar for \"" + path + "\"");
  file << dump17(meta) << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

int cmd_norm(const Options& o, std::ostream& out) {
  json j;
  if (o.config.empty() && !o.window.empty()) {
    j = {{"grid", GridSpec{}}};
  } else {
    j = read_config(o.config);
  }
  if (!o.window.empty()) {
    const json w = read_json(o.window);
    j["function"] = w.contains("function") ? w.at("function") : w;
    if (w.contains("grid") && !j.contains("grid")) j["grid"] = w.at("grid");
  }
  overlay(j, o);
  const Grid grid = grid_of(j);
  const auto f = sample_window(field<WindowSpec>(j, "function"), grid);
  const ExponentPair pq = exponents(j);
  out << dump17({{"norm", amalgam_norm(f, pq)}, {"p", exponent_json(pq.p)}, {"q", exponent_json(pq.q)}}) << '\n';
  return kExitOk;
}

/// Columns n_1..n_d, m_1..m_d, re, im.
void write_lattice_csv(std::ostream& s, const CoefficientLattice& c) {
  const std::size_t d = c.time.dimension();
  for (std::size_t k = 0; k < d; ++k) s << "n_" << k + 1 << ',';
  for (std::size_t k = 0; k < d; ++k) s << "m_" << k + 1 << ',';
  s << "re,im\n";
  char buf[32];
  std::size_t flat = 0;
  for (std::size_t i = 0; i < c.time.size(); ++i) {
    const Index n = c.time.at(i);
    for (std::size_t k = 0; k < c.freq.size(); ++k, ++flat) {
      const Index m = c.freq.at(k);
      for (std::size_t a = 0; a < d; ++a) s << n[a] << ',';
      for (std::size_t a = 0; a < d; ++a) s << m[a] << ',';
      std::snprintf(buf, sizeof buf, "%.17g", c.entries[flat].real());
      s << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", c.entries[flat].imag());
      s << buf << '\n';
    }
  }
}

int cmd_stft(const Options& o, std::ostream& out) {
  const json j = read_config(o.config);
  const Grid grid = grid_of(j);
  const auto f = sample_window(field<WindowSpec>(j, "f"), grid);
  if (!j.contains("t") && j.contains("a")) {
    const GaborSystem sys = system_of(j, grid);
    const auto c = gabor_coefficients(f, sys);
    write_table(o.out, out, [&](std::ostream& s) { write_lattice_csv(s, c); });
    return kExitOk;
  }
  const auto g = sample_window(field<WindowSpec>(j, "g"), grid);
  const auto v = stft(f, g, field<Vec>(j, "t"), field<Vec>(j, "omega"));
  out << dump17({{"re", v.real()}, {"im", v.imag()}, {"abs", std::abs(v)}}) << '\n';
  return kExitOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  json j = read_config(o.config);
  overlay(j, o);
  const Grid grid = grid_of(j);
  const GaborSystem sys = system_of(j, grid);
  const auto f = sample_window(field<WindowSpec>(j, "f"), grid);
  GridFunction result(grid);
  if (o.method == "direct") {
    result = apply_frame_direct(f, sys);
  } else if (o.method == "walnut") {
    result = walnut_apply(f, sys);
  } else {
    const int L = field_or<int>(j, "L", 8);
    const int N = field_or<int>(j, "N", 8);
    result = janssen_apply(f, janssen_coefficients(sys, L, N));
  }
  write_table(o.out, out, [&](std::ostream& s) { write_csv(s, result); });
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const json j = read_config(o.config);
  const Grid grid = grid_of(j);
  const GaborSystem sys = system_of(j, grid);
  const ExponentPair pq = exponents(j);
  const TailSum ts = tail_sum(sys);
  const TranslateSum tg = sum_translates(sys.g(), sys.a());
  const TranslateSum ty = sum_translates(sys.gamma(), sys.a());
  json report = {
      {"norm_bound", operator_norm_upper_bound(sys, pq)},
      {"tail_sum",
       {{"tail", ts.tail}, {"full_sum", ts.full_sum}, {"bound", ts.bound}, {"within_bound", ts.within_bound}}},
      {"translate_sum_g", {{"max", tg.max}, {"bound", tg.bound}, {"holds", tg.holds}}},
      {"translate_sum_gamma", {{"max", ty.max}, {"bound", ty.bound}, {"holds", ty.holds}}},
      {"g_a_dev", g_a_deviation(sys)},
      {"m0_bound", m0_bound(sys)},
  };
  bool ok = ts.within_bound && tg.holds && ty.holds;
  if (j.contains("monte_carlo")) {
    const json& mc = j.at("monte_carlo");
    const auto res = norm_bound_monte_carlo(sys, pq, field_or<int>(mc, "trials", 100), field_or<double>(mc, "radius", 2.0),
                                        seed_of(o, j, "monte_carlo"));
    report["monte_carlo"] = {{"trials", res.trials},
                             {"max_ratio", res.max_ratio},
                             {"bound", res.bound},
                             {"violations", res.violations}};
    ok = ok && res.violations == 0;
  }
  if (field_or<bool>(j, "frame_bounds", false)) {
    const auto est = estimate_frame_bounds(sys, field_or<int>(j, "iterations", 200), seed_of(o, j, "frame_bounds"));
    report["frame_upper"] = {{"upper", est.upper}, {"converged", est.converged}, {"iterations", est.iterations}};
  }
  report["passed"] = ok;
  out << dump17(report) << '\n';
  return ok ? kExitOk : kExitContract;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const json j = read_config(o.config);
  const auto schedule = j.get<SweepSchedule>();
  const std::string kind = field_or<std::string>(j, "kind", "convergence");
  SweepReport report;
  if (kind == "convergence") {
    report = convergence_sweep(schedule);
  } else if (kind == "opnorm") {
    report = opnorm_sweep(schedule);
  } else {
    throw ConfigError("unknown sweep kind \"" + kind + "\"; expected convergence or opnorm");
  }
  const std::string path = o.out.empty() ? field_or<std::string>(j, "output", "") : o.out;
  if (path.empty()) throw ConfigError("sweep needs an output path (--out or \"output\")");
  write_table(path, out, [&](std::ostream& s) { write_csv(s, report); });
  json times = json::array();
  for (const auto& r : report.records) times.push_back(r.wall_time);
  write_sidecar(path, {{"command", "sweep"}, {"wall_time", times}});
  out << dump17({{"passed", report.passed},
                 {"trend_ratio", report.trend_ratio},
                 {"strictly_decreasing", report.strictly_decreasing}})
      << '\n';
  const bool bounds_ok = std::all_of(report.records.begin(), report.records.end(),
                                     [](const SweepRecord& r) { return r.bound_ok; });
  return bounds_ok ? kExitOk : kExitContract;
}

int cmd_wexler_raz(const Options& o, std::ostream& out) {
  json j = read_config(o.config.empty() ? o.window : o.config);
  overlay(j, o);
  const Grid grid = grid_of(j);
  const GaborSystem sys = system_of(j, grid);
  const auto res = wexler_raz_check(sys, field_or<int>(j, "L", 4), field_or<int>(j, "N", 4),
                                    field_or<double>(j, "tol", 1e-10));
  out << dump17({{"diag", {res.diag.real(), res.diag.imag()}},
                 {"max_offdiag", res.max_offdiag},
                 {"is_biorthogonal", res.is_biorthogonal},
                 {"l_range", {res.l_range.lo()[0], res.l_range.hi()[0]}},
                 {"n_range", {res.n_range.lo()[0], res.n_range.hi()[0]}}})
      << '\n';
  return kExitOk;
}

std::vector<int> parse_depths(const std::string& text) {
  std::vector<int> depths;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      depths.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse depth \"" + item + "\"");
    }
  }
  if (depths.empty()) throw ConfigError("no depths given");
  return depths;
}

int cmd_counterexample(const Options& o, std::ostream& out) {
  CounterexampleOptions opts;
  if (!o.config.empty()) {
    const json j = read_config(o.config);
    if (j.contains("spacing")) opts.spacing = field<double>(j, "spacing");
    opts.a_max = field_or<double>(j, "a_max", opts.a_max);
    opts.a_min = field_or<double>(j, "a_min", opts.a_min);
    opts.ratio = field_or<double>(j, "ratio", opts.ratio);
    opts.half_extent = field_or<double>(j, "half_extent", opts.half_extent);
  }
  const auto report = counterexample_run(parse_depths(o.depths), Exponent::parse(o.q), opts);
  if (write_table(o.out, out, [&](std::ostream& s) { write_csv(s, report); })) {
    out << dump17({{"all_witnessed", report.all_witnessed},
                   {"separation", report.separation},
                   {"separated", report.separated}})
        << '\n';
  }
  return report.all_witnessed && report.separated ? kExitOk : kExitContract;
}

int cmd_selftest(std::ostream& out) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const char* name, bool passed, double value) {
    checks.push_back({{"name", name}, {"passed", passed}, {"value", value}});
    all = all && passed;
  };

  const Grid grid(1, 1.0 / 64.0, 8.0);
  const auto chi = sample_window(WindowSpec::indicator(1.0), grid);

  const auto hat = sample_window(WindowSpec::bspline(2).shifted({-1.0}), grid);
  const GaborSystem exact(chi, chi, 0.25, 0.5);
  const ExponentPair l2{Exponent(2.0), Exponent(2.0)};
  const double rel = amalgam_norm(walnut_apply(hat, exact) - hat, l2) / amalgam_norm(hat, l2);
  record("exact_identity", rel <= 1e-12, rel);

  const auto wr = wexler_raz_check(GaborSystem::self_dual(chi, 1.0, 1.0), 4, 4);
  record("wexler_raz_delta", wr.is_biorthogonal, wr.max_offdiag);

  const double c = operator_norm_upper_bound(GaborSystem::self_dual(chi, 1.0, 1.0), l2);
  record("norm_constant_8", c == 8.0, c);

  out << dump17({{"checks", checks}, {"passed", all}}) << '\n';
  return all ? kExitOk : kExitContract;
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const CommensurabilityError*>(&e)) return "commensurability";
  if (dynamic_cast<const IncompatibleGridsError*>(&e)) return "incompatible_grids";
  if (dynamic_cast<const UnsupportedDimensionError*>(&e)) return "unsupported_dimension";
  if (dynamic_cast<const DegeneratePairError*>(&e)) return "degenerate_pair";
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const ResolutionError*>(&e)) return "resolution";
  if (dynamic_cast<const BoundaryMarginError*>(&e)) return "boundary_margin";
  return "config";
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, json extra = {}) {
  json body = {{"kind", kind}, {"message", message}};
  if (extra.is_object()) body.update(extra);
  err << dump17({{"error", body}}) << '\n';
}

class ThreadGuard {
 public:
  explicit ThreadGuard(std::size_t n) : previous_(thread_count_setting()) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(previous_); }
  ThreadGuard(const ThreadGuard&) = delete;
  ThreadGuard& operator=(const ThreadGuard&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace

std::string dump17(const json& value) {
  std::string s;
  dump_into(s, value);
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Gabor frame operators on discretized Wiener amalgam spaces", "gaborctl"};
  app.require_subcommand(1, 1);
  app.add_option("--config", o.config, "JSON config (\"schema\": \"v1\")");
  app.add_option("--out", o.out, "Output path for tables");
  app.add_option("--threads", o.threads, "Worker thread cap (0 = hardware concurrency)");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized procedures");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* norm = sub("norm", "W(L^p, l^q) norm of a sampled function");
  auto* stft_cmd = sub("stft", "Short-time Fourier transform at one (t, omega)");
  auto* apply = sub("apply", "Apply the frame operator and write S f as CSV");
  apply->add_option("--method", o.method, "direct | walnut | janssen")
      ->check(CLI::IsMember({"direct", "walnut", "janssen"}));
  apply->add_option("--L", o.L, "Janssen frequency radius");
  apply->add_option("--N", o.N, "Janssen shift radius");
  norm->add_option("--window", o.window, "Window spec JSON (a bare spec or {\"function\": spec})");
  norm->add_option("--p", o.p_flag, "Local exponent (number or inf)");
  norm->add_option("--q", o.q_flag, "Global exponent (number or inf)");
  auto* bounds = sub("bounds", "Norm bounds, correlation sums and frame-bound estimates");
  auto* sweep = sub("sweep", "Convergence or operator-norm sweep over (a, b)");
  auto* wr = sub("wexler-raz", "Dual-lattice biorthogonality check");
  wr->add_option("--system", o.window, "System config (same as --config)");
  wr->add_option("--L", o.L, "Frequency radius");
  wr->add_option("--N", o.N, "Shift radius");
  wr->add_option("--tol", o.tol, "Biorthogonality tolerance");
  auto* cx = sub("counterexample", "Fat Cantor witness search for p = inf");
  cx->add_option("--depths", o.depths, "Comma-separated depths");
  cx->add_option("--q", o.q, "Outer exponent q (number or inf)");
  auto* self = sub("selftest", "Built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    err << app.help();
    return kExitInvalid;
  }
  if (seed_opt->count() > 0) o.seed = seed;

  try {
    ThreadGuard guard(o.threads);
    if (norm->parsed()) return cmd_norm(o, out);
    if (stft_cmd->parsed()) return cmd_stft(o, out);
    if (apply->parsed()) return cmd_apply(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (wr->parsed()) return cmd_wexler_raz(o, out);
    if (cx->parsed()) return cmd_counterexample(o, out);
    if (self->parsed()) return cmd_selftest(out);
  } catch (const ResolutionError& e) {
    report_error(err, "resolution", e.what(), {{"required_spacing", e.required_spacing()}});
    return kExitInvalid;
  } catch (const Error& e) {
    report_error(err, error_kind(e), e.what());
    return kExitInvalid;
  } catch (const json::exception& e) {
    report_error(err, "config", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kExitInvalid;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace gabor::cli
