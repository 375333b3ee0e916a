#include "sbtube/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sbtube/acceptance.hpp"
#include "sbtube/csv.hpp"
#include "sbtube/euclid_baseline.hpp"
#include "sbtube/h3_transform.hpp"
#include "sbtube/isometry.hpp"
#include "sbtube/kos.hpp"
#include "sbtube/root_system.hpp"

namespace sbtube::cli {

namespace {

double parse_double(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not a number: '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::string timestamp_comment() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return std::string("generated ") + buf;
}

void check_space(const RunConfig& cfg) {
  preset_root_system(cfg.space);  // throws on unknown names
}

struct CheckLog {
  std::ostream& log;
  bool all_pass = true;
  void note(bool ok, const std::string& what) {
    log << (ok ? "  ok   " : "  FAIL ") << what << "\n";
    if (!ok) all_pass = false;
  }
};

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value, const std::string& where) {
  if (key == "space") {
    cfg.space = value;
  } else if (key == "t") {
    cfg.t = parse_double(value, where);
    if (!(cfg.t > 0.0)) throw ConfigError(where + ": t must be positive");
  } else if (key == "profile") {
    cfg.profile = value;
    cfg.profile_explicit = true;
  } else if (key == "R_min") {
    cfg.R_min = parse_double(value, where);
  } else if (key == "R_max") {
    cfg.R_max = parse_double(value, where);
  } else if (key == "R_step") {
    cfg.R_step = parse_double(value, where);
  } else if (key == "R_grid") {
    cfg.R_grid.clear();
    for (const auto& item : split(value, ','))
      if (!item.empty()) cfg.R_grid.push_back(parse_double(item, where));
  } else if (key == "routes") {
    cfg.routes.clear();
    for (const auto& item : split(value, ','))
      if (!item.empty()) cfg.routes.push_back(item);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "abs_tol") {
    cfg.quad.abs_tol = parse_double(value, where);
  } else if (key == "rel_tol") {
    cfg.quad.rel_tol = parse_double(value, where);
  } else if (key == "max_panels") {
    cfg.quad.max_panels = static_cast<int>(parse_double(value, where));
  } else if (key == "timestamps") {
    cfg.timestamps = (value == "true" || value == "1" || value == "on");
  } else if (key == "xi_min") {
    cfg.xi_min = parse_double(value, where);
  } else if (key == "xi_max") {
    cfg.xi_max = parse_double(value, where);
  } else if (key == "xi_step") {
    cfg.xi_step = parse_double(value, where);
  } else if (key == "s_min") {
    cfg.s_min = parse_double(value, where);
  } else if (key == "s_max") {
    cfg.s_max = parse_double(value, where);
  } else if (key == "s_step") {
    cfg.s_step = parse_double(value, where);
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    std::ostringstream where;
    where << path << ":" << lineno;
    if (eq == std::string::npos)
      throw ConfigError(where.str() + ": expected key = value");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t\r\n");
      const auto y = s.find_last_not_of(" \t\r\n");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
              where.str());
  }
}

SpectralProfile make_profile(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError("profile: expected heat:<s> or band:<a>, got '" + spec +
                      "'");
  const std::string kind = spec.substr(0, colon);
  const double param = parse_double(spec.substr(colon + 1), "profile");
  if (kind == "heat") return SpectralProfile::heat(param);
  if (kind == "band") return SpectralProfile::band(param);
  throw ConfigError("profile: unknown kind '" + kind + "'");
}

std::vector<double> resolve_r_grid(const RunConfig& cfg, double fallback_end) {
  std::vector<double> grid = cfg.R_grid;
  if (grid.empty() && (cfg.R_min || cfg.R_max || cfg.R_step)) {
    const double lo = cfg.R_min.value_or(0.1);
    const double hi = cfg.R_max.value_or(fallback_end);
    const double st = cfg.R_step.value_or(0.3);
    if (!(st > 0.0) || !(hi >= lo))
      throw ConfigError("R grid: need R_step > 0 and R_max >= R_min");
    for (double r = lo; r <= hi + 1e-12; r += st) grid.push_back(r);
  }
  if (!grid.empty()) {
    std::sort(grid.begin(), grid.end());
    if (grid.front() <= 0.0)
      throw ConfigError("R grid: radii must be positive");
  }
  return grid;
}

int cmd_isometry_curve(const RunConfig& cfg, std::ostream& log) {
  check_space(cfg);
  if (cfg.space != "h3")
    throw ConfigError("isometry-curve: transform pipeline is h3 only");
  const auto p = make_profile(cfg.profile);
  auto grid = resolve_r_grid(cfg, 6.0 * std::sqrt(cfg.t) + M_PI);
  if ((cfg.R_min || cfg.R_max || cfg.R_step || !cfg.R_grid.empty()) &&
      grid.empty())
    throw ConfigError("isometry-curve: empty R grid");

  auto curve = iso::global_isometry_report(p, cfg.t, cfg.quad, grid);
  if (!cfg.routes.empty()) {
    for (const auto& name : iso::TubeCurve::route_names())
      if (std::find(cfg.routes.begin(), cfg.routes.end(), name) ==
          cfg.routes.end())
        curve.routes[name].assign(curve.R_values.size(), std::nullopt);
  }

  std::vector<std::string> comments;
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "isometry_curve.csv" : cfg.out;
  csv::write_file(out, csv::tube_curve_csv(curve, comments));
  log << "wrote " << out << "\n";

  CheckLog ck{log};
  const auto& euclid = curve.routes["euclid"];
  auto have = [&](const std::string& name, std::size_t i) {
    const auto& col = curve.routes[name];
    return i < col.size() && col[i].has_value();
  };
  for (std::size_t i = 0; i < curve.R_values.size(); ++i) {
    if (!have("euclid", i)) continue;
    const double e = *euclid[i];
    auto agree = [&](const std::string& name, double tol) {
      if (!have(name, i)) return;
      const double v = *curve.routes[name][i];
      std::ostringstream what;
      what << name << " vs euclid at R=" << csv::format_double(curve.R_values[i]);
      ck.note(std::abs(v - e) <= tol * (1.0 + std::abs(e)), what.str());
    };
    agree("geometric", 1e-7);
    agree("beta", 1e-12);
    if (curve.R_values[i] < 0.5 * M_PI) agree("direct", 1e-5);
    if (curve.R_values[i] <= 1.0) agree("series", 1e-7);
  }
  if (!euclid.empty() && euclid.back()) {
    const double norm = h3::plancherel_norm_sq(p, cfg.quad);
    const double tol = std::max(1e-8, 10.0 * cfg.quad.rel_tol);
    ck.note(std::abs(*euclid.back() - norm) <= tol * (1.0 + norm),
            "limit matches squared norm");
    bool monotone = true;
    for (std::size_t i = 1; i < euclid.size(); ++i)
      if (euclid[i] && euclid[i - 1] &&
          *euclid[i] < *euclid[i - 1] - 1e-12 * (1.0 + *euclid[i]))
        monotone = false;
    ck.note(monotone, "tube norm nondecreasing in R");
  }
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_inversion_curve(const RunConfig& cfg, std::ostream& log) {
  check_space(cfg);
  if (cfg.space != "h3")
    throw ConfigError("inversion-curve: transform pipeline is h3 only");
  const auto p = make_profile(cfg.profile);
  std::vector<double> grid = resolve_r_grid(cfg, 3.0);
  if (grid.empty())
    for (double r = 0.25; r <= 3.0 + 1e-12; r += 0.25) grid.push_back(r);
  const double r_limit = 30.0 * std::sqrt(cfg.t);
  grid.push_back(r_limit);

  const double f0 = h3::spherical_inverse(p, 0.0, cfg.quad);
  std::vector<std::vector<std::string>> rows;
  CheckLog ck{log};
  double spectral_last = 0.0;
  for (double R : grid) {
    const double sp =
        iso::inversion_at_base(p, cfg.t, R, iso::InversionRoute::Spectral,
                               cfg.quad);
    spectral_last = sp;
    std::vector<std::string> row = {csv::format_double(R),
                                    csv::format_double(sp), ""};
    if (R < M_PI) {
      const double dr = iso::inversion_at_base(
          p, cfg.t, R, iso::InversionRoute::Direct, cfg.quad);
      row[2] = csv::format_double(dr);
      std::ostringstream what;
      what << "direct vs spectral at R=" << csv::format_double(R);
      ck.note(std::abs(dr - sp) <= 1e-6 * (1.0 + std::abs(sp)), what.str());
    }
    rows.push_back(std::move(row));
  }
  ck.note(std::abs(spectral_last - f0) <= 1e-5 * (1.0 + std::abs(f0)),
          "limit recovers the base-point value");

  std::vector<std::string> comments = {
      "t = " + csv::format_double(cfg.t), "profile = " + cfg.profile,
      "f_x0 = " + csv::format_double(f0)};
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "inversion_curve.csv" : cfg.out;
  csv::write_file(out,
                  csv::table_csv(comments, {"R", "spectral", "direct"}, rows));
  log << "wrote " << out << "\n";
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_cancellation_demo(const RunConfig& cfg, std::ostream& log) {
  check_space(cfg);
  if (cfg.space != "h3")
    throw ConfigError("cancellation-demo: requires the h3 preset");
  const auto p = make_profile(cfg.profile);

  std::vector<double> grid;
  if (cfg.s_min || cfg.s_max || cfg.s_step) {
    const double lo = cfg.s_min.value_or(0.2);
    const double hi = cfg.s_max.value_or(M_PI - 1e-3);
    const double st = cfg.s_step.value_or(0.1);
    if (!(st > 0.0)) throw ConfigError("cancellation-demo: s_step <= 0");
    for (double s = lo; s <= hi + 1e-12; s += st) grid.push_back(s);
  } else {
    for (double s = 0.2; s <= 3.1; s += 0.1) grid.push_back(s);
    grid.push_back(0.5 * M_PI);
    grid.push_back(2.8);
    grid.push_back(M_PI - 1e-2);
    grid.push_back(M_PI - 1e-3);
    std::sort(grid.begin(), grid.end());
  }
  bool covers_singular = false;
  for (double s : grid)
    if (s > 0.5 * M_PI && s < M_PI) covers_singular = true;
  if (!covers_singular)
    throw ConfigError(
        "cancellation-demo: s grid must enter the singular range (pi/2, pi)");

  std::vector<std::vector<std::string>> rows;
  std::vector<iso::ShellSample> samples;
  for (double s : grid) {
    if (!(s > 0.0) || s >= M_PI) continue;
    const auto sm = iso::shell_integrand(p, cfg.t, s, cfg.quad);
    samples.push_back(sm);
    rows.push_back({csv::format_double(sm.s), csv::format_double(sm.raw),
                    csv::format_double(sm.times_sin),
                    csv::format_double(sm.psi_route)});
  }

  CheckLog ck{log};
  const double limit = iso::shell_times_sin_limit(p, cfg.t, cfg.quad);
  const auto& last = samples.back();
  ck.note(std::abs(last.times_sin - limit) <= 1e-2 * std::abs(limit),
          "shell * sin stable through the singular radius");
  bool monotone = true;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].s > 2.8 && samples[i - 1].s > 2.8 &&
        samples[i].raw <= samples[i - 1].raw)
      monotone = false;
  ck.note(monotone, "raw shell grows monotonically past s = 2.8");
  double at_half = 0.0;
  for (const auto& sm : samples)
    if (std::abs(sm.s - 0.5 * M_PI) < 1e-9) at_half = sm.raw;
  if (at_half > 0.0) {
    std::ostringstream what;
    what << "raw shell growth factor " << last.raw / at_half;
    ck.note(last.raw / at_half >= 1e3, what.str());
  }

  std::vector<std::string> comments = {
      "t = " + csv::format_double(cfg.t), "profile = " + cfg.profile,
      "shell_times_sin_limit = " + csv::format_double(limit)};
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "cancellation_demo.csv" : cfg.out;
  csv::write_file(
      out, csv::table_csv(comments,
                          {"s", "shell_raw", "shell_times_sin",
                           "psi_route_shell"},
                          rows));
  log << "wrote " << out << "\n";
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_kos_compare(const RunConfig& cfg, std::ostream& log) {
  check_space(cfg);
  if (cfg.space != "h3")
    throw ConfigError("kos-compare: requires the h3 preset");
  std::vector<std::string> specs;
  if (cfg.profile_explicit)
    specs.push_back(cfg.profile);
  else
    specs = {"heat:0.3", "band:2"};

  CheckLog ck{log};
  std::vector<std::vector<std::string>> rows;
  for (const auto& spec : specs) {
    const auto p = make_profile(spec);
    const double k = kos::kos_isometry(p, cfg.t, cfg.quad);
    const double n = h3::plancherel_norm_sq(p, cfg.quad);
    const double rel = std::abs(k - n) / (1.0 + std::abs(n));
    rows.push_back({spec, csv::format_double(k), csv::format_double(n),
                    csv::format_double(rel)});
    std::ostringstream what;
    what << "kos == plancherel rel err <= 1e-5 (" << spec << ", rel " << rel
         << ")";
    ck.note(rel <= 1e-5, what.str());
  }
  std::vector<std::string> comments = {"t = " + csv::format_double(cfg.t)};
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "kos_compare.csv" : cfg.out;
  csv::write_file(
      out, csv::table_csv(comments, {"profile", "kos", "plancherel", "rel_err"},
                          rows));
  log << "wrote " << out << "\n";
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_euclid_baseline(const RunConfig& cfg, std::ostream& log) {
  const double t = cfg.t;
  auto gauss = [](double u) { return std::exp(-0.5 * u * u); };
  const auto f = e1d::SampledLine::from(11.0, 2201, gauss);
  const double bx = std::sqrt((1.0 + t) * 32.0) + 0.5;
  const double by = std::sqrt(t * (1.0 + t) * 32.0) + 0.5;

  CheckLog ck{log};
  const auto pair = e1d::isometry_check_1d(f, t, bx, by);
  ck.note(std::abs(pair.second - pair.first) <= 1e-6 * (1.0 + pair.first),
          "squared-norm identity");
  const double fx = e1d::inversion_check_1d(f, t, 0.3);
  ck.note(std::abs(fx - gauss(0.3)) <= 1e-6 * (1.0 + gauss(0.3)),
          "inversion recovers f(0.3)");

  const auto slice = e1d::squared_slice(f, t, 0.3, by, 101);
  std::vector<std::vector<std::string>> rows;
  for (const auto& [y, v] : slice)
    rows.push_back({csv::format_double(y), csv::format_double(v)});
  std::vector<std::string> comments = {"t = " + csv::format_double(t),
                                       "x0 = 0.3"};
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "euclid_baseline.csv" : cfg.out;
  csv::write_file(out, csv::table_csv(comments, {"y", "absF2"}, rows));
  log << "wrote " << out << "\n";
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_impossibility(const RunConfig& cfg, std::ostream& log) {
  check_space(cfg);
  if (cfg.space != "h3")
    throw ConfigError("impossibility: requires the h3 preset");
  if (!(cfg.xi_step > 0.0) || !(cfg.xi_max >= cfg.xi_min))
    throw ConfigError("impossibility: bad xi grid");
  std::vector<double> grid;
  for (double xi = cfg.xi_min; xi <= cfg.xi_max + 1e-9; xi += cfg.xi_step)
    grid.push_back(xi);

  const auto table = iso::no_invariant_density_demo(
      cfg.t, iso::truncated_alpha_density(cfg.t), grid, cfg.quad);

  CheckLog ck{log};
  bool bounded = true;
  for (std::size_t i = 0; i < table.xi.size(); ++i)
    if (table.bound_stat[i] > table.mass_constant * (1.0 + 1e-9))
      bounded = false;
  ck.note(bounded, "pairing bounded by M e^{pi xi} / xi");
  if (table.xi.back() >= 12.0) {
    std::ostringstream what;
    what << "ratio at xi=" << table.xi.back() << " is "
         << table.ratio.back();
    ck.note(table.ratio.back() < 1e-10, what.str());
  }

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < table.xi.size(); ++i)
    rows.push_back({csv::format_double(table.xi[i]),
                    csv::format_double(table.lhs[i]),
                    csv::format_double(table.rhs[i]),
                    csv::format_double(table.ratio[i]),
                    csv::format_double(table.bound_stat[i])});
  std::vector<std::string> comments = {
      "t = " + csv::format_double(cfg.t),
      "mass_constant = " + csv::format_double(table.mass_constant)};
  if (cfg.timestamps) comments.push_back(timestamp_comment());
  const std::string out = cfg.out.empty() ? "impossibility.csv" : cfg.out;
  csv::write_file(
      out, csv::table_csv(comments, {"xi", "lhs", "rhs", "ratio", "bound_stat"},
                          rows));
  log << "wrote " << out << "\n";
  return ck.all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_selftest(std::ostream& log) {
  const auto results = run_acceptance(&log);
  for (const auto& r : results)
    if (!r.pass) return kExitCheckFailure;
  log << "all criteria passed\n";
  return kExitPass;
}

int run_main(int argc, const char* const* argv, std::ostream& log) {
  CLI::App app{"tube-integral transform verification bench"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string flag_profile, flag_space, flag_out;
  double flag_t = 0.0, flag_tol = 0.0;
  bool flag_timestamps = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--out", flag_out, "output CSV path");
    sub->add_option("--t", flag_t, "heat time");
    sub->add_option("--profile", flag_profile, "heat:<s> or band:<a>");
    sub->add_option("--space", flag_space, "root-system preset");
    sub->add_option("--tol", flag_tol, "relative quadrature tolerance");
    sub->add_flag("--timestamps", flag_timestamps,
                  "timestamp comment in CSV output");
  };

  std::vector<std::pair<std::string, int (*)(const RunConfig&, std::ostream&)>>
      cmds = {{"isometry-curve", cmd_isometry_curve},
              {"inversion-curve", cmd_inversion_curve},
              {"cancellation-demo", cmd_cancellation_demo},
              {"kos-compare", cmd_kos_compare},
              {"euclid-baseline", cmd_euclid_baseline},
              {"impossibility", cmd_impossibility}};
  for (auto& [name, fn] : cmds) add_common(app.add_subcommand(name));
  app.add_subcommand("selftest", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream os;
      const int code = app.exit(e, os, os);
      log << os.str();
      return code;
    }
    log << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    CLI::App* active = app.get_subcommands().front();
    if (active->count("--t")) {
      cfg.t = flag_t;
      if (!(cfg.t > 0.0)) throw ConfigError("--t must be positive");
    }
    if (active->count("--profile")) {
      cfg.profile = flag_profile;
      cfg.profile_explicit = true;
    }
    if (active->count("--space")) cfg.space = flag_space;
    if (active->count("--out")) cfg.out = flag_out;
    if (active->count("--tol")) {
      if (!(flag_tol > 0.0)) throw ConfigError("--tol must be positive");
      cfg.quad.rel_tol = flag_tol;
      cfg.quad.abs_tol = 0.1 * flag_tol;
    }
    if (active->count("--timestamps")) cfg.timestamps = true;
    cfg.quad.validate();

    const std::string name = active->get_name();
    if (name == "selftest") return cmd_selftest(log);
    for (auto& [cmd_name, fn] : cmds)
      if (name == cmd_name) return fn(cfg, log);
    throw ConfigError("unknown command: " + name);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace sbtube::cli
