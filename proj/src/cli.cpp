#include "bosecount/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bosecount/asymptotics.hpp"
#include "bosecount/errors.hpp"
#include "bosecount/exact.hpp"
#include "bosecount/gpf.hpp"
#include "bosecount/spectrum.hpp"
#include "json.hpp"

#ifndef BOSECOUNT_VERSION
#define BOSECOUNT_VERSION "0.0.0"
#endif

namespace bosecount::cli {

using nlohmann::json;

namespace {

struct Pair {
  const char* name;
  Command cmd;
};

constexpr Pair kCommands[] = {
    {"count", Command::Count},         {"joint", Command::Joint},
    {"asymptote", Command::Asymptote}, {"compare", Command::Compare},
    {"contour", Command::Contour},     {"condition-h", Command::ConditionH},
    {"residual", Command::Residual},   {"report", Command::Report},
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects check outcomes for the exit status.
struct Checks {
  std::vector<std::string> warnings;
  std::vector<std::string> failures;

  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
};

ZetaProfile load_profile_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile file: " + path);
  json j;
  try {
    in >> j;
    const int n = j.at("n").get<int>();
    auto a = j.at("A").get<std::vector<double>>();
    return make_profile(n, std::move(a), j.at("Z0").get<double>(), j.at("Zprime0").get<double>());
  } catch (const json::exception& e) {
    throw Error("bad profile file " + path + ": " + e.what());
  }
}

std::optional<ZetaProfile> resolve_profile(const RunConfig& cfg, const SpectrumModel& model) {
  if (!cfg.profile_path.empty()) {
    auto p = load_profile_json(cfg.profile_path);
    if (p.n != model.dimension()) {
      throw DomainError("profile dimension n = " + std::to_string(p.n) +
                        " does not match model dimension " + std::to_string(model.dimension()));
    }
    return p;
  }
  if (model.kind() == ModelKind::Custom) return std::nullopt;
  return zeta_profile(model);
}

ZetaProfile require_profile(const RunConfig& cfg, const SpectrumModel& model) {
  auto p = resolve_profile(cfg, model);
  if (!p) {
    throw ProfileUnavailable("command '" + to_string(cfg.command) +
                             "' needs a zeta profile; custom models require --profile <json>");
  }
  return *p;
}

std::vector<std::int64_t> energies_or_emax(const RunConfig& cfg) {
  if (!cfg.energies.empty()) return cfg.energies;
  return {cfg.e_max};
}

json big_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json profile_json(const ZetaProfile& p) {
  return {{"n", p.n},       {"A", p.A},           {"K", p.K},
          {"Z0", p.Z0},     {"Zprime0", p.Zprime0}, {"detP", p.detP},
          {"volSigma", p.volSigma}, {"Bn", p.Bn}};
}

json stat_json(const std::vector<StatPoint>& pts) {
  json a = json::array();
  for (const auto& s : pts) a.push_back({{"E", s.E}, {"stat", s.stat}});
  return a;
}

void check_saddle(const ZetaProfile& p, const SaddleData& s, const Tolerances& tol, Checks& checks) {
  const double scale = s.E * std::pow(s.x_E, p.n + 1);
  if (s.residual > tol.saddle_rel * scale) {
    checks.fail("saddle residual " + fmt(s.residual) + " exceeds tolerance at E = " + fmt(s.E));
  }
  double psi = 0.0;
  for (int j = 0; j < p.n; ++j) psi += p.K[j] * std::pow(s.x_E, -(p.n - j));
  const double rhs = s.E * s.x_E + psi;
  if (std::fabs(s.exponent - rhs) > tol.identity_rel * std::fabs(rhs)) {
    checks.fail("saddle identity violated at E = " + fmt(s.E));
  }
  if (!s.eta_positive) {
    checks.warn("eta <= 0 at E = " + fmt(s.E) + " (below the large-E threshold)");
  } else if (s.E >= 1e3) {
    const double gap = std::fabs(s.eta / s.m_E - (p.n + 1));
    if (gap > 5.0 * std::pow(s.m_E, -1.0 / p.n)) {
      checks.warn("eta / m_E far from n + 1 at E = " + fmt(s.E));
    }
  }
}

void cmd_count(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out) {
  const auto t = count_states(model, cfg.e_max);
  if (cfg.format == Format::Csv) {
    write_csv(out, t);
  } else {
    out << json{{"model", model.name()}, {"e_max", t.e_max}, {"omega", big_array(t.omega)}}.dump(2)
        << '\n';
  }
}

void cmd_joint(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
               Checks& checks) {
  const std::int64_t complete = std::max<std::int64_t>(1, cfg.e_max / model.lambda_min());
  const std::int64_t n_max = cfg.n_max.value_or(complete);
  const auto joint = count_joint(model, cfg.e_max, n_max);
  if (n_max >= complete) {
    const auto total = count_states(model, cfg.e_max);
    for (std::int64_t e = 1; e <= cfg.e_max; ++e) {
      BigInt s = 0;
      for (std::int64_t nn = 1; nn <= n_max; ++nn) s += joint.at(nn, e);
      if (s != total.omega[e]) {
        checks.fail("sum_N Omega(N, E) != Omega(E) at E = " + std::to_string(e));
        break;
      }
    }
  }
  if (cfg.mu) {
    const auto w = fugacity_weighted(joint, *cfg.mu);
    if (cfg.format == Format::Csv) {
      out << "E,omega_mu\n";
      for (std::size_t e = 0; e < w.size(); ++e) out << e << ',' << fmt(w[e]) << '\n';
    } else {
      out << json{{"model", model.name()}, {"mu", *cfg.mu}, {"omega_mu", w}}.dump(2) << '\n';
    }
    return;
  }
  if (cfg.format == Format::Csv) {
    write_csv(out, joint);
  } else {
    json rows = json::array();
    for (std::int64_t nn = 1; nn <= n_max; ++nn) {
      std::vector<BigInt> row(joint.cells.begin() + (nn - 1) * (cfg.e_max + 1),
                              joint.cells.begin() + nn * (cfg.e_max + 1));
      rows.push_back(big_array(row));
    }
    out << json{{"model", model.name()}, {"e_max", cfg.e_max}, {"n_max", n_max}, {"omega", rows}}
               .dump(2)
        << '\n';
  }
}

void cmd_asymptote(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                   Checks& checks) {
  const auto profile = require_profile(cfg, model);
  struct Row {
    AsymptoticResult r;
    SaddleData s;
  };
  std::vector<Row> rows;
  for (const auto e : energies_or_emax(cfg)) {
    const double ed = static_cast<double>(e);
    const auto s = solve_saddle(profile, ed);
    check_saddle(profile, s, cfg.tol, checks);
    rows.push_back({main_asymptotic(profile, ed), s});
    if (profile.n == 2) rows.push_back({surface_asymptotic_n2(profile, ed), s});
    if (model.kind() == ModelKind::Partitions) rows.push_back({hardy_ramanujan(ed), s});
    AsymptoticResult ub;
    ub.E = ed;
    ub.estimate_log = upper_bound_log(profile, ed);
    ub.formula_id = FormulaId::UpperBound;
    ub.exponent = ub.estimate_log;
    ub.C = std::nan("");
    ub.kappa = std::nan("");
    rows.push_back({ub, s});
  }
  if (cfg.format == Format::Csv) {
    out << "E,formula_id,estimate_log,C,kappa,exponent,x_E,eta\n";
    for (const auto& [r, s] : rows) {
      out << static_cast<std::int64_t>(r.E) << ',' << to_string(r.formula_id) << ','
          << fmt(r.estimate_log) << ',' << fmt(r.C) << ',' << fmt(r.kappa) << ','
          << fmt(r.exponent) << ',' << fmt(s.x_E) << ',' << fmt(s.eta) << '\n';
    }
  } else {
    json a = json::array();
    for (const auto& [r, s] : rows) {
      a.push_back({{"E", static_cast<std::int64_t>(r.E)},
                   {"formula_id", to_string(r.formula_id)},
                   {"estimate_log", r.estimate_log},
                   {"C", r.C},
                   {"kappa", r.kappa},
                   {"exponent", r.exponent},
                   {"x_E", s.x_E},
                   {"eta", s.eta}});
    }
    out << json{{"model", model.name()}, {"rows", a}}.dump(2) << '\n';
  }
}

json comparison_json(const std::vector<ComparisonRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    a.push_back({{"E", r.E},
                 {"ln_exact", r.ln_exact},
                 {"ln_estimate", r.ln_estimate},
                 {"ratio", r.ratio},
                 {"formula_id", to_string(r.formula_id)}});
  }
  return a;
}

void cmd_compare(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                 Checks& checks) {
  const auto profile = require_profile(cfg, model);
  const auto energies = energies_or_emax(cfg);
  const auto table = count_states(model, energies.back());
  for (const auto e : energies) check_saddle(profile, solve_saddle(profile, e), cfg.tol, checks);
  const auto rows = compare_with_exact(table, profile, energies);
  if (cfg.format == Format::Csv) {
    write_comparison_csv(out, rows);
  } else {
    out << json{{"model", model.name()}, {"rows", comparison_json(rows)}}.dump(2) << '\n';
  }
}

void cmd_contour(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                 Checks& checks) {
  std::vector<std::int64_t> energies = cfg.energies;
  if (energies.empty()) {
    for (std::int64_t e = 0; e <= cfg.e_max; ++e) energies.push_back(e);
  }
  const auto table = count_states(model, energies.back());
  json a = json::array();
  if (cfg.format == Format::Csv) out << "E,omega,estimate,rel_error,imag_rel,quad_points\n";
  for (const auto e : energies) {
    const double x = cfg.contour_x > 0.0 ? cfg.contour_x : real_saddle(model, e);
    const auto est = contour_extract(model, e, x, alias_safe_nodes(model, e, x));
    const double exact = table.omega[e].get_d();
    const double rel = std::fabs(est.value - exact) / std::max(exact, 1.0);
    if (rel > cfg.tol.contour_rel) {
      checks.fail("contour error " + fmt(rel) + " at E = " + std::to_string(e));
    }
    if (cfg.format == Format::Csv) {
      out << e << ',' << table.omega[e].get_str() << ',' << fmt(est.value) << ',' << fmt(rel) << ','
          << fmt(est.imag_rel) << ',' << est.quad_points << '\n';
    } else {
      a.push_back({{"E", e},
                   {"omega", table.omega[e].get_str()},
                   {"estimate", est.value},
                   {"rel_error", rel},
                   {"imag_rel", est.imag_rel},
                   {"quad_points", est.quad_points}});
    }
  }
  if (cfg.format == Format::Json) out << json{{"model", model.name()}, {"rows", a}}.dump(2) << '\n';
}

json grid_json(const std::vector<GridSample>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    a.push_back({{"x", r.x},
                 {"y", r.y},
                 {"re_logG", r.logG.real()},
                 {"im_logG", r.logG.imag()},
                 {"re_J", r.J.real()},
                 {"im_J", r.J.imag()},
                 {"margin", r.margin}});
  }
  return a;
}

void emit_grid(const RunConfig& cfg, const SpectrumModel& model,
               const std::vector<GridSample>& rows, std::ostream& out) {
  if (cfg.format == Format::Csv) {
    write_grid_csv(out, rows);
  } else {
    out << json{{"model", model.name()}, {"rows", grid_json(rows)}}.dump(2) << '\n';
  }
}

void cmd_condition_h(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                     Checks& checks) {
  const auto profile = resolve_profile(cfg, model);
  const auto rows = condition_h_grid(model, profile ? &*profile : nullptr);
  for (const auto& r : rows) {
    if (!(r.margin < 0.0)) {
      checks.warn("condition (H) margin " + fmt(r.margin) + " >= 0 at x = " + fmt(r.x) +
                  ", y = " + fmt(r.y));
      break;
    }
  }
  emit_grid(cfg, model, rows, out);
}

void cmd_residual(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                  Checks& checks) {
  const auto profile = require_profile(cfg, model);
  const auto rows = residual_sweep(model, profile);
  for (const auto& r : rows) {
    if (!std::isfinite(std::abs(r.J))) {
      checks.fail("non-finite residual J at x = " + fmt(r.x));
      break;
    }
  }
  emit_grid(cfg, model, rows, out);
}

void cmd_report(const RunConfig& cfg, const SpectrumModel& model, std::ostream& out,
                Checks& checks) {
  const auto table = count_states(model, cfg.e_max);
  const auto cum = cumulative(table);
  json doc;
  doc["tool"] = "bosecount";
  doc["version"] = version();
  doc["model"] = model.name();
  doc["e_max"] = cfg.e_max;
  doc["tables"] = {{"omega", big_array(table.omega)}, {"D", big_array(cum.d)}};
  const auto profile = resolve_profile(cfg, model);
  if (profile) {
    doc["profile"] = profile_json(*profile);
    doc["statistics"] = {{"Bn", profile->Bn},
                         {"knopp", stat_json(knopp_statistic(table, *profile))},
                         {"weyl_average", stat_json(weyl_average_statistic(cum, *profile))}};
    if (!cfg.energies.empty()) {
      for (const auto e : cfg.energies) {
        check_saddle(*profile, solve_saddle(*profile, e), cfg.tol, checks);
      }
      doc["comparison"] = comparison_json(compare_with_exact(table, *profile, cfg.energies));
    }
  } else {
    doc["profile"] = nullptr;
    checks.warn("no zeta profile for custom model; statistics omitted");
  }
  out << doc.dump(2) << '\n';
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& p : kCommands) {
    if (name == p.name) return p.cmd;
  }
  throw DomainError("unknown command: " + name);
}

std::string to_string(Command c) {
  for (const auto& p : kCommands) {
    if (p.cmd == c) return p.name;
  }
  return "unknown";
}

std::vector<std::int64_t> parse_energy_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad energy list entry '" + item + "'");
    }
    if (used != item.size()) throw DomainError("bad energy list entry '" + item + "'");
    if (v < 1) throw DomainError("energies must be positive, got " + item);
    if (!out.empty() && v <= out.back()) {
      throw DomainError("energies must be strictly increasing");
    }
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty energy list");
  return out;
}

void validate(const RunConfig& config) {
  if (config.e_max < 0) throw DomainError("e_max must be >= 0");
  for (std::size_t i = 0; i < config.energies.size(); ++i) {
    if (config.energies[i] < 1) throw DomainError("energies must be positive");
    if (i > 0 && config.energies[i] <= config.energies[i - 1]) {
      throw DomainError("energies must be strictly increasing");
    }
  }
  if (config.n_max && *config.n_max < 1) throw DomainError("n_max must be >= 1");
  if (config.mu && !(*config.mu <= 0.0)) throw DomainError("mu must be <= 0");
  if (config.contour_x < 0.0) throw DomainError("contour x must be > 0");
  const bool needs_e = config.command == Command::Asymptote || config.command == Command::Compare;
  if (needs_e && config.energies.empty() && config.e_max < 1) {
    throw DomainError("command needs a positive energy (--energies or --emax)");
  }
}

void apply_thread_env() {
  const char* env = std::getenv("BOSECOUNT_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
}

std::string version() { return BOSECOUNT_VERSION; }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buf;
  Checks checks;
  try {
    validate(config);
    const auto model = parse_model_spec(config.model);
    switch (config.command) {
      case Command::Count: cmd_count(config, model, buf); break;
      case Command::Joint: cmd_joint(config, model, buf, checks); break;
      case Command::Asymptote: cmd_asymptote(config, model, buf, checks); break;
      case Command::Compare: cmd_compare(config, model, buf, checks); break;
      case Command::Contour: cmd_contour(config, model, buf, checks); break;
      case Command::ConditionH: cmd_condition_h(config, model, buf, checks); break;
      case Command::Residual: cmd_residual(config, model, buf, checks); break;
      case Command::Report: cmd_report(config, model, buf, checks); break;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (config.output.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(config.output, std::ios::binary);
    f << buf.str();
    f.close();
    if (!f) {
      err << "error: cannot write " << config.output << '\n';
      return 2;
    }
  }
  for (const auto& w : checks.warnings) err << "warning: " << w << '\n';
  for (const auto& f : checks.failures) err << "check failed: " << f << '\n';
  if (!checks.failures.empty()) return 1;
  if (config.strict && !checks.warnings.empty()) return 1;
  return 0;
}

}  // namespace bosecount::cli
