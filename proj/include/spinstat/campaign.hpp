#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinstat/geometry.hpp"
#include "spinstat/spectral3d.hpp"

namespace spinstat {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class Mode { verify2d, verify3d, lemma_tables, bound_states, braid_phases, flow_crosscheck };

inline const char* str(Mode m) {
  switch (m) {
    case Mode::verify2d: return "verify-2d";
    case Mode::verify3d: return "verify-3d";
    case Mode::lemma_tables: return "lemma-tables";
    case Mode::bound_states: return "bound-states";
    case Mode::braid_phases: return "braid-phases";
    case Mode::flow_crosscheck: return "flow-crosscheck";
  }
  return "?";
}

inline Mode parse_mode(const std::string& name) {
  for (Mode m : {Mode::verify2d, Mode::verify3d, Mode::lemma_tables, Mode::bound_states,
                 Mode::braid_phases, Mode::flow_crosscheck})
    if (name == str(m)) return m;
  throw ConfigError("unknown mode: " + name);
}

/// Inclusive rational range.
inline std::vector<Rational> rational_range(const Rational& from, const Rational& to,
                                            const Rational& step) {
  if (step <= Rational(0)) throw ConfigError("grid step must be positive");
  std::vector<Rational> out;
  for (Rational v = from; v <= to; v += step) out.push_back(v);
  return out;
}

/// Statistics-phase exponents p/q in lowest terms with q <= max_denominator,
/// covering the whole phase circle.
inline std::vector<Rational> kappa_exponents_up_to(int max_denominator) {
  std::vector<Rational> out;
  for (int q = 1; q <= max_denominator; ++q)
    for (int p = 0; p < 2 * q; ++p) {
      if (std::gcd(p, q) != 1 && p != 0) continue;
      if (p == 0 && q != 1) continue;
      out.emplace_back(p, q);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FlowOptions {
  int states = 20;
  int angles = 64;
  int grid = 512;
  int order = 16;
};

struct CampaignConfig {
  Mode mode = Mode::verify2d;
  std::vector<Rational> lambda_grid;
  std::vector<Rational> sigma_grid;       // values in (1/2)Z
  std::vector<Rational> theta_grid;       // theta/pi
  std::vector<int> s_grid;                // involution signs
  int M = 8;
  int l_max = 6;
  int n_max = 10;
  std::vector<Rational> kappa_exponents;
  FlowOptions flow;
  ResidualOptions residuals;
  std::uint64_t seed = 20260810ULL;
  int workers = 1;
  double tol_spectral = tol::spectral;
  double tol_flow = tol::flow;
  int mutate_condition = 0;  // lemma-tables negative-control hook: negate c1..c3
};

inline CampaignConfig default_config(Mode mode) {
  CampaignConfig c;
  c.mode = mode;
  switch (mode) {
    case Mode::verify2d:
      c.lambda_grid = rational_range(Rational(-4), Rational(4), Rational(1, 4));
      c.sigma_grid = rational_range(Rational(-2), Rational(2), Rational(1, 2));
      c.theta_grid = {Rational(0), Rational(1)};
      break;
    case Mode::verify3d:
      c.lambda_grid = rational_range(Rational(-4), Rational(4), Rational(1));
      c.sigma_grid = rational_range(Rational(-2), Rational(2), Rational(1, 2));
      c.s_grid = {+1, -1};
      break;
    case Mode::lemma_tables:
      c.lambda_grid = rational_range(Rational(-4), Rational(4), Rational(1, 4));
      c.sigma_grid = rational_range(Rational(-2), Rational(2), Rational(1, 2));
      c.s_grid = {+1, -1};
      break;
    case Mode::bound_states:
      c.l_max = 6;
      break;
    case Mode::braid_phases:
      c.n_max = 10;
      c.kappa_exponents = kappa_exponents_up_to(8);
      break;
    case Mode::flow_crosscheck:
      c.theta_grid = {Rational(0), Rational(1)};
      break;
  }
  return c;
}

namespace detail {

inline std::vector<Rational> parse_grid(const Json& node) {
  if (node.is_array()) {
    std::vector<Rational> out;
    for (const auto& v : node)
      out.push_back(v.is_string() ? Rational::parse(v.get<std::string>())
                                  : Rational(v.get<long long>()));
    std::sort(out.begin(), out.end());
    return out;
  }
  if (node.is_object())
    return rational_range(Rational::parse(node.at("from").get<std::string>()),
                          Rational::parse(node.at("to").get<std::string>()),
                          Rational::parse(node.at("step").get<std::string>()));
  throw ConfigError("grid must be an array or a {from,to,step} object");
}

inline Json grid_to_json(const std::vector<Rational>& grid) {
  Json out = Json::array();
  for (const auto& v : grid) out.push_back(v.str());
  return out;
}

}  // namespace detail

/// Parses a campaign configuration file; unspecified fields keep the
/// per-mode defaults. Throws ConfigError on malformed input.
inline CampaignConfig parse_config(const Json& j) {
  if (!j.contains("mode")) throw ConfigError("config is missing \"mode\"");
  CampaignConfig c = default_config(parse_mode(j.at("mode").get<std::string>()));
  try {
    if (j.contains("lambda")) c.lambda_grid = detail::parse_grid(j.at("lambda"));
    if (j.contains("sigma")) c.sigma_grid = detail::parse_grid(j.at("sigma"));
    if (j.contains("theta_over_pi")) c.theta_grid = detail::parse_grid(j.at("theta_over_pi"));
    if (j.contains("s")) c.s_grid = j.at("s").get<std::vector<int>>();
    if (j.contains("M")) c.M = j.at("M").get<int>();
    if (j.contains("l_max")) c.l_max = j.at("l_max").get<int>();
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<int>();
    if (j.contains("kappa")) {
      const auto& node = j.at("kappa");
      c.kappa_exponents = node.is_object()
                              ? kappa_exponents_up_to(node.at("max_denominator").get<int>())
                              : detail::parse_grid(node);
    }
    if (j.contains("flow")) {
      const auto& f = j.at("flow");
      if (f.contains("states")) c.flow.states = f.at("states").get<int>();
      if (f.contains("angles")) c.flow.angles = f.at("angles").get<int>();
      if (f.contains("grid")) c.flow.grid = f.at("grid").get<int>();
      if (f.contains("order")) c.flow.order = f.at("order").get<int>();
    }
    if (j.contains("residuals")) {
      const auto& r = j.at("residuals");
      if (r.contains("enabled")) c.residuals.enabled = r.at("enabled").get<bool>();
      if (r.contains("states")) c.residuals.states = r.at("states").get<int>();
      if (r.contains("order")) c.residuals.order = r.at("order").get<int>();
      if (r.contains("grid")) c.residuals.grid = r.at("grid").get<int>();
      if (r.contains("angles")) c.residuals.angles = r.at("angles").get<int>();
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (t.contains("spectral")) c.tol_spectral = t.at("spectral").get<double>();
      if (t.contains("flow")) c.tol_flow = t.at("flow").get<double>();
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("mutate_condition")) c.mutate_condition = j.at("mutate_condition").get<int>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

inline void validate_config(const CampaignConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(c.M >= 1, "M must be at least 1");
  require(c.workers >= 1, "workers must be at least 1");
  require(c.mutate_condition >= 0 && c.mutate_condition <= 3, "mutate_condition must be 0..3");
  for (const auto& sg : c.sigma_grid)
    require(sg.den() <= 2, "sigma grid must lie in (1/2)Z, got " + sg.str());
  switch (c.mode) {
    case Mode::verify2d:
      require(!c.lambda_grid.empty() && !c.sigma_grid.empty() && !c.theta_grid.empty(),
              "verify-2d needs lambda, sigma and theta grids");
      for (const auto& t : c.theta_grid)
        require(ExtensionBC(t).involutive(), "verify-2d needs theta in {0, pi}; got theta/pi = " + t.str());
      break;
    case Mode::verify3d:
      require(!c.lambda_grid.empty() && !c.sigma_grid.empty() && !c.s_grid.empty(),
              "verify-3d needs lambda, sigma and s grids");
      for (const auto& l : c.lambda_grid)
        require(l.is_integer(), "verify-3d needs integer lambda; got " + l.str());
      break;
    case Mode::lemma_tables:
      require(!c.lambda_grid.empty() && !c.sigma_grid.empty() && !c.s_grid.empty(),
              "lemma-tables needs lambda, sigma and sign grids");
      break;
    case Mode::bound_states:
      require(c.l_max >= 0, "l_max must be nonnegative");
      break;
    case Mode::braid_phases:
      require(c.n_max >= 1 && !c.kappa_exponents.empty(),
              "braid-phases needs n_max >= 1 and a kappa grid");
      break;
    case Mode::flow_crosscheck:
      require(!c.theta_grid.empty(), "flow-crosscheck needs a theta grid");
      for (const auto& t : c.theta_grid)
        require(ExtensionBC(t).involutive(), "flow-crosscheck needs theta in {0, pi}");
      require(c.flow.order >= 4, "flow cross-checks need order M >= 4");
      require(c.flow.grid >= 2 * c.flow.order + 2, "flow grid is below the alias-free bound");
      require((4LL * c.flow.grid) % c.flow.angles == 0,
              "flow angles must land on the transport grid (4*grid divisible by angles)");
      break;
  }
}

inline Json config_echo(const CampaignConfig& c) {
  Json j;
  j["mode"] = str(c.mode);
  switch (c.mode) {
    case Mode::verify2d:
      j["lambda"] = detail::grid_to_json(c.lambda_grid);
      j["sigma"] = detail::grid_to_json(c.sigma_grid);
      j["theta_over_pi"] = detail::grid_to_json(c.theta_grid);
      j["M"] = c.M;
      break;
    case Mode::verify3d:
      j["lambda"] = detail::grid_to_json(c.lambda_grid);
      j["sigma"] = detail::grid_to_json(c.sigma_grid);
      j["s"] = c.s_grid;
      j["M"] = c.M;
      break;
    case Mode::lemma_tables:
      j["lambda"] = detail::grid_to_json(c.lambda_grid);
      j["sigma"] = detail::grid_to_json(c.sigma_grid);
      j["s"] = c.s_grid;
      if (c.mutate_condition != 0) j["mutate_condition"] = c.mutate_condition;
      break;
    case Mode::bound_states:
      j["l_max"] = c.l_max;
      break;
    case Mode::braid_phases:
      j["n_max"] = c.n_max;
      j["kappa"] = detail::grid_to_json(c.kappa_exponents);
      break;
    case Mode::flow_crosscheck:
      j["theta_over_pi"] = detail::grid_to_json(c.theta_grid);
      j["flow"] = Json{{"states", c.flow.states},
                       {"angles", c.flow.angles},
                       {"grid", c.flow.grid},
                       {"order", c.flow.order}};
      break;
  }
  if (c.mode == Mode::verify2d || c.mode == Mode::verify3d)
    j["residuals"] = Json{{"enabled", c.residuals.enabled},
                          {"states", c.residuals.states},
                          {"order", c.residuals.order},
                          {"grid", c.residuals.grid},
                          {"angles", c.residuals.angles}};
  return j;
}

// ---------------------------------------------------------------------------
// Campaign execution
// ---------------------------------------------------------------------------

struct CampaignResult {
  Json report;
  int total = 0;
  int failed = 0;
};

namespace detail {

using Item = std::function<std::pair<Json, bool>()>;

inline std::pair<Json, bool> finalize(VerificationReport rep,
                                      const std::vector<std::string>& required) {
  bool ok = true;
  for (const auto& key : required) {
    const auto it = rep.verdicts.find(key);
    ok = ok && it != rep.verdicts.end() && it->second;
  }
  Json row = rep.to_json();
  row["ok"] = ok;
  return {std::move(row), ok};
}

inline void append_verify2d_items(const CampaignConfig& c, std::vector<Item>& items) {
  ResidualOptions opts = c.residuals;
  opts.seed = c.seed;
  for (const auto& lam : c.lambda_grid)
    for (const auto& sig : c.sigma_grid)
      for (const auto& t : c.theta_grid)
        items.push_back([opts, M = c.M, tol = c.tol_flow, lam, sig, t]() {
          VerificationReport rep = planar_equivalence_verdict(SpinLabel{(sig * Rational(2)).num()},
                                                    OffsetLambda{lam}, ExtensionBC(t), M, opts);
          std::vector<std::string> required{"agreement"};
          if (rep.residuals.count("intertwining")) {
            rep.verdicts["intertwiner_witness"] = rep.residuals["intertwining"] <= tol;
            required.push_back("intertwiner_witness");
            required.push_back("intertwiner_admissible");
          }
          return finalize(std::move(rep), required);
        });
}

inline void append_verify3d_items(const CampaignConfig& c, std::vector<Item>& items) {
  ResidualOptions opts = c.residuals;
  opts.seed = c.seed;
  for (const auto& lam : c.lambda_grid)
    for (const auto& sig : c.sigma_grid)
      for (const int s : c.s_grid)
        items.push_back([opts, M = c.M, tol = c.tol_flow, lam, sig, s]() {
          const SpinLabel sigma{(sig * Rational(2)).num()};
          const OffsetLambda lambda{lam};
          const InvolutionSign sign(s);
          VerificationReport rep = sector_dichotomy_verdict(sigma, lambda, sign, M, opts);
          const VerificationReport obst = obstruction_check(sigma, lambda, sign, M);
          rep.verdicts["obstruction_confirmed"] = obst.verdicts.at("obstruction_confirmed");
          std::vector<std::string> required{"agreement", "dichotomy", "triple_consistency",
                                            "obstruction_confirmed"};
          if (rep.residuals.count("intertwining")) {
            rep.verdicts["intertwiner_witness"] = rep.residuals["intertwining"] <= tol;
            required.push_back("intertwiner_witness");
            required.push_back("intertwiner_admissible");
          }
          return finalize(std::move(rep), required);
        });
}

inline ConditionTriple apply_mutation(ConditionTriple t, int which) {
  if (which == 1) t.c1 = !t.c1;
  if (which == 2) t.c2 = !t.c2;
  if (which == 3) t.c3 = !t.c3;
  return t;
}

inline std::pair<Json, bool> lemma_row(const char* lemma, Json params, ConditionTriple t,
                                       int mutate) {
  t = apply_mutation(t, mutate);
  VerificationReport rep;
  rep.params = std::move(params);
  rep.params["lemma"] = lemma;
  rep.params["c1"] = t.c1;
  rep.params["c2"] = t.c2;
  rep.params["c3"] = t.c3;
  rep.verdicts["two_imply_third"] = two_imply_third(t);
  return finalize(std::move(rep), {"two_imply_third"});
}

inline void append_lemma_items(const CampaignConfig& c, std::vector<Item>& items) {
  const int mutate = c.mutate_condition;
  for (const auto& lam : c.lambda_grid)
    for (const auto& sig : c.sigma_grid)
      for (const int s : c.s_grid) {
        items.push_back([mutate, lam, sig, s]() {
          const auto t = planar_condition_triple(OffsetLambda{lam}, SpinLabel{(sig * Rational(2)).num()},
                                           InvolutionSign(s));
          return lemma_row("2d", Json{{"lambda", lam.str()}, {"sigma", sig.str()}, {"sign", s}}, t,
                           mutate);
        });
        if (!lam.is_integer()) continue;
        for (const SectorLabel sector : {SectorLabel::plus(), SectorLabel::minus()})
          items.push_back([mutate, lam, sig, s, sector]() {
            const auto t = sector_condition_triple(OffsetLambda{lam},
                                             SpinLabel{(sig * Rational(2)).num()},
                                             InvolutionSign(s), sector);
            return lemma_row("3d",
                             Json{{"lambda", lam.str()},
                                  {"sigma", sig.str()},
                                  {"sign", s},
                                  {"sector", sector.str()}},
                             t, mutate);
          });
      }
}

}  // namespace detail

/// Whether a classification obeys the label arithmetic: exchange symmetry
/// fixes the parity of l, the sector is (-1)^{l-m}, and the granted sector
/// carries even m with L_z eigenvalue m/2.
inline bool classification_consistent(const BoundStateLabel& label,
                                      const BoundStateClassification& cls) {
  const bool parity_matches = (label.l % 2 == 0) == (label.exchange == Exchange::bose);
  if (cls.allowed != parity_matches) return false;
  if (!cls.allowed) return !cls.sector.has_value() && !cls.lz_eigenvalue.has_value();
  if (!cls.sector.has_value() ||
      cls.sector->sign() != (((label.l - label.m) % 2 == 0) ? +1 : -1))
    return false;
  if (cls.in_granted_sector)
    return label.m % 2 == 0 && cls.lz_eigenvalue.has_value() &&
           *cls.lz_eigenvalue == Rational(label.m / 2);
  return !cls.lz_eigenvalue.has_value();
}

namespace detail {

inline void append_bound_state_items(const CampaignConfig& c, std::vector<Item>& items) {
  // one row per (l, m), labelled by the exchange type that admits the state;
  // the opposite type is checked internally to be excluded
  for (int l = 0; l <= c.l_max; ++l)
    for (int m = -l; m <= l; ++m)
      items.push_back([l, m]() {
        const Exchange admitted = (l % 2 == 0) ? Exchange::bose : Exchange::fermi;
        const Exchange excluded = (l % 2 == 0) ? Exchange::fermi : Exchange::bose;
        const BoundStateLabel label{l, m, admitted};
        const auto cls = bound_state_classify(label);
        const auto other = bound_state_classify(BoundStateLabel{l, m, excluded});
        VerificationReport rep;
        rep.params["l"] = l;
        rep.params["m"] = m;
        rep.params["exchange"] = str(admitted);
        rep.params["allowed"] = cls.allowed;
        rep.params["sector"] = cls.sector ? Json(cls.sector->str()) : Json();
        rep.params["eigenvalue"] = cls.lz_eigenvalue ? Json(cls.lz_eigenvalue->str()) : Json();
        const double residual = ylm_parity_check(l, m);
        rep.residuals["ylm_parity"] = residual;
        rep.verdicts["classification_consistent"] =
            classification_consistent(label, cls) &&
            classification_consistent(BoundStateLabel{l, m, excluded}, other);
        rep.verdicts["ylm_parity_ok"] = residual <= tol::ylm_parity;
        return finalize(std::move(rep), {"classification_consistent", "ylm_parity_ok"});
      });
}

inline void append_braid_items(const CampaignConfig& c, std::vector<Item>& items) {
  for (long long n = 1; n <= c.n_max; ++n)
    for (const auto& t : c.kappa_exponents)
      items.push_back([n, t]() {
        const ExactPhase kappa = ExactPhase::from_exponent(t);
        const BraidPhases b = braid_phases(n, kappa);
        VerificationReport rep;
        rep.params["n"] = n;
        rep.params["kappa_exponent"] = t.str();
        rep.params["relative"] = b.relative.str();
        rep.params["cm"] = b.cm.str();
        rep.params["total"] = b.total.str();
        rep.verdicts["total_factorizes"] = b.total == b.relative * b.cm;
        rep.verdicts["real_kappa_relative_trivial"] =
            !kappa.is_real() || b.relative == ExactPhase::one();
        return finalize(std::move(rep), {"total_factorizes", "real_kappa_relative_trivial"});
      });
}

inline void append_flow_items(const CampaignConfig& c, std::vector<Item>& items) {
  for (const auto& t : c.theta_grid)
    items.push_back([flow = c.flow, seed = c.seed, tol = c.tol_flow, t]() {
      const ExtensionBC bc{t};
      const auto states = make_test_states(ChartKind::cone, flow.states, flow.order,
                                           flow.grid, seed, bc);
      const auto angles = flow_angles(flow.angles);
      VerificationReport rep;
      rep.params["theta_over_pi"] = t.str();
      rep.params["states"] = flow.states;
      rep.params["angles"] = flow.angles;
      rep.params["grid"] = flow.grid;
      rep.params["order"] = flow.order;
      double worst = 0;
      for (const auto& psi : states) {
        const auto modes = to_modes(psi, flow.order, bc);
        for (const double angle : angles) {
          const auto spectral = from_modes(rotate_spectral(modes, angle), flow.grid);
          const auto transported = rotate_transport(psi, angle, bc);
          worst = std::max(worst, sup_distance(spectral, transported));
        }
      }
      rep.residuals["flow_max"] = worst;
      rep.verdicts["flow_agrees"] = worst <= tol;
      return finalize(std::move(rep), {"flow_agrees"});
    });
}

}  // namespace detail

/// Runs the configured sweep. Items are enumerated lexicographically in
/// their parameters and evaluated independently (in parallel up to
/// `workers`); the report order never depends on scheduling, and identical
/// config + seed yields a byte-identical report.
inline CampaignResult run_campaign(const CampaignConfig& config) {
  validate_config(config);
  std::vector<detail::Item> items;
  switch (config.mode) {
    case Mode::verify2d: detail::append_verify2d_items(config, items); break;
    case Mode::verify3d: detail::append_verify3d_items(config, items); break;
    case Mode::lemma_tables: detail::append_lemma_items(config, items); break;
    case Mode::bound_states: detail::append_bound_state_items(config, items); break;
    case Mode::braid_phases: detail::append_braid_items(config, items); break;
    case Mode::flow_crosscheck: detail::append_flow_items(config, items); break;
  }

  std::vector<Json> rows(items.size());
  std::vector<char> ok(items.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        auto [row, good] = items[i]();
        rows[i] = std::move(row);
        ok[i] = good ? 1 : 0;
      } catch (const std::exception& e) {
        rows[i] = Json{{"error", e.what()}, {"ok", false}};
        ok[i] = 0;
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(config.workers, int(items.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignResult result;
  result.total = int(items.size());
  for (const char good : ok)
    if (!good) ++result.failed;

  Json report;
  report["schema_version"] = kReportSchemaVersion;
  report["artifact"] = Json{{"name", kName}, {"version", kVersion}};
  report["mode"] = str(config.mode);
  report["seed"] = config.seed;
  report["tolerances"] = Json{{"spectral", config.tol_spectral},
                              {"flow", config.tol_flow},
                              {"unitarity", tol::unitarity},
                              {"ylm_parity", tol::ylm_parity}};
  report["config"] = config_echo(config);
  report["items"] = rows;
  report["summary"] =
      Json{{"items", result.total}, {"failed", result.failed}, {"passed", result.total - result.failed}};
  result.report = std::move(report);
  return result;
}

// ---------------------------------------------------------------------------
// Table rendering
// ---------------------------------------------------------------------------

inline std::vector<std::string> default_columns(const std::string& mode) {
  if (mode == "verify-2d")
    return {"lambda", "sigma", "theta_over_pi", "ssc", "equiv", "agreement", "intertwining"};
  if (mode == "verify-3d")
    return {"lambda", "sigma", "s", "ssc", "equiv_plus", "equiv_minus", "dichotomy", "agreement"};
  if (mode == "lemma-tables")
    return {"lemma", "lambda", "sigma", "sign", "sector", "c1", "c2", "c3", "two_imply_third"};
  if (mode == "bound-states") return {"l", "m", "exchange", "allowed", "sector", "eigenvalue"};
  if (mode == "braid-phases") return {"n", "kappa_exponent", "relative", "cm", "total"};
  if (mode == "flow-crosscheck") return {"theta_over_pi", "flow_max", "flow_agrees"};
  throw SchemaMismatch("no table layout for mode " + mode);
}

namespace detail {
inline std::string cell_to_string(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return format_17g(v.get<double>());
  return v.dump();
}

inline const Json* find_field(const Json& item, const std::string& key) {
  for (const char* section : {"params", "verdicts", "residuals"}) {
    if (!item.contains(section)) continue;
    const auto& s = item.at(section);
    if (s.contains(key)) return &s.at(key);
  }
  if (item.contains(key)) return &item.at(key);
  return nullptr;
}
}  // namespace detail

/// Renders a campaign report as CSV with deterministic column and row
/// order. A column must belong to the mode's table layout or occur in at
/// least one row; otherwise SchemaMismatch. Cells absent from a particular
/// row render empty.
inline std::string render_table(const Json& report, std::vector<std::string> columns = {}) {
  if (!report.contains("items") || !report.contains("mode"))
    throw SchemaMismatch("report lacks items/mode");
  const auto declared = default_columns(report.at("mode").get<std::string>());
  if (columns.empty()) columns = declared;
  const auto& items = report.at("items");
  for (const auto& col : columns) {
    bool known = std::find(declared.begin(), declared.end(), col) != declared.end();
    for (const auto& item : items) {
      if (known) break;
      known = detail::find_field(item, col) != nullptr;
    }
    if (!known) throw SchemaMismatch("column not present in any row: " + col);
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += (i + 1 < columns.size()) ? "," : "\n";
  }
  for (const auto& item : items) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const Json* field = detail::find_field(item, columns[i]);
      if (field != nullptr) out += detail::cell_to_string(*field);
      out += (i + 1 < columns.size()) ? "," : "\n";
    }
  }
  return out;
}

}  // namespace spinstat
