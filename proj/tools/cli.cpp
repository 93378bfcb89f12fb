#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "liplab/dimension.hpp"
#include "liplab/errors.hpp"
#include "liplab/harness.hpp"
#include "liplab/space_json.hpp"
#include "liplab/spaces.hpp"
#include "liplab/verify.hpp"

namespace liplab::cli {

namespace {

// Inline JSON, a path to a JSON file, or a bare kind name.
nlohmann::json load_descriptor(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '[')) {
    try {
      return nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("inline descriptor is not valid JSON: ") + e.what());
    }
  }
  if (std::filesystem::exists(s)) return read_json(s);
  if (s.find('/') == std::string::npos && s.find('.') == std::string::npos) return {{"kind", s}};
  throw ValidationError("cannot open '" + s + "'");
}

struct Check {
  std::string name;
  bool ok;
  nlohmann::json detail;
};

std::vector<Check> suite_kl() {
  std::vector<Check> out;
  double v = kl_bernoulli(0.25, 0.5);
  out.push_back({"bernoulli_example", std::abs(v - 0.130812035941137) < 1e-12, {{"kl", v}}});
  Rng rng(2024);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    ProductMeasure p, q;
    p.atoms = q.atoms = 2 + rng.below(3);
    p.coords = q.coords = 1 + rng.below(3);
    std::size_t n = 1;
    for (std::size_t i = 0; i < p.coords; ++i) n *= p.atoms;
    for (auto* m : {&p, &q}) {
      double s = 0.0;
      for (std::size_t w = 0; w < n; ++w) {
        m->p.push_back(0.05 + rng.uniform());
        s += m->p.back();
      }
      for (auto& x : m->p) x /= s;
    }
    worst = std::max(worst, kl_chain_check(p, q).residual);
  }
  out.push_back({"chain_rule", worst <= 1e-12, {{"max_residual", worst}, {"cases", 100}}});
  for (const auto& r : kl_bounds_report(10)) out.push_back({r.lemma, r.violations == 0, r.to_json()});
  return out;
}

std::vector<Check> suite_ensemble() {
  std::vector<Check> out;
  auto t1 = lb_time_threshold(0.01, 0.2, 2), t2 = lb_time_threshold(0.01, 0.5, 2);
  out.push_back({"lb_time_threshold", t1 == 44 && t2 == 7, {{"delta_0.2", t1}, {"delta_0.5", t2}}});
  const double bias = 0.2;
  auto strict = ensemble_check(sibling_ensemble(bias, 0.5, bias));
  auto loose = ensemble_check(sibling_ensemble(bias, 0.5, bias / (1.0 - bias) + 1e-9));
  double kl = *std::max_element(loose.kl.begin(), loose.kl.end());
  out.push_back({"sibling_ratio_extremes", !strict.property1 && loose.pass(), {{"at_bias", strict.to_json()}, {"widened", loose.to_json()}}});
  out.push_back({"sibling_kl_below_bias_squared", kl < bias * bias, {{"kl", kl}, {"bound", bias * bias}}});
  return out;
}

std::vector<Check> suite_lipschitz() {
  std::vector<Check> out;
  auto interval = make_space({{"kind", "interval"}});
  auto hedgehog = make_space({{"kind", "hedgehog"}, {"spines", 20}});
  std::vector<std::pair<std::string, InstancePtr>> cases{
      {"lineage", make_instance(interval, {{"kind", "lineage"}, {"depth", 10}, {"seed", 1}})},
      {"wedge", make_instance(hedgehog, {{"kind", "wedge"}, {"centers", "tips"}, {"t_schedule", {1, 2}}, {"seed", 1}})},
      {"bump", make_instance(interval, {{"kind", "bump"}, {"b", 1.0}, {"depth", 3}, {"seed", 1}})}};
  Rng rng(99);
  for (auto& [name, inst] : cases) {
    auto c = lipschitz_certify(*inst, 2000, 5, rng);
    out.push_back({name, c.pass() && c.samples_checked, c.to_json()});
  }
  auto bad = make_instance(interval, {{"kind", "peak"}, {"peak", 0.5}, {"slope", 2.0}, {"top", 1.0}, {"noise", "none"}, {"unchecked", true}});
  auto c = lipschitz_certify(*bad, 2000, 5, rng);
  out.push_back({"negative_control_fails", !c.pass(), c.to_json()});
  return out;
}

std::vector<Check> suite_logt_kl() {
  auto space = make_space({{"kind", "sequence"}, {"terms", 64}});
  const auto& cs = static_cast<const CountableSpace&>(*space);
  std::vector<Point> seq;
  for (int n = 1; n <= 64; n *= 4) seq.push_back(cs.find(1.0 / n));
  auto ens = make_logt_ensemble(space, seq, cs.find(0.0));
  std::vector<Check> out;
  Rng rng(5);
  for (std::size_t i = 1; i < ens.size(); ++i) {
    std::vector<std::vector<Point>> bets(20);
    for (auto& tr : bets)
      for (int s = 0; s < 200; ++s) tr.push_back(rng.bernoulli(0.5) ? seq[i - 1] : space->sample(rng));
    auto rep = logt_kl_check(*ens[0], *ens[i], bets);
    out.push_back({"member_" + std::to_string(i), rep.pass(), rep.to_json()});
  }
  return out;
}

int run_verify(const std::string& suite, bool as_json, std::ostream& out) {
  std::map<std::string, std::vector<Check> (*)()> suites{
      {"kl", suite_kl}, {"ensemble", suite_ensemble}, {"lipschitz", suite_lipschitz}, {"logt_kl", suite_logt_kl}};
  std::vector<std::string> names;
  if (suite == "all") {
    for (const auto& [n, f] : suites) names.push_back(n);
  } else if (suites.count(suite)) {
    names.push_back(suite);
  } else {
    throw ValidationError("unknown suite '" + suite + "' (kl, ensemble, lipschitz, logt_kl, all)");
  }
  bool all_ok = true;
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& n : names) {
    for (const auto& c : suites[n]()) {
      all_ok = all_ok && c.ok;
      doc[n][c.name] = {{"pass", c.ok}, {"detail", c.detail}};
      if (!as_json) out << (c.ok ? "PASS " : "FAIL ") << n << '/' << c.name << '\n';
    }
  }
  if (as_json) out << doc.dump(2) << '\n';
  return all_ok ? 0 : 2;
}

int run_simulate(const std::string& path, const std::string& out_dir, std::size_t parallelism, std::string csv,
                 std::string json, std::ostream& out) {
  auto cfg = ExperimentConfig::load(path);
  if (!csv.empty()) cfg.csv = csv;
  if (!json.empty()) cfg.json = json;
  std::size_t par = parallelism ? parallelism : cfg.parallelism;
  auto res = run_replicates(cfg, par);
  std::string dir = out_dir.empty() ? cfg.resolved_output_dir() : out_dir;
  if (!cfg.csv.empty()) write_csv((std::filesystem::path(dir) / cfg.csv).string(), res.traces);
  if (!cfg.json.empty()) {
    nlohmann::json tr = nlohmann::json::array();
    for (const auto& t : res.traces) tr.push_back(trace_to_json(t));
    write_json((std::filesystem::path(dir) / cfg.json).string(),
               {{"config", cfg.to_json()}, {"aggregate", res.summary.to_json()}, {"traces", tr}, {"failures", res.failures}});
  }
  const auto& a = res.summary;
  out << "replicates " << a.replicates << ", horizon " << cfg.horizon << '\n';
  out << std::setw(10) << "t" << std::setw(16) << "mean_regret" << std::setw(14) << "stderr" << std::setw(12) << "R/t" << '\n';
  for (std::size_t i = 0; i < a.t.size(); ++i)
    out << std::setw(10) << a.t[i] << std::setw(16) << std::setprecision(6) << a.mean[i] << std::setw(14) << a.stderr_[i]
        << std::setw(12) << a.mean[i] / static_cast<double>(a.t[i]) << '\n';
  if (a.t.size() >= 3) {
    std::vector<double> t(a.t.begin(), a.t.end());
    auto fit = fit_exponent(t, a.mean, t[t.size() - std::min<std::size_t>(4, t.size())], t.back());
    if (fit.degenerate) out << "exponent fit: degenerate (" << fit.note << ")\n";
    else out << "exponent fit (last 4 checkpoints): " << fit.slope << '\n';
  }
  for (const auto& f : res.failures) out << "FAILED " << f << '\n';
  return res.complete() ? 0 : 2;
}

int run_dimension(const std::string& space_arg, const std::string& mode, int lo, int hi, bool as_json, std::ostream& out) {
  auto space = make_space(load_descriptor(space_arg));
  auto est = estimate_dimension(*space, parse_dimension_mode(mode), dyadic_grid(lo, hi));
  if (as_json) {
    out << est.to_json().dump(2) << '\n';
    return 0;
  }
  out << std::setw(14) << "delta" << std::setw(16) << "ln N" << std::setw(12) << "slope" << '\n';
  for (std::size_t i = 0; i < est.deltas.size(); ++i) {
    out << std::setw(14) << est.deltas[i] << std::setw(16) << est.log_counts[i];
    if (i > 0) out << std::setw(12) << est.slopes[i - 1];
    out << '\n';
  }
  out << "estimate (" << mode << "): " << est.value << (est.exact ? "" : " (from upper bounds)") << (est.capped ? " (capped)" : "")
      << '\n';
  return 0;
}

nlohmann::json default_forge(const std::string& kind, nlohmann::json& space) {
  if (kind == "lineage") {
    if (space.is_null()) space = {{"kind", "interval"}};
    return {{"kind", "lineage"}, {"depth", 12}, {"gamma", 0.25}, {"seed", 0}};
  }
  if (kind == "wedge") {
    if (space.is_null()) space = {{"kind", "hedgehog"}, {"spines", 84}};
    return {{"kind", "wedge"}, {"centers", "tips"}, {"radius", 0.25}, {"t_schedule", {1, 2, 3}}, {"seed", 0}};
  }
  if (kind == "bump") {
    if (space.is_null()) space = {{"kind", "interval"}};
    return {{"kind", "bump"}, {"b", 1.0}, {"depth", 3}, {"seed", 0}};
  }
  throw ValidationError("forge kinds: lineage, wedge, bump (got '" + kind + "')");
}

int run_forge(const std::string& kind, const std::string& space_arg, const std::string& params, std::uint64_t seed,
              std::size_t pairs, std::size_t rounds, const std::string& out_path, std::ostream& out) {
  nlohmann::json space_desc = space_arg.empty() ? nlohmann::json(nullptr) : load_descriptor(space_arg);
  auto desc = default_forge(kind, space_desc);
  desc["seed"] = seed;
  if (!params.empty()) desc.merge_patch(load_descriptor(params));
  auto space = make_space(space_desc);
  auto inst = make_instance(space, desc);
  Rng rng(seed);
  auto cert = lipschitz_certify(*inst, pairs, rounds, rng);
  nlohmann::json doc{{"space", space_desc}, {"instance", desc}, {"describe", inst->describe()}, {"certificate", cert.to_json()}};
  if (out_path.empty()) out << doc.dump(2) << '\n';
  else write_json(out_path, doc);
  if (out_path.size()) out << "wrote " << out_path << " (certificate " << (cert.pass() ? "pass" : "FAIL") << ")\n";
  return cert.pass() ? 0 : 2;
}

int run_fit(const std::string& path, double from, double to, std::size_t tail, std::ostream& out) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ValidationError("'" + path + "' has no data rows");
  // (algorithm, instance) -> t -> regrets over replicates
  std::map<std::pair<std::string, std::string>, std::map<std::uint64_t, std::vector<double>>> groups;
  for (const auto& r : rows) groups[{r.algorithm, r.instance}][r.t].push_back(r.cum_regret);
  int rc = 0;
  for (const auto& [key, series] : groups) {
    std::vector<double> t, mean;
    for (const auto& [tt, v] : series) {
      double s = 0.0;
      for (double x : v) s += x;
      t.push_back(static_cast<double>(tt));
      mean.push_back(s / static_cast<double>(v.size()));
    }
    double lo = from, hi = to > 0 ? to : t.back();
    if (tail > 0) lo = t[t.size() - std::min(tail, t.size())];
    auto f = fit_exponent(t, mean, lo, hi);
    out << key.first << " vs " << key.second << ": ";
    if (f.degenerate) {
      out << "degenerate fit (" << f.note << ")\n";
      rc = 2;
    } else {
      out << "slope " << f.slope << ", intercept " << f.intercept << ", residual " << f.residual << " over t in [" << lo
          << ", " << hi << "] (" << f.points << " points)\n";
    }
  }
  return rc;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"liplab: Lipschitz bandit and experts experiments"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run an experiment config");
  std::string config, out_dir, csv, json_name;
  std::size_t parallelism = 0;
  sim->add_option("config", config, "experiment config JSON")->required();
  sim->add_option("--out-dir", out_dir, "output directory (overrides LIPLAB_OUT_DIR and the config)");
  sim->add_option("--parallelism,-j", parallelism, "worker threads");
  sim->add_option("--csv", csv, "CSV file name inside the output directory");
  sim->add_option("--json", json_name, "JSON file name inside the output directory");

  auto* dim = app.add_subcommand("dimension", "estimate the covering or log-covering dimension");
  std::string space_arg, mode = "cov";
  int lo = 4, hi = 12;
  bool dim_json = false;
  dim->add_option("--space", space_arg, "space descriptor (file, inline JSON or kind)")->required();
  dim->add_option("--mode", mode, "cov or lcd");
  dim->add_option("--lo", lo, "coarsest grid exponent (delta = 2^-lo)");
  dim->add_option("--hi", hi, "finest grid exponent");
  dim->add_flag("--json", dim_json, "print JSON");

  auto* forge = app.add_subcommand("forge", "emit a lower-bound instance descriptor with a Lipschitz certificate");
  std::string kind, forge_space, params, forge_out;
  std::uint64_t seed = 0;
  std::size_t pairs = 10000, rounds = 10;
  forge->add_option("kind", kind, "lineage, wedge or bump")->required();
  forge->add_option("--space", forge_space, "space descriptor");
  forge->add_option("--params", params, "JSON merged into the instance descriptor");
  forge->add_option("--seed", seed, "instance seed");
  forge->add_option("--pairs", pairs, "certification pairs");
  forge->add_option("--rounds", rounds, "certification rounds");
  forge->add_option("--out,-o", forge_out, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "run verification suites");
  std::string suite;
  bool ver_json = false;
  ver->add_option("suite", suite, "kl, ensemble, lipschitz, logt_kl or all")->required();
  ver->add_flag("--json", ver_json, "print JSON");

  auto* fit = app.add_subcommand("fit", "fit regret exponents on exported CSV");
  std::string csv_path;
  double from = 0.0, to = 0.0;
  std::size_t tail = 0;
  fit->add_option("csv", csv_path, "CSV written by simulate")->required();
  fit->add_option("--from", from, "window start");
  fit->add_option("--to", to, "window end");
  fit->add_option("--tail", tail, "fit over the last N checkpoints");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim) return run_simulate(config, out_dir, parallelism, csv, json_name, out);
    if (*dim) return run_dimension(space_arg, mode, lo, hi, dim_json, out);
    if (*forge) return run_forge(kind, forge_space, params, seed, pairs, rounds, forge_out, out);
    if (*ver) return run_verify(suite, ver_json, out);
    if (*fit) return run_fit(csv_path, from, to, tail, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace liplab::cli
