// scatrec: synthesize far-field data, reconstruct perturbed disks from it,
// and run the condition-number and reconstruction experiments.
//
// exit codes: 0 success, 2 configuration / input error, 3 numerical failure

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "scatrec/errors.hpp"
#include "scatrec/experiment.hpp"

using namespace scatrec;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::string preset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::optional<std::string> mode;
  std::optional<int> set;
};

void add_common(CLI::App* app, Common& c, bool with_set = true) {
  app->add_option("--config", c.config, "JSON config or run manifest")->check(CLI::ExistingFile);
  app->add_option("--preset", c.preset, "built-in config: example1|example2|example3|figure-kappa");
  app->add_option("--out", c.out, "output directory")->required();
  app->add_option("--seed", c.seed, "noise seed (first seed for experiments)");
  app->add_option("--mode", c.mode, "phased|phaseless")->check(CLI::IsMember({"phased", "phaseless"}));
  if (with_set) app->add_option("--set", c.set, "measurement set")->check(CLI::Range(1, 3));
}

PlanKind set_kind(int s) { return s == 1 ? PlanKind::Set1 : s == 2 ? PlanKind::Set2 : PlanKind::Set3; }

ExperimentConfig resolve(const Common& o, const std::string& fallback_preset = "") {
  if (!o.config.empty() && !o.preset.empty()) throw ConfigError("give --config or --preset, not both");
  ExperimentConfig c;
  if (!o.config.empty())
    c = load_config(o.config);
  else if (!o.preset.empty())
    c = preset(o.preset);
  else if (!fallback_preset.empty())
    c = preset(fallback_preset);
  else
    throw ConfigError("need --config or --preset");
  if (o.seed) c.seed = *o.seed;
  if (o.seeds) c.seeds = *o.seeds;
  if (o.mode) c.mode = *o.mode == "phased" ? ReconMode::Phased : ReconMode::Phaseless;
  if (o.set) c.plan_kind = set_kind(*o.set);
  // re-validate after overrides
  return parse_config(to_json(c));
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
  return s;
}

int cmd_synthesize(const Common& o, const std::string& cmd) {
  const auto c = resolve(o);
  const fs::path dir = o.out;
  fs::create_directories(dir);
  const auto plan = c.plan();
  const auto data = noisy_copy(c, synthesize_clean(c, plan), c.seed);
  {
    std::ofstream f(dir / "farfield.csv");
    write_farfield_csv(f, data);
    std::ofstream p(dir / "plan.csv");
    write_plan_csv(p, plan);
    if (!f || !p) throw std::runtime_error("cannot write to " + dir.string());
  }
  write_manifest(dir / "manifest.json", {cmd, c, {c.seed}, {"farfield.csv", "plan.csv"}, {{"samples", data.size()}}});
  std::cout << "wrote " << data.size() << (data.phased() ? " complex" : " magnitude") << " samples to "
            << (dir / "farfield.csv").string() << '\n';
  return 0;
}

int cmd_reconstruct(const Common& o, const std::string& data_path, const std::string& cmd) {
  const auto c = resolve(o);
  std::ifstream in(data_path);
  if (!in) throw ConfigError("cannot read " + data_path);
  auto data = read_farfield_csv(in);
  if (c.mode == ReconMode::Phaseless && data.phased()) data = magnitudes_only(data);
  if (c.mode == ReconMode::Phased && !data.phased()) throw DataError("phased reconstruction needs complex data");
  const auto r = reconstruct(c, data);
  const fs::path dir = o.out;
  auto files = write_reconstruction(dir, "", c, r);
  nlohmann::json res = {{"R_est", r.R_est}, {"eps_est", r.eps_est}, {"peak_mode", r.peak_mode()}};
  if (r.rel_error) res["rel_error"] = *r.rel_error;
  write_manifest(dir / "manifest.json", {cmd, c, {}, files, res});
  std::cout << to_string(c.mode) << ": R = " << r.R_est << ", eps = " << r.eps_est << ", peak |l| = " << r.peak_mode();
  if (r.rel_error) std::cout << ", relative error = " << *r.rel_error;
  std::cout << '\n';
  return 0;
}

int cmd_sweep(const Common& o, const std::string& cmd) {
  const auto c = resolve(o, "figure-kappa");
  const auto reps = run_condition_sweep(c);
  const fs::path dir = o.out;
  const auto files = write_sweep(dir, reps);
  write_manifest(dir / "manifest.json", {cmd, c, {}, files});
  for (const auto& r : reps) std::cout << "m0 = " << r.m0.value_or(0) << "  kappa = " << r.kappa << '\n';
  return 0;
}

int cmd_experiment(const Common& o, const std::string& name, const std::string& cmd) {
  Common opts = o;
  if (opts.config.empty() && opts.preset.empty()) opts.preset = name;
  opts.set.reset();
  const auto c = resolve(opts);
  const fs::path dir = o.out;
  if (name == "figure-kappa") return cmd_sweep(opts, cmd);

  std::vector<PlanKind> kinds{PlanKind::Set1, PlanKind::Set2, PlanKind::Set3};
  if (o.set) kinds = {set_kind(*o.set)};
  if (c.mode == ReconMode::Phased) kinds = {PlanKind::Set1};
  std::vector<SetSummary> sets;
  for (auto k : kinds) {
    sets.push_back(run_set(c, k));
    const auto& s = sets.back();
    std::cout << to_string(k) << ": median relative error " << s.median << " (IQR " << s.q1 << " .. " << s.q3
              << "), peaks";
    for (const auto& r : s.runs) std::cout << ' ' << r.peak_mode();
    std::cout << '\n';
  }
  const auto files = write_experiment(dir, c, sets);
  nlohmann::json res = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  for (const auto& s : sets) {
    res[to_string(s.kind)] = {{"median_rel_error", std::isfinite(s.median) ? nlohmann::json(s.median) : "inf"},
                              {"q1", s.q1},
                              {"q3", std::isfinite(s.q3) ? nlohmann::json(s.q3) : "inf"}};
    seeds = s.seeds;
  }
  write_manifest(dir / "manifest.json", {cmd, c, seeds, files, res});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scatrec: shape reconstruction from phased and phaseless far-field data"};
  app.require_subcommand(1);

  Common syn, rec, sweep, exp;
  std::string data_path, exp_name;

  auto* s = app.add_subcommand("synthesize", "generate a far-field dataset");
  add_common(s, syn);
  auto* r = app.add_subcommand("reconstruct", "reconstruct the perturbation from a dataset");
  add_common(r, rec);
  r->add_option("--data", data_path, "far-field CSV")->required()->check(CLI::ExistingFile);
  auto* c = app.add_subcommand("condition-sweep", "condition number of T E against m0");
  add_common(c, sweep, false);
  auto* e = app.add_subcommand("experiment", "run a named experiment over several noise seeds");
  add_common(e, exp);
  e->add_option("name", exp_name, "example1|example2|example3|figure-kappa")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  e->add_option("--seeds", exp.seeds, "number of noise seeds")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  const auto cmd = command_line(argc, argv);
  try {
    if (*s) return cmd_synthesize(syn, cmd);
    if (*r) return cmd_reconstruct(rec, data_path, cmd);
    if (*c) return cmd_sweep(sweep, cmd);
    if (*e) return cmd_experiment(exp, exp_name, cmd);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  } catch (const DataError& err) {
    std::cerr << "input error: " << err.what() << '\n';
    return 2;
  } catch (const DomainError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 3;
  } catch (const ConvergenceError& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 3;
  } catch (const DegenerateFit& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 3;
  } catch (const InvalidGeometry& err) {
    std::cerr << "numerical failure: " << err.what() << '\n';
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 2;
}
