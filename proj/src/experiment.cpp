#include "scatrec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <sstream>

#include "scatrec/csv.hpp"
#include "scatrec/errors.hpp"
#include "scatrec/forward.hpp"

namespace scatrec {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

PlanKind parse_kind(const std::string& s) {
  if (s == "set1") return PlanKind::Set1;
  if (s == "set2") return PlanKind::Set2;
  if (s == "set3") return PlanKind::Set3;
  if (s == "optimal") return PlanKind::Optimal;
  throw ConfigError("plan.kind: expected set1|set2|set3|optimal, got '" + s + "'");
}

void validate(const ExperimentConfig& c) {
  require(c.R > 0.0 && c.R <= 1.0, "domain.R must be in (0, 1]");
  require(c.delta >= 0.0, "domain.delta must be >= 0");
  require(c.contrast > 0.0, "contrast must be positive");
  require(c.forward_band >= 1 && c.forward_band <= 150, "forward.band must be in [1, 150]");
  require(c.plan_N >= 1, "plan.N must be positive");
  require(c.N0 >= 1, "plan.N0 must be positive");
  require(c.m0 >= 1, "plan.m0 must be positive");
  require(c.j_first >= 1 && c.j_last >= c.j_first, "plan.J must be [first, last] with 1 <= first <= last");
  require(c.u_count >= 1, "plan.u_count must be positive");
  require(c.sigma >= 0.0 && std::isfinite(c.sigma), "noise.sigma must be >= 0");
  require(c.seeds >= 1, "noise.seeds must be positive");
  require(c.band >= 1, "solver.band must be positive");
  require(c.alpha > 0.0, "solver.alpha must be positive");
  require(c.beta >= 0.0, "solver.beta must be >= 0");
  require(c.sweep_N >= 1, "sweep.N must be positive");
  require(c.sweep_m0_first >= 1 && c.sweep_m0_last >= c.sweep_m0_first, "sweep.m0 must be [first, last]");
  if (c.mode == ReconMode::Phased) {
    require(c.plan_kind == PlanKind::Set1, "phased reconstruction needs the full grid (plan.kind = set1)");
    require(2 * c.band + 1 <= c.N0, "phased reconstruction needs 2 band + 1 <= N0");
    require(c.sigma == 0.0 || c.noise_model == NoiseSpec::Model::GaussianFarField,
            "phased data only takes gaussian noise");
  }
  try {
    (void)c.domain();
  } catch (const InvalidGeometry& e) {
    throw ConfigError(std::string("domain: ") + e.what());
  }
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  if (std::isinf(v[lo]) || std::isinf(v[hi])) return v[pos - lo < 0.5 ? lo : hi];
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

std::vector<ScatteringMatrix> born_matrices(const ExperimentConfig& c, const std::vector<double>& ks) {
  const auto d = c.domain();
  std::vector<std::future<ScatteringMatrix>> jobs;
  for (double k : ks)
    jobs.push_back(std::async(std::launch::async, [&, k] { return born_matrix(d, c.contrast, k, c.forward_band); }));
  std::vector<ScatteringMatrix> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

}  // namespace

std::string to_string(ReconMode m) { return m == ReconMode::Phased ? "phased" : "phaseless"; }

StarDomain ExperimentConfig::domain() const { return StarDomain(R, delta, modes); }

std::vector<double> ExperimentConfig::wavenumbers() const { return plan_wavenumbers(m0, j_first, j_last, R); }

MeasurementPlan ExperimentConfig::plan(PlanKind kind) const {
  MeasurementPlan p;
  switch (kind) {
    case PlanKind::Set1: p = set1_plan(N0, wavenumbers()); break;
    case PlanKind::Set2: p = set2_plan(plan_N, u_count, wavenumbers()); break;
    case PlanKind::Set3: p = set3_plan(plan_N, u_count, wavenumbers()); break;
    case PlanKind::Optimal: {
      std::vector<int> js;
      for (int J = j_first; J <= j_last; ++J) js.push_back(J);
      p = transmission_plan(plan_N, js, m0, R);
      break;
    }
    default: throw ConfigError("no plan of kind custom");
  }
  p.m0 = m0;
  return p;
}

ExperimentConfig parse_config(const json& root) {
  const json& j = root.contains("config") && root.contains("command") ? root.at("config") : root;
  only_keys(j, "config", {"name", "domain", "contrast", "forward", "plan", "noise", "solver", "sweep"});
  ExperimentConfig c;
  get(j, "name", c.name, "config");
  get(j, "contrast", c.contrast, "config");

  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    only_keys(d, "domain", {"R", "delta", "modes", "flower"});
    get(d, "R", c.R, "domain");
    get(d, "delta", c.delta, "domain");
    require(!(d.contains("modes") && d.contains("flower")), "domain: give either modes or flower");
    if (d.contains("flower")) {
      const auto& f = d.at("flower");
      only_keys(f, "domain.flower", {"n", "second_harmonic"});
      int n = 0;
      double sh = 0.0;
      get(f, "n", n, "domain.flower");
      get(f, "second_harmonic", sh, "domain.flower");
      require(n >= 1, "domain.flower.n must be positive");
      c.modes.assign(sh != 0.0 ? 2 * n : n, 0.0);
      c.modes[n - 1] = 0.5;
      if (sh != 0.0) c.modes[2 * n - 1] = 0.5 * sh;
    }
    if (d.contains("modes")) {
      require(d.at("modes").is_array(), "domain.modes must be an array");
      for (const auto& m : d.at("modes")) {
        only_keys(m, "domain.modes[]", {"l", "re", "im"});
        int l = 0;
        double re = 0.0, im = 0.0;
        get(m, "l", l, "domain.modes[]");
        get(m, "re", re, "domain.modes[]");
        get(m, "im", im, "domain.modes[]");
        require(l >= 1 && l <= 200, "domain.modes[].l must be in [1, 200]");
        if (static_cast<int>(c.modes.size()) < l) c.modes.resize(l, 0.0);
        c.modes[l - 1] = {re, im};
      }
    }
  }
  if (j.contains("forward")) {
    const auto& f = j.at("forward");
    only_keys(f, "forward", {"model", "band"});
    std::string model = "born";
    get(f, "model", model, "forward");
    require(model == "born" || model == "linearized", "forward.model: expected born|linearized");
    c.forward = model == "born" ? ForwardModel::Born : ForwardModel::Linearized;
    get(f, "band", c.forward_band, "forward");
  }
  if (j.contains("plan")) {
    const auto& p = j.at("plan");
    only_keys(p, "plan", {"kind", "N", "N0", "m0", "J", "u_count"});
    std::string kind = to_string(c.plan_kind);
    get(p, "kind", kind, "plan");
    c.plan_kind = parse_kind(kind);
    get(p, "N", c.plan_N, "plan");
    get(p, "N0", c.N0, "plan");
    get(p, "m0", c.m0, "plan");
    get(p, "u_count", c.u_count, "plan");
    if (p.contains("J")) {
      std::vector<int> jr;
      get(p, "J", jr, "plan");
      require(jr.size() == 2, "plan.J must be [first, last]");
      c.j_first = jr[0];
      c.j_last = jr[1];
    }
  }
  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    only_keys(n, "noise", {"model", "sigma", "seed", "seeds"});
    std::string model = "multiplicative";
    get(n, "model", model, "noise");
    require(model == "multiplicative" || model == "gaussian", "noise.model: expected multiplicative|gaussian");
    c.noise_model = model == "gaussian" ? NoiseSpec::Model::GaussianFarField : NoiseSpec::Model::MultiplicativeUniform;
    get(n, "sigma", c.sigma, "noise");
    get(n, "seed", c.seed, "noise");
    get(n, "seeds", c.seeds, "noise");
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    only_keys(s, "solver", {"mode", "band", "alpha", "beta"});
    std::string mode = "phaseless";
    get(s, "mode", mode, "solver");
    require(mode == "phased" || mode == "phaseless", "solver.mode: expected phased|phaseless");
    c.mode = mode == "phased" ? ReconMode::Phased : ReconMode::Phaseless;
    get(s, "band", c.band, "solver");
    get(s, "alpha", c.alpha, "solver");
    get(s, "beta", c.beta, "solver");
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    only_keys(s, "sweep", {"N", "m0"});
    get(s, "N", c.sweep_N, "sweep");
    if (s.contains("m0")) {
      std::vector<int> r;
      get(s, "m0", r, "sweep");
      require(r.size() == 2, "sweep.m0 must be [first, last]");
      c.sweep_m0_first = r[0];
      c.sweep_m0_last = r[1];
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  json modes = json::array();
  for (std::size_t l = 0; l < c.modes.size(); ++l)
    if (c.modes[l] != 0.0) modes.push_back({{"l", l + 1}, {"re", c.modes[l].real()}, {"im", c.modes[l].imag()}});
  return {
      {"name", c.name},
      {"domain", {{"R", c.R}, {"delta", c.delta}, {"modes", modes}}},
      {"contrast", c.contrast},
      {"forward", {{"model", c.forward == ForwardModel::Born ? "born" : "linearized"}, {"band", c.forward_band}}},
      {"plan",
       {{"kind", to_string(c.plan_kind)},
        {"N", c.plan_N},
        {"N0", c.N0},
        {"m0", c.m0},
        {"J", {c.j_first, c.j_last}},
        {"u_count", c.u_count}}},
      {"noise",
       {{"model", c.noise_model == NoiseSpec::Model::GaussianFarField ? "gaussian" : "multiplicative"},
        {"sigma", c.sigma},
        {"seed", c.seed},
        {"seeds", c.seeds}}},
      {"solver", {{"mode", to_string(c.mode)}, {"band", c.band}, {"alpha", c.alpha}, {"beta", c.beta}}},
      {"sweep", {{"N", c.sweep_N}, {"m0", {c.sweep_m0_first, c.sweep_m0_last}}}},
  };
}

std::vector<std::string> preset_names() { return {"example1", "example2", "example3", "figure-kappa"}; }

ExperimentConfig preset(const std::string& name) {
  json j = {{"name", name},
            {"contrast", 0.05},
            {"plan", {{"kind", "set1"}, {"N0", 50}, {"m0", 10}, {"J", {5, 10}}, {"u_count", 5}}},
            {"noise", {{"model", "multiplicative"}, {"sigma", 0.05}, {"seed", 1}, {"seeds", 10}}},
            {"solver", {{"mode", "phaseless"}, {"band", 8}, {"alpha", 1e-3}, {"beta", 0.05}}}};
  if (name == "example1") {
    j["domain"] = {{"R", 0.2}, {"delta", 0.1}, {"flower", {{"n", 3}}}};
    j["plan"]["N"] = 3;
  } else if (name == "example2") {
    j["domain"] = {{"R", 0.2}, {"delta", 0.1}, {"flower", {{"n", 5}}}};
    j["plan"]["N"] = 5;
    j["plan"]["J"] = {5, 20};
  } else if (name == "example3") {
    j["domain"] = {{"R", 0.2}, {"delta", 0.1}, {"flower", {{"n", 3}, {"second_harmonic", 2.0}}}};
    j["plan"]["N"] = 6;
  } else if (name == "figure-kappa") {
    j["domain"] = {{"R", 0.2}, {"delta", 0.0}};
    j["plan"] = {{"kind", "optimal"}, {"N", 51}, {"m0", 1}, {"J", {5, 10}}};
    j["sweep"] = {{"N", 51}, {"m0", {1, 20}}};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return parse_config(j);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

FarFieldData synthesize_clean(const ExperimentConfig& c, const MeasurementPlan& plan) {
  if (c.forward == ForwardModel::Linearized) return synthesize_linearized(c.domain(), c.contrast, plan);
  return synthesize_from_sc(plan, born_matrices(c, distinct_wavenumbers(plan)));
}

FarFieldData synthesize_clean(const ExperimentConfig& c, PlanKind kind) { return synthesize_clean(c, c.plan(kind)); }

FarFieldData noisy_copy(const ExperimentConfig& c, const FarFieldData& clean, std::uint64_t seed) {
  const NoiseSpec spec{c.noise_model, c.sigma, seed};
  if (c.mode == ReconMode::Phased) return c.sigma > 0.0 ? apply_noise(clean, spec) : clean;
  if (c.noise_model == NoiseSpec::Model::GaussianFarField) {
    return magnitudes_only(c.sigma > 0.0 ? apply_noise(clean, spec) : clean);
  }
  const auto m = magnitudes_only(clean);
  return c.sigma > 0.0 ? apply_noise(m, spec) : m;
}

int ReconOutcome::peak_mode() const { return top_two().first; }

std::pair<int, int> ReconOutcome::top_two() const {
  int a = 0, b = 0;
  double va = 0.0, vb = 0.0;
  for (int l = 1; l <= coeffs.band(); ++l) {
    const double v = std::abs(coeffs.at(l));
    if (v > va) {
      b = a;
      vb = va;
      a = l;
      va = v;
    } else if (v > vb) {
      b = l;
      vb = v;
    }
  }
  return {a, b};
}

ReconOutcome reconstruct(const ExperimentConfig& c, const FarFieldData& data) {
  const auto exact = c.domain();
  ReconOutcome out;
  if (c.mode == ReconMode::Phased) {
    const auto r = reconstruct_phased(data, c.band);
    out.coeffs = r.coeffs;
    out.R_est = r.R_est;
    out.eps_est = r.eps_est;
    try {
      out.domain_out = StarDomain(r.R_est, 1.0, r.coeffs.positive);
      out.rel_error = relative_error(exact, *out.domain_out);
    } catch (const InvalidGeometry&) {
    }
    return out;
  }
  MeasurementPlan plan;
  plan.kind = c.plan_kind;
  plan.triples = data.points;
  const auto r = reconstruct_phaseless(data, plan, c.band, c.alpha, c.beta, exact);
  out.coeffs = r.coeffs;
  out.R_est = r.R_est;
  out.eps_est = r.eps_est;
  out.domain_out = r.domain_out;
  out.rel_error = r.rel_error;
  out.kappa_TE = r.kappa_TE;
  out.kappa_L_alpha = r.kappa_L_alpha;
  out.iterations = r.solve.iterations;
  out.converged = r.solve.converged;
  return out;
}

SetSummary run_set(const ExperimentConfig& c, PlanKind kind) {
  auto cfg = c;
  cfg.plan_kind = kind;
  const auto clean = synthesize_clean(cfg, kind);
  SetSummary s;
  s.kind = kind;
  std::vector<std::future<ReconOutcome>> jobs;
  for (int i = 0; i < c.seeds; ++i) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
    s.seeds.push_back(seed);
    jobs.push_back(std::async(std::launch::async, [&cfg, &clean, seed] {
      return reconstruct(cfg, noisy_copy(cfg, clean, seed));
    }));
  }
  std::vector<double> errs;
  for (auto& j : jobs) {
    s.runs.push_back(j.get());
    // no valid domain counts as a failed run
    errs.push_back(s.runs.back().rel_error.value_or(std::numeric_limits<double>::infinity()));
  }
  s.median = quantile(errs, 0.5);
  s.q1 = quantile(errs, 0.25);
  s.q3 = quantile(errs, 0.75);
  return s;
}

std::vector<ConditionReport> run_condition_sweep(const ExperimentConfig& c) {
  std::vector<int> m0s;
  for (int m = c.sweep_m0_first; m <= c.sweep_m0_last; ++m) m0s.push_back(m);
  return condition_sweep(c.sweep_N, c.R, c.j_first, c.j_last, m0s);
}

void write_manifest(const fs::path& path, const Manifest& m) {
  const json cfg = to_json(m.config);
  json j = {{"tool", "scatrec"},
            {"version", kVersion},
            {"command", m.command},
            {"config", cfg},
            {"config_hash", std::to_string(fnv1a(cfg.dump()))},
            {"seeds", m.seeds},
            {"outputs", m.outputs}};
  if (!m.extra.empty()) j["results"] = m.extra;
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

void write_svg_plot(const fs::path& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<Series>& series, bool log_y) {
  const double W = 640, H = 420, ml = 70, mr = 150, mt = 40, mb = 50;
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (log_y && s.y[i] <= 0)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  const bool empty = !(x0 <= x1);
  if (empty) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!(x0 < x1)) x0 -= 1, x1 += 1;
  if (!(y0 < y1)) y0 -= 1, y1 += 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (ty(y) - y0) / (y1 - y0) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

  auto f = open_out(path);
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n"
    << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ylab = [&](double v) { return log_y ? fmt(std::pow(10.0, v)) : fmt(v); };
  f << "<text x=\"" << ml << "\" y=\"" << H - mb + 18 << "\" font-size=\"11\">" << fmt(x0) << "</text>\n"
    << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 18 << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(x1)
    << "</text>\n"
    << "<text x=\"" << ml - 4 << "\" y=\"" << H - mb << "\" text-anchor=\"end\" font-size=\"11\">" << ylab(y0)
    << "</text>\n"
    << "<text x=\"" << ml - 4 << "\" y=\"" << mt + 10 << "\" text-anchor=\"end\" font-size=\"11\">" << ylab(y1)
    << "</text>\n"
    << "<text x=\"" << (W - mr + ml) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
    << xlabel << "</text>\n"
    << "<text x=\"16\" y=\"" << (H - mb + mt) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
    << (H - mb + mt) / 2 << ")\">" << ylabel << "</text>\n";
  if (empty)
    f << "<text x=\"" << (W - mr + ml) / 2 << "\" y=\"" << (H - mb + mt) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\">no finite values</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = colors[k % 6];
    f << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (log_y && s.y[i] <= 0)) continue;
      f << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    f << "\"/>\n";
    const double ly = mt + 16 + 18 * k;
    f << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 30 << "\" y2=\"" << ly
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << W - mr + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << s.label << "</text>\n";
  }
  f << "</svg>\n";
}

std::vector<std::string> write_reconstruction(const fs::path& dir, const std::string& stem, const ExperimentConfig& c,
                                              const ReconOutcome& r) {
  ensure_dir(dir);
  std::vector<std::string> files;
  {
    const auto name = stem + "coefficients.csv";
    auto f = open_out(dir / name);
    write_coefficients_csv(f, r.coeffs);
    files.push_back(name);
  }
  if (r.domain_out) {
    const auto name = stem + "boundary.csv";
    auto f = open_out(dir / name);
    write_boundary_csv(f, boundary_curve(*r.domain_out));
    files.push_back(name);
  }
  json rep = {{"mode", to_string(c.mode)},
              {"R_est", r.R_est},
              {"eps_est", r.eps_est},
              {"band", c.band},
              {"peak_mode", r.peak_mode()},
              {"domain_valid", r.domain_out.has_value()}};
  if (r.rel_error) rep["rel_error"] = *r.rel_error;
  if (r.kappa_TE) rep["kappa_TE"] = std::isfinite(*r.kappa_TE) ? json(*r.kappa_TE) : json("inf");
  if (r.kappa_L_alpha) rep["kappa_L_alpha"] = *r.kappa_L_alpha;
  if (c.mode == ReconMode::Phaseless) {
    rep["alpha"] = c.alpha;
    rep["beta"] = c.beta;
    rep["iterations"] = r.iterations;
    rep["converged"] = r.converged;
  }
  const auto name = stem + "report.json";
  auto f = open_out(dir / name);
  f << rep.dump(2) << '\n';
  files.push_back(name);
  return files;
}

std::vector<std::string> write_sweep(const fs::path& dir, const std::vector<ConditionReport>& reports) {
  ensure_dir(dir);
  {
    auto f = open_out(dir / "kappa.csv");
    write_sweep_csv(f, reports);
  }
  Series s{"kappa(T E)", {}, {}};
  for (const auto& r : reports) {
    s.x.push_back(r.m0.value_or(0));
    s.y.push_back(r.kappa);
  }
  write_svg_plot(dir / "kappa.svg", "condition number vs m0", "m0", "kappa", {s}, true);
  return {"kappa.csv", "kappa.svg"};
}

std::vector<std::string> write_experiment(const fs::path& dir, const ExperimentConfig& c,
                                          const std::vector<SetSummary>& sets) {
  ensure_dir(dir);
  std::vector<std::string> files{"runs.csv", "summary.csv"};
  {
    auto f = open_out(dir / "runs.csv");
    csv::Writer w(f, {"set", "seed", "rel_error", "peak_mode", "second_mode", "R_est", "eps_est", "kappa_TE",
                      "kappa_L_alpha", "converged"});
    for (const auto& s : sets)
      for (std::size_t i = 0; i < s.runs.size(); ++i) {
        const auto& r = s.runs[i];
        const auto [a, b] = r.top_two();
        w << to_string(s.kind) << static_cast<long long>(s.seeds[i])
          << r.rel_error.value_or(std::numeric_limits<double>::quiet_NaN()) << a << b << r.R_est << r.eps_est
          << r.kappa_TE.value_or(std::numeric_limits<double>::quiet_NaN())
          << r.kappa_L_alpha.value_or(std::numeric_limits<double>::quiet_NaN()) << (r.converged ? 1 : 0);
        w.end_row();
      }
  }
  {
    auto f = open_out(dir / "summary.csv");
    csv::Writer w(f, {"set", "runs", "median_rel_error", "q1", "q3", "modal_peak", "modal_peak_count"});
    for (const auto& s : sets) {
      std::map<int, int> peaks;
      for (const auto& r : s.runs) ++peaks[r.peak_mode()];
      const auto best = std::max_element(peaks.begin(), peaks.end(),
                                         [](const auto& x, const auto& y) { return x.second < y.second; });
      w << to_string(s.kind) << static_cast<long long>(s.runs.size()) << s.median << s.q1 << s.q3 << best->first
        << best->second;
      w.end_row();
    }
  }
  // first seed of every set: coefficients, boundary, and overlay plots
  std::vector<Series> shapes, mags;
  const auto exact = boundary_curve(c.domain());
  {
    Series e{"exact", {}, {}};
    for (const auto& [t, r] : exact.samples) {
      e.x.push_back(r * std::cos(t));
      e.y.push_back(r * std::sin(t));
    }
    shapes.push_back(e);
    auto f = open_out(dir / "exact_boundary.csv");
    write_boundary_csv(f, exact);
    files.push_back("exact_boundary.csv");
  }
  for (const auto& s : sets) {
    if (s.runs.empty()) continue;
    const auto stem = to_string(s.kind) + "_";
    auto written = write_reconstruction(dir, stem, c, s.runs.front());
    files.insert(files.end(), written.begin(), written.end());
    if (s.runs.front().domain_out) {
      Series b{to_string(s.kind), {}, {}};
      for (const auto& [t, r] : boundary_curve(*s.runs.front().domain_out).samples) {
        b.x.push_back(r * std::cos(t));
        b.y.push_back(r * std::sin(t));
      }
      shapes.push_back(b);
    }
    Series m{to_string(s.kind), {}, {}};
    for (int l = -c.band; l <= c.band; ++l) {
      m.x.push_back(l);
      m.y.push_back(std::abs(s.runs.front().coeffs.at(l)));
    }
    mags.push_back(m);
  }
  write_svg_plot(dir / "boundaries.svg", c.name + ": boundaries (first seed)", "x", "y", shapes);
  write_svg_plot(dir / "coefficients.svg", c.name + ": |coefficients| (first seed)", "l", "|delta F(l)|", mags);
  files.push_back("boundaries.svg");
  files.push_back("coefficients.svg");
  return files;
}

}  // namespace scatrec
