#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "extint/chenstein.hpp"
#include "extint/csv.hpp"
#include "extint/error.hpp"
#include "extint/experiments.hpp"
#include "extint/gauss.hpp"
#include "extint/hypothesis.hpp"
#include "extint/moments.hpp"
#include "extint/normseq.hpp"
#include "extint/pairstats.hpp"
#include "extint/sampling.hpp"
#include "extint/version.hpp"

namespace extint::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  int threads = -1;
  bool deterministic = false;
  std::string output;
};

struct DataOpts {
  std::string input;
  bool header = false;
};

struct MomentOpts {
  std::string profile;
  std::optional<double> m3;
  std::optional<double> m4;
  std::optional<double> m6;
};

struct SimOpts {
  std::string dist = "gaussian";
  std::size_t n = 1000;
  std::size_t p = 60;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::string statistic;
  std::string walk = "product";
  double q = 2.0;
  double rho = 0.0;
  std::string lambda;
  double x = 0.0;
  std::size_t k = 2;
  std::vector<std::string> regions;
  double alpha = 0.05;
  double shift = 0.0;
  bool allow_large = false;
  bool samples = false;
  std::string samples_csv;
  std::string out;
};

double parse_real(const std::string& s, const std::string& what) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "inf" || lower == "+inf" || lower == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  if (lower == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + ": " + s);
  }
  if (used != s.size()) throw ConfigError("cannot parse " + what + ": " + s);
  return v;
}

// "a:b" pieces joined by '+', e.g. "-1:inf" or "0:1+2:3".
Region parse_region(const std::string& text) {
  Region region;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, '+')) {
    const auto colon = piece.find(':');
    if (colon == std::string::npos) throw ConfigError("region pieces look like lo:hi: " + piece);
    region.push_back({parse_real(piece.substr(0, colon), "region"),
                      parse_real(piece.substr(colon + 1), "region")});
  }
  if (region.empty()) throw ConfigError("empty region");
  return region;
}

MomentProfile resolve_profile(const MomentOpts& m) {
  if (!m.profile.empty()) {
    if (m.m4) throw ConfigError("give either --profile or explicit moments");
    return preset_profile(m.profile);
  }
  if (!m.m4) throw ConfigError("need --profile or --m4");
  return MomentProfile(m.m3.value_or(0.0), *m.m4, m.m6, MomentClass::subexp(0.5, 1.0));
}

unsigned resolve_thread_count(const Globals& g) {
  if (g.threads >= 0) return static_cast<unsigned>(g.threads);
  if (const char* env = std::getenv("EXTINT_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ConfigError(std::string("EXTINT_THREADS is not a count: ") + env);
    }
  }
  return 1;
}

json pair_json(const Pair& p) { return json::array({p.i + 1, p.j + 1}); }

json regime_json(const RegimeReport& r) {
  return {{"condition", std::string(to_string(r.condition))},
          {"rate_exponent", r.rate_exponent},
          {"dnorm_choice", r.dnorm_choice},
          {"advisory_ratio", r.advisory_ratio},
          {"growth_statement", r.growth_statement}};
}

json normalizers_json(const Normalizers& n) {
  return {{"b", n.b}, {"c", n.c}, {"d", n.d},
          {"d_kind", n.d_kind == DKind::DN1 ? "d_n1" : "d_n_y"}, {"y", n.y}};
}

SampleMatrix load(const DataOpts& d) {
  if (d.input.empty()) throw ConfigError("--input is required");
  return read_csv_file(d.input, d.header);
}

struct Context {
  Globals globals;
  json config = json::object();
  json results = json::object();
  std::optional<json> samples;
};

// ---- subcommand bodies ----

void do_normalize(Context& ctx, std::uint64_t n, std::uint64_t p, const MomentOpts& m) {
  const MomentProfile profile = resolve_profile(m);
  const RegimeReport regime = classify_regime(profile, n, p);
  const Normalizers norm = interpoint_normalizers(n, p, profile, regime);
  ctx.config = {{"n", n}, {"p", p}, {"profile", m.profile}, {"m3", profile.m3()},
                {"m4", profile.m4()}};
  if (profile.m6()) ctx.config["m6"] = *profile.m6();
  ctx.results = normalizers_json(norm);
  ctx.results["pair_count"] = pair_count(p);
  ctx.results["rho"] = profile.rho();
  if (profile.m6()) ctx.results["kappa_tilde"] = profile.kappa_tilde();
  ctx.results["regime"] = regime_json(regime);
}

void do_maxdist(Context& ctx, const DataOpts& d, double q, bool root, const MomentOpts& m) {
  const SampleMatrix x = load(d);
  const ExecPolicy exec{resolve_thread_count(ctx.globals)};
  const PairField field = q == 2.0 ? interpoint_sq_distances(x, exec) : qnorm_distances(x, q, exec);
  const PairExtremes ext = extremes(field);
  ctx.config = {{"input", d.input}, {"header", d.header}, {"q", q}, {"root", root}};
  auto scale = [&](double v) { return root ? std::pow(std::max(v, 0.0), 1.0 / q) : v; };
  ctx.results = {{"p", x.rows()},
                 {"n", x.cols()},
                 {"scale", root ? "root" : "power"},
                 {"max", scale(ext.max_value)},
                 {"argmax", pair_json(ext.argmax)},
                 {"min", scale(ext.min_value)},
                 {"argmin", pair_json(ext.argmin)},
                 {"flagged_negatives", field.flagged_negatives}};
  if (q == 2.0 && (m.m4 || !m.profile.empty())) {
    const MomentProfile profile = resolve_profile(m);
    const RegimeReport regime = classify_regime(profile, x.cols(), x.rows());
    const Normalizers norm = interpoint_normalizers(x.cols(), x.rows(), profile, regime);
    ctx.results["normalizers"] = normalizers_json(norm);
    ctx.results["normalized_max"] = norm.c * (ext.max_value - norm.b);
  }
}

void do_test_means(Context& ctx, const DataOpts& d, const MomentOpts& m, double alpha) {
  const SampleMatrix x = load(d);
  const ExecPolicy exec{resolve_thread_count(ctx.globals)};
  const MomentProfile profile = resolve_profile(m);
  const RegimeReport regime = classify_regime(profile, x.cols(), x.rows());
  const MeanTestResult res =
      regime.dnorm_choice ? mean_equality_test(x, profile, alpha, regime, exec)
                          : mean_equality_test(x, profile.m4(), alpha, regime, exec);
  ctx.config = {{"input", d.input}, {"header", d.header}, {"m4", profile.m4()}, {"alpha", alpha}};
  ctx.results = {{"statistic", res.statistic},
                 {"threshold", res.threshold},
                 {"alpha", res.alpha},
                 {"reject", res.reject},
                 {"argmax", pair_json(res.argmax)},
                 {"normalizers", normalizers_json(res.normalizers)}};
}

void do_cov_max(Context& ctx, const DataOpts& d, const std::string& layout,
                std::optional<double> rho, const std::string& lambda) {
  SampleMatrix y = load(d);
  if (layout == "pn") {
    y = y.transposed();
  } else if (layout != "np") {
    throw ConfigError("--layout must be np or pn");
  }
  const CovMax w = cov_max_offdiag(y, ExecPolicy{resolve_thread_count(ctx.globals)});
  ctx.config = {{"input", d.input}, {"header", d.header}, {"layout", layout}};
  ctx.results = {{"n", y.rows()}, {"p", y.cols()}, {"w", w.value}, {"pair", pair_json(w.pair)}};
  if (rho) {
    std::optional<double> hint;
    if (!lambda.empty()) hint = parse_real(lambda, "--lambda");
    const CovRegime regime = cov_regime(*rho, y.cols(), y.rows(), hint);
    ctx.config["rho"] = *rho;
    if (hint) ctx.config["lambda"] = lambda;
    ctx.results["regime"] = to_string(regime.regime);
    ctx.results["mu_n"] = regime.mu_n;
    ctx.results["scale"] = regime.scale;
    ctx.results["limit_law"] = regime.limit_law.name();
    ctx.results["normalized"] = regime.normalize(w.value);
  }
}

void do_chenstein(Context& ctx, std::uint64_t p, std::optional<double> marginal,
                  std::optional<double> joint, double b3, std::optional<double> rho,
                  std::optional<double> x) {
  ctx.config = {{"p", p}, {"b3", b3}};
  double t = 0.0;
  if (x) {
    if (!rho) throw ConfigError("--x needs --rho");
    if (marginal || joint) throw ConfigError("give either --x/--rho or --marginal/--joint");
    const double d = d_n1(pair_count(p));
    t = d + *x / d;
    marginal = std_normal_tail(t);
    joint = bivariate_orthant_prob(*rho, t);
    ctx.config["rho"] = *rho;
    ctx.config["x"] = *x;
  }
  if (!marginal || !joint) throw ConfigError("need --marginal and --joint, or --rho and --x");
  const ChenSteinBound b = stein_bounds(p, *marginal, *joint, b3);
  ctx.results = {{"neighborhood_size", neighborhood_size(p)},
                 {"marginal", *marginal},
                 {"joint", *joint},
                 {"lambda", b.lambda},
                 {"b1", b.b1},
                 {"b2", b.b2},
                 {"b3", b.b3},
                 {"total_count_version", b.total_count_version},
                 {"total_max_version", b.total_max_version}};
  if (x) ctx.results["threshold"] = t;
}

json report_json(const ExperimentReport& r, bool deterministic) {
  json stats = json::object();
  for (const auto& [k, v] : r.statistics) stats[k] = v;
  json out = {{"experiment", r.experiment}, {"statistics", stats}};
  if (!r.histograms.empty()) {
    json h = json::object();
    for (const auto& [k, v] : r.histograms) h[k] = v;
    out["histograms"] = h;
  }
  out["warnings"] = r.warnings;
  if (!deterministic) out["runtime_seconds"] = r.runtime_seconds;
  return out;
}

void write_samples_csv(const std::string& path, const ExperimentReport& r) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  for (std::size_t s = 0; s < r.series.size(); ++s) f << (s ? "," : "") << r.series[s].first;
  f << '\n';
  const std::size_t rows = r.series.empty() ? 0 : r.series.front().second.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t s = 0; s < r.series.size(); ++s) {
      f << (s ? "," : "") << format_double(r.series[s].second[i]);
    }
    f << '\n';
  }
}

StatisticKind statistic_from(const std::string& s) {
  if (s == "interpoint") return StatisticKind::Interpoint;
  if (s == "walk") return StatisticKind::Walk;
  if (s == "field") return StatisticKind::GaussianField;
  if (s == "cov") return StatisticKind::CovEntry;
  throw ConfigError("unknown statistic: " + s);
}

ExperimentConfig build_config(const SimOpts& o, StatisticKind fallback, unsigned threads,
                              json& config) {
  ExperimentConfig cfg;
  cfg.distribution = EntryDistribution::preset(entry_kind_from_string(o.dist));
  cfg.n = o.n;
  cfg.p = o.p;
  cfg.replications = o.reps;
  cfg.master_seed = o.seed;
  cfg.statistic = o.statistic.empty() ? fallback : statistic_from(o.statistic);
  cfg.rho = o.rho;
  cfg.threads = threads;
  cfg.allow_large = o.allow_large;
  if (!o.lambda.empty()) cfg.lambda_hint = parse_real(o.lambda, "--lambda");

  const MomentProfile& prof = cfg.distribution.profile;
  if (o.walk == "product") {
    cfg.walk = WalkFunction::product();
    cfg.walk_mean = 0.0;
    cfg.walk_var = 1.0;
  } else if (o.walk == "sqdiff") {
    cfg.walk = WalkFunction::sqdiff();
    cfg.walk_mean = 2.0;
    cfg.walk_var = 2.0 * (prof.m4() + 1.0);
  } else if (o.walk == "absq") {
    cfg.walk = WalkFunction::absq(o.q);
    const AbsqMoments am = absq_moments(cfg.distribution.kind, o.q);
    cfg.walk_mean = am.mean;
    cfg.walk_var = am.var;
  } else {
    throw ConfigError("unknown walk: " + o.walk);
  }

  config = {{"distribution", o.dist},     {"n", o.n},
            {"p", o.p},                   {"replications", o.reps},
            {"statistic", to_string(cfg.statistic)}};
  if (cfg.statistic == StatisticKind::Walk) {
    config["walk"] = o.walk;
    if (o.walk == "absq") config["q"] = o.q;
  }
  if (cfg.statistic == StatisticKind::GaussianField || cfg.statistic == StatisticKind::CovEntry) {
    config["rho"] = o.rho;
  }
  if (!o.lambda.empty()) config["lambda"] = o.lambda;
  if (o.allow_large) config["allow_large"] = true;
  return cfg;
}

void do_simulate(Context& ctx, const std::string& which, const SimOpts& o) {
  const unsigned threads = resolve_thread_count(ctx.globals);
  json config;
  ExperimentReport report;
  if (which == "sample") {
    const EntryDistribution dist = EntryDistribution::preset(entry_kind_from_string(o.dist));
    const SampleMatrix x = sample_matrix(dist, o.p, o.n, o.seed);
    if (o.out.empty()) throw ConfigError("simulate sample needs --out");
    write_csv_file(o.out, x);
    ctx.config = {{"experiment", which}, {"distribution", o.dist}, {"n", o.n}, {"p", o.p},
                  {"out", o.out}};
    ctx.results = {{"rows", x.rows()}, {"cols", x.cols()}};
    return;
  }
  if (which == "gumbel") {
    report = gumbel_convergence_experiment(build_config(o, StatisticKind::Interpoint, threads, config));
  } else if (which == "joint") {
    report = joint_minmax_experiment(build_config(o, StatisticKind::Walk, threads, config));
  } else if (which == "first-order") {
    report = first_order_experiment(build_config(o, StatisticKind::GaussianField, threads, config));
  } else if (which == "pointprocess") {
    std::vector<Region> regions;
    for (const std::string& r : o.regions) regions.push_back(parse_region(r));
    if (regions.empty()) regions.push_back({{0.0, std::numeric_limits<double>::infinity()}});
    report = point_process_experiment(build_config(o, StatisticKind::Walk, threads, config), regions);
    config["regions"] = o.regions.empty() ? std::vector<std::string>{"0:inf"} : o.regions;
  } else if (which == "orderstats") {
    report = order_stats_experiment(build_config(o, StatisticKind::Walk, threads, config), o.k);
    config["k"] = o.k;
  } else if (which == "vmoment") {
    report = v_moment_experiment(build_config(o, StatisticKind::GaussianField, threads, config), o.x);
    config["x"] = o.x;
  } else if (which == "cov-regime") {
    report = cov_regime_experiment(build_config(o, StatisticKind::CovEntry, threads, config));
  } else if (which == "meantest") {
    report = mean_test_experiment(build_config(o, StatisticKind::Interpoint, threads, config),
                                  o.alpha, o.shift);
    config["alpha"] = o.alpha;
    config["shift"] = o.shift;
  } else {
    throw ConfigError("unknown experiment: " + which);
  }
  ctx.config = {{"experiment", which}};
  ctx.config.update(config);
  ctx.config["master_seed"] = o.seed;
  ctx.results = report_json(report, ctx.globals.deterministic);
  if (o.samples) {
    json s = json::object();
    for (const auto& [k, v] : report.series) s[k] = v;
    ctx.samples = s;
  }
  if (!o.samples_csv.empty()) write_samples_csv(o.samples_csv, report);
}

void do_oracle(Context& ctx, const std::string& which, double rho, double t, std::uint64_t d,
               double x, double alpha, double p, double n, double skew) {
  ctx.config = {{"oracle", which}};
  if (which == "orthant") {
    ctx.config.update({{"rho", rho}, {"t", t}});
    ctx.results = {{"probability", bivariate_orthant_prob(rho, t)}};
  } else if (which == "asymptote") {
    const TailAsymptote a = equicorr_min_tail_asymptote(d, rho, t);
    ctx.config.update({{"d", d}, {"rho", rho}, {"t", t}});
    ctx.results = {{"value", a.value}, {"coefficient", a.coefficient}, {"exponent_arg", a.exponent_arg}};
  } else if (which == "normal") {
    ctx.config.update({{"x", x}});
    ctx.results = {{"cdf", std_normal_cdf(x)}, {"tail", std_normal_tail(x)}, {"pdf", std_normal_pdf(x)}};
  } else if (which == "gumbel") {
    ctx.config.update({{"x", x}, {"alpha", alpha}});
    ctx.results = {{"cdf", gumbel_cdf(x)}, {"quantile", gumbel_quantile(alpha)}};
  } else if (which == "vmoments") {
    const VMoments v = v_moment_asymptotes(p, rho, x);
    ctx.config.update({{"p", p}, {"rho", rho}, {"x", x}});
    ctx.results = {{"mean", v.mean}, {"second_moment", v.second_moment}, {"growth_branch", v.growth_branch}};
  } else if (which == "rate") {
    const RateBoundTerms r = rate_bound_terms(p, n, rho);
    ctx.config.update({{"p", p}, {"n", n}, {"rho", rho}});
    ctx.results = {{"dependence", r.dependence}, {"normal", r.normal}, {"gumbel", r.gumbel}};
  } else if (which == "ld") {
    if (n < 1) throw ConfigError("--n must be >= 1");
    ctx.config.update({{"x", x}, {"n", n}, {"skew", skew}});
    ctx.results = {{"factor", ld_correction_factor(x, static_cast<std::uint64_t>(n), skew)}};
  } else {
    throw ConfigError("unknown oracle: " + which);
  }
}

void add_moment_opts(CLI::App* app, MomentOpts& m) {
  app->add_option("--profile", m.profile, "Preset entry law: rademacher, gaussian, uniform, threepoint5");
  app->add_option("--m3", m.m3, "Third moment of the entries");
  app->add_option("--m4", m.m4, "Fourth moment of the entries");
  app->add_option("--m6", m.m6, "Sixth moment of the entries");
}

void add_data_opts(CLI::App* app, DataOpts& d) {
  app->add_option("--input", d.input, "CSV file")->required();
  app->add_flag("--header", d.header, "Skip the first CSV line");
}

void add_sim_opts(CLI::App* app, SimOpts& o) {
  app->add_option("--dist", o.dist, "Entry law: rademacher, gaussian, uniform, threepoint5");
  app->add_option("--n", o.n, "Dimension / sample size");
  app->add_option("--p", o.p, "Number of points / variables");
  app->add_option("--reps", o.reps, "Replications");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--statistic", o.statistic, "interpoint, walk, field or cov");
  app->add_option("--walk", o.walk, "Walk summand: product, sqdiff, absq");
  app->add_option("--q", o.q, "Exponent of the absq walk");
  app->add_option("--rho", o.rho, "Field correlation or population equicorrelation");
  app->add_option("--lambda", o.lambda, "Declared limit of rho sqrt(log p): 0, a value, or inf");
  app->add_option("--x", o.x, "Level on the normalized scale");
  app->add_option("--k", o.k, "Number of upper order statistics");
  app->add_option("--region", o.regions, "Region lo:hi[+lo:hi...] (repeatable)");
  app->add_option("--alpha", o.alpha, "Test level");
  app->add_option("--shift", o.shift, "Squared norm of the mean shift of row 1");
  app->add_flag("--allow-large", o.allow_large, "Lift the desk-scale guardrail");
  app->add_flag("--samples", o.samples, "Embed per-replication samples in the report");
  app->add_option("--samples-csv", o.samples_csv, "Write per-replication samples as CSV");
  app->add_option("--out", o.out, "Output CSV (simulate sample)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maxima of interpoint distances and pair-indexed random walks", "extint"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--threads", ctx.globals.threads, "Worker cap (0 = all cores); env EXTINT_THREADS");
  app.add_flag("--deterministic", ctx.globals.deterministic, "Omit timings from the report");
  app.add_option("--output", ctx.globals.output, "Write the JSON report to this file");
  app.set_version_flag("--version", std::string(kVersion));

  std::uint64_t n = 0;
  std::uint64_t p = 0;
  MomentOpts moments;
  DataOpts data;
  auto* normalize = app.add_subcommand("normalize", "Centering and scaling constants");
  normalize->add_option("--n", n)->required();
  normalize->add_option("--p", p)->required();
  add_moment_opts(normalize, moments);

  double q = 2.0;
  bool root = false;
  auto* maxdist = app.add_subcommand("maxdist", "Largest interpoint distance of CSV rows");
  add_data_opts(maxdist, data);
  maxdist->add_option("--q", q, "Norm exponent");
  maxdist->add_flag("--root", root, "Report the distance itself instead of its q-th power");
  add_moment_opts(maxdist, moments);

  double alpha = 0.05;
  auto* test_means = app.add_subcommand("test-means", "Max-distance test of equal means");
  add_data_opts(test_means, data);
  add_moment_opts(test_means, moments);
  test_means->add_option("--alpha", alpha);

  std::string layout = "np";
  std::optional<double> cov_rho;
  std::string cov_lambda;
  auto* cov_max = app.add_subcommand("cov-max", "Largest off-diagonal sample covariance entry");
  add_data_opts(cov_max, data);
  cov_max->add_option("--layout", layout, "np: rows are observations; pn: rows are variables");
  cov_max->add_option("--rho", cov_rho, "Population equicorrelation for normalization");
  cov_max->add_option("--lambda", cov_lambda, "Declared limit of rho sqrt(log p)");

  std::optional<double> marginal;
  std::optional<double> joint;
  std::optional<double> cs_rho;
  std::optional<double> cs_x;
  double b3 = 0.0;
  auto* chenstein = app.add_subcommand("chenstein", "Poisson approximation bounds");
  chenstein->add_option("--p", p)->required();
  chenstein->add_option("--marginal", marginal);
  chenstein->add_option("--joint", joint);
  chenstein->add_option("--b3", b3);
  chenstein->add_option("--rho", cs_rho, "Gaussian sharing correlation");
  chenstein->add_option("--x", cs_x, "Level: threshold d + x / d");

  double o_rho = 0.0;
  double o_t = 0.0;
  std::uint64_t o_d = 2;
  double o_x = 0.0;
  double o_alpha = 0.05;
  double o_p = 100.0;
  double o_n = 100.0;
  double o_skew = 0.0;
  auto* oracle = app.add_subcommand("oracle", "Reference values");
  oracle->require_subcommand(1);
  std::string oracle_name;
  for (const char* name : {"orthant", "asymptote", "normal", "gumbel", "vmoments", "rate", "ld"}) {
    auto* sub = oracle->add_subcommand(name);
    sub->add_option("--rho", o_rho);
    sub->add_option("--t", o_t);
    sub->add_option("--d", o_d);
    sub->add_option("--x", o_x);
    sub->add_option("--alpha", o_alpha);
    sub->add_option("--p", o_p);
    sub->add_option("--n", o_n);
    sub->add_option("--skew", o_skew);
    sub->callback([&oracle_name, name] { oracle_name = name; });
  }

  SimOpts sim;
  std::string sim_name;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  simulate->require_subcommand(1);
  for (const char* name : {"gumbel", "joint", "first-order", "pointprocess", "orderstats", "vmoment",
                           "cov-regime", "meantest", "sample"}) {
    auto* sub = simulate->add_subcommand(name);
    add_sim_opts(sub, sim);
    sub->callback([&sim_name, name] { sim_name = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string subcommand;
  try {
    if (*normalize) {
      subcommand = "normalize";
      do_normalize(ctx, n, p, moments);
    } else if (*maxdist) {
      subcommand = "maxdist";
      do_maxdist(ctx, data, q, root, moments);
    } else if (*test_means) {
      subcommand = "test-means";
      do_test_means(ctx, data, moments, alpha);
    } else if (*cov_max) {
      subcommand = "cov-max";
      do_cov_max(ctx, data, layout, cov_rho, cov_lambda);
    } else if (*chenstein) {
      subcommand = "chenstein";
      do_chenstein(ctx, p, marginal, joint, b3, cs_rho, cs_x);
    } else if (*oracle) {
      subcommand = "oracle";
      do_oracle(ctx, oracle_name, o_rho, o_t, o_d, o_x, o_alpha, o_p, o_n, o_skew);
    } else if (*simulate) {
      subcommand = "simulate";
      do_simulate(ctx, sim_name, sim);
    }
  } catch (const InputError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  json manifest = {{"subcommand", subcommand}, {"config", ctx.config},
                   {"version", std::string(kVersion)}};
  if (ctx.config.contains("master_seed")) manifest["master_seed"] = ctx.config["master_seed"];
  if (!ctx.globals.deterministic) {
    manifest["runtime_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  json report = {{"schema", 1}, {"manifest", manifest}, {"results", ctx.results}};
  if (ctx.samples) report["samples"] = *ctx.samples;

  const std::string text = report.dump(2) + "\n";
  if (ctx.globals.output.empty()) {
    out << text;
  } else {
    std::ofstream f(ctx.globals.output);
    if (!f) {
      err << "data error: cannot write " << ctx.globals.output << '\n';
      return kExitData;
    }
    f << text;
  }
  return kExitOk;
}

}  // namespace extint::cli
