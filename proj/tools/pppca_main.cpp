#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pppca/baselines.hpp"
#include "pppca/csv.hpp"
#include "pppca/errors.hpp"
#include "pppca/parallel.hpp"
#include "pppca/report.hpp"
#include "pppca/select.hpp"
#include "pppca/simgen.hpp"
#include "pppca/spectrum.hpp"
#include "pppca/version.hpp"

namespace {

using nlohmann::json;
using namespace pppca;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::vector<std::string> parse_methods(const std::string& arg) {
  if (arg.empty() || arg == "all") return all_methods();
  std::vector<std::string> out;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(all_methods().begin(), all_methods().end(), item) ==
        all_methods().end())
      throw RangeError("unknown method '" + item + "'");
    out.push_back(item);
  }
  if (out.empty()) throw RangeError("no methods selected");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write output file: " + path);
  out << content;
}

int exit_code_for(const Error& e) {
  const auto& k = e.kind();
  if (k == "NumericalError" || k == "RangeError" || k == "DomainError") return 2;
  return 1;
}

void print_error(const Error& e) {
  json err = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
  std::cout << err.dump(2) << "\n";
}

struct CommonFlags {
  int threads = 0;
};

struct EstimateArgs {
  std::string input;
  std::string format = "csv";
  std::string orientation = "units-as-rows";
  std::string methods = "all";
  bool no_standardize = false;
  bool rank_normal = false;
  bool drop_constant = false;
  std::size_t t_points = 0;
  double alpha = 0.05;
  bool lawley_classical = false;
  std::uint64_t seed = 0;
  std::string output;
};

json spectrum_json(const EigenSpectrum& spectrum) {
  json top = json::array();
  const std::size_t limit = std::min<std::size_t>(10, spectrum.eigenvalues.size());
  for (std::size_t i = 0; i < limit; ++i) top.push_back(spectrum.eigenvalues[i]);
  return {{"n", spectrum.n}, {"m", spectrum.m}, {"top_eigenvalues", top}};
}

json report_json(const EstimateReport& r) {
  json j = {{"k_hat", r.k_hat}, {"k_first", r.k_first}};
  for (const auto& [name, values] : r.diagnostics) j[name] = values;
  return j;
}

int cmd_estimate(const EstimateArgs& a) {
  const TableFormat fmt = a.format == "tsv" ? TableFormat::kTsv : TableFormat::kCsv;
  const Orientation ori = a.orientation == "units-as-columns"
                              ? Orientation::kUnitsAsColumns
                              : Orientation::kUnitsAsRows;
  const DataMatrix data = load_matrix(a.input, fmt, ori);

  SpectrumOptions sopts;
  sopts.standardize = !a.no_standardize;
  sopts.standardize_options.mode =
      a.rank_normal ? StandardizeMode::kRankInverseNormal : StandardizeMode::kZScore;
  sopts.standardize_options.drop_constant_features = a.drop_constant;
  const EigenSpectrum spectrum = sample_spectrum(data, sopts);

  EstimateOptions eopts;
  eopts.t_points = a.t_points;
  eopts.alpha = a.alpha;
  eopts.lawley_variant =
      a.lawley_classical ? LawleyVariant::kClassical : LawleyVariant::kAsPrinted;

  json methods = json::object();
  json grid;
  for (const auto& method : parse_methods(a.methods)) {
    try {
      VoteTally tally;
      EstimateReport report;
      const auto k = run_method(method, spectrum, eopts, &tally, &report);
      if (!k) throw DegenerateSpectrum(method + " failed on this spectrum");
      if (method == "pppca") {
        json votes = json::object();
        for (const auto& [kk, c] : tally.counts) votes[std::to_string(kk)] = c;
        methods[method] = {{"k_hat", *k},
                           {"votes", votes},
                           {"skipped", tally.skipped.size()}};
        grid = {{"lo", tally.grid.front()},
                {"hi", tally.grid.back()},
                {"T", tally.grid.size()}};
      } else {
        methods[method] = report_json(report);
      }
      std::cout << method << " k_hat=" << *k << "\n";
    } catch (const Error& e) {
      methods[method] = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
      std::cout << method << " failed: " << e.what() << "\n";
    }
  }

  json out = {{"schema_version", kReportSchemaVersion},
              {"generated_at", iso_timestamp()},
              {"input",
               {{"kind", "file"},
                {"path", a.input},
                {"format", a.format},
                {"orientation", a.orientation},
                {"standardize", !a.no_standardize},
                {"standardize_mode", a.rank_normal ? "rank-inverse-normal" : "zscore"},
                {"drop_constant", a.drop_constant}}},
              {"seed", a.seed},
              {"spectrum", spectrum_json(spectrum)},
              {"methods", methods},
              {"versions", {{"pppca", kVersion}}}};
  if (!grid.is_null()) out["grid"] = grid;

  if (!a.output.empty()) write_file(a.output, out.dump(2) + "\n");
  return 0;
}

struct SimulateArgs {
  std::string scenario;
  std::size_t replicates = 20;
  std::string methods = "all";
  std::uint64_t seed = 0;
  std::size_t t_points = 0;
  double alpha = 0.05;
  bool lawley_classical = false;
  std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
  const Scenario s = load_scenario(a.scenario);
  EstimateOptions eopts;
  eopts.t_points = a.t_points;
  eopts.alpha = a.alpha;
  eopts.lawley_variant =
      a.lawley_classical ? LawleyVariant::kClassical : LawleyVariant::kAsPrinted;

  const auto results =
      run_replicates(s, parse_methods(a.methods), a.replicates, a.seed, eopts);
  if (!a.output.empty()) write_file(a.output, replicate_csv(results));

  const auto summaries = summarize_replicates(results, s.k_star);
  std::cout << "scenario " << s.id << ": n=" << s.n << " m=" << s.m
            << " k_star=" << s.k_star << " replicates=" << a.replicates << "\n"
            << summary_text(summaries, s.k_star);
  return 0;
}

struct BenchArgs {
  std::string preset;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

Scenario make_scenario(std::size_t n, std::size_t m, std::size_t k_star, double sigma2,
                       double d2_min) {
  Scenario s;
  std::ostringstream id;
  id << "k" << k_star << "_s" << sigma2 << "_d" << d2_min << "_m" << m;
  s.id = id.str();
  s.n = n;
  s.m = m;
  s.k_star = k_star;
  s.sigma2 = sigma2;
  s.d2_min = d2_min;
  return s;
}

int cmd_bench(const BenchArgs& a) {
  const std::vector<std::string> presets = {"fig3", "fig4", "fig5", "fig6-desk"};
  if (std::find(presets.begin(), presets.end(), a.preset) == presets.end()) {
    std::ostringstream msg;
    msg << "unknown preset '" << a.preset << "'; valid presets:";
    for (const auto& p : presets) msg << ' ' << p;
    throw ParseError(msg.str());
  }
  std::filesystem::create_directories(a.output_dir);

  // Desk-scale grids: 20 (or 10) replicates, m capped at 10000, the
  // sigma2 x d2 corners only.
  std::vector<Scenario> scenarios;
  std::size_t replicates = 20;
  if (a.preset == "fig3" || a.preset == "fig4") {
    for (std::size_t k_star : {5, 10})
      for (double sigma2 : {0.2, 0.9})
        for (double d2 : {0.2, 0.5})
          scenarios.push_back(make_scenario(100, 10000, k_star, sigma2, d2));
  } else {
    replicates = 10;
    const std::size_t k_star = a.preset == "fig5" ? 20 : 10;
    for (const auto& [sigma2, d2] :
         std::vector<std::pair<double, double>>{{0.5, 0.5}, {0.9, 0.2}})
      for (std::size_t m : {500, 1000, 2000, 5000, 10000})
        scenarios.push_back(make_scenario(100, m, k_star, sigma2, d2));
  }

  std::ostringstream summary;
  std::ostringstream plot;
  summary << "scenario_id,k_star,sigma2,d2_min,m,method,n_ok,mean_k,median_k,"
             "proportion_correct\n";
  if (a.preset == "fig4") {
    plot << "k_star,sigma2,d2_min,method,proportion_correct\n";
  } else {
    plot << "k_star,sigma2,d2_min,m,method,median_k\n";
  }

  for (const auto& s : scenarios) {
    std::cout << "running " << s.id << " (" << replicates << " replicates)\n";
    try {
      const auto results = run_replicates(s, all_methods(), replicates, a.seed);
      const auto summaries = summarize_replicates(results, s.k_star);
      for (const auto& ms : summaries) {
        summary << s.id << ',' << s.k_star << ',' << s.sigma2 << ',' << s.d2_min << ','
                << s.m << ',' << ms.method << ',' << ms.n_ok << ','
                << csv::format_full(ms.mean_k) << ',' << csv::format_full(ms.median_k)
                << ',' << csv::format_full(ms.proportion_correct) << '\n';
        if (a.preset == "fig4") {
          plot << s.k_star << ',' << s.sigma2 << ',' << s.d2_min << ',' << ms.method
               << ',' << csv::format_full(ms.proportion_correct) << '\n';
        } else {
          plot << s.k_star << ',' << s.sigma2 << ',' << s.d2_min << ',' << s.m << ','
               << ms.method << ',' << csv::format_full(ms.median_k) << '\n';
        }
      }
    } catch (const Error& e) {
      summary << s.id << ",,,,,error: " << e.kind() << ",,,,\n";
      std::cerr << "scenario " << s.id << " failed: " << e.what() << "\n";
    }
  }

  const auto base = std::filesystem::path(a.output_dir) / a.preset;
  write_file(base.string() + "_summary.csv", summary.str());
  write_file(base.string() + "_plot.csv", plot.str());
  std::cout << "wrote " << base.string() << "_summary.csv and _plot.csv\n";
  return 0;
}

struct ProfileArgs {
  std::string input;
  std::string format = "csv";
  std::string orientation = "units-as-rows";
  bool no_standardize = false;
  std::string scenario;
  bool population = false;
  std::uint64_t seed = 0;
  std::string k_list;
  double delta_min = -1.0;
  double delta_max = -1.0;
  std::size_t points = 200;
  std::string output;
};

int cmd_profile(const ProfileArgs& a) {
  EigenSpectrum spectrum;
  if (!a.input.empty()) {
    const TableFormat fmt = a.format == "tsv" ? TableFormat::kTsv : TableFormat::kCsv;
    const Orientation ori = a.orientation == "units-as-columns"
                                ? Orientation::kUnitsAsColumns
                                : Orientation::kUnitsAsRows;
    SpectrumOptions sopts;
    sopts.standardize = !a.no_standardize;
    spectrum = sample_spectrum(load_matrix(a.input, fmt, ori), sopts);
  } else if (!a.scenario.empty()) {
    const Scenario s = load_scenario(a.scenario);
    spectrum = a.population ? make_population_spectrum(s) : sample_spectrum_only(s, a.seed);
  } else {
    throw ParseError("profile: need --input or --scenario");
  }

  const SigmaProfile sp(spectrum);
  const double m = static_cast<double>(spectrum.m);
  const std::size_t n = spectrum.n;

  std::vector<std::size_t> ks;
  if (!a.k_list.empty()) {
    std::stringstream ss(a.k_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const long v = std::stol(item);
      if (v < 1 || v > static_cast<long>(n - 1))
        throw RangeError("profile: k must be in 1..n-1");
      ks.push_back(static_cast<std::size_t>(v));
    }
  } else {
    const auto est = pppca_estimate(spectrum, m);
    if (est.k > 1) ks.push_back(est.k - 1);
    ks.push_back(est.k);
    if (est.k + 1 <= n - 1) ks.push_back(est.k + 1);
  }

  double lo = a.delta_min;
  double hi = a.delta_max;
  if (hi <= 0.0 || lo < 0.0) {
    const auto grid = build_grid(sp, 8);
    if (lo < 0.0) lo = grid.front();
    if (hi <= 0.0) hi = grid.back();
  }

  std::vector<double> deltas;
  if (a.points < 2) throw RangeError("profile: need at least 2 points");
  if (lo == 0.0) {
    deltas.push_back(0.0);
    const double start = hi * 1e-8;
    const double step = std::log(hi / start) / static_cast<double>(a.points - 2);
    for (std::size_t t = 0; t + 1 < a.points; ++t)
      deltas.push_back(start * std::exp(step * static_cast<double>(t)));
  } else {
    const double step = std::log(hi / lo) / static_cast<double>(a.points - 1);
    for (std::size_t t = 0; t < a.points; ++t)
      deltas.push_back(lo * std::exp(step * static_cast<double>(t)));
  }

  std::ostringstream out;
  out << "k,delta_tilde,penalized_profile_loglik,diff_vs_km1,diff_vs_kp1,u_a,u_b\n";
  for (const std::size_t k : ks) {
    std::string ua;
    std::string ub;
    try {
      if (k <= n - 2) ua = csv::format_full(bound_u_a(sp, k));
    } catch (const Error&) {
    }
    try {
      ub = csv::format_full(bound_u_b(sp, k));
    } catch (const Error&) {
    }
    for (const double dt : deltas) {
      out << k << ',' << csv::format_full(dt) << ',';
      const auto v = try_penalized_profile_loglik(sp, m, k, dt);
      if (v) out << csv::format_full(*v);
      out << ',';
      if (v && k >= 2) {
        const auto prev = try_penalized_profile_loglik(sp, m, k - 1, dt);
        if (prev) out << csv::format_full(*v - *prev);
      }
      out << ',';
      if (v && k + 1 <= n - 1) {
        const auto next = try_penalized_profile_loglik(sp, m, k + 1, dt);
        if (next) out << csv::format_full(*v - *next);
      }
      out << ',' << ua << ',' << ub << '\n';
    }
  }

  if (a.output.empty()) {
    std::cout << out.str();
  } else {
    write_file(a.output, out.str());
    std::cout << "wrote " << a.output << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective-dimension estimation from penalized probabilistic PCA"};
  app.require_subcommand(1);

  CommonFlags common;
  app.add_option("--threads", common.threads,
                 "worker threads (default: PPPCA_THREADS or OpenMP)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "estimate k for a data matrix");
  estimate->add_option("--input", est.input, "CSV/TSV data file")->required();
  estimate->add_option("--format", est.format, "csv|tsv")
      ->check(CLI::IsMember({"csv", "tsv"}));
  estimate->add_option("--orientation", est.orientation,
                       "units-as-rows|units-as-columns")
      ->check(CLI::IsMember({"units-as-rows", "units-as-columns"}));
  estimate->add_option("--methods", est.methods, "comma list or 'all'");
  estimate->add_flag("--no-standardize", est.no_standardize,
                     "skip per-feature standardization");
  estimate->add_flag("--rank-normal", est.rank_normal,
                     "rank-based inverse-normal transform instead of z-scores");
  estimate->add_flag("--drop-constant", est.drop_constant, "drop constant features");
  estimate->add_option("--T", est.t_points, "tuning grid size (default 50n)");
  estimate->add_option("--alpha", est.alpha, "significance level for the eigenvalue test");
  estimate->add_flag("--lawley-classical", est.lawley_classical,
                     "classical large-sample variant of the eigenvalue test");
  estimate->add_option("--seed", est.seed, "seed recorded in the report");
  estimate->add_option("--output", est.output, "report JSON path");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run seeded replicates of a scenario");
  simulate->add_option("--scenario", sim.scenario, "scenario config file")->required();
  simulate->add_option("--replicates", sim.replicates, "replicate count");
  simulate->add_option("--methods", sim.methods, "comma list or 'all'");
  simulate->add_option("--seed", sim.seed, "base seed");
  simulate->add_option("--T", sim.t_points, "tuning grid size (default 50n)");
  simulate->add_option("--alpha", sim.alpha, "significance level");
  simulate->add_flag("--lawley-classical", sim.lawley_classical,
                     "classical large-sample variant of the eigenvalue test");
  simulate->add_option("--output", sim.output, "replicate CSV path");

  BenchArgs bench;
  auto* benchcmd = app.add_subcommand("bench", "reproduce the study grids at desk scale");
  benchcmd->add_option("--preset", bench.preset, "fig3|fig4|fig5|fig6-desk")->required();
  benchcmd->add_option("--output-dir", bench.output_dir, "output directory");
  benchcmd->add_option("--seed", bench.seed, "base seed");

  ProfileArgs prof;
  auto* profile = app.add_subcommand("profile", "emit penalized log-likelihood curves");
  profile->add_option("--input", prof.input, "CSV/TSV data file");
  profile->add_option("--format", prof.format, "csv|tsv")
      ->check(CLI::IsMember({"csv", "tsv"}));
  profile->add_option("--orientation", prof.orientation,
                      "units-as-rows|units-as-columns")
      ->check(CLI::IsMember({"units-as-rows", "units-as-columns"}));
  profile->add_flag("--no-standardize", prof.no_standardize,
                    "skip per-feature standardization");
  profile->add_option("--scenario", prof.scenario, "scenario config file");
  profile->add_flag("--population", prof.population,
                    "use the population spectrum instead of sampling");
  profile->add_option("--seed", prof.seed, "seed for the sampled spectrum");
  profile->add_option("--k", prof.k_list, "comma list of k values");
  profile->add_option("--delta-min", prof.delta_min, "lower end of the delta range");
  profile->add_option("--delta-max", prof.delta_max, "upper end of the delta range");
  profile->add_option("--points", prof.points, "points per k");
  profile->add_option("--output", prof.output, "curve CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (common.threads > 0) pppca::par::set_threads(common.threads);

  try {
    if (estimate->parsed()) return cmd_estimate(est);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (benchcmd->parsed()) return cmd_bench(bench);
    if (profile->parsed()) return cmd_profile(prof);
  } catch (const Error& e) {
    print_error(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    json err = {{"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return 0;
}
