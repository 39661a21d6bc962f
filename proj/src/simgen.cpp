#include "pppca/simgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pppca/errors.hpp"
#include "pppca/kernels.hpp"
#include "pppca/linalg.hpp"
#include "pppca/parallel.hpp"
#include "pppca/rng.hpp"

namespace pppca {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void Scenario::validate() const {
  if (n < 3 || m < 2)
    throw InfeasibleScenario("scenario needs n >= 3 and m >= 2");
  if (!(sigma2 > 0.0) || sigma2 > 1.0)
    throw InfeasibleScenario("sigma2 must be in (0, 1]");
  if (sigma2 == 1.0) {
    if (k_star != 0)
      throw InfeasibleScenario("sigma2 = 1 leaves no signal budget; set k_star = 0");
    return;
  }
  if (k_star < 1 || k_star > n - 1)
    throw InfeasibleScenario("k_star must be in 1..n-1");
  const double budget = static_cast<double>(n) * (1.0 - sigma2);
  if (!explicit_d2.empty()) {
    if (explicit_d2.size() != k_star)
      throw InfeasibleScenario("explicit_d2 length must equal k_star");
    double sum = 0.0;
    for (std::size_t i = 0; i < explicit_d2.size(); ++i) {
      if (!(explicit_d2[i] > 0.0))
        throw InfeasibleScenario("explicit_d2 values must be positive");
      if (i > 0 && explicit_d2[i] > explicit_d2[i - 1] + 1e-12)
        throw InfeasibleScenario("explicit_d2 must be non-increasing");
      sum += explicit_d2[i];
    }
    if (std::abs(sum - budget) > 1e-8 * static_cast<double>(n))
      throw InfeasibleScenario("explicit_d2 must sum to n (1 - sigma2)");
  } else {
    if (!(d2_min > 0.0)) throw InfeasibleScenario("d2_min must be positive");
    if (static_cast<double>(k_star) * d2_min > budget + 1e-12)
      throw InfeasibleScenario("k_star * d2_min exceeds the signal budget n (1 - sigma2)");
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  Scenario s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("scenario line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    try {
      if (key == "id") {
        s.id = value;
      } else if (key == "n") {
        s.n = std::stoul(value);
      } else if (key == "m") {
        s.m = std::stoul(value);
      } else if (key == "k_star") {
        s.k_star = std::stoul(value);
      } else if (key == "sigma2") {
        s.sigma2 = std::stod(value);
      } else if (key == "d2_min") {
        s.d2_min = std::stod(value);
      } else if (key == "explicit_d2") {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const std::string v = trim(item);
          if (!v.empty()) s.explicit_d2.push_back(std::stod(v));
        }
      } else {
        throw ParseError("scenario line " + std::to_string(lineno) + ": unknown key '" +
                         key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("scenario line " + std::to_string(lineno) + ": bad value '" +
                       value + "'");
    }
  }
  s.validate();
  return s;
}

std::vector<double> scenario_d2(const Scenario& s) {
  s.validate();
  if (s.k_star == 0) return {};
  if (!s.explicit_d2.empty()) return s.explicit_d2;

  const double budget = static_cast<double>(s.n) * (1.0 - s.sigma2);
  const std::size_t k = s.k_star;
  if (k == 1) return {budget};

  // Geometric sum d2_min (rho^k - 1)/(rho - 1) is continuous and strictly
  // increasing in rho >= 1, so plain bisection cannot miss.
  auto total = [&](double rho) {
    double sum = 0.0;
    double term = s.d2_min;
    for (std::size_t i = 0; i < k; ++i) {
      sum += term;
      term *= rho;
    }
    return sum;
  };
  double lo = 1.0;
  double hi = 2.0;
  while (total(hi) < budget) hi *= 2.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (total(mid) < budget) lo = mid; else hi = mid;
    if (std::abs(total(mid) - budget) <= 1e-10) break;
  }
  const double rho = 0.5 * (lo + hi);

  std::vector<double> d2(k);
  for (std::size_t i = 1; i <= k; ++i)
    d2[i - 1] = s.d2_min * std::pow(rho, static_cast<double>(k - i));
  return d2;
}

EigenSpectrum make_population_spectrum(const Scenario& s) {
  const auto d2 = scenario_d2(s);
  std::vector<double> lam(s.n, s.sigma2);
  for (std::size_t i = 0; i < d2.size(); ++i) lam[i] = d2[i] + s.sigma2;
  // Absorb the decay-solve residual into the trace check tolerance.
  return EigenSpectrum::from_values(std::move(lam), s.m);
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw RangeError("random_orthogonal: n must be >= 1");
  const Matrix g = kernels::fill_gaussian(n, n, rng::substream(seed, 0));
  return linalg::householder_q(g);
}

DataMatrix sample_data(const Scenario& s, std::uint64_t seed) {
  s.validate();
  const auto d2 = scenario_d2(s);
  const std::size_t k = d2.size();
  const std::size_t n = s.n;
  const std::size_t m = s.m;

  Matrix w(n, k);
  if (k > 0) {
    const Matrix q = random_orthogonal(n, seed);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) w(i, j) = q(i, j) * std::sqrt(d2[j]);
  }

  const std::uint64_t key_z = rng::substream(seed, 1);
  const std::uint64_t key_e = rng::substream(seed, 2);
  const double noise_sd = std::sqrt(s.sigma2);

  DataMatrix d;
  d.values = Matrix(n, m);
  const int threads = par::max_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::size_t j = 0; j < m; ++j) {
    rng::CounterRng z_stream(rng::substream(key_z, j));
    rng::CounterRng e_stream(rng::substream(key_e, j));
    std::vector<double> z(k);
    for (std::size_t t = 0; t < k; ++t) z[t] = z_stream.next_gaussian();
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (std::size_t t = 0; t < k; ++t) v += w(i, t) * z[t];
      d.values(i, j) = v + noise_sd * e_stream.next_gaussian();
    }
  }
  (void)threads;
  return d;
}

EigenSpectrum sample_spectrum_only(const Scenario& s, std::uint64_t seed) {
  SpectrumOptions opts;
  opts.standardize = false;  // generated scale already satisfies trace n
  return sample_spectrum(sample_data(s, seed), opts);
}

std::optional<std::size_t> run_method(const std::string& method,
                                      const EigenSpectrum& spectrum,
                                      const EstimateOptions& opts, VoteTally* tally_out,
                                      EstimateReport* report_out) {
  const double m = static_cast<double>(spectrum.m);
  try {
    if (method == "pppca") {
      const auto est = pppca_estimate(spectrum, m, opts.t_points);
      if (tally_out != nullptr) *tally_out = est.tally;
      return est.k;
    }
    SigmaProfile sp(spectrum);
    EstimateReport report;
    if (method == "aic") {
      report = ic_select(sp, m, InformationCriterion::kAic);
    } else if (method == "bic") {
      report = ic_select(sp, m, InformationCriterion::kBic);
    } else if (method == "cumlog") {
      report = cumlog_select(sp, opts.cumlog_k_min, opts.cumlog_variant);
    } else if (method == "vard") {
      report = vard_select(sp);
    } else if (method == "lawley") {
      report = lawley_select(sp, m, opts.alpha, opts.lawley_variant);
    } else {
      throw RangeError("unknown method: " + method);
    }
    if (report_out != nullptr) *report_out = report;
    return report.k_hat;
  } catch (const RangeError&) {
    throw;  // unknown method is a caller bug, not a data failure
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<ReplicateResult> run_replicates(const Scenario& s,
                                            const std::vector<std::string>& methods,
                                            std::size_t replicates,
                                            std::uint64_t base_seed,
                                            const EstimateOptions& opts) {
  s.validate();
  if (replicates < 1) throw RangeError("run_replicates: need at least 1 replicate");
  for (const auto& m : methods) {
    if (std::find(all_methods().begin(), all_methods().end(), m) == all_methods().end())
      throw RangeError("run_replicates: unknown method '" + m + "'");
  }

  std::vector<ReplicateResult> results(replicates);
  const int threads = par::max_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::size_t r = 0; r < replicates; ++r) {
    ReplicateResult& res = results[r];
    res.scenario_id = s.id;
    res.replicate = r;
    res.seed = rng::replicate_seed(base_seed, r);
    res.methods = methods;
    res.k_hat.resize(methods.size());
    res.wall_ms.resize(methods.size(), 0.0);
    EigenSpectrum spectrum;
    bool spectrum_ok = true;
    try {
      spectrum = sample_spectrum_only(s, res.seed);
    } catch (const Error&) {
      spectrum_ok = false;
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
      if (!spectrum_ok) continue;
      const auto t0 = std::chrono::steady_clock::now();
      res.k_hat[i] = run_method(methods[i], spectrum, opts);
      const auto t1 = std::chrono::steady_clock::now();
      res.wall_ms[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
  }
  (void)threads;
  return results;
}

}  // namespace pppca
