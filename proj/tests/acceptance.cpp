// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qie/cli/figures.hpp"
#include "qie/closedform.hpp"
#include "qie/dynamics.hpp"
#include "qie/engine.hpp"
#include "qie/metrics.hpp"
#include "qie/statmech.hpp"

namespace {

using qie::CouplingMode;
constexpr auto kCol = CouplingMode::collective;
constexpr auto kInd = CouplingMode::independent;
constexpr CouplingMode kModes[] = {kCol, kInd};

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome hot_limit() {
  double worst = 0;
  for (int n = 1; n <= 50; ++n) {
    for (auto mode : kModes) {
      const auto d = qie::work_statistics_direct({n, 1.0, 0.0}, mode);
      worst = std::max(worst, oracle::rel_err(qie::mean_work_hot(n, mode), d.mean));
      worst = std::max(worst, oracle::rel_err(qie::variance_hot(n, mode), d.variance));
    }
  }
  return {worst < 1e-13, fmt("worst rel err %.2e", worst)};
}

Outcome lambda_asymptote() {
  auto dev = [](int n) {
    return std::abs(*qie::collective_advantage_ratio({n, 1.0, 0.0}) * 4 / std::sqrt(2 * std::numbers::pi * n) - 1);
  };
  const double d400 = dev(400), d2000 = dev(2000);
  return {d400 < 0.02 && d2000 < 0.01, fmt("dev(400)=%.4f dev(2000)=%.4f", d400, d2000)};
}

Outcome appendix_formulas() {
  std::map<std::string, double> worst;
  const double betas[] = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
  for (int n = 1; n <= 20; ++n) {
    for (double beta : betas) {
      for (auto mode : kModes) {
        const auto ref = mode == kCol ? oracle::naive_collective(n, beta) : oracle::pascal_independent(n, beta);
        const auto mean_id = std::string(qie::appendix_formula_id(mode, n, qie::Moment::mean));
        const auto var_id = std::string(qie::appendix_formula_id(mode, n, qie::Moment::variance));
        worst[mean_id] = std::max(worst[mean_id], oracle::rel_err(qie::mean_work_finite_T(n, beta, 1.0, mode), double(ref.mean)));
        worst[var_id] = std::max(worst[var_id],
                                 oracle::rel_err(qie::variance_finite_T(n, beta, 1.0, mode), double(ref.variance())));
      }
    }
  }
  bool ok = worst.size() == 8;
  std::ostringstream s;
  for (const auto& [id, w] : worst) {
    ok = ok && w < 1e-9;
    s << id << '=' << fmt("%.1e", w) << ' ';
  }
  return {ok, s.str()};
}

Outcome independent_oracle() {
  double worst = 0;
  const double betas[] = {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
  for (int n = 1; n <= 14; ++n) {
    for (double beta : betas) {
      const auto e = oracle::enumerate_independent(n, beta);
      const auto law = oracle::enumerate_independent_law(n, beta);
      const auto s = qie::work_statistics_direct({n, 1.0, beta}, kInd);
      const double var = double(e.variance());
      worst = std::max({worst, oracle::rel_err(s.mean, double(e.mean)),
                        oracle::rel_err(s.second_moment, double(e.second)), oracle::rel_err(s.variance, var),
                        oracle::rel_err(s.nsr, var / double(e.mean * e.mean))});
      const auto p = qie::magnetization_distribution({n, 1.0, beta}, kInd).probs();
      for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, oracle::rel_err(p[i], double(law[i])));
    }
  }
  return {worst < 1e-12, fmt("worst rel err %.2e", worst)};
}

Outcome nsr_asymptotes() {
  const int n = 100000;
  const double col = qie::work_statistics_direct({n, 1.0, 0.0}, kCol).nsr;
  const double ind = qie::work_statistics_direct({n, 1.0, 0.0}, kInd).nsr;
  const double dc = std::abs(col / (5.0 / 3) - 1);
  const double di = std::abs(ind / (std::numbers::pi - 1) - 1);
  bool ordered = col < ind;
  int first_bad = 0;
  for (int m = 2; m <= 2000 && ordered; ++m) {
    ordered = qie::work_statistics_direct({m, 1.0, 0.0}, kCol).nsr <
              qie::work_statistics_direct({m, 1.0, 0.0}, kInd).nsr;
    if (!ordered) first_bad = m;
  }
  std::string detail = fmt("nsr_col=%.5f (dev %.4f) nsr_ind=%.5f", col, dc, ind) + fmt(" (dev %.4f)", di);
  detail += ordered ? "; col < ind for n = 2..2000 and 1e5" : " ; ordering broken at n=" + std::to_string(first_bad);
  return {dc < 0.005 && di < 0.005 && ordered, detail};
}

std::vector<double> second_law_betas() {
  std::vector<double> b{0.0};
  for (int k = 0; k < 200; ++k) b.push_back(1e-4 * std::pow(5e4, k / 199.0));
  return b;
}

Outcome second_law() {
  double min_sigma = INFINITY;
  for (int n = 1; n <= 50; ++n) {
    for (double beta : second_law_betas()) {
      for (auto mode : kModes) {
        const auto s = qie::work_statistics_direct({n, 1.0, beta}, mode);
        min_sigma = std::min(min_sigma, -beta * s.mean + std::numbers::ln2);
        min_sigma = std::min(min_sigma, qie::entropy_production(s, beta));
      }
    }
  }
  return {min_sigma >= -1e-12, fmt("min Sigma %.6f over 50 x 201 x 2 points", min_sigma)};
}

Outcome tur_regions() {
  std::vector<double> betas;
  for (int k = 0; k < 300; ++k) betas.push_back(1e-3 * std::pow(5e3, k / 299.0));
  std::ostringstream s;
  bool ok = true;
  for (int n : {25, 50}) {
    double hot_region = NAN;
    double overtake = NAN;
    for (double beta : betas) {
      const auto c = qie::mode_comparison({n, 1.0, beta});
      if (!c.q_col || !c.q_ind) continue;
      if (std::isnan(hot_region) && *c.q_col < *c.q_ind && *c.q_ind < 2) hot_region = beta;
      if (std::isnan(overtake) && *c.q_col > *c.q_ind) overtake = beta;
    }
    ok = ok && !std::isnan(hot_region);
    if (n == 25) ok = ok && !std::isnan(overtake) && overtake > hot_region;
    s << "n=" << n << ": Q_col<Q_ind<2 at beta=" << fmt("%.4g", hot_region) << ", Q_col>Q_ind from beta="
      << fmt("%.4g", overtake) << "; ";
  }
  return {ok, s.str()};
}

Outcome lindblad() {
  double worst_td = 0, worst_drift = 0, worst_herm = 0, min_eig = INFINITY;
  bool converged = true;
  for (int n : {1, 2, 4, 8, 12}) {
    for (double beta : {0.1, 1.0, 3.0}) {
      const qie::BathSpec bath{beta, 1.0, 1.0};
      const auto ops = qie::build_collective_operators(n);
      const auto res = qie::evolve_to_steady_state(qie::DickeState::maximally_mixed(n).matrix(), ops, bath, 1e-11,
                                                   2000.0);
      converged = converged && res.converged;
      worst_td = std::max(worst_td, qie::trace_distance(res.rho_ss, qie::DickeState::gibbs(n, beta, 1.0).matrix()));
      worst_drift = std::max(worst_drift, res.diagnostics.max_trace_drift);
      worst_herm = std::max(worst_herm, res.diagnostics.max_hermiticity_error);
      min_eig = std::min(min_eig, res.diagnostics.min_eigenvalue);
    }
  }
  const bool ok = converged && worst_td < 1e-8 && worst_drift < 1e-12 && worst_herm < 1e-12 && min_eig > -1e-10;
  return {ok, fmt("max trace distance %.2e, trace drift %.1e, min eigenvalue %.1e", worst_td, worst_drift, min_eig)};
}

Outcome monte_carlo() {
  std::ostringstream s;
  bool ok = true;
  for (double beta : {0.0, 0.5}) {
    for (auto mode : kModes) {
      const auto law = qie::magnetization_distribution({10, 1.0, beta}, mode).probs();
      long double mean = 0;
      for (std::size_t i = 0; i < law.size(); ++i) {
        const int tm = -10 + 2 * int(i);
        if (tm > 0) mean += law[i] * tm;
      }
      long double m2 = 0, m4 = 0;
      for (std::size_t i = 0; i < law.size(); ++i) {
        const int tm = -10 + 2 * int(i);
        const long double d = (tm > 0 ? tm : 0) - mean;
        m2 += law[i] * d * d;
        m4 += law[i] * d * d * d * d;
      }
      const std::uint64_t N = 1'000'000;
      const double var_se = std::sqrt(double(m4 - m2 * m2) / N);
      int passing = 0;
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto r = qie::run_cycles({10, 1.0, beta}, mode, N, seed);
        const double z_mean = (r.empirical_mean - double(mean)) / r.standard_error;
        const double z_var = (r.empirical_variance - double(m2)) / var_se;
        if (std::abs(z_mean) < 4 && std::abs(z_var) < 4) ++passing;
      }
      ok = ok && passing >= 19;
      s << qie::to_string(mode) << " beta=" << beta << ": " << passing << "/20; ";
    }
  }
  return {ok, s.str()};
}

Outcome large_n() {
  double worst_mean = 0, worst_second = 0;
  for (double a : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const double beta = a / 200;
    const auto d = qie::work_statistics_direct({200, 1.0, beta}, kCol);
    worst_mean = std::max(worst_mean, oracle::rel_err(qie::mean_work_large_n(200, beta, 1.0), d.mean));
    worst_second = std::max(worst_second, oracle::rel_err(qie::second_moment_large_n(200, beta, 1.0), d.second_moment));
  }
  bool decreasing = true;
  for (double a : {0.2, 0.05}) {
    double prev_m = INFINITY, prev_s = INFINITY;
    for (int n : {50, 100, 200, 400, 800, 1600}) {
      const double beta = a / n;
      const auto d = qie::work_statistics_direct({n, 1.0, beta}, kCol);
      const double em = oracle::rel_err(qie::mean_work_large_n(n, beta, 1.0), d.mean);
      const double es = oracle::rel_err(qie::second_moment_large_n(n, beta, 1.0), d.second_moment);
      decreasing = decreasing && em < prev_m && es < prev_s;
      prev_m = em;
      prev_s = es;
    }
  }
  return {worst_mean < 0.02 && worst_second < 0.02 && decreasing,
          fmt("n=200: mean err %.4f, <W^2> err %.4f; error decreasing in n: ", worst_mean, worst_second) +
              (decreasing ? "yes" : "no")};
}

Outcome figures() {
  const auto dir = std::filesystem::temp_directory_path() / "qie_acceptance_figures";
  std::filesystem::remove_all(dir);
  int total = 0, passed = 0;
  std::string failed;
  for (const auto& id : qie::cli::figure_ids()) {
    const auto res = qie::cli::run_figure(id, {dir.string(), 2, true, qie::cli::OutputFormat::csv});
    for (const auto& c : res.claims) {
      ++total;
      if (c.passed) ++passed;
      else failed += " " + id + ":" + c.id;
    }
  }
  return {total > 0 && passed == total, std::to_string(passed) + "/" + std::to_string(total) + " claims" + failed};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "hot-limit closed forms", 1, hot_limit},
      {2, "lambda_w asymptote", 5, lambda_asymptote},
      {3, "appendix formulas A1-A8", 30, appendix_formulas},
      {4, "independent-mode enumeration", 60, independent_oracle},
      {5, "nsr asymptotes and ordering", 0, nsr_asymptotes},
      {6, "second law", 0, second_law},
      {7, "TUR regions", 0, tur_regions},
      {8, "Lindblad steady state", 120, lindblad},
      {9, "Monte Carlo consistency", 0, monte_carlo},
      {10, "large-n approximations", 0, large_n},
      {11, "figure claims", 0, figures},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit == 0 || secs < c.time_limit;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %d (%s): %s [%.2fs%s]\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
