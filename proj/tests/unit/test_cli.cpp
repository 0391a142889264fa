#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qie/cli/app.hpp"
#include "qie/cli/config.hpp"
#include "qie/cli/exit_codes.hpp"
#include "qie/cli/figures.hpp"
#include "qie/cli/parallel.hpp"
#include "qie/cli/simulate.hpp"
#include "qie/cli/sweep.hpp"
#include "qie/cli/table.hpp"
#include "qie/cli/validate.hpp"
#include "qie/closedform.hpp"

namespace fs = std::filesystem;
using namespace qie::cli;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qie_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run_app(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

std::string cell(const Table& t, std::size_t row, std::string_view column) {
  return format_cell(t.rows[row][t.column_index(column)]);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("number formatting round-trips") {
    for (double v : {0.0, 1.0, -2.5, 1.0 / 3, 6.02214076e23, 5e-324}) {
      CHECK(parse_number(format_number(v)) == v);
    }
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(std::isnan(parse_number("nan")));
    CHECK_THROWS_AS(parse_number("1.5x"), std::invalid_argument);
  }

  TEST_CASE("CSV write and read round-trip") {
    Table t;
    t.columns = {"name", "value", "count"};
    t.add_row({std::string("plain"), 1.25, std::int64_t{3}});
    t.add_row({std::string("with,comma \"quoted\"\nline"), std::monostate{}, std::int64_t{-1}});
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    std::stringstream s;
    write_csv(t, s);
    const auto doc = read_csv(s);
    CHECK(doc.header == t.columns);
    REQUIRE(doc.records.size() == 2);
    CHECK(doc.records[1][0] == "with,comma \"quoted\"\nline");
    CHECK(doc.records[1][1].empty());
    CHECK(parse_number(doc.records[0][1]) == 1.25);
  }

  TEST_CASE("JSON lines output") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({std::int64_t{1}, std::nan("")});
    std::stringstream s;
    write_jsonl(t, s);
    const auto j = nlohmann::json::parse(s.str());
    CHECK(j["a"] == 1);
    CHECK(j["b"].is_null());
    CHECK(parse_output_format("jsonl") == OutputFormat::jsonl);
    CHECK(extension(OutputFormat::csv) == ".csv");
  }

  TEST_CASE("config parsing") {
    const auto cfg = parse_sweep_config(
        "sweep:\n"
        "  n: {from: 1, to: 5, step: 2}\n"
        "  beta: {from: 0.1, to: 10, count: 3, spacing: log, include_zero: true}\n"
        "  modes: [collective]\n"
        "  path: both\n"
        "  outputs: [mean_work, ratio_Rm]\n"
        "  ratio_m: [1, 1.5]\n");
    CHECK(cfg.n_values == std::vector<int>{1, 3, 5});
    REQUIRE(cfg.beta_values.size() == 4);
    CHECK(cfg.beta_values[0] == 0.0);
    CHECK(cfg.beta_values[2] == doctest::Approx(1.0));
    CHECK(cfg.path == SweepPath::both);
    CHECK(cfg.wants(SweepOutput::ratio_Rm));
    CHECK_FALSE(cfg.wants(SweepOutput::nsr));
    CHECK(cfg.ratio_twice_m == std::vector<int>{2, 3});
  }

  TEST_CASE("config errors carry field and line") {
    try {
      (void)parse_sweep_config("sweep:\n  n: [1, 2]\n  beta: [0.5]\n  bogus: 3\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "sweep.bogus");
      CHECK(e.line() == 4);
    }
    try {
      (void)parse_sweep_config("sweep:\n  n: [1, 0]\n  beta: [0.5]\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "sweep.n");
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_sweep_config("sweep:\n  n: [1]\n  beta: [-1]\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config("sweep:\n  n: [1]\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config("sweep:\n  n: [1\n"), ConfigError);
  }

  TEST_CASE("spaced grids") {
    const auto g = spaced_grid(0.01, 100, 5, true);
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK(g.back() == 100.0);
    const auto l = spaced_grid(0, 1, 3, false);
    CHECK(l[1] == doctest::Approx(0.5));
  }

  TEST_CASE("sweep single point") {
    SweepConfig cfg;
    cfg.n_values = {1};
    cfg.beta_values = {0.0};
    const auto r = run_sweep(cfg, 1);
    CHECK(r.failed_rows == 0);
    REQUIRE(r.table.rows.size() == 2);
    CHECK(cell(r.table, 0, "mean_work") == "0.5");
    CHECK(cell(r.table, 0, "status") == "ok");
  }

  TEST_CASE("sweep lambda_w curves cross 1") {
    SweepConfig cfg;
    cfg.n_values = {3, 10};
    cfg.beta_values = spaced_grid(0.01, 5, 40, true);
    cfg.outputs = {SweepOutput::lambda_w};
    const auto r = run_sweep(cfg, 2);
    const auto col = r.table.column_index("lambda_w");
    for (int n : {3, 10}) {
      bool above_first = false, below_later = false;
      for (const auto& row : r.table.rows) {
        if (std::get<std::int64_t>(row[0]) != n) continue;
        const double beta = std::get<double>(row[1]);
        const double lam = std::get<double>(row[col]);
        if (beta == cfg.beta_values.front()) above_first = lam > 1;
        if (beta == cfg.beta_values.back()) below_later = lam < 1;
      }
      CHECK(above_first);
      CHECK(below_later);
    }
  }

  TEST_CASE("sweep both paths agree") {
    SweepConfig cfg;
    for (int n = 1; n <= 20; ++n) cfg.n_values.push_back(n);
    cfg.beta_values = {0.0, 0.01, 0.5, 2.0};
    cfg.path = SweepPath::both;
    const auto r = run_sweep(cfg, 4);
    CHECK(r.failed_rows == 0);
    for (const auto* name : {"mean_work_discrepancy", "variance_discrepancy"}) {
      const auto c = r.table.column_index(name);
      for (const auto& row : r.table.rows) CHECK(std::get<double>(row[c]) < 1e-9);
    }
  }

  TEST_CASE("ratio columns") {
    CHECK(ratio_column(2) == "ratio_R_1");
    CHECK(ratio_column(3) == "ratio_R_1.5");
    CHECK(relative_discrepancy(0, 0) == 0);
    CHECK(relative_discrepancy(1, 2) == doctest::Approx(0.5));
  }

  TEST_CASE("fig3b hot-limit ratios") {
    const auto dir = scratch_dir("fig3b");
    const auto res = run_figure("fig3b", {dir.string(), 1, false, OutputFormat::csv});
    CHECK(res.all_passed());
    const auto doc = read_csv_file((dir / "fig3b.csv").string());
    const auto& h = doc.header;
    REQUIRE(h.size() == 4);
    auto idx = [&](const std::string& name) {
      return static_cast<std::size_t>(std::find(h.begin(), h.end(), name) - h.begin());
    };
    REQUIRE(parse_number(doc.records[0][idx("beta")]) == 0.0);
    CHECK(parse_number(doc.records[0][idx("R_3")]) == doctest::Approx(64.0 / 7));
    CHECK(parse_number(doc.records[0][idx("R_2")]) == doctest::Approx(64.0 / 42));
    CHECK(parse_number(doc.records[0][idx("R_1")]) == doctest::Approx(64.0 / 105));
    CHECK(fs::exists(dir / "fig3b_manifest.json"));
  }

  TEST_CASE("every figure passes its claims") {
    const auto dir = scratch_dir("figs");
    for (const auto& id : figure_ids()) {
      const auto res = run_figure(id, {dir.string(), 2, true, OutputFormat::csv});
      CAPTURE(id);
      CHECK(!res.claims.empty());
      for (const auto& c : res.claims) {
        CAPTURE(c.id);
        CAPTURE(c.detail);
        CHECK(c.passed);
      }
      for (const auto& f : res.files) CHECK(fs::exists(dir / f));
    }
    CHECK_THROWS_AS(run_figure("fig9", {dir.string(), 1, false, OutputFormat::csv}), std::invalid_argument);
  }

  TEST_CASE("level crossings") {
    const std::vector<double> x = {1, 2};
    const std::vector<double> y = {1, 10, 100};
    // Column 0 crosses 1 between y = 1 and 10, at sqrt(10) in log space; column 1 never does.
    const std::vector<double> v = {2, 3, 0.5, 3, 4, 5};
    const auto pts = level_crossings(x, y, v, 1.0);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].first == 1);
    CHECK(pts[0].second == doctest::Approx(std::sqrt(10.0)));
  }

  TEST_CASE("validate quick passes") {
    const auto rep = run_validation({ValidationLevel::quick, 2, ClosedFormProvider::standard()});
    for (const auto& c : rep.checks) {
      CAPTURE(c.id);
      CHECK(c.passed);
    }
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["checks"].size() == rep.checks.size());
  }

  TEST_CASE("validate localizes a sign error in A3") {
    ValidateOptions opts;
    auto faulty = ClosedFormProvider::standard();
    const auto mean = faulty.mean;
    faulty.mean = [mean](int n, double beta, double omega, qie::CouplingMode mode) {
      const double v = mean(n, beta, omega, mode);
      return (mode == qie::CouplingMode::collective && n % 2 == 0) ? -v : v;
    };
    opts.provider = faulty;
    const auto rep = run_validation(opts);
    CHECK_FALSE(rep.all_passed());
    for (const auto& c : rep.checks) {
      CAPTURE(c.id);
      CHECK(c.passed == (c.id != "closedform_A3"));
    }
  }

  TEST_CASE("simulate is deterministic") {
    const auto dir = scratch_dir("sim");
    SimulateOptions o;
    o.spec = {10, 1.0, 0.5};
    o.cycles = 200'000;
    o.records_path = (dir / "a.csv").string();
    const auto a = run_simulation(o);
    o.threads = 4;
    o.records_path = (dir / "b.csv").string();
    const auto b = run_simulation(o);
    CHECK(format_key_value(a, o) == format_key_value(b, o));
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(std::abs(a.z_mean) < 4);
    const auto j = nlohmann::json::parse(format_json(a, o));
    CHECK(j["seed"] == 42);
    CHECK(j["rng_algorithm"] == "xoshiro256**");
  }

  TEST_CASE("dynamical simulate agrees with i.i.d. cycles") {
    SimulateOptions o;
    o.spec = {4, 1.0, 1.0};
    o.cycles = 100'000;
    o.dynamical = true;
    const auto d = run_simulation(o);
    CHECK(std::abs(d.z_mean) < 4);
  }

  TEST_CASE("thread resolution honours the cap") {
    ::setenv(kMaxThreadsEnv, "2", 1);
    CHECK(resolve_threads(8) == 2);
    CHECK(resolve_threads(1) == 1);
    ::unsetenv(kMaxThreadsEnv);
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
  }

  TEST_CASE("parallel_for rethrows") {
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] = 1; });
    CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 5) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }

  TEST_CASE("exit codes through the command line") {
    const auto dir = scratch_dir("app");
    std::string out, err;
    CHECK(run({"--help"}, &out) == kExitOk);
    CHECK(out.find("sweep") != std::string::npos);
    CHECK(run({}, nullptr, &err) == kExitUsage);
    CHECK(run({"frobnicate"}) == kExitUsage);
    CHECK(run({"figure", "fig9"}, nullptr, &err) == kExitUsage);
    CHECK(run({"simulate", "--n", "0"}) == kExitUsage);
    CHECK(run({"simulate", "--n", "3", "--mode", "sideways"}) == kExitUsage);

    const auto bad = dir / "bad.yaml";
    std::ofstream(bad) << "sweep:\n  n: [1]\n  beta: [0.1]\n  colour: red\n";
    CHECK(run({"sweep", bad.string()}, nullptr, &err) == kExitUsage);
    CHECK(err.find("colour") != std::string::npos);
    CHECK(err.find("line 4") != std::string::npos);

    const auto good = dir / "good.yaml";
    std::ofstream(good) << "sweep:\n  n: [1]\n  beta: [0]\n  modes: [collective]\n";
    CHECK(run({"sweep", good.string(), "--out", (dir / "s.csv").string()}) == kExitOk);
    const auto doc = read_csv_file((dir / "s.csv").string());
    REQUIRE(doc.records.size() == 1);

    CHECK(run({"--threads", "2", "simulate", "--n", "4", "--cycles", "1000", "--json"}, &out) == kExitOk);
    CHECK(nlohmann::json::parse(out)["n_cycles"] == 1000);

    CHECK(run({"figure", "fig3b", "--no-svg", "--out", (dir / "f").string()}, &out) == kExitOk);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK_FALSE(fs::exists(dir / "f" / "fig3b.svg"));
  }
}
