#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "allocgrid/cli.hpp"

using allocgrid::Rational;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = allocgrid::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Minimal CSV reader for the formats the CLI emits (quotes only around
// fields containing commas).
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    row.push_back(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<std::string, std::string> csv_single_row(const std::string& text) {
  auto rows = parse_csv(text);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].size() == rows[1].size());
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < rows[0].size(); ++i) out[rows[0][i]] = rows[1][i];
  return out;
}

}  // namespace

TEST_CASE("eval prints the exact value and its decimal") {
  RunResult r = run({"eval", "--n", "5", "--p", "2/3", "--T", "7/3", "--alloc",
                     "2/3,2/3,1/3,1/3,1/3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("220/243") != std::string::npos);
  CHECK(r.out.find("0.905350") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("eval json round trips") {
  RunResult r = run({"eval", "--n", "5", "--p", "2/3", "--T", "7/3", "--alloc",
                     "2/3,2/3,1/3,1/3,1/3", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "eval");
  CHECK(j["exact"] == "220/243");
  CHECK(Rational::parse(j["exact"].get<std::string>()) ==
        Rational(220) / Rational(243));
  CHECK(j["value"].get<double>() == doctest::Approx(0.9053497942));
  CHECK(j["instance"]["p"] == "2/3");
  CHECK(j["allocation"].size() == 5);
}

TEST_CASE("exit codes distinguish usage from domain errors") {
  CHECK(run({"eval", "--n", "5", "--p", "2/3", "--T", "7/3"}).code ==
        2);  // missing --alloc
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"eval", "--n", "5", "--p", "junk", "--T", "7/3", "--alloc", "1"})
            .code == 1);
  CHECK(run({"eval", "--n", "1", "--p", "1/2", "--T", "1", "--alloc", "1"})
            .code == 1);
  CHECK(run({"eval", "--n", "5", "--p", "2/3", "--T", "7/3", "--alloc",
             "3,3,3,3,3"})
            .code == 1);  // budget violation
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("eval") != std::string::npos);
}

TEST_CASE("symmetric csv carries exact candidates and the best marker") {
  RunResult r =
      run({"symmetric", "--n", "5", "--p", "2/3", "--T", "7/3", "--csv"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"m", "p_s", "value", "best"});
  CHECK(rows[1] == std::vector<std::string>{"2", "8/9", "0.888889", "1"});
  CHECK(rows[2] == std::vector<std::string>{"4", "8/9", "0.888889", "0"});
  CHECK(rows[3] == std::vector<std::string>{"5", "64/81", "0.790123", "0"});
  // Every exact field re-parses to the value the library computes.
  CHECK(Rational::parse(rows[3][1]) ==
        allocgrid::symmetric_recovery_probability(
            Rational(2) / Rational(3), Rational(7) / Rational(3), 5));
}

TEST_CASE("symmetric --exhaustive lists every node count") {
  RunResult r = run({"symmetric", "--n", "5", "--p", "2/3", "--T", "7/3",
                     "--exhaustive", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["candidates"].size() == 5);
  CHECK(j["best_m"] == 2);
  CHECK(j["best_p_s"] == "8/9");
}

TEST_CASE("bounds json") {
  RunResult r = run({"bounds", "--n", "5", "--p", "2/3", "--T", "7/3",
                     "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["upper_bound"] == "26/27");
  CHECK(j["gap"] == "14/81");
  CHECK(j["max_spread_ps"] == "64/81");
  CHECK(j["markov_cap"] == "1");
  CHECK(j["chernoff_envelope"].get<double>() == doctest::Approx(1.312278));

  // pT <= 1: the envelope field is absent.
  RunResult low =
      run({"bounds", "--n", "10", "--p", "1/4", "--T", "2", "--json"});
  json jl = json::parse(low.out);
  CHECK_FALSE(jl.contains("chernoff_envelope"));
}

TEST_CASE("region flags and verdicts") {
  auto fields =
      csv_single_row(run({"region", "--p", "3/5", "--T", "3", "--csv"}).out);
  CHECK(fields["verdict"] == "max-spread");
  CHECK(fields["max_budget"] == "1");

  fields =
      csv_single_row(run({"region", "--p", "1/4", "--T", "4", "--csv"}).out);
  CHECK(fields["verdict"] == "min-spread");
  CHECK(fields["min_budget"] == "1");

  fields =
      csv_single_row(run({"region", "--p", "9/25", "--T", "5/2", "--csv"}).out);
  CHECK(fields["verdict"] == "unresolved");

  CHECK(run({"region", "--p", "0", "--T", "2"}).code == 1);
}

TEST_CASE("search reports the counterexample allocation") {
  RunResult r =
      run({"search", "--n", "5", "--p", "2/3", "--T", "7/3", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["q"] == 3);
  CHECK(j["exact"] == "220/243");
  CHECK(j["allocations_evaluated"] == 13);
  std::vector<std::string> amounts = j["best_allocation"];
  CHECK(amounts == std::vector<std::string>{"2/3", "2/3", "1/3", "1/3", "1/3"});
}

TEST_CASE("search honors the enumeration cap from the environment") {
  setenv(allocgrid::cli::kEnumCapEnvVar, "5", 1);
  RunResult r = run({"search", "--n", "5", "--p", "2/3", "--T", "7/3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("smaller quantum") != std::string::npos);
  setenv(allocgrid::cli::kEnumCapEnvVar, "junk", 1);
  CHECK(run({"search", "--n", "5", "--p", "2/3", "--T", "7/3"}).code == 1);
  unsetenv(allocgrid::cli::kEnumCapEnvVar);
  CHECK(run({"search", "--n", "5", "--p", "2/3", "--T", "7/3"}).code == 0);
}

TEST_CASE("mc is reproducible through the cli") {
  std::vector<std::string> args{"mc",      "--n",     "5",    "--p",
                                "2/3",     "--T",     "7/3",  "--alloc",
                                "2/3,2/3,1/3,1/3,1/3", "--trials", "20000",
                                "--seed",  "42",      "--json"};
  RunResult a = run(args);
  RunResult b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["trials"] == 20000);
  CHECK(j["seed"] == 42);
  CHECK(j["generator"] == allocgrid::kMonteCarloGenerator);
  double est = j["estimate"].get<double>();
  double se = j["standard_error"].get<double>();
  CHECK(std::fabs(est - 220.0 / 243.0) <= 4.0 * se);
}

TEST_CASE("sweep-budget emits consistent exact columns") {
  RunResult r = run({"sweep-budget", "--n", "5", "--p", "2/3", "--t-min", "1",
                     "--t-max", "3", "--t-step", "1/2", "--csv"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);  // header + T in {1, 3/2, 2, 5/2, 3}
  const auto& header = rows[0];
  CHECK(header[0] == "t_exact");
  CHECK(header[2] == "best_m");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
  for (std::size_t row = 1; row < rows.size(); ++row) {
    Rational t = Rational::parse(rows[row][index["t_exact"]]);
    allocgrid::ProblemInstance instance(5, Rational(2) / Rational(3), t);
    auto report = allocgrid::optimal_symmetric(instance);
    CHECK(std::to_string(report.best_node_count) ==
          rows[row][index["best_m"]]);
    CHECK(Rational::parse(rows[row][index["bound_exact"]]) ==
          allocgrid::recovery_upper_bound(instance));
    for (int m = 1; m <= 5; ++m) {
      Rational ps = Rational::parse(
          rows[row][index["ps_exact_m" + std::to_string(m)]]);
      CHECK(ps == allocgrid::symmetric_recovery_probability(
                      instance.p, instance.T, m));
    }
  }
}

TEST_CASE("sweep-region agrees with classify_region pointwise") {
  RunResult r = run({"sweep-region", "--t-min", "1", "--t-max", "3",
                     "--t-step", "1/2", "--p-step", "1/4", "--csv"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 5 * 3);  // 5 budgets x 3 probabilities
  const auto& header = rows[0];
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
  for (std::size_t row = 1; row < rows.size(); ++row) {
    Rational t = Rational::parse(rows[row][index["t_exact"]]);
    Rational p = Rational::parse(rows[row][index["p_exact"]]);
    auto region = allocgrid::classify_region(p, t);
    CHECK(rows[row][index["verdict"]] == allocgrid::to_string(region.verdict));
    CHECK(rows[row][index["min_budget"]] ==
          (region.flags.min_budget ? "1" : "0"));
  }
}

TEST_CASE("gap-asymptotics rows and the pT <= 1 regime") {
  RunResult r = run({"gap-asymptotics", "--p", "3/5", "--T", "2", "--n-list",
                     "50,100,200", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["n"] == 50);
  CHECK(j["rows"][2]["gap_value"].get<double>() < 0.01);
  CHECK(j["rows"][0]["chernoff_envelope"].get<double>() ==
        doctest::Approx(0.797709).epsilon(1e-4));

  RunResult low = run({"gap-asymptotics", "--p", "1/4", "--T", "2", "--n-list",
                       "10,20", "--json"});
  json jl = json::parse(low.out);
  CHECK_FALSE(jl["rows"][0].contains("chernoff_envelope"));

  CHECK(run({"gap-asymptotics", "--p", "3/5", "--T", "2", "--n-list", "1"})
            .code == 1);
}
