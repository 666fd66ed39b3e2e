#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "allocgrid/allocgrid.hpp"

// Command-line front end. Everything is implemented against the provided
// output streams so it can be driven in-process by tests; the binary's
// main() just forwards argv. Exit codes: 0 success, 1 domain/validation
// error, 2 usage error.
//
// All numeric output is available both as an exact rational string ("a/b",
// re-parseable bit-exactly) and as a decimal display of that exact value.
// CSV output uses a header row, UTF-8, LF line endings and '.' as the
// decimal point. JSON output carries schema_version 1 (documented in
// docs/json-schema.md).

namespace allocgrid::cli {

inline constexpr int kJsonSchemaVersion = 1;
inline constexpr const char* kEnumCapEnvVar = "ALLOCGRID_MAX_ENUM";

namespace detail {

using nlohmann::json;

enum class Format { Table, Csv, Json };

inline std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string decimal(const Rational& r) { return decimal(r.to_double()); }

struct FormatFlags {
  bool csv = false;
  bool json = false;

  Format format() const {
    if (json) return Format::Json;
    if (csv) return Format::Csv;
    return Format::Table;
  }
};

inline void add_format_flags(CLI::App* cmd, FormatFlags& flags) {
  auto* csv = cmd->add_flag("--csv", flags.csv, "emit CSV with a header row");
  cmd->add_flag("--json", flags.json, "emit JSON (schema_version 1)")
      ->excludes(csv);
}

// A rectangular table that renders as aligned columns or as CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void emit(std::ostream& out, Format format) const {
    if (format == Format::Csv) {
      emit_csv(out);
    } else {
      emit_aligned(out);
    }
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;

  static std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }

  void emit_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i != 0) out << ',';
      out << csv_quote(header_[i]);
    }
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i != 0) out << ',';
        out << csv_quote(row[i]);
      }
      out << '\n';
    }
  }

  void emit_aligned(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size(), 0);
    for (std::size_t i = 0; i < header_.size(); ++i) {
      width[i] = header_[i].size();
    }
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
        width[i] = std::max(width[i], row[i].size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) out << "  ";
        out << cells[i];
        if (i + 1 < cells.size()) {
          for (std::size_t pad = cells[i].size(); pad < width[i]; ++pad) {
            out << ' ';
          }
        }
      }
      out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
  }
};

struct InstanceArgs {
  int n = 0;
  std::string p_text;
  std::string t_text;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "number of storage nodes (>= 2)")->required();
    cmd->add_option("--p", p_text,
                    "access probability, exact rational in (0, 1)")
        ->required();
    cmd->add_option("--T", t_text, "storage budget, exact rational in [1, n]")
        ->required();
  }

  ProblemInstance instance() const {
    return ProblemInstance(n, Rational::parse(p_text), Rational::parse(t_text));
  }
};

inline long long enumeration_cap() {
  const char* env = std::getenv(kEnumCapEnvVar);
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  long long cap = std::strtoll(env, &end, 10);
  if (end == nullptr || *end != '\0' || cap < 1) {
    throw std::invalid_argument(std::string(kEnumCapEnvVar) +
                                " must be a positive integer");
  }
  return cap;
}

inline json instance_json(const ProblemInstance& instance) {
  return json{{"n", instance.n},
              {"p", instance.p.str()},
              {"T", instance.T.str()}};
}

// ---- eval ----------------------------------------------------------------

inline void run_eval(const InstanceArgs& args, const std::string& alloc_text,
                     Format format, std::ostream& out) {
  ProblemInstance instance = args.instance();
  Allocation alloc = Allocation::parse(alloc_text);
  Rational value = recovery_probability_dp(instance, alloc);

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "eval"},
             {"instance", instance_json(instance)},
             {"allocation", json::array()},
             {"exact", value.str()},
             {"value", value.to_double()}};
      for (const Rational& x : alloc.amounts()) {
        j["allocation"].push_back(x.str());
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      Table table({"exact", "value"});
      table.add_row({value.str(), decimal(value)});
      table.emit(out, Format::Csv);
      break;
    }
    case Format::Table:
      out << "recovery probability = " << value.str() << " (" << decimal(value)
          << ")\n";
      break;
  }
}

// ---- symmetric -------------------------------------------------------------

inline void run_symmetric(const InstanceArgs& args, bool exhaustive,
                          Format format, std::ostream& out) {
  ProblemInstance instance = args.instance();
  CandidateReport report =
      exhaustive ? exhaustive_symmetric(instance) : optimal_symmetric(instance);

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "symmetric"},
             {"instance", instance_json(instance)},
             {"exhaustive", exhaustive},
             {"candidates", json::array()},
             {"best_m", report.best_node_count},
             {"best_p_s", report.best_p_s.str()},
             {"best_value", report.best_p_s.to_double()}};
      for (const CandidateValue& c : report.candidates) {
        j["candidates"].push_back(json{{"m", c.node_count},
                                       {"p_s", c.p_s.str()},
                                       {"value", c.p_s.to_double()}});
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
    case Format::Table: {
      Table table({"m", "p_s", "value", "best"});
      for (const CandidateValue& c : report.candidates) {
        table.add_row({std::to_string(c.node_count), c.p_s.str(),
                       decimal(c.p_s),
                       c.node_count == report.best_node_count ? "1" : "0"});
      }
      table.emit(out, format);
      if (format == Format::Table) {
        out << "best m = " << report.best_node_count
            << ", p_s = " << report.best_p_s.str() << " ("
            << decimal(report.best_p_s) << ")\n";
      }
      break;
    }
  }
}

// ---- bounds ----------------------------------------------------------------

inline void run_bounds(const InstanceArgs& args, Format format,
                       std::ostream& out) {
  ProblemInstance instance = args.instance();
  BoundsReport report = bounds_report(instance);

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "bounds"},
             {"instance", instance_json(instance)},
             {"upper_bound", report.upper_bound.str()},
             {"upper_bound_value", report.upper_bound.to_double()},
             {"max_spread_ps", report.max_spread_ps.str()},
             {"max_spread_ps_value", report.max_spread_ps.to_double()},
             {"gap", report.max_spread_gap.str()},
             {"gap_value", report.max_spread_gap.to_double()},
             {"markov_cap", report.markov_cap.str()},
             {"markov_cap_value", report.markov_cap.to_double()}};
      if (report.chernoff_envelope.has_value()) {
        j["chernoff_envelope"] = *report.chernoff_envelope;
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      Table table({"upper_bound_exact", "upper_bound", "max_spread_ps_exact",
                   "max_spread_ps", "gap_exact", "gap", "chernoff_envelope",
                   "markov_cap_exact", "markov_cap"});
      table.add_row({report.upper_bound.str(), decimal(report.upper_bound),
                     report.max_spread_ps.str(), decimal(report.max_spread_ps),
                     report.max_spread_gap.str(),
                     decimal(report.max_spread_gap),
                     report.chernoff_envelope.has_value()
                         ? decimal(*report.chernoff_envelope)
                         : "",
                     report.markov_cap.str(), decimal(report.markov_cap)});
      table.emit(out, Format::Csv);
      break;
    }
    case Format::Table:
      out << "upper bound (any allocation) = " << report.upper_bound.str()
          << " (" << decimal(report.upper_bound) << ")\n"
          << "max-spread p_s (m = n)       = " << report.max_spread_ps.str()
          << " (" << decimal(report.max_spread_ps) << ")\n"
          << "max-spread suboptimality gap = " << report.max_spread_gap.str()
          << " (" << decimal(report.max_spread_gap) << ")\n";
      if (report.chernoff_envelope.has_value()) {
        out << "chernoff envelope            = "
            << decimal(*report.chernoff_envelope) << '\n';
      } else {
        out << "chernoff envelope            = n/a (pT <= 1)\n";
      }
      out << "markov cap                   = " << report.markov_cap.str()
          << " (" << decimal(report.markov_cap) << ")\n";
      break;
  }
}

// ---- region ----------------------------------------------------------------

inline json region_flags_json(const RegionFlags& flags) {
  return json{{"max_budget", flags.max_budget},
              {"max_delta", flags.max_delta},
              {"min_budget", flags.min_budget},
              {"min_reciprocal", flags.min_reciprocal},
              {"min_pmf", flags.min_pmf},
              {"min_margin", flags.min_margin}};
}

inline void run_region(const std::string& p_text, const std::string& t_text,
                       Format format, std::ostream& out) {
  Rational p = Rational::parse(p_text);
  Rational T = Rational::parse(t_text);
  RegionClass region = classify_region(p, T);

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "region"},
             {"p", p.str()},
             {"T", T.str()},
             {"flags", region_flags_json(region.flags)},
             {"verdict", to_string(region.verdict)}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      Table table({"p_exact", "p", "t_exact", "t", "max_budget", "max_delta",
                   "min_budget", "min_reciprocal", "min_pmf", "min_margin",
                   "verdict"});
      table.add_row({p.str(), decimal(p), T.str(), decimal(T),
                     region.flags.max_budget ? "1" : "0",
                     region.flags.max_delta ? "1" : "0",
                     region.flags.min_budget ? "1" : "0",
                     region.flags.min_reciprocal ? "1" : "0",
                     region.flags.min_pmf ? "1" : "0",
                     region.flags.min_margin ? "1" : "0",
                     to_string(region.verdict)});
      table.emit(out, Format::Csv);
      break;
    }
    case Format::Table:
      out << "max-spread budget condition  : "
          << (region.flags.max_budget ? "holds" : "-") << '\n'
          << "max-spread delta condition   : "
          << (region.flags.max_delta ? "holds" : "-") << '\n'
          << "min-spread budget condition  : "
          << (region.flags.min_budget ? "holds" : "-") << '\n'
          << "min-spread reciprocal budget : "
          << (region.flags.min_reciprocal ? "holds" : "-") << '\n'
          << "min-spread pmf domination    : "
          << (region.flags.min_pmf ? "holds" : "-") << '\n'
          << "min-spread margin condition  : "
          << (region.flags.min_margin ? "holds" : "-") << '\n'
          << "verdict = " << to_string(region.verdict) << '\n';
      break;
  }
}

// ---- search ----------------------------------------------------------------

inline void run_search(const InstanceArgs& args,
                       std::optional<long long> q_option, Format format,
                       std::ostream& out) {
  ProblemInstance instance = args.instance();
  long long q = q_option.value_or(default_quantum(instance));
  QuantizedSearchResult result =
      brute_force_best(instance, q, enumeration_cap());

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "search"},
             {"instance", instance_json(instance)},
             {"q", result.quantum_denominator},
             {"allocations_evaluated", result.allocations_evaluated},
             {"best_allocation", json::array()},
             {"exact", result.best_probability.str()},
             {"value", result.best_probability.to_double()}};
      for (const Rational& x : result.best_allocation.amounts()) {
        j["best_allocation"].push_back(x.str());
      }
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      Table table({"q", "allocations_evaluated", "best_allocation", "exact",
                   "value"});
      table.add_row({std::to_string(result.quantum_denominator),
                     std::to_string(result.allocations_evaluated),
                     result.best_allocation.str(),
                     result.best_probability.str(),
                     decimal(result.best_probability)});
      table.emit(out, Format::Csv);
      break;
    }
    case Format::Table:
      out << "q = " << result.quantum_denominator << '\n'
          << "allocations evaluated = " << result.allocations_evaluated << '\n'
          << "best allocation = {" << result.best_allocation.str() << "}\n"
          << "best probability = " << result.best_probability.str() << " ("
          << decimal(result.best_probability) << ")\n";
      break;
  }
}

// ---- mc --------------------------------------------------------------------

inline void run_mc(const InstanceArgs& args, const std::string& alloc_text,
                   long long trials, std::uint64_t seed, Format format,
                   std::ostream& out) {
  ProblemInstance instance = args.instance();
  Allocation alloc = Allocation::parse(alloc_text);
  MonteCarloEstimate estimate =
      monte_carlo_estimate(instance, alloc, trials, seed);

  switch (format) {
    case Format::Json: {
      json j{{"schema_version", kJsonSchemaVersion},
             {"command", "mc"},
             {"instance", instance_json(instance)},
             {"estimate", estimate.estimate},
             {"standard_error", estimate.standard_error},
             {"trials", estimate.trials},
             {"seed", estimate.seed},
             {"generator", estimate.generator}};
      out << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      Table table({"estimate", "standard_error", "trials", "seed",
                   "generator"});
      table.add_row({decimal(estimate.estimate),
                     decimal(estimate.standard_error),
                     std::to_string(estimate.trials),
                     std::to_string(estimate.seed), estimate.generator});
      table.emit(out, Format::Csv);
      break;
    }
    case Format::Table:
      out << "estimate = " << decimal(estimate.estimate) << '\n'
          << "standard error = " << decimal(estimate.standard_error) << '\n'
          << "trials = " << estimate.trials << '\n'
          << "seed = " << estimate.seed << '\n'
          << "generator = " << estimate.generator << '\n';
      break;
  }
}

// ---- sweep-budget ----------------------------------------------------------

// Exact rational grid t_min, t_min + step, ... while <= t_max.
inline std::vector<Rational> rational_grid(const Rational& lo,
                                           const Rational& hi,
                                           const Rational& step) {
  if (step <= Rational(0)) {
    throw std::invalid_argument("grid step must be > 0");
  }
  if (hi < lo) {
    throw std::invalid_argument("grid upper end must be >= lower end");
  }
  std::vector<Rational> grid;
  for (Rational t = lo; t <= hi; t += step) grid.push_back(t);
  return grid;
}

inline void run_sweep_budget(int n, const std::string& p_text,
                             const std::string& t_min_text,
                             const std::string& t_max_text,
                             const std::string& t_step_text, Format format,
                             std::ostream& out) {
  Rational p = Rational::parse(p_text);
  std::vector<Rational> grid =
      rational_grid(Rational::parse(t_min_text), Rational::parse(t_max_text),
                    Rational::parse(t_step_text));

  struct Row {
    Rational t;
    std::vector<Rational> ps;
    long long best_node_count;
    Rational bound;
  };
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (const Rational& t : grid) {
    ProblemInstance instance(n, p, t);
    Row row;
    row.t = t;
    row.ps.reserve(static_cast<std::size_t>(n));
    for (long long m = 1; m <= n; ++m) {
      row.ps.push_back(symmetric_recovery_probability(p, t, m));
    }
    row.best_node_count = optimal_symmetric(instance).best_node_count;
    row.bound = recovery_upper_bound(instance);
    rows.push_back(std::move(row));
  }

  if (format == Format::Json) {
    json j{{"schema_version", kJsonSchemaVersion},
           {"command", "sweep-budget"},
           {"n", n},
           {"p", p.str()},
           {"rows", json::array()}};
    for (const Row& row : rows) {
      json jr{{"t", row.t.str()},
              {"t_value", row.t.to_double()},
              {"best_m", row.best_node_count},
              {"bound", row.bound.str()},
              {"bound_value", row.bound.to_double()},
              {"ps", json::array()},
              {"ps_values", json::array()}};
      for (const Rational& v : row.ps) {
        jr["ps"].push_back(v.str());
        jr["ps_values"].push_back(v.to_double());
      }
      j["rows"].push_back(std::move(jr));
    }
    out << j.dump(2) << '\n';
    return;
  }

  std::vector<std::string> header{"t_exact", "t", "best_m", "bound"};
  for (int m = 1; m <= n; ++m) header.push_back("ps_m" + std::to_string(m));
  header.push_back("bound_exact");
  for (int m = 1; m <= n; ++m) {
    header.push_back("ps_exact_m" + std::to_string(m));
  }
  Table table(std::move(header));
  for (const Row& row : rows) {
    std::vector<std::string> cells{row.t.str(), decimal(row.t),
                                   std::to_string(row.best_node_count),
                                   decimal(row.bound)};
    for (const Rational& v : row.ps) cells.push_back(decimal(v));
    cells.push_back(row.bound.str());
    for (const Rational& v : row.ps) cells.push_back(v.str());
    table.add_row(std::move(cells));
  }
  table.emit(out, format);
}

// ---- sweep-region ----------------------------------------------------------

inline void run_sweep_region(const std::string& t_min_text,
                             const std::string& t_max_text,
                             const std::string& t_step_text,
                             const std::string& p_step_text, Format format,
                             std::ostream& out) {
  std::vector<Rational> t_grid =
      rational_grid(Rational::parse(t_min_text), Rational::parse(t_max_text),
                    Rational::parse(t_step_text));
  Rational p_step = Rational::parse(p_step_text);
  if (p_step <= Rational(0) || p_step >= Rational(1)) {
    throw std::invalid_argument("--p-step must lie strictly in (0, 1)");
  }
  std::vector<Rational> p_grid;
  for (Rational p = p_step; p < Rational(1); p += p_step) p_grid.push_back(p);

  json json_rows = json::array();
  Table table({"t_exact", "t", "p_exact", "p", "max_budget", "max_delta",
               "min_budget", "min_reciprocal", "min_pmf", "min_margin",
               "verdict"});
  for (const Rational& t : t_grid) {
    for (const Rational& p : p_grid) {
      RegionClass region = classify_region(p, t);
      if (format == Format::Json) {
        json_rows.push_back(json{{"t", t.str()},
                                 {"t_value", t.to_double()},
                                 {"p", p.str()},
                                 {"p_value", p.to_double()},
                                 {"flags", region_flags_json(region.flags)},
                                 {"verdict", to_string(region.verdict)}});
      } else {
        table.add_row({t.str(), decimal(t), p.str(), decimal(p),
                       region.flags.max_budget ? "1" : "0",
                       region.flags.max_delta ? "1" : "0",
                       region.flags.min_budget ? "1" : "0",
                       region.flags.min_reciprocal ? "1" : "0",
                       region.flags.min_pmf ? "1" : "0",
                       region.flags.min_margin ? "1" : "0",
                       to_string(region.verdict)});
      }
    }
  }

  if (format == Format::Json) {
    json j{{"schema_version", kJsonSchemaVersion},
           {"command", "sweep-region"},
           {"rows", std::move(json_rows)}};
    out << j.dump(2) << '\n';
  } else {
    table.emit(out, format);
  }
}

// ---- gap-asymptotics ---------------------------------------------------------

inline void run_gap_asymptotics(const std::string& p_text,
                                const std::string& t_text,
                                const std::vector<long long>& n_list,
                                Format format, std::ostream& out) {
  Rational p = Rational::parse(p_text);
  Rational T = Rational::parse(t_text);
  if (n_list.empty()) {
    throw std::invalid_argument("--n-list must name at least one n");
  }

  struct Row {
    long long n;
    Rational gap;
    std::optional<double> envelope;
  };
  std::vector<Row> rows;
  rows.reserve(n_list.size());
  for (long long n : n_list) {
    if (n > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("--n-list entries are too large");
    }
    ProblemInstance instance(static_cast<int>(n), p, T);
    Row row;
    row.n = n;
    row.gap = max_spread_gap(instance);
    if (p * T > Rational(1)) {
      row.envelope = chernoff_gap_envelope(instance);
    }
    rows.push_back(std::move(row));
  }

  if (format == Format::Json) {
    json j{{"schema_version", kJsonSchemaVersion},
           {"command", "gap-asymptotics"},
           {"p", p.str()},
           {"T", T.str()},
           {"rows", json::array()}};
    for (const Row& row : rows) {
      json jr{{"n", row.n},
              {"gap", row.gap.str()},
              {"gap_value", row.gap.to_double()}};
      if (row.envelope.has_value()) jr["chernoff_envelope"] = *row.envelope;
      j["rows"].push_back(std::move(jr));
    }
    out << j.dump(2) << '\n';
    return;
  }

  Table table({"n", "gap_exact", "gap", "chernoff_envelope"});
  for (const Row& row : rows) {
    table.add_row({std::to_string(row.n), row.gap.str(), decimal(row.gap),
                   row.envelope.has_value() ? decimal(*row.envelope) : ""});
  }
  table.emit(out, format);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  using detail::FormatFlags;
  using detail::InstanceArgs;

  CLI::App app{
      "allocgrid - exact analysis of storage allocations under "
      "probabilistic node access"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "exact recovery probability of one allocation");
  InstanceArgs eval_args;
  eval_args.add_to(eval_cmd);
  std::string eval_alloc;
  eval_cmd
      ->add_option("--alloc", eval_alloc,
                   "comma-separated amounts, e.g. \"2/3,2/3,1/3,1/3,1/3\"; "
                   "trailing zero nodes may be omitted")
      ->required();
  FormatFlags eval_fmt;
  detail::add_format_flags(eval_cmd, eval_fmt);

  // symmetric
  auto* sym_cmd = app.add_subcommand(
      "symmetric", "optimal symmetric allocation via the candidate set");
  InstanceArgs sym_args;
  sym_args.add_to(sym_cmd);
  bool sym_exhaustive = false;
  sym_cmd->add_flag("--exhaustive", sym_exhaustive,
                    "scan every node count 1..n instead of the candidates");
  FormatFlags sym_fmt;
  detail::add_format_flags(sym_cmd, sym_fmt);

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "upper bound, max-spread gap, chernoff envelope, markov cap");
  InstanceArgs bounds_args;
  bounds_args.add_to(bounds_cmd);
  FormatFlags bounds_fmt;
  detail::add_format_flags(bounds_cmd, bounds_fmt);

  // region
  auto* region_cmd = app.add_subcommand(
      "region", "classify (p, T) by the spreading sufficient conditions");
  std::string region_p, region_t;
  region_cmd->add_option("--p", region_p, "access probability in (0, 1)")
      ->required();
  region_cmd->add_option("--T", region_t, "storage budget >= 1")->required();
  FormatFlags region_fmt;
  detail::add_format_flags(region_cmd, region_fmt);

  // search
  auto* search_cmd = app.add_subcommand(
      "search", "brute-force best allocation over a 1/q grid");
  InstanceArgs search_args;
  search_args.add_to(search_cmd);
  long long search_q = 0;
  auto* q_opt = search_cmd->add_option(
      "--q", search_q,
      "quantum denominator (default: lcm of the denominators of T and p)");
  FormatFlags search_fmt;
  detail::add_format_flags(search_cmd, search_fmt);

  // mc
  auto* mc_cmd = app.add_subcommand(
      "mc", "seeded Monte Carlo estimate of a recovery probability");
  InstanceArgs mc_args;
  mc_args.add_to(mc_cmd);
  std::string mc_alloc;
  mc_cmd->add_option("--alloc", mc_alloc, "comma-separated amounts")
      ->required();
  long long mc_trials = 100000;
  mc_cmd->add_option("--trials", mc_trials, "number of trials (default 1e5)");
  std::uint64_t mc_seed = 1;
  mc_cmd->add_option("--seed", mc_seed, "64-bit seed (default 1)");
  FormatFlags mc_fmt;
  detail::add_format_flags(mc_cmd, mc_fmt);

  // sweep-budget
  auto* sb_cmd = app.add_subcommand(
      "sweep-budget",
      "per-node-count recovery curves against T at fixed (n, p)");
  int sb_n = 0;
  std::string sb_p, sb_tmin = "1", sb_tmax, sb_tstep = "1/10";
  sb_cmd->add_option("--n", sb_n, "number of storage nodes")->required();
  sb_cmd->add_option("--p", sb_p, "access probability")->required();
  sb_cmd->add_option("--t-min", sb_tmin, "first budget (default 1)");
  sb_cmd->add_option("--t-max", sb_tmax, "last budget (default n)");
  sb_cmd->add_option("--t-step", sb_tstep,
                     "exact budget step (default 1/10)");
  FormatFlags sb_fmt;
  detail::add_format_flags(sb_cmd, sb_fmt);

  // sweep-region
  auto* sr_cmd = app.add_subcommand(
      "sweep-region", "verdict grid over (T, p) for region plots");
  std::string sr_tmin = "1", sr_tmax = "6", sr_tstep = "1/20",
              sr_pstep = "1/50";
  sr_cmd->add_option("--t-min", sr_tmin, "first budget (default 1)");
  sr_cmd->add_option("--t-max", sr_tmax, "last budget (default 6)");
  sr_cmd->add_option("--t-step", sr_tstep, "exact budget step (default 1/20)");
  sr_cmd->add_option("--p-step", sr_pstep,
                     "exact probability step; p runs over (0, 1) "
                     "(default 1/50)");
  FormatFlags sr_fmt;
  detail::add_format_flags(sr_cmd, sr_fmt);

  // gap-asymptotics
  auto* ga_cmd = app.add_subcommand(
      "gap-asymptotics",
      "max-spread gap and chernoff envelope for a list of n");
  std::string ga_p, ga_t;
  std::vector<long long> ga_n_list;
  ga_cmd->add_option("--p", ga_p, "access probability")->required();
  ga_cmd->add_option("--T", ga_t, "storage budget")->required();
  ga_cmd->add_option("--n-list", ga_n_list,
                     "comma-separated node counts, e.g. 50,100,200")
      ->required()
      ->delimiter(',');
  FormatFlags ga_fmt;
  detail::add_format_flags(ga_cmd, ga_fmt);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("allocgrid");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) {
      detail::run_eval(eval_args, eval_alloc, eval_fmt.format(), out);
    } else if (sym_cmd->parsed()) {
      detail::run_symmetric(sym_args, sym_exhaustive, sym_fmt.format(), out);
    } else if (bounds_cmd->parsed()) {
      detail::run_bounds(bounds_args, bounds_fmt.format(), out);
    } else if (region_cmd->parsed()) {
      detail::run_region(region_p, region_t, region_fmt.format(), out);
    } else if (search_cmd->parsed()) {
      detail::run_search(search_args,
                         q_opt->count() > 0
                             ? std::optional<long long>(search_q)
                             : std::nullopt,
                         search_fmt.format(), out);
    } else if (mc_cmd->parsed()) {
      detail::run_mc(mc_args, mc_alloc, mc_trials, mc_seed, mc_fmt.format(),
                     out);
    } else if (sb_cmd->parsed()) {
      if (sb_tmax.empty()) sb_tmax = std::to_string(sb_n);
      detail::run_sweep_budget(sb_n, sb_p, sb_tmin, sb_tmax, sb_tstep,
                               sb_fmt.format(), out);
    } else if (sr_cmd->parsed()) {
      detail::run_sweep_region(sr_tmin, sr_tmax, sr_tstep, sr_pstep,
                               sr_fmt.format(), out);
    } else if (ga_cmd->parsed()) {
      detail::run_gap_asymptotics(ga_p, ga_t, ga_n_list, ga_fmt.format(), out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace allocgrid::cli
