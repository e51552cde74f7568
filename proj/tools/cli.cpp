#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdp/core.hpp"
#include "pdp/discrete_evidence.hpp"
#include "pdp/error.hpp"
#include "pdp/frag_coag.hpp"
#include "pdp/partition_laws.hpp"
#include "pdp/rng.hpp"
#include "pdp/samplers.hpp"
#include "pdp/stirling.hpp"
#include "pdp/verify.hpp"

namespace pdp::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  // shared
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string output;
  int replicates = 1;
  double a = 0.0;
  double b = 1.0;
  long n = 10;
  // sample
  std::string sample_kind;
  double epsilon = 1e-12;
  std::size_t max_atoms = 1'000'000;
  std::vector<double> schedule;
  int maxdepth = 1;
  // table
  std::string table_kind;
  long t_max = 1000;
  long stripe = 1;
  std::size_t memory_cap = kDefaultTableMemoryCap;
  // bounds
  std::string series = "geometric";
  double series_param = 0.5;
  // evidence
  std::string counts_file;
  std::string evidence_mode = "all";
  // verify
  std::string suite;
};

// Every number leaves with 17 significant digits so CSV round-trips exactly.
std::ostringstream make_stream() {
  std::ostringstream s;
  s << std::setprecision(17);
  return s;
}

int require_int_n(long n) {
  if (n < 1 || n > 100'000'000) throw DomainError("--n must lie in 1..1e8");
  return static_cast<int>(n);
}

std::string cmd_sample(const Config& c) {
  const PdParams params(c.a, c.b);
  const Truncation trunc{c.epsilon, c.max_atoms};
  auto s = make_stream();
  Json doc = Json::array();
  const bool csv = c.format == "csv";
  const std::string& kind = c.sample_kind;
  if (csv) {
    if (kind == "gem" || kind == "pdd") s << "replicate,index,weight\n";
    if (kind == "crp") s << "replicate,item,block\n";
    if (kind == "pdp") s << "replicate,item,block,value\n";
    if (kind == "tree") s << "replicate,id,depth,parent,members\n";
  }
  if (kind == "tree") {
    if (static_cast<int>(c.schedule.size()) != c.maxdepth) {
      throw DomainError("--schedule needs exactly --maxdepth entries");
    }
    static_cast<void>(PdParams(c.schedule.front(), c.b));
  }
  for (int r = 0; r < c.replicates; ++r) {
    Rng rng(c.seed, static_cast<std::uint64_t>(r));
    if (kind == "gem" || kind == "pdd") {
      const auto w = kind == "gem" ? sample_gem(params, rng, trunc) : sample_pdd(params, rng, trunc);
      if (csv) {
        for (std::size_t k = 0; k < w.size(); ++k) s << r << ',' << k + 1 << ',' << w.weights()[k] << '\n';
        s << r << ",residual," << w.residual() << '\n';
      } else {
        doc.push_back({{"replicate", r}, {"weights", w.weights()}, {"residual", w.residual()}});
      }
    } else if (kind == "crp") {
      const auto part = sample_crp(params, require_int_n(c.n), rng);
      if (csv) {
        for (std::size_t i = 0; i < part.assignments().size(); ++i) {
          s << r << ',' << i + 1 << ',' << part.assignments()[i] << '\n';
        }
      } else {
        doc.push_back({{"replicate", r}, {"assignments", part.assignments()}, {"counts", part.counts()}});
      }
    } else if (kind == "pdp") {
      const UniformBase base;
      const auto draw = sample_pdp(params, base, require_int_n(c.n), rng);
      if (csv) {
        for (std::size_t i = 0; i < draw.values.size(); ++i) {
          s << r << ',' << i + 1 << ',' << draw.partition.assignments()[i] << ',' << draw.values[i] << '\n';
        }
      } else {
        doc.push_back({{"replicate", r}, {"assignments", draw.partition.assignments()}, {"values", draw.values}});
      }
    } else {
      const auto tree = sample_tree(require_int_n(c.n), c.schedule, c.b, c.maxdepth, rng);
      if (csv) {
        for (const auto& node : tree.nodes()) {
          s << r << ',' << node.id << ',' << node.depth << ',' << node.parent << ',';
          for (std::size_t i = 0; i < node.members.size(); ++i) s << (i ? " " : "") << node.members[i];
          s << '\n';
        }
      } else {
        doc.push_back(Json::parse(tree.to_json()));
      }
    }
  }
  if (!csv) s << doc.dump() << '\n';
  return s.str();
}

std::string cmd_table(const Config& c) {
  auto s = make_stream();
  std::ostringstream csv;
  if (c.table_kind == "stirling") {
    const auto t = LogStirlingTable::build(c.a, c.n, {c.t_max, c.stripe, c.memory_cap});
    t.write_csv(csv);
  } else {
    const auto t = StirlingRatioTable::build(c.a, c.n, {c.t_max, c.memory_cap});
    t.write_csv(csv);
  }
  if (c.format == "csv") return csv.str();
  // JSON: array of {n, t, value} rows converted from the CSV dump.
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  Json rows = Json::array();
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string f[3];
    std::getline(row, f[0], ',');
    std::getline(row, f[1], ',');
    std::getline(row, f[2], ',');
    rows.push_back({{"n", std::stol(f[0])}, {"t", std::stol(f[1])}, {"value", std::stod(f[2])}});
  }
  s << rows.dump() << '\n';
  return s.str();
}

std::string cmd_pmf(const Config& c) {
  const PdParams params(c.a, c.b);
  if (c.n < 1) throw DomainError("--n must be at least 1");
  const auto table = LogStirlingTable::build(c.a, c.n, {c.n, 1, c.memory_cap});
  const auto pmf = partition_size_pmf(c.n, params, table);
  auto s = make_stream();
  if (c.format == "csv") {
    s << "M,probability\n";
    for (std::size_t m = 0; m < pmf.size(); ++m) s << m + 1 << ',' << pmf[m] << '\n';
  } else {
    Json rows = Json::array();
    for (std::size_t m = 0; m < pmf.size(); ++m) rows.push_back({{"M", m + 1}, {"probability", pmf[m]}});
    s << rows.dump() << '\n';
  }
  return s.str();
}

void emit_pairs(std::ostringstream& s, const std::string& header, const std::vector<std::pair<std::string, double>>& kv,
                const std::string& format) {
  if (format == "csv") {
    s << header << '\n';
    for (const auto& [k, v] : kv) s << k << ',' << v << '\n';
  } else {
    Json obj = Json::object();
    for (const auto& [k, v] : kv) obj[k] = v;
    s << obj.dump() << '\n';
  }
}

std::string cmd_moments(const Config& c) {
  const PdParams params(c.a, c.b);
  std::vector<std::pair<std::string, double>> kv{{"expected_M", expected_M(params, c.n)},
                                                  {"var_M", var_M(params, c.n)}};
  if (c.b > 0.0) {
    kv.emplace_back("approx_expected_M", approx_expected_M(params, c.n));
    kv.emplace_back("approx_var_M", approx_var_M(params, c.n));
  }
  auto s = make_stream();
  emit_pairs(s, "quantity,value", kv, c.format);
  return s.str();
}

std::string cmd_bounds(const Config& c) {
  const bool geo = c.series == "geometric";
  const auto kind = geo ? SeriesKind::geometric : SeriesKind::dirichlet;
  const auto e = series_expected_M(kind, c.series_param, c.n);
  const double bound = geo ? geometric_bound(c.series_param, c.n) : dirichlet_series_bound(c.series_param, c.n);
  auto s = make_stream();
  emit_pairs(s, "quantity,value",
             {{"expected_M_upper", e.value},
              {"tail_allowance", e.tail_allowance},
              {"terms", static_cast<double>(e.terms)},
              {"bound", bound},
              {"slack", bound - e.value}},
             c.format);
  return s.str();
}

struct CountsRow {
  int count;
  int multiplicity;
  double log_base;
};

std::vector<CountsRow> read_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open counts file " + path);
  std::vector<CountsRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    try {
      if (f.size() == 2) {
        rows.push_back({std::stoi(f[0]), 0, std::stod(f[1])});
      } else if (f.size() == 3) {
        rows.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2])});
      } else {
        throw DomainError("bad counts line: " + line);
      }
    } catch (const std::logic_error&) {
      throw DomainError("bad counts line: " + line);
    }
  }
  if (rows.empty()) throw DomainError("counts file has no blocks");
  return rows;
}

std::string cmd_evidence(const Config& c) {
  const PdParams params(c.a, c.b);
  const auto rows = read_counts(c.counts_file);
  std::vector<int> counts;
  std::vector<int> mult;
  std::vector<double> base_log;
  std::vector<int> assignments;
  bool have_mult = true;
  for (std::size_t m = 0; m < rows.size(); ++m) {
    counts.push_back(rows[m].count);
    mult.push_back(rows[m].multiplicity);
    base_log.push_back(rows[m].log_base);
    if (rows[m].count < 1) throw DomainError("block counts must be positive");
    if (rows[m].multiplicity == 0) have_mult = false;
    assignments.insert(assignments.end(), static_cast<std::size_t>(rows[m].count), static_cast<int>(m) + 1);
  }
  const SizeBiasedPartition data(assignments);
  const std::string& mode = c.evidence_mode;
  std::vector<std::pair<std::string, double>> kv;
  if (mode == "all" || mode == "nonatomic") kv.emplace_back("nonatomic", evidence_nonatomic(data, base_log, params));
  if (mode == "multiplicity" || mode == "indicator" || (mode == "all" && have_mult)) {
    if (!have_mult) throw DomainError("evidence mode " + mode + " needs a multiplicity column");
    const MultiplicityVector t(mult);
    t.check_against(counts);
    long n_max = 0;
    for (int x : counts) n_max = std::max<long>(n_max, x);
    const auto table = LogStirlingTable::build(c.a, n_max, {n_max, 1, c.memory_cap});
    const double ev = evidence_multiplicities(counts, t, base_log, params, table);
    if (mode != "indicator") kv.emplace_back("multiplicity", ev);
    if (mode != "multiplicity") {
      // Any indicator pattern with these multiplicities has the same value.
      std::vector<std::uint8_t> r;
      for (std::size_t m = 0; m < counts.size(); ++m) {
        for (int i = 0; i < counts[m]; ++i) r.push_back(i < mult[m] ? 1 : 0);
      }
      kv.emplace_back("indicator", evidence_indicators(data, IndicatorVector(r), base_log, params, table));
    }
  }
  auto s = make_stream();
  emit_pairs(s, "mode,log_evidence", kv, c.format);
  return s.str();
}

std::string cmd_pdd_curves(const Config& c) {
  const PdParams params(c.a, c.b);
  const Truncation trunc{c.epsilon, c.max_atoms};
  auto s = make_stream();
  Json doc = Json::array();
  if (c.format == "csv") s << "replicate,rank,weight\n";
  for (int r = 0; r < c.replicates; ++r) {
    Rng rng(c.seed, static_cast<std::uint64_t>(r));
    const auto w = sample_pdd(params, rng, trunc);
    if (c.format == "csv") {
      for (std::size_t k = 0; k < w.size(); ++k) s << r << ',' << k + 1 << ',' << w.weights()[k] << '\n';
    } else {
      doc.push_back({{"replicate", r}, {"a", c.a}, {"b", c.b}, {"weights", w.weights()}});
    }
  }
  if (c.format != "csv") s << doc.dump() << '\n';
  return s.str();
}

int cmd_verify(const Config& c, std::ostream& out) {
  const auto suite = c.suite == "full" ? verify::Suite::full : verify::Suite::quick;
  bool all = true;
  double total = 0.0;
  Json doc = Json::array();
  verify::run_suite(suite, c.seed, [&](const verify::CriterionResult& r) {
    all = all && r.passed;
    total += r.seconds;
    if (c.format == "csv") {
      out << verify::format_result(r) << std::endl;
    } else {
      doc.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
  });
  const double budget = suite == verify::Suite::full ? verify::kFullBudgetSeconds : verify::kQuickBudgetSeconds;
  const bool in_time = total < budget;
  if (c.format == "csv") {
    out << (in_time ? "PASS" : "FAIL") << " budget: " << std::setprecision(4) << total << "s of " << budget << "s"
        << std::endl;
  } else {
    out << Json{{"criteria", doc}, {"seconds", total}, {"budget", budget}, {"passed", all && in_time}}.dump() << '\n';
  }
  return all && in_time ? kOk : kVerificationFailed;
}

std::filesystem::path resolve_output(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PDP_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void add_params(CLI::App* sub, Config& c, bool need_b = true) {
  sub->add_option("--a", c.a, "discount, 0 <= a < 1")->required();
  if (need_b) sub->add_option("--b", c.b, "concentration, b > -a")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Two-parameter Poisson-Dirichlet process toolkit", "pdp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("-o,--output", c.output, "output file (relative paths resolve under $PDP_OUTPUT_DIR)");
  app.add_option("--replicates", c.replicates, "independent replicates")->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "draw GEM/PDD weights, CRP partitions, PDP samples or trees");
  sample->add_option("kind", c.sample_kind)->required()->check(CLI::IsMember({"gem", "pdd", "crp", "pdp", "tree"}));
  add_params(sample, c, false);
  sample->add_option("--b", c.b, "concentration, b > -a");
  sample->add_option("--n", c.n, "sample size");
  sample->add_option("--epsilon", c.epsilon, "stick-breaking residual threshold");
  sample->add_option("--max-atoms", c.max_atoms, "stick-breaking atom cap");
  sample->add_option("--schedule", c.schedule, "tree discounts a_1 < ... < a_D")->delimiter(',');
  sample->add_option("--maxdepth", c.maxdepth, "tree depth");

  auto* table = app.add_subcommand("table", "build and dump generalized Stirling tables");
  table->add_option("kind", c.table_kind)->required()->check(CLI::IsMember({"stirling", "ratio"}));
  table->add_option("--a", c.a)->required();
  table->add_option("--n", c.n, "largest n")->required();
  table->add_option("--t-max", c.t_max)->capture_default_str();
  table->add_option("--stripe", c.stripe)->capture_default_str();
  table->add_option("--memory-cap", c.memory_cap, "bytes")->capture_default_str();

  auto* pmf = app.add_subcommand("pmf", "partition-size law p(M | N, a, b)");
  add_params(pmf, c);
  pmf->add_option("--n", c.n)->required();
  pmf->add_option("--memory-cap", c.memory_cap, "bytes");

  auto* moments = app.add_subcommand("moments", "E[M] and Var[M], exact and approximate");
  add_params(moments, c);
  moments->add_option("--n", c.n)->required();

  auto* bounds = app.add_subcommand("bounds", "series upper bounds on E[M] against the exact value");
  bounds->add_option("--series", c.series)->check(CLI::IsMember({"geometric", "dirichlet"}))->capture_default_str();
  bounds->add_option("--param", c.series_param, "ratio r or exponent s")->required();
  bounds->add_option("--n", c.n)->required();

  auto* evidence = app.add_subcommand("evidence", "log evidence of a counts file");
  add_params(evidence, c);
  evidence->add_option("--counts", c.counts_file, "lines count,multiplicity,log_base_mass")->required();
  evidence->add_option("--mode", c.evidence_mode)
      ->check(CLI::IsMember({"all", "nonatomic", "multiplicity", "indicator"}))
      ->capture_default_str();
  evidence->add_option("--memory-cap", c.memory_cap, "bytes");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suites");
  verify_cmd->add_option("suite", c.suite)->required()->check(CLI::IsMember({"quick", "full"}));

  auto* curves = app.add_subcommand("pdd-curves", "sorted PDD weights for rank/weight plots");
  add_params(curves, c);
  curves->add_option("--epsilon", c.epsilon);
  curves->add_option("--max-atoms", c.max_atoms);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: config: " << e.what() << std::endl;
    return kInvalidConfig;
  }

  try {
    std::string text;
    if (verify_cmd->parsed()) {
      if (!c.output.empty()) {
        std::ostringstream buf;
        const int code = cmd_verify(c, buf);
        std::ofstream f(resolve_output(c.output));
        f << buf.str();
        return code;
      }
      return cmd_verify(c, out);
    }
    if (sample->parsed()) text = cmd_sample(c);
    if (table->parsed()) text = cmd_table(c);
    if (pmf->parsed()) text = cmd_pmf(c);
    if (moments->parsed()) text = cmd_moments(c);
    if (bounds->parsed()) text = cmd_bounds(c);
    if (evidence->parsed()) text = cmd_evidence(c);
    if (curves->parsed()) text = cmd_pdd_curves(c);
    if (c.output.empty()) {
      out << text;
    } else {
      const auto path = resolve_output(c.output);
      std::ofstream f(path);
      if (!f) {
        err << "error: io: cannot write " << path.string() << std::endl;
        return kFailure;
      }
      f << text;
    }
    return kOk;
  } catch (const ResourceLimit& e) {
    err << "error: resource: " << e.what() << std::endl;
    return kResourceLimit;
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << std::endl;
    return kInvalidConfig;
  } catch (const DegeneratePochhammer& e) {
    err << "error: domain: " << e.what() << std::endl;
    return kInvalidConfig;
  } catch (const NumericalInstability& e) {
    err << "error: numerical: " << e.what() << std::endl;
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << std::endl;
    return kFailure;
  }
}

}  // namespace pdp::cli
