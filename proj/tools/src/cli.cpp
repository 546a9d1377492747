#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gwloc/cli/acceptance.hpp"
#include "gwloc/cli/cache_file.hpp"
#include "gwloc/cli/config.hpp"
#include "gwloc/combinatorics.hpp"
#include "gwloc/error.hpp"
#include "gwloc/fixed_graph.hpp"
#include "gwloc/gw_calculator.hpp"
#include "gwloc/hodge_table.hpp"
#include "gwloc/multicover.hpp"

namespace gwloc::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Record {
  std::string query;
  std::optional<Rational> value;
  std::optional<BigInt> graph_count;
  std::vector<WeightVector> weights;
  ordered_json detail = ordered_json::object();
  double elapsed_ms = 0;
  std::uint64_t cache_hits = 0;
};

ordered_json big_to_json(const BigInt& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

ordered_json weights_to_json(const std::vector<WeightVector>& weights) {
  ordered_json out = ordered_json::array();
  for (const auto& w : weights) {
    ordered_json row = ordered_json::array();
    for (const auto& x : w.values()) row.push_back(x.str());
    out.push_back(std::move(row));
  }
  return out;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

class Emitter {
 public:
  Emitter(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {}

  void emit(const Record& record) {
    switch (config_.format) {
      case OutputFormat::Json:
        out_ << to_json(record).dump() << '\n';
        break;
      case OutputFormat::Csv:
        emit_csv(record);
        break;
      case OutputFormat::Text:
        emit_text(record);
        break;
    }
  }

 private:
  ordered_json to_json(const Record& record) const {
    ordered_json j;
    j["query"] = record.query;
    j["value"] = record.value ? ordered_json(record.value->str()) : ordered_json();
    j["graph_count"] = record.graph_count ? big_to_json(*record.graph_count) : ordered_json();
    j["weight_vectors_used"] = weights_to_json(record.weights);
    if (!record.detail.empty()) j["detail"] = record.detail;
    if (config_.timing) j["elapsed_ms"] = record.elapsed_ms;
    if (config_.stats) j["cache_hits"] = record.cache_hits;
    return j;
  }

  void emit_csv(const Record& record) {
    if (!header_written_) {
      out_ << "query,value,graph_count,weight_vectors_used,detail";
      if (config_.timing) out_ << ",elapsed_ms";
      if (config_.stats) out_ << ",cache_hits";
      out_ << '\n';
      header_written_ = true;
    }
    std::string weights;
    for (const auto& w : record.weights) weights += (weights.empty() ? "" : " ") + w.str();
    out_ << csv_field(record.query) << ',' << (record.value ? record.value->str() : "") << ','
         << (record.graph_count ? record.graph_count->get_str() : "") << ',' << csv_field(weights) << ','
         << csv_field(record.detail.empty() ? "" : record.detail.dump());
    if (config_.timing) out_ << ',' << record.elapsed_ms;
    if (config_.stats) out_ << ',' << record.cache_hits;
    out_ << '\n';
  }

  void emit_text(const Record& record) {
    out_ << record.query << " = " << (record.value ? record.value->str() : "-");
    if (record.graph_count) out_ << "  graphs=" << record.graph_count->get_str();
    if (!record.detail.empty()) out_ << "  " << record.detail.dump();
    if (config_.timing) out_ << "  elapsed_ms=" << record.elapsed_ms;
    if (config_.stats) out_ << "  cache_hits=" << record.cache_hits;
    out_ << '\n';
  }

  const RunConfig& config_;
  std::ostream& out_;
  bool header_written_ = false;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
      return ExitCode::InvalidArguments;
    case ErrorKind::UnsupportedGenus:
      return ExitCode::UnsupportedGenus;
    case ErrorKind::MissingHodgeTable:
      return ExitCode::MissingHodgeTable;
    case ErrorKind::GraphCapExceeded:
      return ExitCode::GraphCapExceeded;
    case ErrorKind::Io:
      return ExitCode::IoFailure;
    default:
      return ExitCode::InternalError;
  }
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

void check_config(const RunConfig& c) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) fail(ErrorKind::InvalidArgument, message);
  };
  require(c.g >= 0, "--g must be >= 0");
  require(c.d >= 1, "--d must be >= 1");
  require(c.r >= 1, "--r must be >= 1");
  require(c.n >= 0, "--n must be >= 0");
  require(c.points >= 0, "--points must be >= 0");
  require(c.order >= 1, "--order must be >= 1");
  require(c.trials >= 1, "--trials must be >= 1");
  require(c.graph_cap >= 1, "--graph-cap must be >= 1");
}

// Shared state for one run: evaluation options, cache and the emitter.
class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), err_(err), emitter_(config, out) {
    if (!config.cache_path.empty()) load_cache(config.cache_path, cache_, err);
  }

  ~Session() {
    if (!config_.cache_path.empty()) save_cache(config_.cache_path, cache_, err_);
  }

  SumOptions sum_options() const {
    SumOptions sum;
    sum.seed = config_.seed;
    sum.trials = config_.trials;
    sum.workers = config_.workers;
    return sum;
  }

  EvaluationOptions evaluation_options() {
    EvaluationOptions options;
    options.sum = sum_options();
    options.graph_cap = config_.graph_cap;
    options.direct = config_.direct;
    options.cache = &cache_;
    if (config_.verbose) {
      options.on_graph = [this](const nlohmann::json& entry) {
        std::lock_guard lock(verbose_mutex_);
        err_ << entry.dump() << '\n';
      };
    }
    return options;
  }

  // Runs `compute`, stamping elapsed time and cache hits onto its record.
  void timed(const std::function<Record()>& compute) {
    const auto hits = cache_.hits();
    const auto start = std::chrono::steady_clock::now();
    Record record = compute();
    record.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    record.cache_hits = cache_.hits() - hits;
    emitter_.emit(record);
  }

  const HodgeTable* hodge_table() {
    if (config_.hodge_table_path.empty()) return nullptr;
    if (!table_) table_ = HodgeTable::load(config_.hodge_table_path);
    return &*table_;
  }

  IntegralCache& cache() { return cache_; }
  std::ostream& err() { return err_; }

 private:
  const RunConfig& config_;
  std::ostream& err_;
  Emitter emitter_;
  IntegralCache cache_;
  std::optional<HodgeTable> table_;
  std::mutex verbose_mutex_;
};

Record invariant_record(const std::string& query, const InvariantResult& result, bool& consistent) {
  Record record;
  record.query = query;
  record.value = result.value;
  record.graph_count = result.graph_count;
  record.weights = result.weights_used;
  if (result.trial_values.size() > 1) {
    record.detail["weight_independent"] = result.weight_independent;
    ordered_json values = ordered_json::array();
    for (const auto& v : result.trial_values) values.push_back(v.str());
    record.detail["trial_values"] = values;
  }
  consistent = consistent && result.weight_independent;
  return record;
}

int run_gw(const RunConfig& c, Session& session) {
  InvariantQuery query{c.g, c.d, c.r, c.insertions};
  query.insertions.insert(query.insertions.end(), static_cast<std::size_t>(c.points), c.r);
  validate(query);
  bool consistent = true;
  session.timed([&] {
    const auto result = gw_invariant(query, session.evaluation_options());
    return invariant_record("gw g=" + std::to_string(c.g) + " d=" + std::to_string(c.d) + " r=" +
                                std::to_string(c.r) + " insertions=" + join(query.insertions),
                            result, consistent);
  });
  return consistent ? ExitCode::Ok : ExitCode::CheckFailed;
}

int run_count(const RunConfig& c, Session& session) {
  bool consistent = true;
  session.timed([&] {
    const auto result = plane_curve_count(c.g, c.d, session.evaluation_options());
    return invariant_record("count g=" + std::to_string(c.g) + " d=" + std::to_string(c.d), result, consistent);
  });
  return consistent ? ExitCode::Ok : ExitCode::CheckFailed;
}

int run_multicover(const RunConfig& c, Session& session) {
  const std::string suffix = " g=" + std::to_string(c.g) + " d=" + std::to_string(c.d);
  bool consistent = true;
  if (c.mode != MulticoverMode::Partition) {
    session.timed([&] {
      MulticoverOptions options;
      options.sum = session.sum_options();
      options.graph_cap = c.graph_cap;
      options.cache = &session.cache();
      const auto result = multicover_graphsum(c.g, c.d, options);
      Record record;
      record.query = "multicover-graph" + suffix;
      record.value = result.value;
      record.graph_count = BigInt(static_cast<unsigned long>(result.graph_count));
      record.weights = result.weights_used;
      if (result.trial_values.size() > 1) record.detail["weight_independent"] = result.weight_independent;
      consistent = consistent && result.weight_independent;
      return record;
    });
  }
  if (c.mode != MulticoverMode::Graph) {
    if (c.g == 0) fail(ErrorKind::InvalidArgument, "the partition form exists for g >= 1 only");
    session.timed([&] {
      Record record;
      record.query = "multicover-partition" + suffix;
      record.value = mast2_sum(c.g, c.d, session.hodge_table(), &session.cache());
      if (c.g == 1) {
        record.detail["lambda_part"] = lemma_lambda_sum(c.d, &session.cache()).str();
        record.detail["psi_part"] = lemma_psi_sum(c.d, &session.cache()).str();
      } else {
        record.detail["conjecture"] = conjecture_value(c.g, c.d).bernoulli_form.str();
      }
      return record;
    });
  }
  return consistent ? ExitCode::Ok : ExitCode::CheckFailed;
}

int run_series(const RunConfig& c, Session& session) {
  static const std::vector<std::string> kinds{"gamma", "gamma-psi", "psi", "s-beta", "manin"};
  bool matched = false;
  for (const auto& kind : kinds) {
    if (c.series != "all" && c.series != kind) continue;
    matched = true;
    std::vector<Rational> coefficients;
    int first = 0;
    if (kind == "gamma") {
      coefficients = gamma_series(c.order, &session.cache());
    } else if (kind == "gamma-psi") {
      coefficients = gamma_series_from_psi(c.order);
    } else if (kind == "psi") {
      coefficients = psi_series(c.order);
    } else if (kind == "s-beta") {
      coefficients.push_back(Rational());
      for (int beta = 1; beta <= c.order; ++beta) coefficients.push_back(s_beta(beta));
      first = 1;
    } else {
      coefficients.push_back(Rational());
      for (int d = 1; d <= c.order; ++d) coefficients.push_back(manin_sum(d));
      first = 1;
    }
    for (int k = first; k <= c.order; ++k) {
      session.timed([&] {
        Record record;
        record.query = kind + "[" + std::to_string(k) + "]";
        record.value = coefficients[static_cast<std::size_t>(k)];
        return record;
      });
    }
  }
  if (!matched) fail(ErrorKind::InvalidArgument, "unknown series '" + c.series + "'");
  return ExitCode::Ok;
}

int run_conjecture(const RunConfig& c, Session& session) {
  std::vector<std::pair<int, int>> cells;
  if (c.single_conjecture) {
    cells.emplace_back(c.g, c.d);
  } else {
    for (int g = 2; g <= 6; ++g)
      for (int d = 1; d <= 5; ++d) cells.emplace_back(g, d);
  }
  bool agree = true;
  for (auto [g, d] : cells) {
    session.timed([&, g = g, d = d] {
      const auto value = conjecture_value(g, d);
      Record record;
      record.query = "conjecture g=" + std::to_string(g) + " d=" + std::to_string(d);
      record.value = value.bernoulli_form;
      record.detail["euler_form"] = value.euler_form.str();
      record.detail["forms_agree"] = value.agree;
      agree = agree && value.agree;
      return record;
    });
  }
  return agree ? ExitCode::Ok : ExitCode::CheckFailed;
}

int run_graphs(const RunConfig& c, std::ostream& out) {
  EnumerationOptions options;
  options.cap = c.graph_cap;
  const auto graphs = enumerate_graphs(c.g, c.n, c.r, c.d, options);
  if (c.format == OutputFormat::Csv) out << "index,automorphisms,A_order,graph\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    nlohmann::json j;
    to_json(j, graphs[i]);
    switch (c.format) {
      case OutputFormat::Json:
        out << j.dump() << '\n';
        break;
      case OutputFormat::Csv:
        out << i << ',' << graph_automorphism_count(graphs[i]).get_str() << ','
            << automorphism_order(graphs[i]).get_str() << ',' << csv_field(j.dump()) << '\n';
        break;
      case OutputFormat::Text:
        out << '#' << i << "  " << j.dump() << '\n';
        break;
    }
  }
  return ExitCode::Ok;
}

int run_selfcheck(const RunConfig& c, std::ostream& out) {
  AcceptanceOptions options;
  options.seed = c.seed;
  options.workers = c.workers;
  options.hodge_table_path = c.hodge_table_path;
  bool all = true;
  run_acceptance(options, [&](const CriterionResult& result) {
    all = all && result.passed;
    out << format_result(result);
    if (c.timing) out << "  [" << result.seconds << " s]";
    out << '\n' << std::flush;
  });
  return all ? ExitCode::Ok : ExitCode::CheckFailed;
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Exact Gromov-Witten invariants of P^r by torus localization", "gwloc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "gwloc 0.1.0");

  const std::map<std::string, OutputFormat> formats{
      {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}, {"text", OutputFormat::Text}};
  const std::map<std::string, MulticoverMode> modes{
      {"graph", MulticoverMode::Graph}, {"partition", MulticoverMode::Partition}, {"both", MulticoverMode::Both}};

  app.add_option("--seed", config.seed, "Seed for the weight-vector stream");
  app.add_option("--trials", config.trials, "Independent weight vectors per graph sum; values must agree");
  app.add_option("--graph-cap", config.graph_cap, "Abort when more graphs than this would be enumerated");
  app.add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--cache", config.cache_path, "Persistent vertex-integral cache file")->envname("GWLOC_CACHE");
  app.add_option("--workers", config.workers, "Worker threads (0 = hardware concurrency)");
  app.add_option("--hodge-table", config.hodge_table_path, "Hodge-integral table for genus >= 2 partition sums");
  app.add_flag("--verbose", config.verbose, "Stream per-graph contributions to stderr");
  app.add_flag("--timing", config.timing, "Add elapsed_ms to each record");
  app.add_flag("--stats", config.stats, "Add cache_hits to each record");

  auto* gw = app.add_subcommand("gw", "Evaluate I_{g,d}(H^{l_1},...,H^{l_n}) on P^r");
  gw->add_option("--g", config.g, "Genus (0 or 1)");
  gw->add_option("--d", config.d, "Degree");
  gw->add_option("--r", config.r, "Target dimension");
  gw->add_option("--insert", config.insertions, "Hyperplane powers l_m, comma separated")->delimiter(',');
  gw->add_option("--points", config.points, "Append this many point classes H^r");
  gw->add_flag("--direct", config.direct, "Sum over every legged graph instead of leg placements per shape");

  auto* count = app.add_subcommand("count", "Plane curves of genus g and degree d through 3d+g-1 points");
  count->add_option("--g", config.g, "Genus (0 or 1)");
  count->add_option("--d", config.d, "Degree");

  auto* multicover = app.add_subcommand("multicover", "Multiple-cover contribution of a (-1,-1) curve");
  multicover->add_option("--g", config.g, "Genus");
  multicover->add_option("--d", config.d, "Degree");
  multicover->add_option("--mode", config.mode, "graph, partition or both")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  auto* series = app.add_subcommand("series", "Coefficients of gamma(t), psi(t), s_beta and the Manin sums");
  series->add_option("--kind", config.series, "gamma, gamma-psi, psi, s-beta, manin or all")
      ->check(CLI::IsMember({"all", "gamma", "gamma-psi", "psi", "s-beta", "manin"}));
  series->add_option("--order", config.order, "Highest coefficient");

  auto* conjecture = app.add_subcommand("conjecture", "Predicted genus >= 2 multiple-cover contributions");
  auto* cg = conjecture->add_option("--g", config.g, "Genus >= 2");
  auto* cd = conjecture->add_option("--d", config.d, "Degree");

  auto* graphs = app.add_subcommand("graphs", "Enumerate fixed-locus graphs as JSON");
  graphs->add_option("--g", config.g, "Genus");
  graphs->add_option("--n", config.n, "Marked points");
  graphs->add_option("--r", config.r, "Target dimension");
  graphs->add_option("--d", config.d, "Degree");

  auto* selfcheck = app.add_subcommand("selfcheck", "Run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return {std::nullopt, status == 0 ? ExitCode::Ok : ExitCode::InvalidArguments};
  }

  if (gw->parsed()) config.command = Command::Gw;
  if (count->parsed()) config.command = Command::Count;
  if (multicover->parsed()) config.command = Command::Multicover;
  if (series->parsed()) config.command = Command::Series;
  if (conjecture->parsed()) {
    config.command = Command::Conjecture;
    config.single_conjecture = cg->count() + cd->count() > 0;
    if (config.single_conjecture && cg->count() == 0) config.g = 2;
  }
  if (graphs->parsed()) config.command = Command::Graphs;
  if (selfcheck->parsed()) config.command = Command::Selfcheck;
  return {config, ExitCode::Ok};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    if (config.command == Command::Graphs) return run_graphs(config, out);
    if (config.command == Command::Selfcheck) return run_selfcheck(config, out);
    Session session(config, out, err);
    switch (config.command) {
      case Command::Gw:
        return run_gw(config, session);
      case Command::Count:
        return run_count(config, session);
      case Command::Multicover:
        return run_multicover(config, session);
      case Command::Series:
        return run_series(config, session);
      case Command::Conjecture:
        return run_conjecture(config, session);
      default:
        break;
    }
    return ExitCode::InternalError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::InternalError;
  }
}

}  // namespace gwloc::cli
