#include "mcera/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "mcera/bounds.hpp"
#include "mcera/dataset.hpp"
#include "mcera/engine.hpp"
#include "mcera/hybrid.hpp"
#include "mcera/json_writer.hpp"
#include "mcera/oracle.hpp"
#include "mcera/rng.hpp"
#include "mcera/tfp.hpp"

namespace mcera::cli {

namespace {

struct Options {
  std::string dataset;
  std::uint64_t sample_size = 0;
  std::uint64_t n = 1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string bound;  // empty: mcera for exact, variance for tfp
  double theta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::uint64_t max_nodes = 0;
  std::string order = "support";
  std::string centralize = "on";
  std::string include_root = "off";
  std::string output = "json";
  std::uint64_t repeat = 1;
  std::string grid;
  std::string append_path;
  int threads = 0;
  std::string kernels = "parallel";
  std::string timing = "on";
  std::string report = "record";

  bool has_sample_size = false, has_theta = false, has_beta = false,
       has_gamma = false, has_max_nodes = false;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One result row; identical field set and order in JSON and CSV.
struct RunRecord {
  std::string dataset;
  std::uint64_t m = 0;
  std::uint64_t n = 1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::string mode;
  std::string bound_kind;
  double mcera = 0.0;
  double epsilon = 0.0;
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
  std::optional<double> beta;
  std::optional<double> theta;
  std::optional<std::uint64_t> pattern_count;
  std::string report_json;  // populated under --report full
};

constexpr const char* kCsvHeader =
    "dataset,m,n,delta,seed,mode,bound_kind,mcera,epsilon,nodes_explored,"
    "elapsed_ms,beta,theta,pattern_count";

std::string csv_row(const RunRecord& r) {
  std::string row;
  row += r.dataset;
  row += ',' + std::to_string(r.m);
  row += ',' + std::to_string(r.n);
  row += ',' + json_double(r.delta);
  row += ',' + std::to_string(r.seed);
  row += ',' + r.mode;
  row += ',' + r.bound_kind;
  row += ',' + json_double(r.mcera);
  row += ',' + json_double(r.epsilon);
  row += ',' + std::to_string(r.nodes_explored);
  row += ',' + json_double(r.elapsed_ms);
  row += ',';
  if (r.beta) row += json_double(*r.beta);
  row += ',';
  if (r.theta) row += json_double(*r.theta);
  row += ',';
  if (r.pattern_count) row += std::to_string(*r.pattern_count);
  return row;
}

void record_json(JsonWriter& w, const RunRecord& r) {
  w.begin_object();
  w.key("dataset").value(r.dataset);
  w.key("m").value(r.m);
  w.key("n").value(r.n);
  w.key("delta").value(r.delta);
  w.key("seed").value(r.seed);
  w.key("mode").value(r.mode);
  w.key("bound_kind").value(r.bound_kind);
  w.key("mcera").value(r.mcera);
  w.key("epsilon").value(r.epsilon);
  w.key("nodes_explored").value(r.nodes_explored);
  w.key("elapsed_ms").value(r.elapsed_ms);
  w.key("beta");
  if (r.beta)
    w.value(*r.beta);
  else
    w.null();
  w.key("theta");
  if (r.theta)
    w.value(*r.theta);
  else
    w.null();
  w.key("pattern_count");
  if (r.pattern_count)
    w.value(*r.pattern_count);
  else
    w.null();
  if (!r.report_json.empty()) w.key("report").raw_json(r.report_json);
  w.end_object();
}

std::string dataset_label(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::uint64_t lo = 0, hi = 0, points = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%llu:%llu:%llu%c",
                  reinterpret_cast<unsigned long long*>(&lo),
                  reinterpret_cast<unsigned long long*>(&hi),
                  reinterpret_cast<unsigned long long*>(&points),
                  &extra) != 3 ||
      lo < 1 || hi < lo || points < 1)
    throw Usage("--grid expects LO:HI:POINTS with 1 <= LO <= HI, POINTS >= 1");
  std::vector<std::uint64_t> sizes;
  if (points == 1) {
    sizes.push_back(lo);
    return sizes;
  }
  const double llo = std::log(static_cast<double>(lo));
  const double lhi = std::log(static_cast<double>(hi));
  for (std::uint64_t i = 0; i < points; ++i) {
    const double x =
        llo + (lhi - llo) * static_cast<double>(i) /
                  static_cast<double>(points - 1);
    auto size = static_cast<std::uint64_t>(std::llround(std::exp(x)));
    size = std::max(lo, std::min(hi, size));
    if (sizes.empty() || sizes.back() != size) sizes.push_back(size);
  }
  return sizes;
}

std::string tfp_report_json(const TfpResult& t) {
  JsonWriter w;
  w.begin_object();
  w.key("iterations").value(static_cast<std::uint64_t>(t.iterations));
  w.key("epsilon_trace").begin_array();
  for (double e : t.epsilon_trace) w.value(e);
  w.end_array();
  w.key("final_threshold").value(t.final_threshold);
  w.key("empty_family_stop").value(t.empty_family_stop);
  w.key("patterns").begin_array();
  for (std::size_t k = 0; k < t.patterns.size(); ++k) {
    w.begin_object();
    w.key("items").begin_array();
    for (std::uint32_t it : t.patterns[k].items)
      w.value(static_cast<std::uint64_t>(it));
    w.end_array();
    w.key("frequency").value(t.frequencies[k]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

RunRecord run_single(const SampleDataset& source, const std::string& label,
                     std::uint64_t size, std::uint64_t seed,
                     const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const SampleDataset sample =
      size > 0 ? sample_with_replacement(source, size, derive_seed(seed, 1))
               : source;
  const std::size_t m = sample.size();
  if (m == 0) throw std::runtime_error("dataset is empty");
  const bool centralize = opt.centralize == "on";
  const bool include_root = opt.include_root == "on";
  const KernelMode kernels =
      opt.kernels == "serial" ? KernelMode::serial : KernelMode::parallel;
  const TraversalOrder order = opt.order == "bfs" ? TraversalOrder::bfs
                                                  : TraversalOrder::support_desc;
  const bool full_report = opt.report == "full";

  RunRecord rec;
  rec.dataset = label;
  rec.m = m;
  rec.n = opt.n;
  rec.delta = opt.delta;
  rec.seed = seed;
  rec.mode = opt.mode;

  if (opt.mode == "exact") {
    const std::string bound = opt.bound.empty() ? "mcera" : opt.bound;
    rec.bound_kind = bound;
    if (bound == "massart") {
      const DatasetStats stats = compute_stats(sample);
      const double value = massart_baseline(
          stats.log_pattern_bound, max_singleton_support(sample), m);
      const BoundReport rep = sd_bound_massart(
          value, binary_params(m, opt.n, opt.delta, false));
      rec.mcera = value;
      rec.epsilon = rep.epsilon;
      if (full_report) rec.report_json = rep.to_json();
    } else {
      const RademacherMatrix mat(m, opt.n, derive_seed(seed, 2));
      EngineConfig ec;
      ec.order = order;
      ec.include_root_in_sup = include_root;
      ec.kernels = kernels;
      const McEraResult res = get_n_mcera(sample, mat, ec);
      const double input = centralize ? res.centralized_mcera : res.mcera;
      const BoundParams params =
          binary_params(m, opt.n, opt.delta, centralize);
      BoundReport rep;
      if (bound == "mcera") {
        rep = sd_bound_mcera(input, params);
      } else if (bound == "variance") {
        rep = sd_bound_variance(
            input, variance_bound_for_threshold(opt.theta), params);
        rec.theta = opt.theta;
      } else {  // one-mcera
        rep = sd_bound_one_mcera(res.centralized_mcera, params);
      }
      rec.mcera = input;
      rec.epsilon = rep.epsilon;
      rec.nodes_explored = res.nodes_explored;
      if (full_report) rec.report_json = rep.to_json();
    }
  } else if (opt.mode == "hybrid") {
    const RademacherMatrix mat(m, opt.n, derive_seed(seed, 2));
    HybridConfig hc;
    hc.delta = opt.delta;
    hc.gamma = opt.gamma;
    if (opt.has_beta) hc.beta = opt.beta;
    if (opt.has_max_nodes) hc.max_nodes = opt.max_nodes;
    hc.include_root_in_sup = include_root;
    hc.kernels = kernels;
    const HybridReport rep = hybrid_sd_bound(sample, mat, hc);
    rec.bound_kind = "mcera";
    rec.mcera = rep.mcera_tilde;
    rec.epsilon = rep.epsilon;
    rec.nodes_explored = rep.nodes_explored;
    rec.beta = rep.beta_effective;
    if (full_report) rec.report_json = rep.to_json();
  } else {  // tfp
    TfpResult tres;
    if (opt.bound == "massart") {
      tres = mine_true_frequent_massart(sample, opt.theta, opt.delta);
      rec.bound_kind = "massart";
    } else {
      const RademacherMatrix mat(m, opt.n, derive_seed(seed, 2));
      TfpConfig tc;
      tc.theta = opt.theta;
      tc.delta = opt.delta;
      tc.n = opt.n;
      tc.kernels = kernels;
      tres = mine_true_frequent(sample, mat, tc);
      rec.bound_kind = "variance";
    }
    rec.mcera = tres.last_mcera;
    rec.epsilon = tres.final_epsilon;
    rec.nodes_explored = tres.nodes_explored_total;
    rec.theta = opt.theta;
    rec.pattern_count = tres.patterns.size();
    if (full_report) rec.report_json = tfp_report_json(tres);
  }

  if (opt.timing == "on")
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
  return rec;
}

void validate(const Options& opt) {
  if (!(opt.delta > 0.0) || opt.delta >= 1.0)
    throw Usage("--delta must lie in (0, 1)");
  if (opt.n < 1) throw Usage("--n must be >= 1");
  if (opt.repeat < 1) throw Usage("--repeat must be >= 1");
  if (opt.threads < 0) throw Usage("--threads must be >= 0");
  if (opt.has_sample_size && opt.sample_size == 0)
    throw Usage("--sample-size must be >= 1");
  if (opt.has_theta && (!(opt.theta > 0.0) || opt.theta >= 1.0))
    throw Usage("--theta must lie in (0, 1)");
  if (opt.has_beta && (opt.beta < 0.0 || opt.beta > 1.0))
    throw Usage("--beta must lie in [0, 1]");
  if (!opt.grid.empty() && opt.has_sample_size)
    throw Usage("--grid and --sample-size are exclusive");
  if (!opt.append_path.empty() && opt.output != "csv")
    throw Usage("--append requires --output csv");
  if (opt.report == "full" && opt.output != "json")
    throw Usage("--report full requires --output json");

  if (opt.mode == "exact") {
    if (opt.has_beta || opt.has_gamma || opt.has_max_nodes)
      throw Usage("--beta/--gamma/--max-nodes need --mode hybrid");
    const std::string bound = opt.bound.empty() ? "mcera" : opt.bound;
    if (bound == "one-mcera") {
      if (opt.n != 1) throw Usage("--bound one-mcera requires --n 1");
      if (opt.centralize != "on")
        throw Usage("--bound one-mcera requires --centralize on");
    }
    if (bound == "variance" && !opt.has_theta)
      throw Usage("--bound variance needs --theta for the variance rule");
  } else if (opt.mode == "hybrid") {
    if (!opt.has_gamma) throw Usage("--mode hybrid requires --gamma");
    if (!(opt.gamma > 0.0) || opt.gamma >= opt.delta)
      throw Usage("--gamma must lie in (0, delta)");
    if (opt.has_beta == opt.has_max_nodes)
      throw Usage("--mode hybrid needs exactly one of --beta, --max-nodes");
    if (!opt.bound.empty() && opt.bound != "mcera")
      throw Usage("--mode hybrid supports only --bound mcera");
    if (opt.has_max_nodes && opt.order == "bfs")
      throw Usage("--max-nodes requires --order support");
    if (opt.has_max_nodes && opt.max_nodes == 0)
      throw Usage("--max-nodes must be >= 1");
  } else if (opt.mode == "tfp") {
    if (!opt.has_theta) throw Usage("--mode tfp requires --theta");
    if (opt.has_beta || opt.has_gamma || opt.has_max_nodes)
      throw Usage("--beta/--gamma/--max-nodes need --mode hybrid");
    if (!opt.bound.empty() && opt.bound != "variance" &&
        opt.bound != "massart")
      throw Usage("--mode tfp supports --bound variance or massart");
  }
}

int dispatch(const Options& opt, std::ostream& out, std::ostream& err) {
#ifdef _OPENMP
  if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif

  if (opt.mode == "oracle") {
    const OracleCheckResult res = run_oracle_suite(opt.seed, 200);
    JsonWriter w;
    w.begin_object();
    w.key("instances").value(static_cast<std::uint64_t>(res.instances));
    w.key("failures").value(static_cast<std::uint64_t>(res.failures));
    w.key("passed").value(res.passed());
    w.key("first_failure");
    if (res.first_failure.empty())
      w.null();
    else
      w.value(res.first_failure);
    w.end_object();
    out << w.str() << '\n';
    return res.passed() ? 0 : 1;
  }

  if (opt.dataset.empty()) throw Usage("--dataset is required for this mode");
  const SampleDataset source = load_fimi(opt.dataset);
  const std::string label = dataset_label(opt.dataset);

  if (opt.mode == "stats") {
    const SampleDataset sample =
        opt.has_sample_size
            ? sample_with_replacement(source, opt.sample_size,
                                      derive_seed(opt.seed, 1))
            : source;
    const DatasetStats st = compute_stats(sample);
    JsonWriter w;
    w.begin_object();
    w.key("dataset").value(label);
    w.key("m").value(static_cast<std::uint64_t>(st.m));
    w.key("alphabet_size").value(static_cast<std::uint64_t>(st.alphabet_size));
    w.key("avg_transaction_len").value(st.avg_transaction_len);
    w.key("max_transaction_len")
        .value(static_cast<std::uint64_t>(st.max_transaction_len));
    w.key("log_pattern_bound").value(st.log_pattern_bound);
    w.end_object();
    out << w.str() << '\n';
    return 0;
  }

  std::vector<std::uint64_t> sizes;
  if (!opt.grid.empty())
    sizes = parse_grid(opt.grid);
  else
    sizes.push_back(opt.has_sample_size ? opt.sample_size : 0);

  std::vector<RunRecord> records;
  for (std::uint64_t size : sizes)
    for (std::uint64_t r = 0; r < opt.repeat; ++r)
      records.push_back(run_single(source, label, size, opt.seed + r, opt));

  if (opt.output == "json") {
    JsonWriter w;
    if (records.size() == 1) {
      record_json(w, records[0]);
    } else {
      w.begin_array();
      for (const RunRecord& rec : records) record_json(w, rec);
      w.end_array();
    }
    out << w.str() << '\n';
    return 0;
  }

  // CSV: --append accumulates into a file (header only when starting it);
  // otherwise header + rows go to stdout.
  if (!opt.append_path.empty()) {
    std::ifstream probe(opt.append_path);
    const bool fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
    probe.close();
    std::ofstream f(opt.append_path, std::ios::app);
    if (!f)
      throw std::runtime_error("cannot open append file: " + opt.append_path);
    if (fresh) f << kCsvHeader << '\n';
    for (const RunRecord& rec : records) f << csv_row(rec) << '\n';
    if (!f) throw std::runtime_error("write failed: " + opt.append_path);
    err << "appended " << records.size() << " row(s) to " << opt.append_path
        << '\n';
    return 0;
  }
  out << kCsvHeader << '\n';
  for (const RunRecord& rec : records) out << csv_row(rec) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{
      "Exact n-sample Monte-Carlo empirical Rademacher averages for itemset "
      "families, supremum-deviation bounds, and true-frequent-pattern "
      "mining"};
  app.add_option("--dataset", opt.dataset, "FIMI transaction file");
  auto* size_opt = app.add_option("--sample-size", opt.sample_size,
                                  "resample size (default: whole dataset)");
  app.add_option("--n", opt.n, "number of sign rows (default 1)");
  app.add_option("--delta", opt.delta, "failure budget (default 0.1)");
  app.add_option("--seed", opt.seed, "master seed (default 0)");
  app.add_option("--mode", opt.mode, "exact|hybrid|tfp|oracle|stats")
      ->check(CLI::IsMember({"exact", "hybrid", "tfp", "oracle", "stats"}));
  app.add_option("--bound", opt.bound, "mcera|variance|one-mcera|massart")
      ->check(CLI::IsMember({"mcera", "variance", "one-mcera", "massart"}));
  auto* theta_opt =
      app.add_option("--theta", opt.theta, "frequency threshold (tfp)");
  auto* beta_opt =
      app.add_option("--beta", opt.beta, "hybrid frequency floor");
  auto* gamma_opt =
      app.add_option("--gamma", opt.gamma, "hybrid tail budget");
  auto* cap_opt =
      app.add_option("--max-nodes", opt.max_nodes, "hybrid node budget");
  app.add_option("--order", opt.order, "support|bfs traversal order")
      ->check(CLI::IsMember({"support", "bfs"}));
  app.add_option("--centralize", opt.centralize,
                 "shift family by -1/2 before bounding (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--include-root", opt.include_root,
                 "count the empty itemset in the suprema (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--output", opt.output, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--repeat", opt.repeat,
                 "independent repetitions (seed, seed+1, ...)");
  app.add_option("--grid", opt.grid,
                 "LO:HI:POINTS log-spaced sample-size sweep");
  app.add_option("--append", opt.append_path,
                 "append CSV rows to this file (never rewrites)");
  app.add_option("--threads", opt.threads, "kernel threads (0 = default)");
  app.add_option("--kernels", opt.kernels,
                 "parallel|serial kernel implementation")
      ->check(CLI::IsMember({"parallel", "serial"}));
  app.add_option("--timing", opt.timing,
                 "report wall time (off pins elapsed_ms to 0)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--report", opt.report,
                 "record|full (full embeds the itemized bound report)")
      ->check(CLI::IsMember({"record", "full"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }
  opt.has_sample_size = size_opt->count() > 0;
  opt.has_theta = theta_opt->count() > 0;
  opt.has_beta = beta_opt->count() > 0;
  opt.has_gamma = gamma_opt->count() > 0;
  opt.has_max_nodes = cap_opt->count() > 0;

  try {
    validate(opt);
    return dispatch(opt, out, err);
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace mcera::cli
