#include "mcera/tfp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "mcera/bounds.hpp"
#include "mcera/rng.hpp"

namespace mcera {

namespace {

void check_config(double theta, double delta) {
  if (!(theta > 0.0) || theta >= 1.0)
    throw std::invalid_argument("theta must lie in (0, 1)");
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("delta must lie in (0, 1)");
}

void emit(TfpResult& out, std::vector<PatternNode> mined, double m) {
  out.patterns.clear();
  out.frequencies.clear();
  out.patterns.reserve(mined.size());
  out.frequencies.reserve(mined.size());
  for (auto& node : mined) {
    out.frequencies.push_back(static_cast<double>(node.support) / m);
    out.patterns.push_back(std::move(node.pattern));
  }
}

}  // namespace

TfpResult mine_true_frequent(const SampleDataset& ds,
                             const RademacherMatrix& mat,
                             const TfpConfig& cfg) {
  check_config(cfg.theta, cfg.delta);
  if (mat.m() != ds.size())
    throw std::invalid_argument("sign matrix width must equal dataset size");
  const double m = static_cast<double>(ds.size());
  const double v = variance_bound_for_threshold(cfg.theta);
  const BoundParams params =
      binary_params(ds.size(), mat.n(), cfg.delta, /*centralized=*/true);

  TfpResult out;
  out.final_epsilon = std::numeric_limits<double>::infinity();
  std::optional<double> restriction;  // none: first round bounds the full family
  std::size_t emitted_count = 0;
  for (;;) {
    EngineConfig ec;
    ec.order = TraversalOrder::support_desc;
    ec.kernels = cfg.kernels;
    ec.restrict_freq_below = restriction;
    const McEraResult res = get_n_mcera(ds, mat, ec);
    ++out.iterations;
    out.nodes_explored_total += res.nodes_explored;
    if (res.empty_family) {
      // Nothing left below the emission threshold: the margin cannot move.
      out.empty_family_stop = true;
      break;
    }
    out.last_mcera = res.centralized_mcera;
    const BoundReport rep = sd_bound_variance(res.centralized_mcera, v, params);
    if (!out.epsilon_trace.empty() &&
        rep.epsilon > out.epsilon_trace.back() + 1e-12)
      throw std::logic_error("refinement increased the deviation margin");
    out.epsilon_trace.push_back(rep.epsilon);
    out.final_epsilon = rep.epsilon;
    out.final_threshold = cfg.theta + rep.epsilon;
    std::vector<PatternNode> mined = frequent_patterns(ds, out.final_threshold);
    const bool grew = mined.size() != emitted_count;
    emitted_count = mined.size();
    emit(out, std::move(mined), m);
    if (!grew) break;  // emitted set stable: the restriction is a fixpoint
    restriction = out.final_threshold;
  }
  if (out.epsilon_trace.empty())
    out.final_threshold = std::numeric_limits<double>::infinity();
  return out;
}

TfpResult mine_true_frequent(const SampleDataset& ds, const TfpConfig& cfg) {
  const RademacherMatrix mat(ds.size(), cfg.n, derive_seed(cfg.seed, 2));
  return mine_true_frequent(ds, mat, cfg);
}

TfpResult mine_true_frequent_massart(const SampleDataset& ds, double theta,
                                     double delta) {
  check_config(theta, delta);
  const DatasetStats stats = compute_stats(ds);
  if (stats.m == 0) throw std::invalid_argument("dataset is empty");
  const double value = massart_baseline(
      stats.log_pattern_bound, max_singleton_support(ds), stats.m);
  const BoundReport rep =
      sd_bound_massart(value, binary_params(stats.m, 1, delta, false));

  TfpResult out;
  out.iterations = 1;
  out.last_mcera = value;
  out.epsilon_trace.push_back(rep.epsilon);
  out.final_epsilon = rep.epsilon;
  out.final_threshold = theta + rep.epsilon;
  emit(out, frequent_patterns(ds, out.final_threshold),
       static_cast<double>(stats.m));
  return out;
}

}  // namespace mcera
