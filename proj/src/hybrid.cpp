#include "mcera/hybrid.hpp"

#include <cmath>
#include <stdexcept>

#include "mcera/json_writer.hpp"

namespace mcera {

double k_tail_term(double beta, std::size_t n, double omega_log, double gamma,
                   std::size_t m) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("tail term needs m, n >= 1");
  if (!(beta >= 0.0) || beta > 1.0)
    throw std::invalid_argument("beta must lie in [0, 1]");
  if (!(gamma > 0.0) || gamma >= 1.0)
    throw std::invalid_argument("gamma must lie in (0, 1)");
  if (beta == 0.0) return 0.0;  // empty tail
  return std::sqrt(2.0 * beta *
                   (std::log(static_cast<double>(n)) + omega_log +
                    std::log(1.0 / gamma)) /
                   static_cast<double>(m));
}

HybridReport hybrid_sd_bound(const SampleDataset& ds,
                             const RademacherMatrix& mat,
                             const HybridConfig& cfg) {
  if (!(cfg.delta > 0.0) || cfg.delta >= 1.0)
    throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(cfg.gamma > 0.0) || cfg.gamma >= cfg.delta)
    throw std::invalid_argument("gamma must lie in (0, delta)");
  if (cfg.beta.has_value() == cfg.max_nodes.has_value())
    throw std::invalid_argument("set exactly one of beta and max_nodes");

  EngineConfig ec;
  ec.order = TraversalOrder::support_desc;
  ec.include_root_in_sup = cfg.include_root_in_sup;
  ec.kernels = cfg.kernels;
  if (cfg.beta)
    ec.beta_floor = *cfg.beta;
  else
    ec.max_nodes = *cfg.max_nodes;
  const McEraResult res = get_n_mcera(ds, mat, ec);

  const std::size_t m = mat.m();
  const std::size_t n = mat.n();
  HybridReport rep;
  rep.beta_effective = res.beta_effective;
  rep.omega_log = compute_stats(ds).log_pattern_bound;
  rep.tail = k_tail_term(rep.beta_effective, n, rep.omega_log, cfg.gamma, m);
  rep.nu_raw = res.nu_raw;
  rep.nodes_explored = res.nodes_explored;
  rep.per_row_tail_used.resize(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double exact = static_cast<double>(res.nu_raw[j]) /
                         static_cast<double>(m);
    rep.per_row_tail_used[j] = exact < rep.tail ? 1 : 0;
    acc += std::max(exact, rep.tail);
  }
  rep.mcera_tilde = acc / static_cast<double>(n);

  // Uncentralized: the per-row values mix exact suprema with tail bounds of
  // the raw family, so the sign-concentration radius stays 1.
  BoundParams p = binary_params(m, n, cfg.delta - cfg.gamma, false);
  rep.bound = sd_bound_mcera(rep.mcera_tilde, p);
  rep.epsilon = rep.bound.epsilon;
  return rep;
}

std::string HybridReport::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("hybrid");
  w.key("beta_effective").value(beta_effective);
  w.key("omega_log").value(omega_log);
  w.key("tail").value(tail);
  w.key("mcera_tilde").value(mcera_tilde);
  w.key("epsilon").value(epsilon);
  w.key("nodes_explored").value(static_cast<std::uint64_t>(nodes_explored));
  w.key("per_row_tail_used").begin_array();
  for (std::uint8_t u : per_row_tail_used) w.value(u != 0);
  w.end_array();
  w.key("nu_raw").begin_array();
  for (std::int64_t v : nu_raw) w.value(v);
  w.end_array();
  w.key("bound").raw_json(bound.to_json());
  w.end_object();
  return w.str();
}

}  // namespace mcera
