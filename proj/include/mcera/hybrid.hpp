#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcera/bounds.hpp"
#include "mcera/engine.hpp"

namespace mcera {

// Hybrid deviation bound: traverse only the patterns with frequency >= beta
// exactly, and cover everything rarer with a closed-form tail that charges
// gamma of the failure budget. beta can be given directly, or picked by a
// node budget (the frequency of the last node a best-first traversal of
// max_nodes processes).
struct HybridConfig {
  double delta = 0.1;  // total failure budget, in (0, 1)
  double gamma = 0.01;  // budget spent on the frequency tail, in (0, delta)
  std::optional<double> beta;               // explicit floor, in [0, 1]
  std::optional<std::uint64_t> max_nodes;   // node budget (exclusive w/ beta)
  bool include_root_in_sup = false;
  KernelMode kernels = KernelMode::parallel;
};

struct HybridReport {
  double beta_effective = 0.0;
  double omega_log = 0.0;  // ln sum_i 2^{|s_i|}
  double tail = 0.0;       // per-row tail value at beta_effective
  double mcera_tilde = 0.0;  // (1/n) sum_j max(nu_j/m, tail)
  std::uint64_t nodes_explored = 0;
  std::vector<std::uint8_t> per_row_tail_used;  // 1 where tail > nu_j/m
  std::vector<std::int64_t> nu_raw;
  BoundReport bound;  // standard path at eta = delta - gamma
  double epsilon = 0.0;

  std::string to_json() const;
};

// sqrt(2 beta (ln n + omega_log + ln(1/gamma)) / m): holds simultaneously
// for all rows with probability >= 1 - gamma over the sign draw.
double k_tail_term(double beta, std::size_t n, double omega_log, double gamma,
                   std::size_t m);

HybridReport hybrid_sd_bound(const SampleDataset& ds,
                             const RademacherMatrix& mat,
                             const HybridConfig& cfg);

}  // namespace mcera
