#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mcera {

// Probabilistic bounds tying an n-sample Monte-Carlo empirical Rademacher
// average (n-MCERA) to the supremum deviation of the function family. All
// logs are natural; everything is evaluated in binary64.

struct BoundParams {
  double a = 0.0;   // function range [a, b]; binary itemset indicators use
  double b = 1.0;   // [0,1], the centralized family uses [-1/2, 1/2]
  std::size_t m = 0;
  std::size_t n = 1;
  double eta = 0.1;  // failure probability, in (0, 1]
  double z = 1.0;    // bound on sup |f|: 1 raw, c/2 centralized
  bool centralized = false;  // the supplied MCERA is of the family f - c/2

  double c() const { return b - a; }
};

// Parameter block for the binary indicator family.
BoundParams binary_params(std::size_t m, std::size_t n, double eta,
                          bool centralized);

enum class BoundKind { mcera, variance, one_mcera, massart };

const char* bound_kind_name(BoundKind kind);

// Itemized result: epsilon == sum of terms (exactly, by construction).
// `degenerate` marks a radicand that had to be clamped at zero, which can
// only happen for inputs outside the regime where the bound is meaningful.
struct BoundReport {
  BoundKind kind = BoundKind::mcera;
  double input_mcera = 0.0;  // value fed to the bound (may be centralized)
  double rtilde = 0.0;       // intermediate Rademacher-average bound
  double epsilon = 0.0;
  bool degenerate = false;
  std::vector<std::pair<std::string, double>> terms;

  std::string to_json() const;
};

// 2 z sqrt(ln(1/eta) / (2 n m)): the deviation of the n-row average from its
// expectation over sign draws.
double mcera_concentration_term(double z, std::size_t n, std::size_t m,
                                double eta);

// MCERA of the shifted family f - c/2 from the raw per-row suprema:
// subtracts c/2 times the mean sign, i.e. c * sum(row_sums) / (2 n m).
double centralize_mcera(const std::vector<std::int64_t>& nu_raw,
                        const std::vector<std::int64_t>& row_sums, double c,
                        std::size_t n, std::size_t m);
double centralize_mcera(double mcera, double row_sum_total, double c,
                        std::size_t n, std::size_t m);

// Standard path: R-tilde = mcera + concentration, then the four-term
// deviation bound. The eta budget is split in four inside.
BoundReport sd_bound_mcera(double mcera, const BoundParams& p);

// Variance-sensitive path: needs a bound v on the wimpy variance of the
// family. Tighter than the standard path when v << c^2/4.
BoundReport sd_bound_variance(double mcera, double v, const BoundParams& p);

// Single-row shortcut (n == 1, centralized input required):
// epsilon = 2*mcera + 3 c sqrt(ln(2/eta) / (2m)).
BoundReport sd_bound_one_mcera(double mcera_centralized,
                               const BoundParams& p);

// Deterministic Rademacher-average bound sqrt(2 * log_family_count_bound *
// max_support) / m; log_family_count_bound is ln of (a bound on) the family
// size and max_support bounds the squared L2 norm of any member.
double massart_baseline(double log_family_count_bound,
                        std::int64_t max_support, std::size_t m);

// Massart value pushed through the standard deviation tail (no concentration
// term: the input is deterministic, not a Monte-Carlo estimate).
BoundReport sd_bound_massart(double massart_value, const BoundParams& p);

// Wimpy-variance bound for the family of indicators with mean at most
// theta-ish: theta*(1-theta) below 1/2, else 1/4.
double variance_bound_for_threshold(double theta);

}  // namespace mcera
