#include "mcera/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mcera/json_writer.hpp"

namespace mcera {

namespace {

void check_params(const BoundParams& p) {
  if (p.m == 0) throw std::invalid_argument("bound needs m >= 1");
  if (p.n == 0) throw std::invalid_argument("bound needs n >= 1");
  if (!(p.eta > 0.0) || p.eta > 1.0)
    throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(p.b > p.a)) throw std::invalid_argument("range needs b > a");
  if (!(p.z > 0.0)) throw std::invalid_argument("z must be positive");
}

// Clamps a radicand at zero, recording that the bound left its regime.
double safe_sqrt(double radicand, bool& degenerate) {
  if (radicand < 0.0) {
    degenerate = true;
    return 0.0;
  }
  return std::sqrt(radicand);
}

double finish(BoundReport& rep) {
  double eps = 0.0;
  for (const auto& t : rep.terms) eps += t.second;
  rep.epsilon = eps;
  return eps;
}

}  // namespace

BoundParams binary_params(std::size_t m, std::size_t n, double eta,
                          bool centralized) {
  BoundParams p;
  p.a = 0.0;
  p.b = 1.0;
  p.m = m;
  p.n = n;
  p.eta = eta;
  p.centralized = centralized;
  p.z = centralized ? 0.5 : 1.0;
  return p;
}

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::mcera: return "mcera";
    case BoundKind::variance: return "variance";
    case BoundKind::one_mcera: return "one-mcera";
    case BoundKind::massart: return "massart";
  }
  return "?";
}

double mcera_concentration_term(double z, std::size_t n, std::size_t m,
                                double eta) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("concentration term needs m, n >= 1");
  if (!(eta > 0.0) || eta > 1.0)
    throw std::invalid_argument("eta must lie in (0, 1]");
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  return 2.0 * z *
         std::sqrt(std::log(1.0 / eta) /
                   (2.0 * static_cast<double>(n) * static_cast<double>(m)));
}

double centralize_mcera(double mcera, double row_sum_total, double c,
                        std::size_t n, std::size_t m) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("centralization needs m, n >= 1");
  return mcera - c * row_sum_total /
                     (2.0 * static_cast<double>(n) * static_cast<double>(m));
}

double centralize_mcera(const std::vector<std::int64_t>& nu_raw,
                        const std::vector<std::int64_t>& row_sums, double c,
                        std::size_t n, std::size_t m) {
  if (nu_raw.size() != n || row_sums.size() != n)
    throw std::invalid_argument("centralization needs n per-row values");
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  const std::int64_t nu_total =
      std::accumulate(nu_raw.begin(), nu_raw.end(), std::int64_t{0});
  const std::int64_t rs_total =
      std::accumulate(row_sums.begin(), row_sums.end(), std::int64_t{0});
  if (c == 1.0) {
    // Integer numerator, single division: exactly the per-row suprema of the
    // shifted family summed, so independent derivations agree bit-for-bit.
    return static_cast<double>(2 * nu_total - rs_total) / (2.0 * nm);
  }
  return centralize_mcera(static_cast<double>(nu_total) / nm,
                          static_cast<double>(rs_total), c, n, m);
}

namespace {

// Shared tail of the standard path: 2*rtilde plus the three deviation terms
// with log budget L = ln(4/eta).
BoundReport standard_tail(BoundKind kind, double input, double rtilde,
                          const BoundParams& p) {
  const double c = p.c();
  const double m = static_cast<double>(p.m);
  const double L = std::log(4.0 / p.eta);
  BoundReport rep;
  rep.kind = kind;
  rep.input_mcera = input;
  rep.rtilde = rtilde;
  rep.terms.emplace_back("two_rtilde", 2.0 * rtilde);
  rep.terms.emplace_back(
      "sqrt_mixed",
      safe_sqrt(c * (4.0 * m * rtilde + c * L) * L, rep.degenerate) / m);
  rep.terms.emplace_back("linear_log", c * L / m);
  rep.terms.emplace_back("sqrt_log", c * std::sqrt(L / (2.0 * m)));
  finish(rep);
  return rep;
}

}  // namespace

BoundReport sd_bound_mcera(double mcera, const BoundParams& p) {
  check_params(p);
  const double rtilde =
      mcera + mcera_concentration_term(p.z, p.n, p.m, p.eta / 4.0);
  return standard_tail(BoundKind::mcera, mcera, rtilde, p);
}

BoundReport sd_bound_variance(double mcera, double v, const BoundParams& p) {
  check_params(p);
  if (v < 0.0) throw std::invalid_argument("variance bound must be >= 0");
  const double c = p.c();
  const double m = static_cast<double>(p.m);
  const double L = std::log(4.0 / p.eta);
  BoundReport rep;
  rep.kind = BoundKind::variance;
  rep.input_mcera = mcera;
  const double rho =
      mcera + mcera_concentration_term(p.z, p.n, p.m, p.eta / 4.0);
  const double r =
      rho + (safe_sqrt(c * (4.0 * m * rho + c * L) * L, rep.degenerate) +
             c * L) /
                (2.0 * m);
  rep.rtilde = r;
  rep.terms.emplace_back("two_r", 2.0 * r);
  rep.terms.emplace_back(
      "sqrt_variance",
      safe_sqrt(2.0 * L * (v + 8.0 * c * r) / m, rep.degenerate));
  rep.terms.emplace_back("linear_log", 2.0 * c * L / (3.0 * m));
  finish(rep);
  return rep;
}

BoundReport sd_bound_one_mcera(double mcera_centralized,
                               const BoundParams& p) {
  check_params(p);
  if (p.n != 1)
    throw std::invalid_argument("one-mcera bound requires n == 1");
  if (!p.centralized)
    throw std::invalid_argument("one-mcera bound requires a centralized MCERA");
  const double c = p.c();
  const double m = static_cast<double>(p.m);
  BoundReport rep;
  rep.kind = BoundKind::one_mcera;
  rep.input_mcera = mcera_centralized;
  rep.rtilde = mcera_centralized;
  rep.terms.emplace_back("two_mcera", 2.0 * mcera_centralized);
  rep.terms.emplace_back("sqrt_log",
                         3.0 * c * std::sqrt(std::log(2.0 / p.eta) /
                                             (2.0 * m)));
  finish(rep);
  return rep;
}

double massart_baseline(double log_family_count_bound,
                        std::int64_t max_support, std::size_t m) {
  if (m == 0) throw std::invalid_argument("massart baseline needs m >= 1");
  if (log_family_count_bound < 0.0)
    throw std::invalid_argument("log family count bound must be >= 0");
  if (max_support < 0)
    throw std::invalid_argument("max support must be >= 0");
  return std::sqrt(2.0 * log_family_count_bound *
                   static_cast<double>(max_support)) /
         static_cast<double>(m);
}

BoundReport sd_bound_massart(double massart_value, const BoundParams& p) {
  check_params(p);
  // Deterministic input: no Monte-Carlo concentration term to add.
  return standard_tail(BoundKind::massart, massart_value, massart_value, p);
}

double variance_bound_for_threshold(double theta) {
  if (!(theta >= 0.0) || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0, 1]");
  return theta < 0.5 ? theta * (1.0 - theta) : 0.25;
}

std::string BoundReport::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("kind").value(bound_kind_name(kind));
  w.key("input_mcera").value(input_mcera);
  w.key("rtilde").value(rtilde);
  w.key("epsilon").value(epsilon);
  w.key("degenerate").value(degenerate);
  w.key("terms").begin_object();
  for (const auto& t : terms) w.key(t.first).value(t.second);
  w.end_object();
  w.end_object();
  return w.str();
}

}  // namespace mcera
