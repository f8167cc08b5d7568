#include "mcera/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "mcera/bounds.hpp"
#include "mcera/rng.hpp"

namespace mcera {

namespace {

// Transactions as bitmasks over the (dense) alphabet; at most 15 items.
std::vector<std::uint16_t> transaction_masks(const SampleDataset& ds) {
  if (ds.alphabet.size() > 15)
    throw std::invalid_argument(
        "exhaustive reference is limited to 15-item alphabets");
  std::vector<std::uint16_t> masks;
  masks.reserve(ds.transactions.size());
  for (const auto& t : ds.transactions) {
    std::uint16_t mask = 0;
    for (std::uint32_t it : t) {
      const auto pos = std::lower_bound(ds.alphabet.begin(),
                                        ds.alphabet.end(), it) -
                       ds.alphabet.begin();
      mask |= static_cast<std::uint16_t>(1u << pos);
    }
    masks.push_back(mask);
  }
  return masks;
}

template <typename PerRow>
void enumerate(const SampleDataset& ds, const RademacherMatrix& mat,
               bool include_root, PerRow&& fold) {
  const auto masks = transaction_masks(ds);
  const std::size_t m = masks.size();
  const std::size_t n = mat.n();
  const std::uint32_t limit = 1u << ds.alphabet.size();
  for (std::uint32_t p = include_root ? 0 : 1; p < limit; ++p) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t signed_support = 0;  // sum of signs over supporting tids
      std::int64_t member = 0;          // number of supporting tids
      for (std::size_t i = 0; i < m; ++i)
        if ((masks[i] & p) == p) {
          signed_support += mat.sign(j, i);
          ++member;
        }
      fold(j, signed_support, member);
    }
  }
}

}  // namespace

std::vector<std::int64_t> brute_nu(const SampleDataset& ds,
                                   const RademacherMatrix& mat,
                                   bool include_root) {
  std::vector<std::int64_t> nu(mat.n(),
                               -static_cast<std::int64_t>(mat.m()));
  enumerate(ds, mat, include_root,
            [&](std::size_t j, std::int64_t s, std::int64_t) {
              nu[j] = std::max(nu[j], s);
            });
  return nu;
}

std::vector<std::int64_t> brute_centered_numerators(
    const SampleDataset& ds, const RademacherMatrix& mat, bool include_root) {
  // sum_i sigma (2 f - 1) = 2 * (signed support) - row_sum, but computed
  // from scratch here as an independent arithmetic path.
  const std::size_t m = mat.m();
  std::vector<std::int64_t> best(mat.n(),
                                 -2 * static_cast<std::int64_t>(m));
  enumerate(ds, mat, include_root,
            [&](std::size_t j, std::int64_t s, std::int64_t) {
              // recompute the complement contribution explicitly
              const std::int64_t outside = mat.row_sum(j) - s;
              const std::int64_t numer = s - outside;
              best[j] = std::max(best[j], numer);
            });
  // empty admitted family cannot happen: limit >= 2 for a 1-item alphabet,
  // and alphabet size 0 leaves only the root
  return best;
}

double brute_mcera(const SampleDataset& ds, const RademacherMatrix& mat,
                   bool include_root) {
  const auto nu = brute_nu(ds, mat, include_root);
  std::int64_t total = 0;
  for (std::int64_t v : nu) total += v;
  return static_cast<double>(total) /
         (static_cast<double>(mat.n()) * static_cast<double>(mat.m()));
}

double brute_centralized_mcera(const SampleDataset& ds,
                               const RademacherMatrix& mat,
                               bool include_root) {
  const auto numer = brute_centered_numerators(ds, mat, include_root);
  std::int64_t total = 0;
  for (std::int64_t v : numer) total += v;
  return static_cast<double>(total) /
         (2.0 * static_cast<double>(mat.n()) * static_cast<double>(mat.m()));
}

SampleDataset GroundTruth::generate(std::size_t m, std::uint64_t seed) const {
  SampleDataset ds;
  for (std::size_t k = 0; k < item_probs.size(); ++k)
    ds.alphabet.push_back(static_cast<std::uint32_t>(k + 1));
  std::mt19937_64 gen(seed);
  ds.transactions.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < item_probs.size(); ++k)
      if (uniform_unit(gen) < item_probs[k])
        ds.transactions[i].push_back(static_cast<std::uint32_t>(k + 1));
  return ds;
}

double GroundTruth::true_frequency(const Pattern& p) const {
  double freq = 1.0;
  for (std::uint32_t it : p.items) {
    if (it == 0 || it > item_probs.size())
      throw std::invalid_argument("pattern item outside the planted alphabet");
    freq *= item_probs[it - 1];
  }
  return freq;
}

bool check_no_false_positives(const std::vector<Pattern>& emitted,
                              const GroundTruth& truth, double theta) {
  for (const Pattern& p : emitted)
    if (truth.true_frequency(p) < theta) return false;
  return true;
}

bool check_bound_chain(const std::vector<TraceEntry>& trace) {
  std::map<std::int64_t, const TraceEntry*> by_id;
  for (const TraceEntry& e : trace) {
    for (std::size_t j = 0; j < e.pos.size(); ++j) {
      const auto pos = static_cast<std::int64_t>(e.pos[j]);
      const auto supp = static_cast<std::int64_t>(e.support);
      const std::int64_t delta = 2 * pos - supp;
      if (!(delta <= pos && pos <= supp)) return false;
      if (e.parent_id >= 0) {
        auto it = by_id.find(e.parent_id);
        if (it == by_id.end()) return false;  // parent must precede child
        const TraceEntry& parent = *it->second;
        if (e.support > parent.support) return false;
        if (pos > static_cast<std::int64_t>(parent.pos[j])) return false;
      }
    }
    by_id[static_cast<std::int64_t>(e.node_id)] = &e;
  }
  return true;
}

OracleCheckResult run_oracle_suite(std::uint64_t seed, std::size_t instances) {
  OracleCheckResult out;
  out.instances = instances;
  for (std::size_t idx = 0; idx < instances; ++idx) {
    std::mt19937_64 gen(derive_seed(seed, idx));
    const std::size_t m = 1 + uniform_below(gen, 30);
    const std::size_t alpha = 1 + uniform_below(gen, 10);
    const double density = 0.2 + 0.3 * static_cast<double>(
                                           uniform_below(gen, 3));
    const std::size_t n = 1 + uniform_below(gen, 5);

    SampleDataset ds;
    for (std::size_t k = 0; k < alpha; ++k)
      ds.alphabet.push_back(static_cast<std::uint32_t>(k + 1));
    ds.transactions.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < alpha; ++k)
        if (uniform_unit(gen) < density)
          ds.transactions[i].push_back(static_cast<std::uint32_t>(k + 1));

    const RademacherMatrix mat(m, n, derive_seed(seed, idx ^ 0xabcdef));

    auto fail = [&](const std::string& what) {
      ++out.failures;
      if (out.first_failure.empty())
        out.first_failure = "instance " + std::to_string(idx) + ": " + what;
    };

    for (const bool include_root : {false, true}) {
      const auto want_nu = brute_nu(ds, mat, include_root);
      const double want_central =
          brute_centralized_mcera(ds, mat, include_root);
      for (const TraversalOrder order :
           {TraversalOrder::support_desc, TraversalOrder::bfs}) {
        EngineConfig ec;
        ec.order = order;
        ec.include_root_in_sup = include_root;
        ec.kernels = KernelMode::serial;
        ec.trace = true;
        const McEraResult res = get_n_mcera(ds, mat, ec);
        if (res.nu_raw != want_nu) {
          fail("per-row suprema mismatch");
          continue;
        }
        if (res.centralized_mcera != want_central)
          fail("centralized MCERA mismatch");
        if (!verify_parent_first_order(res.trace))
          fail("trace not parent-first");
        if (!check_bound_chain(res.trace)) fail("bound chain violated");
      }
    }
  }
  return out;
}

}  // namespace mcera
