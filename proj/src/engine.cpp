#include "mcera/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <deque>
#include <queue>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mcera/bounds.hpp"

namespace mcera {

namespace {

// Nodes are appended once and never mutated after their children are pushed,
// so ids are stable handles. `lex4` packs the first four items (plus one, so
// zero means "no item") left-aligned in 16-bit slots: among equal-length
// patterns, numeric order of lex4 equals lexicographic order of the 4-item
// prefix.
struct Node {
  std::uint32_t parent;     // arena id; kNoParent for the root
  std::uint32_t rows_slot;  // row-mask slot while queued
  std::uint32_t support;
  std::uint16_t item;   // dense alphabet index; kNoItem for the root
  std::uint16_t depth;  // == pattern length
  std::uint64_t lex4;
};

constexpr std::uint32_t kNoParent = 0xffffffffu;
constexpr std::uint16_t kNoItem = 0xffffu;
constexpr std::size_t kBatch = 256;  // fixed: batch grouping is part of the
                                     // traversal definition

// Dense pattern items, root-first. Depth can in principle reach the alphabet
// size, so the buffer is caller-provided.
void materialize(const std::vector<Node>& arena, std::uint32_t id,
                 std::vector<std::uint16_t>& out) {
  out.clear();
  for (std::uint32_t cur = id; arena[cur].parent != kNoParent;
       cur = arena[cur].parent)
    out.push_back(arena[cur].item);
  std::reverse(out.begin(), out.end());
}

// Pop priority: support desc, then length asc, then pattern lex asc.
// The lex leg resolves cheaply for siblings (same parent: compare the last
// item) and via lex4 for distinct 4-item prefixes; only deep patterns with a
// shared prefix walk their parent chains.
struct PopAfter {
  const std::vector<Node>* arena;
  mutable std::vector<std::uint16_t> bufx, bufy;

  bool operator()(std::uint32_t x, std::uint32_t y) const {
    const Node& a = (*arena)[x];
    const Node& b = (*arena)[y];
    if (a.support != b.support) return a.support < b.support;
    if (a.depth != b.depth) return a.depth > b.depth;
    if (a.parent == b.parent) return a.item > b.item;
    if (a.lex4 != b.lex4) return a.lex4 > b.lex4;
    materialize(*arena, x, bufx);
    materialize(*arena, y, bufy);
    return bufx > bufy;
  }
};

class WorkQueue {
 public:
  WorkQueue(TraversalOrder order, const std::vector<Node>* arena)
      : order_(order), heap_(PopAfter{arena, {}, {}}) {}

  void push(std::uint32_t id) {
    if (order_ == TraversalOrder::support_desc)
      heap_.push(id);
    else
      fifo_.push_back(id);
  }
  std::uint32_t pop() {
    if (order_ == TraversalOrder::support_desc) {
      std::uint32_t id = heap_.top();
      heap_.pop();
      return id;
    }
    std::uint32_t id = fifo_.front();
    fifo_.pop_front();
    return id;
  }
  bool empty() const {
    return order_ == TraversalOrder::support_desc ? heap_.empty()
                                                  : fifo_.empty();
  }

 private:
  TraversalOrder order_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, PopAfter>
      heap_;
  std::deque<std::uint32_t> fifo_;
};

inline std::int64_t popcount_and(const std::uint64_t* a,
                                 const std::uint64_t* b, std::size_t words) {
  std::int64_t acc = 0;
  for (std::size_t w = 0; w < words; ++w) acc += std::popcount(a[w] & b[w]);
  return acc;
}

}  // namespace

McEraResult get_n_mcera(const SampleDataset& ds, const RademacherMatrix& mat,
                        const EngineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t m = ds.transactions.size();
  const std::size_t n = mat.n();
  if (mat.m() != m)
    throw std::invalid_argument("sign matrix width must equal dataset size");
  if (ds.alphabet.size() >= kNoItem)
    throw std::invalid_argument("alphabet too large (dense index is 16-bit)");
  if (cfg.max_nodes) {
    if (*cfg.max_nodes == 0)
      throw std::invalid_argument("max_nodes must be >= 1");
    if (cfg.order != TraversalOrder::support_desc)
      throw std::invalid_argument("max_nodes requires support-desc order");
    if (cfg.beta_floor)
      throw std::invalid_argument("max_nodes and beta_floor are exclusive");
  }
  if (cfg.beta_floor && !(*cfg.beta_floor >= 0.0 && *cfg.beta_floor <= 1.0))
    throw std::invalid_argument("beta_floor must lie in [0, 1]");
  if (cfg.restrict_freq_below && !(*cfg.restrict_freq_below > 0.0))
    throw std::invalid_argument("restriction frequency must be positive");

  const std::size_t A = ds.alphabet.size();
  const std::size_t mwords = (m + 63) / 64;
  const std::size_t nwords = (n + 63) / 64;
  const double dm = static_cast<double>(m);

  // Per-item transaction bitmaps; child support is one AND+popcount away.
  std::vector<std::uint64_t> item_bits(A * mwords, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t it : ds.transactions[i]) {
      const auto pos = std::lower_bound(ds.alphabet.begin(),
                                        ds.alphabet.end(), it) -
                       ds.alphabet.begin();
      item_bits[static_cast<std::size_t>(pos) * mwords + i / 64] |=
          std::uint64_t{1} << (i % 64);
    }

  std::vector<Node> arena;
  arena.reserve(1024);
  // Row-mask slots are recycled: a node's mask dies when the node is popped.
  std::vector<std::uint64_t> row_arena;
  std::vector<std::uint32_t> free_slots;
  auto alloc_slot = [&]() -> std::uint32_t {
    if (!free_slots.empty()) {
      std::uint32_t s = free_slots.back();
      free_slots.pop_back();
      return s;
    }
    const std::uint32_t s =
        static_cast<std::uint32_t>(row_arena.size() / nwords);
    row_arena.resize(row_arena.size() + nwords, 0);
    return s;
  };

  WorkQueue queue(cfg.order, &arena);

  // Root: empty pattern, full support, every sign row alive.
  {
    Node root{kNoParent, alloc_slot(), static_cast<std::uint32_t>(m), kNoItem,
              0, 0};
    std::uint64_t* mask = row_arena.data() + root.rows_slot * nwords;
    for (std::size_t w = 0; w < nwords; ++w) mask[w] = ~std::uint64_t{0};
    if (n % 64) mask[nwords - 1] = (std::uint64_t{1} << (n % 64)) - 1;
    arena.push_back(root);
    queue.push(0);
  }

  std::vector<std::int64_t> nu(n, -static_cast<std::int64_t>(m));
  bool any_admitted = false;
  std::uint64_t processed = 0;
  bool stop_fired = false;
  std::uint32_t cap_support = 0;
  bool cap_reached = false;

  // Budgeted and floored runs process one node per pop so both kinds of walk
  // share the same nu-update timeline: a budget that stops at support s then
  // replays bit-identically as a frequency floor of s/m, and floored
  // explorations are nested across floor values. Unconstrained runs batch
  // pops for parallel throughput; the suprema are order-invariant either way.
  const std::size_t batch_cap =
      (cfg.max_nodes || cfg.beta_floor) ? 1 : kBatch;
  std::vector<std::uint32_t> batch;
  std::vector<std::uint64_t> node_bits(batch_cap * mwords);
  std::vector<std::uint32_t> pos_buf(batch_cap * n);
  std::vector<std::uint64_t> y_buf(batch_cap * nwords);
  std::vector<std::uint8_t> survivor(batch_cap);
  std::vector<std::uint16_t> chain;
  std::vector<std::int64_t> trace_ids;  // arena id -> trace index
  std::vector<std::pair<std::uint32_t, std::uint16_t>> child_jobs;
  std::vector<std::uint32_t> child_supp;

  McEraResult res;

#ifdef _OPENMP
  const bool par = cfg.kernels == KernelMode::parallel;
#endif

  while (!queue.empty() && !stop_fired) {
    batch.clear();
    while (batch.size() < batch_cap && !queue.empty()) {
      const std::uint32_t id = queue.pop();
      if (cap_reached && arena[id].support != cap_support) {
        // Below the tie plateau of the budgeted prefix: nothing further is
        // processed, so the processed set is a pure support-order prefix.
        stop_fired = true;
        free_slots.push_back(arena[id].rows_slot);
        break;
      }
      batch.push_back(id);
    }
    if (batch.empty()) break;

    // Phase A (pure, parallel): rebuild each node's transaction bitmap and
    // count +1 signs per still-relevant row. nu only grows, so gating the
    // count at this batch-start snapshot covers every later live check.
    const std::vector<std::int64_t> nu_snap = nu;
    auto phase_a = [&](std::size_t bi) {
      const Node& nd = arena[batch[bi]];
      std::uint64_t* bm = node_bits.data() + bi * mwords;
      std::uint32_t* pos = pos_buf.data() + bi * n;
      const std::uint64_t* mask = row_arena.data() + nd.rows_slot * nwords;
      const auto supp = static_cast<std::int64_t>(nd.support);
      // Rows whose count is needed: nu only grows, so a row failing the
      // support gate now also fails every later live check.
      std::uint32_t wanted[64 * sizeof(std::uint64_t)];
      static_assert(sizeof(wanted) / sizeof(wanted[0]) >= 64);
      std::vector<std::uint32_t> wanted_big;
      std::uint32_t* want = wanted;
      std::size_t n_want = 0;
      if (n > sizeof(wanted) / sizeof(wanted[0])) {
        wanted_big.resize(n);
        want = wanted_big.data();
      }
      for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t bits = cfg.trace ? (w == nwords - 1 && n % 64
                                              ? (std::uint64_t{1} << (n % 64)) -
                                                    1
                                              : ~std::uint64_t{0})
                                       : mask[w];
        while (bits) {
          const std::size_t j = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (!cfg.trace && supp < nu_snap[j]) continue;
          want[n_want++] = static_cast<std::uint32_t>(j);
        }
      }
      if (n_want == 0) return;  // no row can improve: the node is a dead end
      if (nd.support == 0) {
        for (std::size_t k = 0; k < n_want; ++k) pos[want[k]] = 0;
        return;
      }
      if (nd.parent == kNoParent) {
        for (std::size_t w = 0; w < mwords; ++w) bm[w] = ~std::uint64_t{0};
        if (m % 64) bm[mwords - 1] = (std::uint64_t{1} << (m % 64)) - 1;
      } else {
        std::vector<std::uint16_t> items;
        materialize(arena, batch[bi], items);
        std::memcpy(bm, item_bits.data() + items[0] * mwords, mwords * 8);
        for (std::size_t k = 1; k < items.size(); ++k) {
          const std::uint64_t* ib = item_bits.data() + items[k] * mwords;
          for (std::size_t w = 0; w < mwords; ++w) bm[w] &= ib[w];
        }
      }
      for (std::size_t k = 0; k < n_want; ++k)
        pos[want[k]] = static_cast<std::uint32_t>(
            popcount_and(bm, mat.row_words(want[k]), mwords));
    };
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (par && batch.size() > 1)
#endif
    for (std::size_t bi = 0; bi < batch.size(); ++bi) phase_a(bi);

    // Phase B (serial, batch order): per-row discrepancy pruning against the
    // live nu values. Row j survives into the children's alive set only if
    // its +1 count can still beat nu_j.
    for (std::size_t bi = 0; bi < batch.size(); ++bi) {
      const std::uint32_t id = batch[bi];
      const Node& nd = arena[id];
      const auto supp = static_cast<std::int64_t>(nd.support);
      const double freq = m ? static_cast<double>(nd.support) / dm : 0.0;
      const bool admitted =
          (nd.depth > 0 || cfg.include_root_in_sup) &&
          (!cfg.restrict_freq_below || freq < *cfg.restrict_freq_below);
      const std::uint64_t* mask = row_arena.data() + nd.rows_slot * nwords;
      std::uint64_t* y = y_buf.data() + bi * nwords;
      std::memset(y, 0, nwords * 8);
      const std::uint32_t* pos = pos_buf.data() + bi * n;
      bool any_row = false;
      for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
          const std::size_t j = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          if (supp < nu[j]) continue;
          const auto p = static_cast<std::int64_t>(pos[j]);
          if (p < nu[j]) continue;
          if (admitted) nu[j] = std::max(nu[j], 2 * p - supp);
          y[w] |= std::uint64_t{1} << (j % 64);
          any_row = true;
        }
      }
      survivor[bi] = any_row ? 1 : 0;
      if (admitted) any_admitted = true;
      if (cfg.trace) {
        if (trace_ids.size() < arena.size()) trace_ids.resize(arena.size(), -1);
        TraceEntry e;
        e.node_id = res.trace.size();
        e.parent_id = nd.parent == kNoParent ? -1 : trace_ids[nd.parent];
        materialize(arena, id, chain);
        e.items.reserve(chain.size());
        for (std::uint16_t d : chain) e.items.push_back(ds.alphabet[d]);
        e.support = nd.support;
        e.pos.assign(pos, pos + n);
        trace_ids[id] = static_cast<std::int64_t>(e.node_id);
        res.trace.push_back(std::move(e));
      }
      ++processed;
      if (cfg.max_nodes && processed == *cfg.max_nodes) {
        cap_reached = true;
        cap_support = nd.support;
      }
    }

    // Phase C (pure, parallel): supports of the canonical extensions of the
    // nodes that kept at least one row alive.
    child_jobs.clear();
    for (std::size_t bi = 0; bi < batch.size(); ++bi) {
      if (!survivor[bi]) continue;
      const Node& nd = arena[batch[bi]];
      const std::uint16_t first =
          nd.item == kNoItem ? 0 : static_cast<std::uint16_t>(nd.item + 1);
      for (std::size_t e = first; e < A; ++e)
        child_jobs.emplace_back(static_cast<std::uint32_t>(bi),
                                static_cast<std::uint16_t>(e));
    }
    child_supp.assign(child_jobs.size(), 0);
    auto phase_c = [&](std::size_t k) {
      const auto [bi, e] = child_jobs[k];
      const Node& nd = arena[batch[bi]];
      if (nd.support == 0) return;  // empty tid set: every extension is empty
      child_supp[k] = static_cast<std::uint32_t>(popcount_and(
          node_bits.data() + bi * mwords, item_bits.data() + e * mwords,
          mwords));
    };
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par && child_jobs.size() > 1)
#endif
    for (std::size_t k = 0; k < child_jobs.size(); ++k) phase_c(k);

    // Phase D (serial): enqueue children; their alive rows are the parent's
    // surviving rows.
    for (std::size_t k = 0; k < child_jobs.size(); ++k) {
      const auto [bi, e] = child_jobs[k];
      const std::uint32_t csupp = child_supp[k];
      if (cfg.beta_floor &&
          static_cast<double>(csupp) / dm < *cfg.beta_floor)
        continue;
      const std::uint32_t parent_id = batch[bi];
      const Node& pn = arena[parent_id];
      Node child;
      child.parent = parent_id;
      child.support = csupp;
      child.item = e;
      child.depth = static_cast<std::uint16_t>(pn.depth + 1);
      child.lex4 = pn.lex4;
      if (child.depth <= 4)
        child.lex4 |= static_cast<std::uint64_t>(e + 1)
                      << (16 * (4 - child.depth));
      child.rows_slot = alloc_slot();
      std::memcpy(row_arena.data() + child.rows_slot * nwords,
                  y_buf.data() + bi * nwords, nwords * 8);
      const auto id = static_cast<std::uint32_t>(arena.size());
      arena.push_back(child);
      queue.push(id);
    }

    for (std::uint32_t id : batch) free_slots.push_back(arena[id].rows_slot);
  }

  res.nu_raw = std::move(nu);
  const double nm = static_cast<double>(n) * dm;
  std::int64_t total = 0;
  for (std::int64_t v : res.nu_raw) total += v;
  res.mcera = static_cast<double>(total) / nm;
  res.centralized_mcera =
      centralize_mcera(res.nu_raw, mat.row_sums(), 1.0, n, m);
  res.nodes_explored = processed;
  res.truncated = stop_fired;
  res.empty_family = !any_admitted;
  if (cap_reached)
    res.beta_effective = static_cast<double>(cap_support) / dm;
  else if (cfg.beta_floor)
    res.beta_effective = *cfg.beta_floor;
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

bool verify_parent_first_order(const std::vector<TraceEntry>& trace) {
  std::vector<std::int64_t> seen_at;
  for (std::size_t idx = 0; idx < trace.size(); ++idx) {
    const TraceEntry& e = trace[idx];
    if (e.parent_id >= 0) {
      bool ok = false;
      for (std::size_t k = 0; k < idx; ++k)
        if (static_cast<std::int64_t>(trace[k].node_id) == e.parent_id) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    seen_at.push_back(static_cast<std::int64_t>(e.node_id));
  }
  return true;
}

}  // namespace mcera
