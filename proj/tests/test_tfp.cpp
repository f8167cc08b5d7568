#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/lattice.hpp"
#include "mcera/oracle.hpp"
#include "mcera/rng.hpp"
#include "mcera/tfp.hpp"

using mcera::TfpConfig;

namespace {

std::set<std::vector<std::uint32_t>> pattern_set(
    const std::vector<mcera::Pattern>& ps) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& p : ps) out.insert(p.items);
  return out;
}

}  // namespace

TEST_CASE("a planted frequent singleton is recovered, nothing else") {
  mcera::GroundTruth truth{{0.9, 0.1}};
  auto ds = truth.generate(10000, 11);
  TfpConfig cfg;
  cfg.theta = 0.5;
  cfg.delta = 0.1;
  cfg.n = 10;
  cfg.seed = 4;
  auto res = mcera::mine_true_frequent(ds, cfg);

  REQUIRE(res.patterns.size() == 1);
  CHECK(res.patterns[0].items == std::vector<std::uint32_t>{1});
  CHECK(res.frequencies[0] > 0.85);
  CHECK(res.iterations >= 1);
  CHECK(res.nodes_explored_total > 0);
  CHECK(res.final_epsilon < 0.2);
  CHECK(res.final_threshold ==
        doctest::Approx(0.5 + res.final_epsilon).epsilon(1e-15));
  CHECK(mcera::check_no_false_positives(res.patterns, truth, 0.5));
}

TEST_CASE("the margin never grows across refinement rounds") {
  mcera::GroundTruth truth{{0.8, 0.6, 0.3}};
  auto ds = truth.generate(5000, 3);
  TfpConfig cfg;
  cfg.theta = 0.4;
  cfg.delta = 0.1;
  cfg.n = 5;
  cfg.seed = 9;
  auto res = mcera::mine_true_frequent(ds, cfg);
  REQUIRE(!res.epsilon_trace.empty());
  for (std::size_t i = 1; i < res.epsilon_trace.size(); ++i)
    CHECK(res.epsilon_trace[i] <= res.epsilon_trace[i - 1] + 1e-12);
  CHECK(res.final_epsilon == res.epsilon_trace.back());
}

TEST_CASE("the emitted set is exactly the mining at the final threshold") {
  mcera::GroundTruth truth{{0.8, 0.6, 0.3}};
  auto ds = truth.generate(5000, 21);
  TfpConfig cfg;
  cfg.theta = 0.4;
  cfg.delta = 0.1;
  cfg.n = 5;
  cfg.seed = 2;
  auto res = mcera::mine_true_frequent(ds, cfg);
  auto mined = mcera::frequent_patterns(ds, res.final_threshold);
  REQUIRE(res.patterns.size() == mined.size());
  const double m = static_cast<double>(ds.size());
  for (std::size_t i = 0; i < mined.size(); ++i) {
    CHECK(res.patterns[i].items == mined[i].pattern.items);
    CHECK(res.frequencies[i] ==
          static_cast<double>(mined[i].support) / m);
  }
}

TEST_CASE("an unreachable threshold emits nothing after one round") {
  mcera::GroundTruth truth{{0.4, 0.3}};
  auto ds = truth.generate(2000, 5);
  TfpConfig cfg;
  cfg.theta = 0.9;
  cfg.delta = 0.1;
  cfg.n = 3;
  cfg.seed = 1;
  auto res = mcera::mine_true_frequent(ds, cfg);
  CHECK(res.patterns.empty());
  CHECK(res.iterations == 1);
  CHECK(std::isfinite(res.final_epsilon));
  CHECK_FALSE(res.empty_family_stop);
}

TEST_CASE("a saturated alphabet ends with the empty-family stop") {
  // Every transaction is {1}: after emitting {1} the not-yet-emitted family
  // has no members (there are no other itemsets), so the next round stops on
  // the empty-family sentinel instead of re-bounding.
  mcera::SampleDataset ds;
  ds.transactions.assign(1000, {1});
  ds.alphabet = {1};
  TfpConfig cfg;
  cfg.theta = 0.7;
  cfg.delta = 0.1;
  cfg.n = 10;
  cfg.seed = 3;
  auto res = mcera::mine_true_frequent(ds, cfg);
  CHECK(res.empty_family_stop);
  CHECK(res.iterations == 2);
  REQUIRE(res.patterns.size() == 1);
  CHECK(res.patterns[0].items == std::vector<std::uint32_t>{1});
  CHECK(res.epsilon_trace.size() == 1);
}

TEST_CASE("the sign matrix is drawn once from stream 2 of the seed") {
  mcera::GroundTruth truth{{0.7, 0.5}};
  auto ds = truth.generate(3000, 8);
  TfpConfig cfg;
  cfg.theta = 0.4;
  cfg.delta = 0.1;
  cfg.n = 4;
  cfg.seed = 77;
  auto via_wrapper = mcera::mine_true_frequent(ds, cfg);
  mcera::RademacherMatrix mat(ds.size(), 4, mcera::derive_seed(77, 2));
  auto via_matrix = mcera::mine_true_frequent(ds, mat, cfg);
  CHECK(via_wrapper.epsilon_trace == via_matrix.epsilon_trace);
  CHECK(pattern_set(via_wrapper.patterns) ==
        pattern_set(via_matrix.patterns));
  CHECK(via_wrapper.last_mcera == via_matrix.last_mcera);
}

TEST_CASE("the counting baseline is never more productive") {
  mcera::GroundTruth truth{{0.9, 0.7, 0.5, 0.2}};
  auto ds = truth.generate(10000, 14);
  TfpConfig cfg;
  cfg.theta = 0.4;
  cfg.delta = 0.1;
  cfg.n = 10;
  cfg.seed = 6;
  auto refined = mcera::mine_true_frequent(ds, cfg);
  auto baseline = mcera::mine_true_frequent_massart(ds, 0.4, 0.1);
  CHECK(baseline.final_epsilon > refined.final_epsilon);
  auto refined_set = pattern_set(refined.patterns);
  for (const auto& items : pattern_set(baseline.patterns))
    CHECK(refined_set.count(items) == 1);
  CHECK(baseline.iterations == 1);
  CHECK(mcera::check_no_false_positives(baseline.patterns, truth, 0.4));
  CHECK(mcera::check_no_false_positives(refined.patterns, truth, 0.4));
}

TEST_CASE("configuration validation") {
  mcera::GroundTruth truth{{0.5}};
  auto ds = truth.generate(100, 1);
  TfpConfig cfg;
  cfg.theta = 0.0;
  CHECK_THROWS_AS(mcera::mine_true_frequent(ds, cfg), std::invalid_argument);
  cfg.theta = 1.0;
  CHECK_THROWS_AS(mcera::mine_true_frequent(ds, cfg), std::invalid_argument);
  cfg = TfpConfig{};
  cfg.delta = 0.0;
  CHECK_THROWS_AS(mcera::mine_true_frequent(ds, cfg), std::invalid_argument);
  CHECK_THROWS_AS(mcera::mine_true_frequent_massart(ds, 0.5, 1.0),
                  std::invalid_argument);

  mcera::RademacherMatrix wrong(99, 2, 0);
  cfg = TfpConfig{};
  CHECK_THROWS_AS(mcera::mine_true_frequent(ds, wrong, cfg),
                  std::invalid_argument);

  mcera::SampleDataset empty;
  CHECK_THROWS_AS(mcera::mine_true_frequent_massart(empty, 0.5, 0.1),
                  std::invalid_argument);
}
