#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/engine.hpp"
#include "mcera/oracle.hpp"
#include "mcera/rademacher.hpp"

using mcera::GroundTruth;
using mcera::RademacherMatrix;

namespace {

mcera::SampleDataset toy3() {
  return mcera::from_transactions({{1}, {1, 2}, {2}});
}

std::uint64_t seed_for_row(const std::vector<int>& row) {
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    RademacherMatrix mat(row.size(), 1, seed);
    bool ok = true;
    for (std::size_t i = 0; ok && i < row.size(); ++i)
      ok = mat.sign(0, i) == row[i];
    if (ok) return seed;
  }
  REQUIRE(false);
  return 0;
}

}  // namespace

TEST_CASE("enumeration reference on a worked single-row example") {
  // signs (+1,-1,+1) over {1},{1,2},{2}: signed sums are 0 for {1} and {2},
  // -1 for {1,2}; the row sum is +1. Centered numerators: -1 without the
  // root, +1 (the row sum itself) with it.
  auto ds = toy3();
  RademacherMatrix mat(3, 1, seed_for_row({1, -1, 1}));

  CHECK(mcera::brute_nu(ds, mat, false) == std::vector<std::int64_t>{0});
  CHECK(mcera::brute_nu(ds, mat, true) == std::vector<std::int64_t>{1});
  CHECK(mcera::brute_centered_numerators(ds, mat, false) ==
        std::vector<std::int64_t>{-1});
  CHECK(mcera::brute_centered_numerators(ds, mat, true) ==
        std::vector<std::int64_t>{1});
  CHECK(mcera::brute_mcera(ds, mat, false) == 0.0);
  CHECK(mcera::brute_mcera(ds, mat, true) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mcera::brute_centralized_mcera(ds, mat, false) ==
        doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("the reference agrees with the engine on the same instance") {
  auto ds = mcera::from_transactions(
      {{1, 3}, {2, 3, 5}, {1, 2}, {5}, {1, 2, 3, 5}, {3}});
  RademacherMatrix mat(6, 4, 99);
  for (bool root : {false, true}) {
    mcera::EngineConfig cfg;
    cfg.include_root_in_sup = root;
    auto res = mcera::get_n_mcera(ds, mat, cfg);
    CHECK(res.nu_raw == mcera::brute_nu(ds, mat, root));
    CHECK(res.mcera == mcera::brute_mcera(ds, mat, root));
    CHECK(res.centralized_mcera ==
          mcera::brute_centralized_mcera(ds, mat, root));
  }
}

TEST_CASE("the reference refuses alphabets too wide to enumerate") {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::uint32_t> wide;
  for (std::uint32_t i = 1; i <= 16; ++i) wide.push_back(i);
  rows.push_back(wide);
  auto ds = mcera::from_transactions(std::move(rows));
  RademacherMatrix mat(1, 1, 0);
  CHECK_THROWS_AS(mcera::brute_nu(ds, mat, false), std::invalid_argument);
}

TEST_CASE("trace invariant checker accepts real traces, rejects corrupted") {
  auto ds = mcera::from_transactions(
      {{1, 2}, {2, 3}, {1, 3}, {1, 2, 3}, {2}});
  RademacherMatrix mat(5, 3, 7);
  mcera::EngineConfig cfg;
  cfg.trace = true;
  auto res = mcera::get_n_mcera(ds, mat, cfg);
  REQUIRE(res.trace.size() > 2);
  CHECK(mcera::check_bound_chain(res.trace));

  // a positive-sign count above the support violates pos <= support
  auto bad_pos = res.trace;
  bad_pos[1].pos[0] = bad_pos[1].support + 1;
  CHECK_FALSE(mcera::check_bound_chain(bad_pos));

  // a child outgrowing its parent violates domination
  auto bad_supp = res.trace;
  bad_supp[1].support = bad_supp[0].support + 1;
  CHECK_FALSE(mcera::check_bound_chain(bad_supp));
}

TEST_CASE("planted truth: product frequencies and a stable alphabet") {
  GroundTruth truth{{0.9, 0.5, 0.01}};
  CHECK(truth.true_frequency({{1}}) == 0.9);
  CHECK(truth.true_frequency({{1, 2}}) == doctest::Approx(0.45));
  CHECK(truth.true_frequency({{1, 2, 3}}) == doctest::Approx(0.0045));
  CHECK(truth.true_frequency({{}}) == 1.0);
  CHECK_THROWS_AS(truth.true_frequency({{4}}), std::invalid_argument);

  auto a = truth.generate(50, 13);
  auto b = truth.generate(50, 13);
  auto c = truth.generate(50, 14);
  CHECK(a.transactions == b.transactions);
  CHECK(a.transactions != c.transactions);
  // the rare item almost surely missing from 50 draws, yet still indexed
  CHECK(a.alphabet == std::vector<std::uint32_t>{1, 2, 3});

  std::size_t with1 = 0;
  for (const auto& t : truth.generate(20000, 5).transactions)
    with1 += std::binary_search(t.begin(), t.end(), 1u);
  CHECK(static_cast<double>(with1) / 20000.0 ==
        doctest::Approx(0.9).epsilon(0.02));
}

TEST_CASE("false-positive checker compares against true frequencies") {
  GroundTruth truth{{0.9, 0.1}};
  std::vector<mcera::Pattern> good{{{1}}};
  std::vector<mcera::Pattern> bad{{{1}}, {{2}}};
  CHECK(mcera::check_no_false_positives(good, truth, 0.5));
  CHECK_FALSE(mcera::check_no_false_positives(bad, truth, 0.5));
  CHECK(mcera::check_no_false_positives({}, truth, 0.5));
}

TEST_CASE("randomized equivalence suite: a short deterministic run") {
  auto res = mcera::run_oracle_suite(123, 25);
  CHECK(res.instances == 25);
  CHECK(res.failures == 0);
  CHECK(res.passed());
  CHECK(res.first_failure.empty());
}
