#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "mcera/dataset.hpp"

namespace {

std::string temp_path(const char* tag) {
  return std::string("/tmp/mcera_test_") + tag + ".dat";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::trunc);
  out << body;
}

}  // namespace

TEST_CASE("from_transactions sorts, dedups, and unions the alphabet") {
  auto ds = mcera::from_transactions({{3, 1, 3, 2}, {5, 5}, {2}});
  REQUIRE(ds.size() == 3);
  CHECK(ds.transactions[0] == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(ds.transactions[1] == std::vector<std::uint32_t>{5});
  CHECK(ds.transactions[2] == std::vector<std::uint32_t>{2});
  CHECK(ds.alphabet == std::vector<std::uint32_t>{1, 2, 3, 5});
}

TEST_CASE("FIMI round trip preserves transactions and alphabet") {
  auto ds = mcera::from_transactions({{1, 2, 3}, {2, 4}, {1}, {4, 2}});
  const auto path = temp_path("roundtrip");
  mcera::save_fimi(ds, path);
  auto back = mcera::load_fimi(path);
  CHECK(back.transactions == ds.transactions);
  CHECK(back.alphabet == ds.alphabet);
  std::remove(path.c_str());
}

TEST_CASE("FIMI loader skips blank lines and normalizes rows") {
  const auto path = temp_path("blank");
  write_file(path, "3 1 2\n\n  \n7 7 5\n");
  auto ds = mcera::load_fimi(path);
  REQUIRE(ds.size() == 2);
  CHECK(ds.transactions[0] == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(ds.transactions[1] == std::vector<std::uint32_t>{5, 7});
  std::remove(path.c_str());
}

TEST_CASE("FIMI parse errors carry the 1-based line number") {
  const auto path = temp_path("badtoken");
  write_file(path, "1 2\n3 x 4\n");
  CHECK_THROWS_WITH_AS(mcera::load_fimi(path),
                       doctest::Contains(":2:"), std::runtime_error);

  write_file(path, "1 2\n5\n-3\n");
  CHECK_THROWS_WITH_AS(mcera::load_fimi(path),
                       doctest::Contains(":3:"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("missing file raises an error naming the path") {
  CHECK_THROWS_WITH_AS(mcera::load_fimi("/tmp/mcera_no_such_file.dat"),
                       doctest::Contains("/tmp/mcera_no_such_file.dat"),
                       std::runtime_error);
}

TEST_CASE("save_fimi rejects empty transactions") {
  mcera::SampleDataset ds;
  ds.transactions = {{1}, {}};
  ds.alphabet = {1};
  CHECK_THROWS_WITH_AS(mcera::save_fimi(ds, temp_path("empty")),
                       doctest::Contains("index 1"), std::runtime_error);
}

TEST_CASE("resampling is deterministic and keeps the source alphabet") {
  auto ds = mcera::from_transactions({{1}, {2}, {3}, {1, 2}});
  auto a = mcera::sample_with_replacement(ds, 50, 42);
  auto b = mcera::sample_with_replacement(ds, 50, 42);
  auto c = mcera::sample_with_replacement(ds, 50, 43);
  CHECK(a.transactions == b.transactions);
  CHECK(a.transactions != c.transactions);
  CHECK(a.alphabet == ds.alphabet);  // even if a class went missing
  REQUIRE(a.size() == 50);
  for (const auto& t : a.transactions) {
    CHECK((t == std::vector<std::uint32_t>{1} ||
           t == std::vector<std::uint32_t>{2} ||
           t == std::vector<std::uint32_t>{3} ||
           t == std::vector<std::uint32_t>{1, 2}));
  }
}

TEST_CASE("resampling draws each source row with roughly equal frequency") {
  auto ds = mcera::from_transactions({{1}, {2}});
  auto s = mcera::sample_with_replacement(ds, 100000, 7);
  std::size_t ones = 0;
  for (const auto& t : s.transactions) ones += (t[0] == 1);
  const double share = static_cast<double>(ones) / 100000.0;
  CHECK(share > 0.48);
  CHECK(share < 0.52);
}

TEST_CASE("resampling edge cases") {
  auto ds = mcera::from_transactions({{1}});
  CHECK(mcera::sample_with_replacement(ds, 0, 1).size() == 0);
  mcera::SampleDataset empty;
  CHECK(mcera::sample_with_replacement(empty, 0, 1).size() == 0);
  CHECK_THROWS_AS(mcera::sample_with_replacement(empty, 3, 1),
                  std::invalid_argument);
}

TEST_CASE("stats: closed forms for the pattern-weight log") {
  // lengths [2, 3]: ln(2^2 + 2^3) = ln 12
  auto ds = mcera::from_transactions({{1, 2}, {3, 4, 5}});
  auto st = mcera::compute_stats(ds);
  CHECK(st.m == 2);
  CHECK(st.alphabet_size == 5);
  CHECK(st.avg_transaction_len == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(st.max_transaction_len == 3);
  CHECK(st.log_pattern_bound ==
        doctest::Approx(2.48490664978800031023).epsilon(1e-14));

  // 1000 identical rows of length 30: ln(1000) + 30 ln 2; the naive sum
  // 1000 * 2^30 would still fit a double, but the log-sum-exp path must
  // agree with the closed form to full precision anyway.
  std::vector<std::uint32_t> row(30);
  for (std::uint32_t i = 0; i < 30; ++i) row[i] = i + 1;
  std::vector<std::vector<std::uint32_t>> rows(1000, row);
  auto st2 = mcera::compute_stats(mcera::from_transactions(std::move(rows)));
  CHECK(st2.log_pattern_bound ==
        doctest::Approx(27.70217069578049633457).epsilon(1e-14));
}

TEST_CASE("stats of an empty dataset") {
  mcera::SampleDataset ds;
  auto st = mcera::compute_stats(ds);
  CHECK(st.m == 0);
  CHECK(st.alphabet_size == 0);
  CHECK(st.avg_transaction_len == 0.0);
  CHECK(st.log_pattern_bound == -std::numeric_limits<double>::infinity());
}

TEST_CASE("stats do not overflow on very long transactions") {
  std::vector<std::uint32_t> row(4000);
  for (std::uint32_t i = 0; i < 4000; ++i) row[i] = i + 1;
  auto st = mcera::compute_stats(mcera::from_transactions({row}));
  CHECK(st.log_pattern_bound ==
        doctest::Approx(4000 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::isfinite(st.log_pattern_bound));
}

TEST_CASE("max_singleton_support counts the most common item") {
  auto ds = mcera::from_transactions({{1, 2}, {2, 3}, {2}, {3}});
  CHECK(mcera::max_singleton_support(ds) == 3);  // item 2
  mcera::SampleDataset empty;
  CHECK(mcera::max_singleton_support(empty) == 0);
}
