#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "probtree/error.hpp"
#include "probtree/sampler.hpp"
#include "support/fixtures.hpp"

namespace probtree {
namespace {

using testing::tab1_table;

ProbabilityTree skewed_tree() {
  // Root: a 5/10, b 3/10, c 2/10; second column varies under each.
  std::vector<Record> rows;
  for (int i = 0; i < 5; ++i) rows.push_back({"a", i % 2});
  for (int i = 0; i < 3; ++i) rows.push_back({"b", i % 3});
  for (int i = 0; i < 2; ++i) rows.push_back({"c", 7});
  return build_tree(CategoricalTable({"X", "Y"}, std::move(rows)));
}

TEST(GeneratorTest, SameSeedSameRecords) {
  const auto tree = skewed_tree();
  Generator a(tree, 17), b(tree, 17);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.get_record(), b.get_record());
}

TEST(GeneratorTest, DifferentSeedsDiverge) {
  const auto tree = skewed_tree();
  for (auto [s, t] : {std::pair<std::uint64_t, std::uint64_t>{0, 1}, {1, 2}, {5, 123456}}) {
    Generator a(tree, s), b(tree, t);
    bool differ = false;
    for (int i = 0; i < 100 && !differ; ++i) differ = a.get_record() != b.get_record();
    EXPECT_TRUE(differ) << s << " vs " << t;
  }
}

TEST(GeneratorTest, SetSeedMatchesFreshGenerator) {
  const auto tree = skewed_tree();
  Generator fresh(tree, 33);
  const auto expected = fresh.get_records(10);

  Generator g(tree, 1);
  g.get_records(7);
  g.set_seed(33);
  EXPECT_EQ(g.get_records(10), expected);
  g.set_seed(33);
  EXPECT_EQ(g.get_records(10), expected);
}

TEST(GeneratorTest, OneRowTreeAlwaysReturnsTheRow) {
  const auto tree = build_tree(CategoricalTable({"A", "B", "C"}, {{3, "q", 8}}));
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    Generator g(tree, seed);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(g.get_record(), (Record{3, "q", 8}));
  }
}

TEST(GeneratorTest, GetRecordsSchemaAndCount) {
  const auto tree = build_tree(tab1_table());
  Generator g(tree, 4);
  const auto table = g.get_records(25);
  EXPECT_EQ(table.columns(), tree.columns());
  EXPECT_EQ(table.row_count(), 25u);

  Generator single(tree, 4), batch(tree, 4);
  EXPECT_EQ(batch.get_records(1).rows().front(), single.get_record());

  try {
    g.get_records(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCount);
  }
}

TEST(SelectAlternativeTest, CdfBoundaries) {
  Node node{"A", {}};
  node.data.push_back({1, 0.5, nullptr});
  node.data.push_back({2, 0.25, nullptr});
  node.data.push_back({3, 0.25, nullptr});
  EXPECT_EQ(select_alternative(node, 0.0), 0u);
  EXPECT_EQ(select_alternative(node, 0.5), 0u);  // c_1 >= u
  EXPECT_EQ(select_alternative(node, std::nextafter(0.5, 1.0)), 1u);
  EXPECT_EQ(select_alternative(node, 0.75), 1u);
  EXPECT_EQ(select_alternative(node, 0.76), 2u);
  EXPECT_EQ(select_alternative(node, 1.0 - 0x1.0p-53), 2u);
}

TEST(SelectAlternativeTest, RoundingShortfallPicksLast) {
  // Seven accumulated 1/7s give 0.9999999999999998 < 1 - 2^-53.
  Node node{"A", {}};
  for (int i = 0; i < 7; ++i) node.data.push_back({i, 1.0 / 7.0, nullptr});
  double total = 0.0;
  for (const auto& d : node.data) total += d.probability;
  ASSERT_LT(total, 1.0 - 0x1.0p-53);
  EXPECT_EQ(select_alternative(node, 1.0 - 0x1.0p-53), 6u);
}

TEST(SampleRecordTest, OneDrawPerLevelIncludingForcedNodes) {
  const auto tree = build_tree(tab1_table());  // levels 2 and 3 are forced
  std::size_t draws = 0;
  auto counting = [&] {
    ++draws;
    return 0.0;
  };
  const Record r = sample_record(tree, counting);
  EXPECT_EQ(draws, 3u);
  EXPECT_EQ(r, (Record{1, 2, 3}));  // u = 0 takes the first alternative
}

TEST(SampleRecordTest, ScriptedDrawsSelectByCdf) {
  const auto tree = skewed_tree();  // root order: a 0.5, b 0.3, c 0.2
  std::vector<double> script = {0.6, 0.0, 0.85, 0.99};
  std::size_t i = 0;
  auto next = [&] { return script.at(i++); };
  EXPECT_EQ(sample_record(tree, next)[0], CategoricalValue("b"));
  EXPECT_EQ(sample_record(tree, next), (Record{"c", 7}));
  EXPECT_EQ(i, 4u);
}

TEST(GeneratorTest, ClosureOverManyDraws) {
  const auto tree = build_tree(tab1_table());
  Generator g(tree, 2024);
  for (int i = 0; i < 10000; ++i) ASSERT_TRUE(tree.oracle(g.get_record()));
}

TEST(GeneratorTest, RootMarginalWithinFourSigma) {
  const auto tree = skewed_tree();
  Generator g(tree, 11);
  constexpr std::size_t n = 100000;
  std::map<CategoricalValue, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[g.get_record()[0]];
  for (const auto& d : tree.root().data) {
    const double observed = static_cast<double>(counts[d.value]) / n;
    const double sigma = std::sqrt(d.probability * (1 - d.probability) / n);
    EXPECT_LE(std::abs(observed - d.probability), 4 * sigma) << d.value.to_string();
  }
}

TEST(GeneratorTest, JointFrequenciesWithinFourSigma) {
  const auto tree = skewed_tree();
  Generator g(tree, 12);
  constexpr std::size_t n = 100000;
  std::map<Record, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[g.get_record()];
  tree.for_each_path([&](const Record& r, double p) {
    const double observed = static_cast<double>(counts[r]) / n;
    const double sigma = std::sqrt(p * (1 - p) / n);
    EXPECT_LE(std::abs(observed - p), 4 * sigma);
  });
  std::size_t total = 0;
  for (const auto& [r, c] : counts) {
    EXPECT_GT(tree.record_probability(r), 0.0);
    total += c;
  }
  EXPECT_EQ(total, n);
}

}  // namespace
}  // namespace probtree
