#include <gtest/gtest.h>

#include "halfgap/ksum.hpp"
#include "halfgap/rng.hpp"

namespace halfgap {
namespace {

KSumInstance make(int k, int n, std::vector<std::vector<long long>> lists) {
  KSumInstance inst;
  inst.k = k;
  inst.n = n;
  for (auto& l : lists) {
    std::vector<Int> row(l.begin(), l.end());
    inst.lists.push_back(std::move(row));
  }
  inst.validate();
  return inst;
}

TEST(SolveBrute, FindsPlantedTriple) {
  auto inst = make(3, 2, {{1, 2}, {3, 5}, {4, 8}});
  auto w = solve_brute(inst);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->satisfies());
  EXPECT_EQ(w->values[0], Int(1));  // first witness in enumeration order: 1+3=4
  EXPECT_EQ(w->values[1], Int(3));
  EXPECT_EQ(w->values[2], Int(4));
}

TEST(SolveBrute, NoWitness) {
  EXPECT_FALSE(solve_brute(make(3, 1, {{1}, {1}, {3}})).has_value());
}

TEST(SolveBrute, ZeroCase) {
  auto w = solve_brute(make(3, 1, {{0}, {0}, {0}}));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->satisfies());
}

TEST(SolveMitm, CancellationPair) {
  auto w = solve_mitm(make(3, 1, {{5}, {-5}, {0}}));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->satisfies());
}

TEST(SolveMitm, AgreesWithBruteOnRandomInstances) {
  Rng rng(314159);
  for (int t = 0; t < 500; ++t) {
    int k = 3 + static_cast<int>(rng.below(3));
    int n = 2 + static_cast<int>(rng.below(k == 5 ? 9 : 20));
    KSumInstance inst = gen_instance(n, k, rng.coin(), rng.next_u64());
    auto bw = solve_brute(inst);
    auto mw = solve_mitm(inst);
    ASSERT_EQ(bw.has_value(), mw.has_value()) << "t=" << t;
    if (bw) {
      EXPECT_TRUE(bw->satisfies());
      EXPECT_TRUE(mw->satisfies());
    }
  }
}

TEST(GenInstance, PlantedAlwaysHasWitness) {
  for (int t = 0; t < 40; ++t) {
    KSumInstance inst = gen_instance(3 + t % 5, 3 + t % 3, true, 900 + t);
    EXPECT_TRUE(inst.in_range());
    EXPECT_TRUE(solve_brute(inst).has_value()) << "t=" << t;
  }
}

TEST(GenInstance, NotPlantedIsAlwaysNo) {
  for (int t = 0; t < 40; ++t) {
    KSumInstance inst = gen_instance(2 + t % 6, 3 + t % 3, false, 4400 + t);
    EXPECT_TRUE(inst.in_range());
    EXPECT_FALSE(solve_brute(inst).has_value()) << "t=" << t;
  }
}

TEST(GenInstance, SeedDeterminism) {
  KSumInstance a = gen_instance(7, 4, true, 123);
  KSumInstance b = gen_instance(7, 4, true, 123);
  EXPECT_EQ(a.lists, b.lists);
  KSumInstance c = gen_instance(7, 4, true, 124);
  EXPECT_NE(a.lists, c.lists);
}

TEST(KSumInstance, ValidationRejectsDuplicatesInAList) {
  KSumInstance inst;
  inst.k = 2;
  inst.n = 2;
  inst.lists = {{Int(1), Int(1)}, {Int(2), Int(3)}};
  EXPECT_THROW(inst.validate(), input_error);
}

TEST(KSumInstance, RangeBoundMatchesProblemStatement) {
  KSumInstance inst = make(3, 2, {{1, 2}, {3, 5}, {4, 8}});
  EXPECT_EQ(inst.range_bound(), Int(64));  // 2^(2*3)
  EXPECT_TRUE(inst.in_range());
  inst.lists[0][0] = Int(65);
  EXPECT_FALSE(inst.in_range());
}

}  // namespace
}  // namespace halfgap
