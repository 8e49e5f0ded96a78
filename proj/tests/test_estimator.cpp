#include <gtest/gtest.h>

#include <cmath>

#include "halfgap/estimator.hpp"
#include "halfgap/reduction.hpp"

namespace halfgap {
namespace {

Point pt(std::initializer_list<long long> c) { return Point(c); }

TEST(SampleSize, DirectEvaluationOfTheFormula) {
  // ceil(64 * (d + 1 + ln(2/delta)) / eps^2), evaluated independently here.
  auto expected = [](int d, double eps, double delta) {
    return static_cast<long long>(std::ceil(64.0 * (d + 1 + std::log(2.0 / delta)) / (eps * eps)));
  };
  EXPECT_EQ(sample_size(2, Rat(1, 2), Rat(1, 2)), expected(2, 0.5, 0.5));
  EXPECT_EQ(sample_size(2, Rat(1, 2), Rat(1, 2)), 1123);  // 64*(3+ln 4)*4 = 1122.89...
  EXPECT_EQ(sample_size(1, Rat(1, 10), Rat(1, 3)), expected(1, 0.1, 1.0 / 3.0));
  EXPECT_EQ(sample_size(4, Rat(2, 3), Rat(1, 5)), expected(4, 2.0 / 3.0, 0.2));
}

TEST(SampleSize, HalvingEpsQuadruplesTheRawCount) {
  // The pre-ceiling count scales by exactly 4 when eps halves; with the
  // power-of-two eps used here the doubles are exact, so the ceilings obey
  // ceil(4x) relative to ceil(x) as well.
  double raw1 = 64.0 * (3 + std::log(4.0)) / 0.25;
  double raw2 = 64.0 * (3 + std::log(4.0)) / 0.0625;
  EXPECT_EQ(raw2, 4.0 * raw1);
  EXPECT_EQ(sample_size(2, Rat(1, 4), Rat(1, 2)),
            static_cast<long long>(std::ceil(raw2)));
}

TEST(SampleSize, ParameterRangeEnforced) {
  EXPECT_THROW(sample_size(1, Rat(1), Rat(1, 2)), input_error);   // eps = 1
  EXPECT_THROW(sample_size(1, Rat(0), Rat(1, 2)), input_error);
  EXPECT_THROW(sample_size(0, Rat(1, 2), Rat(1, 2)), input_error);
  EXPECT_THROW(sample_size(1, Rat(1, 2), Rat(1)), input_error);
}

TEST(ApproxDistance, PointMassIsZero) {
  SampleAccess acc;
  acc.rng_seed = 7;
  acc.draw = [](Rng&, Point& out, int& label) {
    out = Point({3, -1});
    label = 1;
  };
  acc.query = [](const Point&) { return 1; };
  Estimate est = approx_distance(acc, 2, Rat(1, 4), Rat(1, 4));
  EXPECT_EQ(est.value, Rat(0));
  EXPECT_EQ(est.empirical.size(), 1u);
}

TEST(ApproxDistance, SubsampleOfSeparableSupportIsZero) {
  KSumInstance inst;
  inst.k = 3;
  inst.n = 1;
  inst.lists = {{Int(0)}, {Int(0)}, {Int(0)}};
  ReducedInstance red = build_reduction(inst);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    SampleAccess acc = make_reduction_access(red, seed);
    EXPECT_EQ(approx_distance(acc, 2, Rat(1, 5), Rat(1, 3)).value, Rat(0));
  }
}

LabeledDataset xor_dataset() {
  return make_uniform_dataset(2, {pt({0, 0}), pt({1, 1}), pt({0, 1}), pt({1, 0})},
                              {1, 1, 0, 0});
}

TEST(ApproxDistance, XorEstimatesConcentrateAroundOneQuarter) {
  LabeledDataset ds = xor_dataset();
  int in_band = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    SampleAccess acc = make_dataset_access(ds, 5000 + static_cast<uint64_t>(t));
    Rat est = approx_distance(acc, 2, Rat(1, 10), Rat(1, 10)).value;
    if (est >= Rat(3, 20) && est <= Rat(7, 20)) ++in_band;
  }
  EXPECT_GE(in_band, trials * 9 / 10);
}

TEST(ApproxDistance, SeedDeterminism) {
  LabeledDataset ds = xor_dataset();
  SampleAccess a1 = make_dataset_access(ds, 99);
  SampleAccess a2 = make_dataset_access(ds, 99);
  Estimate e1 = approx_distance(a1, 2, Rat(1, 5), Rat(1, 5));
  Estimate e2 = approx_distance(a2, 2, Rat(1, 5), Rat(1, 5));
  EXPECT_EQ(e1.value, e2.value);
  ASSERT_EQ(e1.empirical.size(), e2.empirical.size());
  for (size_t i = 0; i < e1.empirical.size(); ++i) {
    EXPECT_TRUE(e1.empirical.points[i] == e2.empirical.points[i]);
    EXPECT_EQ(e1.empirical.weights[i], e2.empirical.weights[i]);
  }
}

TEST(ApproxDistance, ConflictingLabelsRejected) {
  SampleAccess acc;
  acc.rng_seed = 1;
  int flip = 0;
  acc.draw = [flip](Rng&, Point& out, int& label) mutable {
    out = Point({0});
    label = flip ^= 1;
  };
  acc.query = [](const Point&) { return 0; };
  EXPECT_THROW(approx_distance(acc, 1, Rat(1, 2), Rat(1, 2)), input_error);
}

TEST(ApproxDistance, EstimateIsAlwaysARationalInUnitInterval) {
  LabeledDataset ds = xor_dataset();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    SampleAccess acc = make_dataset_access(ds, seed);
    Rat est = approx_distance(acc, 2, Rat(1, 3), Rat(1, 3)).value;
    EXPECT_GE(est, Rat(0));
    EXPECT_LE(est, Rat(1));
  }
}

}  // namespace
}  // namespace halfgap
