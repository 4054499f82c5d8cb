// Copyright 2026 The compsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "compsearch/error.h"
#include "compsearch/telemetry_ipf.h"
#include "oracles.h"

namespace compsearch {
namespace {

using ::testing::ElementsAre;
using ::testing::SizeIs;

const std::vector<TelemetryPoint> kColumbus = {
    {2.88, 33}, {3.78, 46}, {4.75, 8}, {5.21, 54}};
const std::vector<TelemetryPoint> kWwi = {{7.34, 32}, {5.74, 45}, {4.18, 36}};
const std::vector<TelemetryPoint> kWwii = {{7.28, 31}, {6.35, 37}, {4.72, 41}};

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kConfig;
}

void ExpectCoefficientsNear(const Polynomial& p, const std::vector<double>& want,
                            double rel) {
  const std::vector<double> got = p.ToDoubles();
  ASSERT_THAT(got, SizeIs(want.size()));
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_LE(std::fabs(got[k] - want[k]), rel * std::fabs(want[k]))
        << "coefficient " << k << ": " << got[k] << " vs " << want[k];
  }
}

TEST(PolynomialTest, TrailingZerosTrimmed) {
  EXPECT_EQ(Polynomial({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(Polynomial({0, 0}).is_zero());
  EXPECT_EQ(Polynomial().degree(), -1);
}

TEST(PolynomialTest, EvaluateExamples) {
  EXPECT_EQ(Polynomial({1, 2, 3}).Evaluate(0), 1);
  EXPECT_EQ(Polynomial({1, 2, 3}).Evaluate(2), 17);
  EXPECT_EQ(Evaluate(Polynomial(), 5), 0);
}

TEST(PolynomialTest, EvaluateMatchesPowerSum) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-50, 50), at(-10, 10);
  std::uniform_int_distribution<int> deg(0, 7);
  for (int round = 0; round < 200; ++round) {
    std::vector<double> c(deg(rng) + 1);
    for (double& v : c) v = coef(rng);
    const Polynomial p = Polynomial::FromDoubles(c);
    const double t = at(rng);
    const long double want = compsearch_test::PowerSum(c, t);
    EXPECT_TRUE(compsearch_test::RelativelyClose(p.EvaluateExtended(t), want, 1e-12))
        << p.ToString() << " at " << t;
  }
}

TEST(PolynomialTest, ToStringLooksLikeAFormula) {
  EXPECT_EQ(Polynomial({-1114.36, 821.01, -188.549, 14.516}).ToString(),
            "14.516t^3 - 188.549t^2 + 821.01t - 1114.36");
  EXPECT_EQ(Polynomial({0, -1}).ToString(), "-t");
  EXPECT_EQ(Polynomial().ToString(), "0");
}

TEST(FitIpfTest, LineThroughOrigin) {
  EXPECT_THAT(FitIpf(std::vector<TelemetryPoint>{{0, 0}, {1, 1}}).ToDoubles(),
              ElementsAre(0.0, 1.0));
}

TEST(FitIpfTest, InputOrderDoesNotMatter) {
  std::vector<TelemetryPoint> shuffled = {kColumbus[2], kColumbus[0], kColumbus[3],
                                          kColumbus[1]};
  EXPECT_EQ(FitIpf(shuffled), FitIpf(kColumbus));
}

TEST(FitIpfTest, PassesThroughRandomPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ys(0, 100);
  for (int round = 0; round < 100; ++round) {
    const std::vector<double> xs = compsearch_test::DistinctAbscissae(rng, 3, 0, 10, 0.05);
    std::vector<TelemetryPoint> pts;
    std::vector<double> yv;
    for (double x : xs) {
      const auto y = static_cast<std::int64_t>(ys(rng));
      pts.push_back({x, y});
      yv.push_back(static_cast<double>(y));
    }
    const Polynomial p = FitIpf(pts);
    EXPECT_LE(p.degree(), 2);
    for (const TelemetryPoint& pt : pts) {
      EXPECT_NEAR(p.Evaluate(pt.t), static_cast<double>(pt.y), 1e-9);
    }
    for (double t : {0.5, 2.5, 9.5}) {
      EXPECT_NEAR(p.Evaluate(t),
                  static_cast<double>(compsearch_test::LagrangeValue(xs, yv, t)),
                  1e-7);
    }
  }
}

TEST(FitIpfTest, ColumbusRawPointsInterpolated) {
  const Polynomial p = FitIpf(kColumbus);
  EXPECT_EQ(p.degree(), 3);
  for (const TelemetryPoint& pt : kColumbus) {
    EXPECT_NEAR(p.Evaluate(pt.t), static_cast<double>(pt.y), 1e-9);
  }
}

TEST(FitIpfTest, Errors) {
  EXPECT_EQ(CodeOf([] { FitIpf(std::vector<TelemetryPoint>{{1, 2}, {1, 3}}); }),
            ErrorCode::kDuplicateAbscissa);
  EXPECT_EQ(CodeOf([] { FitIpf(std::vector<TelemetryPoint>{{1, 2}}); }),
            ErrorCode::kInsufficientPoints);
  EXPECT_EQ(CodeOf([] { FitIpf(std::vector<TelemetryPoint>{}); }),
            ErrorCode::kInsufficientPoints);
}

TEST(DifferentiateTest, PublishedColumbusPolynomial) {
  const Polynomial s({-1114.36, 821.01, -188.549, 14.516});
  ExpectCoefficientsNear(Differentiate(s), {821.01, -377.098, 43.548}, 1e-12);
}

TEST(DifferentiateTest, ConstantBecomesZero) {
  EXPECT_TRUE(Differentiate(Polynomial({5})).is_zero());
  EXPECT_TRUE(Differentiate(Polynomial()).is_zero());
}

TEST(DifferentiateTest, AgreesWithCentralDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-5, 5), at(0.5, 9.5);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> c(6);
    for (double& v : c) v = coef(rng);
    const Polynomial p = Polynomial::FromDoubles(c);
    const Polynomial dp = Differentiate(p);
    for (int i = 0; i < 10; ++i) {
      const double t = at(rng);
      const double fd = compsearch_test::CentralDifference(
          [&](double x) { return static_cast<double>(compsearch_test::PowerSum(c, x)); },
          t, 1e-5);
      EXPECT_NEAR(dp.Evaluate(t), fd, 1e-4 * std::max(1.0, std::fabs(fd)));
    }
  }
}

TEST(AverageValueTest, Examples) {
  EXPECT_DOUBLE_EQ(AverageValue(Polynomial({7}), -3, 11), 7);
  EXPECT_DOUBLE_EQ(AverageValue(Polynomial({0, 1}), 0, 2), 1);
  EXPECT_EQ(CodeOf([] { AverageValue(Polynomial({1}), 2, 2); }),
            ErrorCode::kDegenerateInterval);
  EXPECT_EQ(CodeOf([] { AverageValue(Polynomial({1}), 3, 2); }),
            ErrorCode::kDegenerateInterval);
}

TEST(AverageValueTest, PublishedColumbusMatchesMidpointQuadrature) {
  const std::vector<double> c = {-1114.36, 821.01, -188.549, 14.516};
  const double avg = AverageValue(Polynomial::FromDoubles(c), 2.88, 5.21);
  const long double integral = compsearch_test::MidpointIntegral(
      [&](long double t) { return compsearch_test::PowerSum(c, t); }, 2.88L, 5.21L,
      1000000);
  EXPECT_TRUE(compsearch_test::RelativelyClose(avg, integral / (5.21L - 2.88L), 1e-6));
}

TEST(CumulativePointsTest, SortsAndAccumulates) {
  EXPECT_THAT(CumulativePoints(kWwi),
              ElementsAre(TelemetryPoint{4.18, 36}, TelemetryPoint{5.74, 81},
                          TelemetryPoint{7.34, 113}));
}

TEST(RunMetricsTest, ColumbusTotals) {
  const RunMetrics m = ComputeRunMetrics(kColumbus);
  EXPECT_EQ(m.total_sources, 141);
  EXPECT_EQ(m.total_time_seconds, 5.21);
  EXPECT_EQ(m.domain, std::make_pair(2.88, 5.21));
  EXPECT_TRUE(m.InDomain(4));
  EXPECT_FALSE(m.InDomain(6));
  EXPECT_NEAR(m.s_of_t.Evaluate(2.88), 33, 1e-9);
  EXPECT_NEAR(m.s_of_t.Evaluate(5.21), 141, 1e-9);
  EXPECT_EQ(m.e_of_t, Differentiate(m.s_of_t));
}

TEST(RunMetricsTest, ThreeDatabasesGiveAQuadratic) {
  EXPECT_EQ(ComputeRunMetrics(kWwi).s_of_t.degree(), 2);
}

TEST(RunMetricsTest, PublishedWorldWarFitsReproduce) {
  const RunMetrics wwi = ComputeRunMetrics(kWwi);
  ExpectCoefficientsNear(wwi.s_of_t, {-151.744, 56.6164, -2.79942}, 5e-3);
  ExpectCoefficientsNear(wwi.e_of_t, {56.6164, -5.59884}, 5e-3);
  const RunMetrics wwii = ComputeRunMetrics(kWwii);
  ExpectCoefficientsNear(wwii.s_of_t, {58.3592, -23.2841, 4.15389}, 5e-3);
  ExpectCoefficientsNear(wwii.e_of_t, {-23.2841, 8.30778}, 5e-3);
}

TEST(RunMetricsTest, DatabaseAddingNothingFlattensTheCurve) {
  const RunMetrics m = ComputeRunMetrics(std::vector<TelemetryPoint>{{1, 5}, {2, 0}});
  EXPECT_EQ(m.s_of_t.degree(), 0);
  EXPECT_TRUE(m.e_of_t.is_zero());
  EXPECT_DOUBLE_EQ(m.average_value, 5);
}

TEST(RunMetricsTest, EfficiencyCandidates) {
  const RunMetrics m = ComputeRunMetrics(kColumbus);
  const EfficiencyCandidates e = ComputeEfficiency(m);
  EXPECT_NEAR(e.secant_rate, (141.0 - 33.0) / (5.21 - 2.88), 1e-9);
  EXPECT_NEAR(e.total_rate, 141 / 5.21, 1e-12);
}

TEST(AggregateTest, MeanSourcesPerSearch) {
  std::vector<RunMetrics> runs(4);
  const int totals[] = {141, 139, 113, 109};
  for (int i = 0; i < 4; ++i) runs[i].total_sources = totals[i];
  EXPECT_DOUBLE_EQ(MeanSourcesPerSearch(runs), 125.5);
  EXPECT_EQ(std::lround(MeanSourcesPerSearch(runs)), 126);
  EXPECT_DOUBLE_EQ(MeanSourcesPerSearch(std::span(runs).first(1)), 141);
  std::vector<RunMetrics> same(3);
  for (auto& r : same) r.total_sources = 7;
  EXPECT_DOUBLE_EQ(MeanSourcesPerSearch(same), 7);
  EXPECT_EQ(CodeOf([] { MeanSourcesPerSearch({}); }), ErrorCode::kConfig);
}

TEST(AggregateTest, ManualComparisonRate) {
  EXPECT_NEAR(ManualComparisonRate(10, 414), 0.0241546, 1e-6);
  EXPECT_NEAR(ManualComparisonRate(10, 378), 0.0264550, 1e-6);
  EXPECT_EQ(ManualComparisonRate(0, 100), 0);
  EXPECT_EQ(CodeOf([] { ManualComparisonRate(1, 0); }), ErrorCode::kDegenerateInterval);
}

}  // namespace
}  // namespace compsearch
