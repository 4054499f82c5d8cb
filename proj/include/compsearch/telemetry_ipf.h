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

// Retrieval telemetry: each database contributes one (completion time,
// sources) point. The source curve S(t) is the Lagrange interpolating
// polynomial through the cumulative counts, E(t) = S'(t) is the
// instantaneous retrieval rate, and the average value of S over the run's
// restricted domain summarizes the run.

#ifndef COMPSEARCH_TELEMETRY_IPF_H_
#define COMPSEARCH_TELEMETRY_IPF_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace compsearch {

struct TelemetryPoint {
  double t = 0;           // seconds since run start, > 0
  std::int64_t y = 0;     // sources retrieved, >= 0

  friend bool operator==(const TelemetryPoint&,
                         const TelemetryPoint&) = default;
};

// Dense polynomial, ascending degree: c0 + c1 t + c2 t^2 + ...
//
// Coefficients are held in extended precision. Interpolants through up to a
// handful of points with abscissae near 10 have large, alternating monomial
// coefficients; double storage alone loses the interpolation property to
// cancellation.
class Polynomial {
 public:
  using Real = long double;

  Polynomial() = default;  // zero polynomial
  explicit Polynomial(std::vector<Real> ascending);
  static Polynomial FromDoubles(std::span<const double> ascending);

  // Empty for the zero polynomial; otherwise the last entry is nonzero.
  const std::vector<Real>& coefficients() const { return coefficients_; }
  std::vector<double> ToDoubles() const;

  bool is_zero() const { return coefficients_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

  Real EvaluateExtended(Real t) const;

  // Horner evaluation.
  double Evaluate(double t) const {
    return static_cast<double>(EvaluateExtended(t));
  }

  Polynomial Derivative() const;
  // Antiderivative with zero constant term.
  Polynomial Antiderivative() const;

  // "14.516t^3 - 188.549t^2 + 821.01t - 1114.36" style, `digits`
  // significant digits per coefficient.
  std::string ToString(int digits = 6, char variable = 't') const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void Trim();

  std::vector<Real> coefficients_;
};

// Unique interpolant of degree <= n-1 through the points (standard Lagrange
// basis, product over k != i). Points are sorted by t first, so the result
// does not depend on input order.
// Throws Error(kInsufficientPoints) for fewer than two points and
// Error(kDuplicateAbscissa) when two points share a t.
Polynomial FitIpf(std::span<const TelemetryPoint> points);

Polynomial Differentiate(const Polynomial& p);

double Evaluate(const Polynomial& p, double t);

// (1 / (t_f - t_i)) * integral of p over [t_i, t_f], via the antiderivative.
// Throws Error(kDegenerateInterval) unless t_f > t_i.
double AverageValue(const Polynomial& p, double t_i, double t_f);

// Points sorted by completion time with y replaced by the running total:
// the number of sources compiled once that database finished.
std::vector<TelemetryPoint> CumulativePoints(
    std::span<const TelemetryPoint> points);

struct RunMetrics {
  std::int64_t total_sources = 0;
  double total_time_seconds = 0;
  Polynomial s_of_t;
  Polynomial e_of_t;
  double average_value = 0;
  std::pair<double, double> domain{0, 0};  // restricted domain (min t, max t)

  bool InDomain(double t) const {
    return t >= domain.first && t <= domain.second;
  }
};

// Totals over the raw points, S(t) = FitIpf(CumulativePoints(points)),
// E(t) = S'(t), and the average of S over the restricted domain.
// Throws what FitIpf throws.
RunMetrics ComputeRunMetrics(std::span<const TelemetryPoint> points);

// Two readings of "average sources per second" for one run. Neither is
// claimed to equal any externally reported figure.
struct EfficiencyCandidates {
  // Average value of E(t) over the restricted domain, i.e. the secant slope
  // (S(t_max) - S(t_min)) / (t_max - t_min).
  double secant_rate = 0;
  // total_sources / total_time_seconds.
  double total_rate = 0;
};

EfficiencyCandidates ComputeEfficiency(const RunMetrics& metrics);

// Arithmetic mean of total_sources. Throws Error(kConfig) on an empty list.
double MeanSourcesPerSearch(std::span<const RunMetrics> runs);

// sources_used / compilation_seconds.
// Throws Error(kDegenerateInterval) unless compilation_seconds > 0.
double ManualComparisonRate(std::int64_t sources_used,
                            double compilation_seconds);

}  // namespace compsearch

#endif  // COMPSEARCH_TELEMETRY_IPF_H_
