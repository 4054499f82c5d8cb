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

#include "compsearch/telemetry_ipf.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "compsearch/error.h"

namespace compsearch {

using Real = Polynomial::Real;

Polynomial::Polynomial(std::vector<Real> ascending)
    : coefficients_(std::move(ascending)) {
  Trim();
}

Polynomial Polynomial::FromDoubles(std::span<const double> ascending) {
  return Polynomial(std::vector<Real>(ascending.begin(), ascending.end()));
}

void Polynomial::Trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) {
    coefficients_.pop_back();
  }
}

std::vector<double> Polynomial::ToDoubles() const {
  return {coefficients_.begin(), coefficients_.end()};
}

Real Polynomial::EvaluateExtended(Real t) const {
  Real acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

Polynomial Polynomial::Derivative() const {
  if (coefficients_.size() <= 1) return Polynomial();
  std::vector<Real> out(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) {
    out[k - 1] = static_cast<Real>(k) * coefficients_[k];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::Antiderivative() const {
  if (coefficients_.empty()) return Polynomial();
  std::vector<Real> out(coefficients_.size() + 1, 0);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    out[k + 1] = coefficients_[k] / static_cast<Real>(k + 1);
  }
  return Polynomial(std::move(out));
}

std::string Polynomial::ToString(int digits, char variable) const {
  if (coefficients_.empty()) return "0";
  std::string out;
  char buf[64];
  for (int k = degree(); k >= 0; --k) {
    const double c = static_cast<double>(coefficients_[k]);
    if (c == 0) continue;
    const double mag = std::fabs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1.0 && k > 0;
    if (!unit) {
      std::snprintf(buf, sizeof(buf), "%.*g", digits, mag);
      out += buf;
    }
    if (k >= 1) out += variable;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

Polynomial FitIpf(std::span<const TelemetryPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorCode::kInsufficientPoints,
                "need at least 2 points, got " + std::to_string(points.size()));
  }
  std::vector<TelemetryPoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].t == sorted[i - 1].t) {
      throw Error(ErrorCode::kDuplicateAbscissa,
                  "t = " + std::to_string(sorted[i].t) + " appears twice");
    }
  }

  const std::size_t n = sorted.size();
  std::vector<Real> sum(n, 0);
  std::vector<Real> basis;
  for (std::size_t i = 0; i < n; ++i) {
    // basis = prod_{k != i} (t - t_k), expanded in ascending order.
    basis.assign(1, 1);
    Real denominator = 1;
    const Real ti = sorted[i].t;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const Real tk = sorted[k].t;
      basis.push_back(0);
      for (std::size_t j = basis.size() - 1; j > 0; --j) {
        basis[j] = basis[j - 1] - tk * basis[j];
      }
      basis[0] = -tk * basis[0];
      denominator *= ti - tk;
    }
    const Real scale = static_cast<Real>(sorted[i].y) / denominator;
    for (std::size_t j = 0; j < n; ++j) sum[j] += scale * basis[j];
  }
  return Polynomial(std::move(sum));
}

Polynomial Differentiate(const Polynomial& p) { return p.Derivative(); }

double Evaluate(const Polynomial& p, double t) { return p.Evaluate(t); }

double AverageValue(const Polynomial& p, double t_i, double t_f) {
  if (!(t_f > t_i)) {
    throw Error(ErrorCode::kDegenerateInterval,
                "need t_f > t_i, got [" + std::to_string(t_i) + ", " +
                    std::to_string(t_f) + "]");
  }
  const Polynomial integral = p.Antiderivative();
  const Real area =
      integral.EvaluateExtended(t_f) - integral.EvaluateExtended(t_i);
  return static_cast<double>(area / (static_cast<Real>(t_f) - t_i));
}

std::vector<TelemetryPoint> CumulativePoints(
    std::span<const TelemetryPoint> points) {
  std::vector<TelemetryPoint> out(points.begin(), points.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.t < b.t; });
  std::int64_t running = 0;
  for (TelemetryPoint& p : out) {
    running += p.y;
    p.y = running;
  }
  return out;
}

RunMetrics ComputeRunMetrics(std::span<const TelemetryPoint> points) {
  RunMetrics m;
  m.s_of_t = FitIpf(CumulativePoints(points));
  m.e_of_t = Differentiate(m.s_of_t);
  const auto [lo, hi] = std::minmax_element(
      points.begin(), points.end(),
      [](const auto& a, const auto& b) { return a.t < b.t; });
  m.domain = {lo->t, hi->t};
  m.total_time_seconds = hi->t;
  m.total_sources = std::accumulate(
      points.begin(), points.end(), std::int64_t{0},
      [](std::int64_t acc, const TelemetryPoint& p) { return acc + p.y; });
  m.average_value = AverageValue(m.s_of_t, m.domain.first, m.domain.second);
  return m;
}

EfficiencyCandidates ComputeEfficiency(const RunMetrics& metrics) {
  EfficiencyCandidates out;
  out.secant_rate = AverageValue(metrics.e_of_t, metrics.domain.first,
                                 metrics.domain.second);
  out.total_rate = metrics.total_time_seconds > 0
                       ? static_cast<double>(metrics.total_sources) /
                             metrics.total_time_seconds
                       : 0.0;
  return out;
}

double MeanSourcesPerSearch(std::span<const RunMetrics> runs) {
  if (runs.empty()) throw Error(ErrorCode::kConfig, "no runs to average");
  double sum = 0;
  for (const RunMetrics& r : runs) sum += static_cast<double>(r.total_sources);
  return sum / static_cast<double>(runs.size());
}

double ManualComparisonRate(std::int64_t sources_used,
                            double compilation_seconds) {
  if (!(compilation_seconds > 0)) {
    throw Error(ErrorCode::kDegenerateInterval,
                "compilation time must be positive");
  }
  return static_cast<double>(sources_used) / compilation_seconds;
}

}  // namespace compsearch
