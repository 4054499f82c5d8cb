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

#include "compsearch/report_emitter.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "compsearch/error.h"
#include "compsearch/text.h"
#include "compsearch/url.h"

namespace compsearch {
namespace {

using nlohmann::json;

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string FormatG(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

// Only these schemes are rendered as live links or images.
bool SafeLinkTarget(std::string_view url) {
  const std::string scheme = SplitUrl(url).scheme;
  return scheme == "http" || scheme == "https" || scheme == "file";
}

std::string LinkOrText(const std::string& url) {
  const std::string escaped = EscapeHtml(url);
  if (!SafeLinkTarget(url)) return "<code>" + escaped + "</code>";
  return "<a href=\"" + escaped + "\">" + escaped + "</a>";
}

json CoefficientsJson(const Polynomial& p) {
  json arr = json::array();
  for (double c : p.ToDoubles()) arr.push_back(c);
  return arr;
}

json PointsJson(std::span<const TelemetryPoint> points) {
  json arr = json::array();
  for (const TelemetryPoint& p : points) arr.push_back({{"t", p.t}, {"y", p.y}});
  return arr;
}

void WriteCanonical(const json& value, std::string& out) {
  switch (value.type()) {
    case json::value_t::null:
    case json::value_t::discarded:
      out += "null";
      break;
    case json::value_t::boolean:
      out += value.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(value.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(value.get<std::uint64_t>());
      break;
    case json::value_t::number_float: {
      const double d = value.get<double>();
      out += std::isfinite(d) ? FormatG(d, 17) : "null";
      break;
    }
    case json::value_t::string:
      out += value.dump(-1, ' ', false, json::error_handler_t::replace);
      break;
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const json& item : value) {
        if (!first) out += ',';
        first = false;
        WriteCanonical(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump(-1, ' ', false, json::error_handler_t::replace);
        out += ':';
        WriteCanonical(item, out);
      }
      out += '}';
      break;
    }
    case json::value_t::binary:
      throw Error(ErrorCode::kConfig, "binary values are not serializable");
  }
}

void RenderComponent(const Component& c, std::ostringstream& html) {
  const std::string text = EscapeHtml(c.value);
  switch (c.kind) {
    case TargetKind::kImage:
      if (SafeLinkTarget(c.value)) {
        html << "<figure><img src=\"" << text << "\" alt=\"\"/><figcaption>"
             << text << "</figcaption></figure>\n";
      } else {
        html << "<p class=\"image-url\"><code>" << text << "</code></p>\n";
      }
      break;
    case TargetKind::kExcerpt:
      html << "<blockquote class=\"excerpt\">" << text << "</blockquote>\n";
      break;
    case TargetKind::kHeading:
      html << "<h3 class=\"heading\">" << text << "</h3>\n";
      break;
    case TargetKind::kFullText:
      html << "<div class=\"full-text\">" << text << "</div>\n";
      break;
    case TargetKind::kCitation:
      html << "<p class=\"citation\">" << text << "</p>\n";
      break;
  }
}

constexpr std::string_view kStyle =
    "body{font-family:Georgia,serif;max-width:60rem;margin:2rem auto;"
    "padding:0 1rem;color:#222}"
    "header{border-bottom:2px solid #444;margin-bottom:1rem}"
    "section.source{border-bottom:1px solid #ccc;padding:0.5rem 0}"
    "p.meta{font-size:0.85rem;color:#666}"
    "p.citation{font-style:italic}"
    "blockquote.excerpt{border-left:3px solid #999;margin-left:0;"
    "padding-left:1rem}"
    "figure img{max-width:100%}"
    "footer{margin-top:2rem;font-size:0.9rem}"
    "ul.diagnostics{color:#844}";

}  // namespace

TelemetrySection SummarizeTelemetry(std::span<const TelemetryPoint> points) {
  TelemetrySection section;
  section.points.assign(points.begin(), points.end());
  for (const TelemetryPoint& p : points) {
    section.total_sources += p.y;
    section.total_time_seconds = std::max(section.total_time_seconds, p.t);
  }
  try {
    section.metrics = ComputeRunMetrics(points);
    section.efficiency = ComputeEfficiency(*section.metrics);
  } catch (const Error&) {
    section.metrics.reset();
    section.efficiency.reset();
  }
  return section;
}

std::vector<RankedRecord> OrderRecords(std::span<const SourceRecord> records,
                                       const LinkGraph& graph,
                                       const RankVector& ranks) {
  std::unordered_map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    node_index.emplace(graph.nodes[i], i);
  }
  std::vector<double> percent;
  if (!ranks.scores.empty()) {
    try {
      percent = NormalizedPercent(ranks);
    } catch (const Error&) {
      percent.clear();
    }
  }

  std::vector<RankedRecord> out;
  out.reserve(records.size());
  for (const SourceRecord& r : records) {
    RankedRecord ranked{r, 0.0, 0.0};
    if (auto it = node_index.find(r.url);
        it != node_index.end() && it->second < ranks.scores.size()) {
      ranked.pagerank = ranks.scores[it->second];
      if (it->second < percent.size()) ranked.pagerank_percent = percent[it->second];
    }
    out.push_back(std::move(ranked));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedRecord& a, const RankedRecord& b) {
                     const double sa = a.record.combined_score();
                     const double sb = b.record.combined_score();
                     if (sa != sb) return sa > sb;
                     if (a.pagerank != b.pagerank) return a.pagerank > b.pagerank;
                     return a.record.url < b.record.url;
                   });
  return out;
}

std::string RenderHtml(const CompiledReport& report) {
  std::ostringstream html;
  const std::string query = EscapeHtml(report.query.raw_text);
  const std::size_t n = report.records.size();

  html << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n"
       << "<meta charset=\"utf-8\"/>\n"
       << "<title>Compiled sources: " << query << "</title>\n"
       << "<style>" << kStyle << "</style>\n</head>\n<body>\n";

  html << "<header>\n<h1>Compiled sources for &#8220;" << query
       << "&#8221;</h1>\n";
  html << "<p class=\"totals\">" << n << (n == 1 ? " source" : " sources")
       << " from " << report.databases.size()
       << (report.databases.size() == 1 ? " database" : " databases")
       << "</p>\n";
  html << "<p class=\"keywords\">Keywords:";
  for (const std::string& k : report.query.keywords) {
    html << " <code>" << EscapeHtml(k) << "</code>";
  }
  html << "</p>\n<p class=\"generated\">Generated " << EscapeHtml(report.generated_at)
       << "</p>\n</header>\n<main>\n";

  for (std::size_t i = 0; i < n; ++i) {
    const RankedRecord& ranked = report.records[i];
    const SourceRecord& r = ranked.record;
    html << "<section class=\"source\" id=\"source-" << (i + 1) << "\">\n";
    html << "<h2>" << (i + 1) << ". " << LinkOrText(r.url) << "</h2>\n";
    html << "<p class=\"meta\">" << EscapeHtml(r.database_name)
         << " | relevance " << FormatG(r.relevance_score, 6) << " | proximity "
         << FormatG(r.proximity_score, 6) << " | PageRank "
         << FormatFixed(ranked.pagerank, 4) << " ("
         << FormatFixed(ranked.pagerank_percent, 2) << "%)</p>\n";
    const bool citation_shown = std::any_of(
        r.components.begin(), r.components.end(), [&](const Component& c) {
          return c.kind == TargetKind::kCitation && c.value == r.citation;
        });
    if (r.citation && !citation_shown) {
      html << "<p class=\"citation\">" << EscapeHtml(*r.citation) << "</p>\n";
    }
    for (const Component& c : r.components) RenderComponent(c, html);
    html << "</section>\n";
  }
  html << "</main>\n";

  const TelemetrySection& t = report.telemetry;
  html << "<footer id=\"telemetry\">\n<h2>Telemetry</h2>\n";
  html << "<p class=\"totals\">Total sources: " << t.total_sources
       << "; total time: " << FormatG(t.total_time_seconds, 6) << " s</p>\n";
  html << "<table class=\"points\">\n<tr><th>database</th><th>completed (s)</th>"
       << "<th>sources</th></tr>\n";
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    const std::string name =
        i < report.databases.size() ? report.databases[i] : "";
    html << "<tr><td>" << EscapeHtml(name) << "</td><td>"
         << FormatG(t.points[i].t, 6) << "</td><td>" << t.points[i].y
         << "</td></tr>\n";
  }
  html << "</table>\n";
  if (t.metrics) {
    const RunMetrics& m = *t.metrics;
    html << "<p class=\"s-of-t\">S(t) = " << m.s_of_t.ToString() << "</p>\n";
    html << "<p class=\"e-of-t\">E(t) = " << m.e_of_t.ToString() << "</p>\n";
    html << "<p class=\"average\">Average value of S on the domain: "
         << FormatG(m.average_value, 6) << "</p>\n";
    html << "<p class=\"domain\">Restricted domain: [" << FormatG(m.domain.first, 6)
         << ", " << FormatG(m.domain.second, 6)
         << "] s; values outside it are extrapolation.</p>\n";
  } else {
    html << "<p class=\"s-of-t\">S(t) unavailable: at least two databases with "
            "distinct completion times are needed.</p>\n";
  }
  if (t.efficiency) {
    html << "<p class=\"efficiency\">Secant rate: "
         << FormatG(t.efficiency->secant_rate, 6)
         << " sources/s; total rate: " << FormatG(t.efficiency->total_rate, 6)
         << " sources/s</p>\n";
  }
  if (!report.diagnostics.empty()) {
    html << "<h2>Diagnostics</h2>\n<ul class=\"diagnostics\">\n";
    for (const Diagnostic& d : report.diagnostics) {
      html << "<li>" << EscapeHtml(d.database) << ": " << EscapeHtml(d.url)
           << " &#8212; " << EscapeHtml(d.reason) << "</li>\n";
    }
    html << "</ul>\n";
  }
  html << "</footer>\n</body>\n</html>\n";
  return html.str();
}

json ReportToJson(const CompiledReport& report) {
  json doc = json::object();
  doc["generated_at"] = report.generated_at;
  doc["databases"] = report.databases;
  doc["query"] = {{"raw_text", report.query.raw_text},
                  {"keywords", report.query.keywords},
                  {"topics", report.query.topics}};

  json records = json::array();
  for (const RankedRecord& ranked : report.records) {
    const SourceRecord& r = ranked.record;
    json components = json::array();
    for (const Component& c : r.components) {
      components.push_back({{"kind", TargetKindName(c.kind)}, {"value", c.value}});
    }
    records.push_back({
        {"url", r.url},
        {"database_name", r.database_name},
        {"relevance_score", r.relevance_score},
        {"proximity_score", r.proximity_score},
        {"combined_score", r.combined_score()},
        {"pagerank", ranked.pagerank},
        {"pagerank_percent", ranked.pagerank_percent},
        {"citation", r.citation ? json(*r.citation) : json(nullptr)},
        {"components", std::move(components)},
    });
  }
  doc["records"] = std::move(records);

  const TelemetrySection& t = report.telemetry;
  json telemetry = {
      {"points", PointsJson(t.points)},
      {"total_sources", t.total_sources},
      {"total_time_seconds", t.total_time_seconds},
  };
  if (t.metrics) {
    const RunMetrics& m = *t.metrics;
    telemetry["cumulative_points"] = PointsJson(CumulativePoints(t.points));
    telemetry["s_coefficients"] = CoefficientsJson(m.s_of_t);
    telemetry["e_coefficients"] = CoefficientsJson(m.e_of_t);
    telemetry["average_value"] = m.average_value;
    telemetry["domain"] = {m.domain.first, m.domain.second};
  } else {
    telemetry["cumulative_points"] = nullptr;
    telemetry["s_coefficients"] = nullptr;
    telemetry["e_coefficients"] = nullptr;
    telemetry["average_value"] = nullptr;
    telemetry["domain"] = nullptr;
  }
  if (t.efficiency) {
    telemetry["efficiency"] = {{"secant_rate", t.efficiency->secant_rate},
                               {"total_rate", t.efficiency->total_rate}};
  } else {
    telemetry["efficiency"] = nullptr;
  }
  doc["telemetry"] = std::move(telemetry);

  json diagnostics = json::array();
  for (const Diagnostic& d : report.diagnostics) {
    diagnostics.push_back(
        {{"database", d.database}, {"url", d.url}, {"reason", d.reason}});
  }
  doc["diagnostics"] = std::move(diagnostics);
  return doc;
}

std::string RenderCanonicalJson(const json& value) {
  std::string out;
  WriteCanonical(value, out);
  return out;
}

std::string RenderJson(const CompiledReport& report) {
  return RenderCanonicalJson(ReportToJson(report)) + "\n";
}

std::string RenderSvgPlot(const RunMetrics& metrics) {
  constexpr int kWidth = 640;
  constexpr int kPanelHeight = 200;
  constexpr int kMargin = 48;
  constexpr int kSamples = 200;
  const auto [t0, t1] = metrics.domain;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << 2 * (kPanelHeight + kMargin) << "\" viewBox=\"0 0 "
      << kWidth << ' ' << 2 * (kPanelHeight + kMargin) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto panel = [&](const Polynomial& p, const char* label, const char* colour,
                   int top) {
    std::vector<double> xs(kSamples + 1), ys(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
      xs[i] = t0 + (t1 - t0) * i / kSamples;
      ys[i] = p.Evaluate(xs[i]);
    }
    double lo = *std::min_element(ys.begin(), ys.end());
    double hi = *std::max_element(ys.begin(), ys.end());
    if (hi - lo < 1e-12) {
      lo -= 1;
      hi += 1;
    }
    const double plot_w = kWidth - 2 * kMargin;
    auto px = [&](double t) {
      return kMargin + (t1 > t0 ? (t - t0) / (t1 - t0) : 0.0) * plot_w;
    };
    auto py = [&](double v) {
      return top + kMargin / 2 + (hi - v) / (hi - lo) * kPanelHeight;
    };
    svg << "<text x=\"" << kMargin << "\" y=\"" << top + kMargin / 2 - 8
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << label << " = "
        << EscapeHtml(p.ToString(5)) << "</text>\n";
    svg << "<rect x=\"" << kMargin << "\" y=\"" << top + kMargin / 2
        << "\" width=\"" << plot_w << "\" height=\"" << kPanelHeight
        << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"2\" points=\"";
    for (int i = 0; i <= kSamples; ++i) {
      if (i > 0) svg << ' ';
      svg << FormatFixed(px(xs[i]), 2) << ',' << FormatFixed(py(ys[i]), 2);
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << kMargin << "\" y=\"" << top + kMargin / 2 + kPanelHeight + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\">t = "
        << FormatG(t0, 4) << " s</text>\n";
    svg << "<text x=\"" << kWidth - kMargin - 60 << "\" y=\""
        << top + kMargin / 2 + kPanelHeight + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\">t = "
        << FormatG(t1, 4) << " s</text>\n";
  };
  panel(metrics.s_of_t, "S(t)", "#1f5fa8", 0);
  panel(metrics.e_of_t, "E(t)", "#b5491b", kPanelHeight + kMargin);
  svg << "</svg>\n";
  return svg.str();
}

std::string FormatUtcTimestamp(std::int64_t unix_seconds) {
  const std::time_t t = static_cast<std::time_t>(unix_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace compsearch
