#include "oslash/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

namespace oslash {

ReportRow report_row(const json& report) {
  ReportRow row;
  try {
    const json& cfg = report.at("config");
    row.family = cfg.value("family", std::string("?"));
    row.depth = cfg.value("depth", 0);
    row.branching = cfg.value("branching", 0);
    row.target = cfg.value("target", std::string("?"));
    row.norm = report.at("norm").get<std::string>();
    row.finite = report.value("finite", true);
    row.measured = report.at("distortion").get<double>();
    row.upper = report.value("upper_bound", 0.0);
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed distortion report: ") + e.what());
  }
  return row;
}

double upper_bound_for(const std::string& target, NormSpec norm, int depth, double base_c) {
  if (target == "c0" || target == "lp") {
    if (norm.kind == NormSpec::Kind::sup) return 3.0;
    if (norm.kind == NormSpec::Kind::p) return 3.0 * std::pow(2.0 * depth + 2.0, 1.0 / norm.p);
    return 0.0;
  }
  if (target == "l1") return norm.kind == NormSpec::Kind::one ? 2.0 : 0.0;
  if (target == "transfer" && norm.kind == NormSpec::Kind::p)
    return base_c * std::pow(2.0, 1.0 / norm.p);
  return 0.0;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int norm_p(const std::string& norm) {
  return norm.rfind("p:", 0) == 0 ? int(parse_norm(norm).p) : 0;
}

const NamedCurve* curve_for(const std::vector<NamedCurve>& curves, const std::string& norm) {
  int p = norm_p(norm);
  if (p == 0) return nullptr;
  for (const NamedCurve& c : curves)
    if (std::fabs(c.p - p) < 1e-9) return &c;
  return nullptr;
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.norm, a.target, a.family, a.branching, a.depth) <
           std::tie(b.norm, b.target, b.family, b.branching, b.depth);
  });
}

}  // namespace

std::string report_markdown(std::vector<ReportRow> rows, const std::vector<NamedCurve>& curves) {
  sort_rows(rows);
  std::ostringstream out;
  out << "# Distortion report\n";
  std::string cur;
  for (const ReportRow& r : rows) {
    if (r.norm != cur) {
      cur = r.norm;
      out << "\n## norm " << cur << "\n\n";
      out << "| family | w | k | target | measured | upper | lower curve | floor |\n";
      out << "|---|---|---|---|---|---|---|---|\n";
    }
    const NamedCurve* c = curve_for(curves, r.norm);
    bool have = c && r.depth >= 1 && r.depth <= int(c->curve.c.size());
    out << "| " << r.family << " | " << r.branching << " | " << r.depth << " | " << r.target
        << " | " << (r.finite ? fmt(r.measured) : std::string("inf")) << " | "
        << (r.upper > 0 ? fmt(r.upper) : std::string("-")) << " | "
        << (have ? fmt(c->curve.c[r.depth - 1]) : std::string("-")) << " | "
        << (have ? fmt(c->curve.floor_at[r.depth - 1]) : std::string("-")) << " |\n";
  }
  if (rows.empty()) out << "\n(no measurements)\n";
  return out.str();
}

std::string report_table_csv(std::vector<ReportRow> rows, const std::vector<NamedCurve>& curves) {
  sort_rows(rows);
  std::string out = "family,branching,depth,target,norm,measured,upper,lower_curve,floor\n";
  for (const ReportRow& r : rows) {
    const NamedCurve* c = curve_for(curves, r.norm);
    bool have = c && r.depth >= 1 && r.depth <= int(c->curve.c.size());
    out += r.family + "," + std::to_string(r.branching) + "," + std::to_string(r.depth) + "," +
           r.target + "," + r.norm + "," + (r.finite ? fmt(r.measured) : std::string("inf")) + "," +
           (r.upper > 0 ? fmt(r.upper) : std::string("")) + "," +
           (have ? fmt(c->curve.c[r.depth - 1]) : std::string("")) + "," +
           (have ? fmt(c->curve.floor_at[r.depth - 1]) : std::string("")) + "\n";
  }
  return out;
}

}  // namespace oslash
