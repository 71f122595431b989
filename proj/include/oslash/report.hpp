#pragma once
#include "oslash/graph_io.hpp"

namespace oslash {

struct ReportRow {
  std::string family;
  int depth = 0;
  int branching = 0;
  std::string target;
  std::string norm;
  bool finite = true;
  double measured = 0;
  double upper = 0;  // 0 when no bound applies
};

ReportRow report_row(const json& report);

// What the constructions promise: 3 for the sup-norm tree, 3 (2k+2)^(1/p)
// for its p-norm reading, 2 for the Bernoulli embedding, base_c 2^(1/p) for
// the transferred one. Zero for combinations without a stated bound.
double upper_bound_for(const std::string& target, NormSpec norm, int depth, double base_c = 1.0);

struct NamedCurve {
  double p = 0;
  BoundCurve curve;
};

// One section per norm: measured values against the upper bound, with the
// lower-bound curve and its closed-form floor joined by matching exponent.
std::string report_markdown(std::vector<ReportRow> rows, const std::vector<NamedCurve>& curves);
std::string report_table_csv(std::vector<ReportRow> rows, const std::vector<NamedCurve>& curves);

}  // namespace oslash
