#pragma once

#include <span>
#include <string>
#include <vector>

#include "bergman/manifold/section_space.hpp"

namespace bergman::manifold {

struct KernelRow {
  int k = 0;
  int q = 0;
  ChartPoint point;
  double b = 0.0;
  double s = 0.0;
  std::vector<double> s_components;
  double density = 0.0;
  bool degenerate = false;
  double ratio = 0.0;  // B / (k density), or B / k where the density vanishes
  int dim = 0;
  double rhs_integral = 0.0;
  double excess = 0.0;  // (B / k - density)^+
  double lower_margin = 0.0;
  double upper_margin = 0.0;
};

struct IntegratedRow {
  int k = 0;
  int q = 0;
  int dim = 0;
  double density_integral = 0.0;  // integral of the Morse density over X(q)
  double rhs_integral = 0.0;      // k times density_integral
  double gap = 0.0;               // dim - rhs_integral
  double gap_over_k = 0.0;
  double constant = 0.0;          // gap / (sqrt(k) ln k)
  double trace_integral = 0.0;    // integral of B, should equal dim
  std::size_t skipped_nodes = 0;
};

struct KernelReport {
  std::string chart_name;
  int q = 0;
  std::vector<KernelRow> rows;
  std::vector<IntegratedRow> integrated;
};

/// Morse density at a point of the projective line; `degenerate` is set when
/// the curvature vanishes there (density reported as 0).
double density_at(const ManifoldChart& chart, const ChartPoint& x, int q, bool* degenerate = nullptr);

/// Projective grid split at the curvature zeros of a radial chart.
QuadratureGrid density_grid(const ManifoldChart& chart, int radial_per_interval = 48);

/// Independent grid for the trace check of a space built on `base`.
QuadratureGrid trace_grid(const QuadratureGrid& base);

/// Pointwise and integrated rows for every k. Spaces for different k are built
/// on `jobs` worker threads; row order is fixed by (k, point index).
KernelReport weak_morse_report(const ManifoldChart& chart, std::span<const int> k_list, int q,
                               const std::vector<ChartPoint>& points, int jobs = 1);

}  // namespace bergman::manifold
