#pragma once

#include <span>
#include <string>
#include <vector>

#include "bergman/geometry/weight.hpp"

namespace bergman::spectral {

struct StrongRow {
  int k = 0;
  int q = 0;
  int dim0 = 0;                 // dim H^0(L^k)
  int dim1 = 0;                 // dim H^1(L^k), through the dual space
  int lhs = 0;                  // sum_{j <= q} (-1)^{q-j} dim H^j
  double rhs = 0.0;             // k sum_{j <= q} (-1)^{q-j} integral of the density over X(j)
  double margin = 0.0;          // lhs - rhs
  double margin_over_k = 0.0;
  int euler_margin = 0;         // (dim0 - dim1) - (kd + 1), reported for q = 1
};

struct StrongMorseReport {
  std::string chart_name;
  int q = 0;
  int degree = 0;
  double integral0 = 0.0;  // integral of the density over X(0)
  double integral1 = 0.0;  // over X(1)
  std::vector<StrongRow> rows;
};

/// Alternating dimension sums against the signed curvature integrals on the
/// projective line. Spaces for different k run on `jobs` threads.
StrongMorseReport strong_morse_report(const geometry::ManifoldChart& chart,
                                      std::span<const int> k_list, int q, int jobs = 1);

}  // namespace bergman::spectral
