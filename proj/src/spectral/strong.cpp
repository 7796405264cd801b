#include "bergman/spectral/strong.hpp"

#include <algorithm>
#include <future>

#include "bergman/errors.hpp"
#include "bergman/geometry/signature.hpp"
#include "bergman/manifold/report.hpp"
#include "bergman/manifold/section_space.hpp"

namespace bergman::spectral {

namespace {

int built_dimension(const geometry::ManifoldChart& chart, int k, int q) {
  if (manifold::expected_dimension(chart.degree, k, q) == 0) return 0;
  return manifold::build_space(chart, k, q, manifold::default_grid(chart, k)).dimension();
}

}  // namespace

StrongMorseReport strong_morse_report(const geometry::ManifoldChart& chart,
                                      std::span<const int> k_list, int q, int jobs) {
  if (chart.kind != geometry::ChartKind::projective_line) {
    throw DomainError("strong Morse report is defined on the projective line");
  }
  if (q != 0 && q != 1) throw DomainError("q must be 0 or 1 on the projective line");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1) throw DomainError("tensor power k must be at least 1");
    if (i > 0 && k_list[i] <= k_list[i - 1]) throw DomainError("k list must be increasing");
  }
  StrongMorseReport rep;
  rep.chart_name = chart.name;
  rep.q = q;
  rep.degree = chart.degree;
  const auto grid = manifold::density_grid(chart);
  rep.integral0 = geometry::integrate_density(chart, 0, grid).value;
  rep.integral1 = geometry::integrate_density(chart, 1, grid).value;

  auto row_for = [&](int k) {
    StrongRow row;
    row.k = k;
    row.q = q;
    row.dim0 = built_dimension(chart, k, 0);
    row.dim1 = built_dimension(chart, k, 1);
    if (q == 0) {
      row.lhs = row.dim0;
      row.rhs = k * rep.integral0;
    } else {
      row.lhs = row.dim1 - row.dim0;
      row.rhs = k * (rep.integral1 - rep.integral0);
      row.euler_margin = (row.dim0 - row.dim1) - (k * chart.degree + 1);
    }
    row.margin = row.lhs - row.rhs;
    row.margin_over_k = row.margin / k;
    return row;
  };

  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < k_list.size(); start += workers) {
    std::vector<std::future<StrongRow>> batch;
    const std::size_t stop = std::min(k_list.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 row_for, k_list[i]));
    }
    for (auto& f : batch) rep.rows.push_back(f.get());
  }
  return rep;
}

}  // namespace bergman::spectral
