#include "bergman/manifold/report.hpp"

#include <cmath>
#include <future>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/geometry/signature.hpp"

namespace bergman::manifold {
namespace {

struct PerK {
  std::vector<KernelRow> rows;
  IntegratedRow integrated;
};

PerK run_k(const ManifoldChart& chart, int k, int q, const std::vector<ChartPoint>& points,
           const std::vector<double>& densities, const std::vector<char>& degenerate,
           const geometry::DensityIntegral& integral) {
  const QuadratureGrid grid = default_grid(chart, k);
  const SectionSpace space = build_space(chart, k, q, grid);
  PerK out;
  IntegratedRow& ir = out.integrated;
  ir.k = k;
  ir.q = q;
  ir.dim = space.dimension();
  ir.density_integral = integral.value;
  ir.skipped_nodes = integral.skipped;
  ir.rhs_integral = k * integral.value;
  ir.gap = ir.dim - ir.rhs_integral;
  ir.gap_over_k = ir.gap / k;
  ir.constant = k > 1 ? ir.gap / (std::sqrt(double(k)) * std::log(double(k))) : 0.0;
  ir.trace_integral = bergman_integral(space, trace_grid(grid));
  for (std::size_t i = 0; i < points.size(); ++i) {
    KernelRow row;
    row.k = k;
    row.q = q;
    row.point = points[i];
    const SandwichMargins m = sandwich_check(space, points[i]);
    row.b = m.b;
    const ExtremalValue e = extremal_at(space, points[i]);
    row.s = e.s;
    row.s_components = e.components;
    row.lower_margin = m.lower;
    row.upper_margin = m.upper;
    row.density = densities[i];
    row.degenerate = degenerate[i] != 0;
    row.ratio = row.density > 0.0 ? row.b / (k * row.density) : row.b / k;
    row.dim = ir.dim;
    row.rhs_integral = ir.rhs_integral;
    row.excess = std::max(0.0, row.b / k - row.density);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

double density_at(const ManifoldChart& chart, const ChartPoint& x, int q, bool* degenerate) {
  ManifoldChart local = chart;
  if (x.far) local.weight = chart.far_weight;
  const cplx p[1] = {x.coord};
  const auto sig = geometry::curvature_signature(local, p);
  if (degenerate) *degenerate = sig.degenerate;
  if (sig.degenerate) return 0.0;
  return geometry::morse_density(sig, q);
}

QuadratureGrid density_grid(const ManifoldChart& chart, int radial_per_interval) {
  const std::vector<double> roots = geometry::curvature_sign_changes(chart);
  return numerics::projective_quadrature(radial_per_interval, 8, roots);
}

QuadratureGrid trace_grid(const QuadratureGrid& base) {
  const auto& plane = std::get<numerics::PlaneDomain>(base.domain);
  return numerics::plane_quadrature(base.radial_count + 7, base.angular_count + 5, plane.decay);
}

KernelReport weak_morse_report(const ManifoldChart& chart, std::span<const int> k_list, int q,
                               const std::vector<ChartPoint>& points, int jobs) {
  for (std::size_t i = 1; i < k_list.size(); ++i) {
    if (k_list[i] <= k_list[i - 1]) throw DomainError("k_list must be strictly increasing");
  }
  KernelReport report;
  report.chart_name = chart.name;
  report.q = q;
  std::vector<double> densities(points.size());
  std::vector<char> degenerate(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool deg = false;
    densities[i] = density_at(chart, points[i], q, &deg);
    degenerate[i] = deg;
  }
  const geometry::DensityIntegral integral =
      geometry::integrate_density(chart, q, density_grid(chart));

  std::vector<PerK> results(k_list.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < k_list.size(); start += workers) {
    std::vector<std::future<PerK>> batch;
    const std::size_t stop = std::min(k_list.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 run_k, std::cref(chart), k_list[i], q, std::cref(points),
                                 std::cref(densities), std::cref(degenerate), std::cref(integral)));
    }
    for (std::size_t i = start; i < stop; ++i) results[i] = batch[i - start].get();
  }
  for (auto& r : results) {
    for (auto& row : r.rows) report.rows.push_back(std::move(row));
    report.integrated.push_back(r.integrated);
  }
  return report;
}

}  // namespace bergman::manifold
