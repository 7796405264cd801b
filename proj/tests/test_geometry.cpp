#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "bergman/errors.hpp"
#include "bergman/geometry/presets.hpp"
#include "bergman/geometry/signature.hpp"

using namespace bergman;
using namespace bergman::geometry;
using std::numbers::pi;

namespace {

ManifoldChart fd_chart(int n, Weight::Eval eval) {
  ManifoldChart c;
  c.name = "fd";
  c.weight = Weight(n, std::move(eval));
  c.metric = BaseMetric::euclidean(n);
  return c;
}

// Integral over t in [0,1] of the positive (sign = +1) or negative (sign = -1)
// part of d + s(1 - 6t + 6t^2), from the roots of the quadratic.
double perturbed_part(int d, double s, int sign) {
  auto f = [&](double t) { return d + s * (1.0 - 6.0 * t + 6.0 * t * t); };
  auto F = [&](double t) { return d * t + s * (t - 3.0 * t * t + 2.0 * t * t * t); };
  std::vector<double> cuts{0.0};
  if (s != 0.0) {
    const double disc = 36.0 * s * s - 24.0 * s * (d + s);
    if (disc > 0.0) {
      for (double r : {(6.0 * s - std::sqrt(disc)) / (12.0 * s), (6.0 * s + std::sqrt(disc)) / (12.0 * s)}) {
        if (r > 0.0 && r < 1.0) cuts.push_back(r);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    if (sign * f(mid) > 0.0) total += sign * (F(cuts[i + 1]) - F(cuts[i]));
  }
  return total;
}

numerics::QuadratureGrid sphere_grid(int radial = 400) {
  return numerics::plane_quadrature(radial, 8, numerics::ProjectiveDecay{2.0});
}

}  // namespace

TEST_CASE("curvature signature examples") {
  const std::complex<double> o1[1] = {0.0};
  const auto s1 = curvature_signature(gaussian({2.0}), o1);
  REQUIRE(s1.eigenvalues.size() == 1);
  CHECK(s1.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(s1.index == 0);
  CHECK_FALSE(s1.degenerate);

  const std::complex<double> o2[2] = {0.0, 0.0};
  const auto s2 = curvature_signature(gaussian({1.0, -3.0}), o2);
  CHECK(s2.eigenvalues[0] == doctest::Approx(-3.0));
  CHECK(s2.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(s2.index == 1);

  const auto mixed = fd_chart(2, [](Point z) { return std::norm(z[0]) * std::norm(z[1]); });
  CHECK(mixed.weight.mode() == DerivativeMode::finite_difference);
  const auto s3 = curvature_signature(mixed, o2);
  CHECK(s3.degenerate);
  CHECK_THROWS_AS(curvature_signature(gaussian({2.0}), o1, 0.0), DomainError);
}

TEST_CASE("finite differences agree with analytic Hessians") {
  const auto chart = perturbed(1, -2.0);
  const auto fd = fd_chart(1, [w = chart.weight](Point z) { return w(z); });
  for (double r : {0.0, 0.3, 0.7, 1.2, 2.5}) {
    const std::complex<double> z[1] = {std::polar(r, 0.4)};
    const double a = chart.weight.complex_hessian(z)(0, 0).real();
    const double f = fd.weight.complex_hessian(z)(0, 0).real();
    CHECK(std::abs(a - f) < 1e-6);
    const auto jet = chart.weight.real_jet(z);
    const auto fjet = fd.weight.fd_real_jet(z);
    CHECK((jet.grad - fjet.grad).norm() < 1e-7);
    CHECK((jet.hess - fjet.hess).norm() < 1e-5);
  }
  // Cubic preset: analytic jet against finite differences.
  const auto cub = cubic(1.0, 0.3);
  const std::complex<double> z[1] = {{0.4, -0.7}};
  CHECK((cub.weight.real_jet(z).hess - cub.weight.fd_real_jet(z).hess).norm() < 1e-5);
}

TEST_CASE("step underflow or overflow raises a numerical-derivative error") {
  const auto c = fd_chart(1, [](Point z) { return std::norm(z[0]); });
  const std::complex<double> far[1] = {1e308};
  CHECK_THROWS_AS(curvature_signature(c, far), NumericalDerivativeError);
}

TEST_CASE("pluriharmonic terms leave the signature unchanged") {
  const auto base = fd_chart(1, [](Point z) { return 2.0 * std::norm(z[0]); });
  const auto bent = fd_chart(1, [](Point z) {
    return 2.0 * std::norm(z[0]) + (z[0] * z[0] * z[0]).real() + 0.5 * std::exp(z[0]).real();
  });
  for (double r : {0.0, 0.5, 1.0}) {
    const std::complex<double> z[1] = {std::polar(r, 1.1)};
    CHECK(curvature_signature(bent, z).eigenvalues[0] ==
          doctest::Approx(curvature_signature(base, z).eigenvalues[0]).epsilon(1e-6));
  }
}

TEST_CASE("morse density") {
  const auto sig = signature_of({-1.0, 2.0, 3.0});
  CHECK(morse_density(sig, 1) == doctest::Approx(6.0 / (pi * pi * pi)));
  CHECK(morse_density(sig, 1) == doctest::Approx(0.19351).epsilon(1e-4));
  CHECK(morse_density(sig, 0) == 0.0);
  CHECK(morse_density(signature_of({2.0}), 0) == doctest::Approx(0.63662).epsilon(1e-5));
  CHECK_THROWS_AS(morse_density(signature_of({0.0, 1.0}), 0), DegeneracyError);
  for (const std::vector<double>& l : {std::vector<double>{-2.0, 0.5}, {1.0, 4.0, -0.25}, {-1.0}}) {
    const auto s = signature_of(l);
    double total = 0.0, prod = 1.0;
    for (int q = 0; q <= static_cast<int>(l.size()); ++q) {
      CHECK(morse_density(s, q) >= 0.0);
      total += morse_density(s, q);
    }
    for (double x : l) prod *= std::abs(x) / pi;
    CHECK(total == doctest::Approx(prod).epsilon(1e-15));
  }
}

TEST_CASE("integrated density on the sphere") {
  const auto grid = sphere_grid(64);
  CHECK(integrate_density(fubini_study(1), 0, grid).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate_density(fubini_study(1), 1, grid).value == 0.0);
  CHECK(integrate_density(anti_fubini_study(-1), 1, grid).value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(integrate_density(fubini_study(3), 0, grid).value == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("degree equals the signed integral across the perturbed family") {
  const auto grid = sphere_grid();
  for (auto [d, s] : {std::pair{1, -2.0}, {1, 4.0}, {1, 0.5}, {2, -5.0}, {-1, 3.0}, {1, -8.0}}) {
    const auto chart = perturbed(d, s);
    const auto i0 = integrate_density(chart, 0, grid);
    const auto i1 = integrate_density(chart, 1, grid);
    CAPTURE(d);
    CAPTURE(s);
    CHECK(std::abs(i0.value - i1.value - d) < 1e-6);
    CHECK(i0.value == doctest::Approx(perturbed_part(d, s, +1)).epsilon(1e-4));
    CHECK(i1.value == doctest::Approx(perturbed_part(d, s, -1)).epsilon(1e-4));
    // Splitting the radial rule at the curvature zeros removes the kink.
    const auto roots = curvature_sign_changes(chart);
    const auto split = numerics::projective_quadrature(24, 8, roots);
    CHECK(integrate_density(chart, 0, split).value == doctest::Approx(perturbed_part(d, s, +1)).epsilon(1e-10));
    CHECK(integrate_density(chart, 1, split).value == doctest::Approx(perturbed_part(d, s, -1)).epsilon(1e-10));
  }
}

TEST_CASE("perturbed curvature formula matches the Hessian") {
  const auto chart = perturbed(1, -2.0);
  for (double r : {0.0, 0.2, 0.9, 1.7, 4.0}) {
    const std::complex<double> z[1] = {r};
    const double t = r * r / (1.0 + r * r);
    CHECK(curvature_signature(chart, z).eigenvalues[0] ==
          doctest::Approx(perturbed_curvature(1, -2.0, t)).epsilon(1e-12));
  }
}

TEST_CASE("preset parsing") {
  const auto p = parse_preset("perturbed(1, -2)");
  CHECK(p.name == "perturbed");
  CHECK(p.d == 1);
  CHECK(p.s == -2.0);
  CHECK(parse_preset("gaussian(1, -1)").lambda == std::vector<double>{1.0, -1.0});
  CHECK(parse_preset("quartic(1, 1)").c == 1.0);
  CHECK(make_chart(parse_preset("anti-fubini-study(1)")).degree == -1);
  CHECK(make_chart(parse_preset("anti-fubini-study(-1)")).degree == -1);
  CHECK_THROWS_AS(parse_preset("hyperbolic(1)"), ParseError);
  CHECK_THROWS_AS(parse_preset("perturbed(1)"), ParseError);
  CHECK_THROWS_AS(parse_preset("perturbed(1, x)"), ParseError);
}
