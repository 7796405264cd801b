#include <cmath>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/geometry/presets.hpp"
#include "bergman/model/polynomial.hpp"
#include "bergman/scaling/scaling.hpp"
#include "doctest.h"

using namespace bergman;
using scaling::ScalingContext;

namespace {

ScalingContext quartic_ctx(int k) { return {geometry::quartic(1.0, 1.0).weight, k}; }

double quartic_oracle(int k) { return std::pow(std::log(double(k)), 4) / k; }

}  // namespace

TEST_CASE("scaling radius") {
  CHECK(scaling::scaling_radius(100) == doctest::Approx(std::log(100.0) / 10.0));
  CHECK(scaling::scaling_radius(2) > 0.0);
  CHECK_THROWS_AS(scaling::scaling_radius(1), DomainError);
  double prev = 0.0;
  for (int k = 3; k < 2000; ++k) {
    const auto ctx = quartic_ctx(k);
    CHECK(ctx.scaled_radius() == doctest::Approx(std::sqrt(double(k)) * ctx.radius()));
    CHECK(ctx.scaled_radius() > prev);
    prev = ctx.scaled_radius();
  }
}

TEST_CASE("scaled weight") {
  const ScalingContext g(geometry::gaussian({1.5}).weight, 50);
  CHECK(scaling::scaled_weight(g, {1.2, -0.7}) == doctest::Approx(1.5 * 1.93).epsilon(1e-14));
  CHECK(scaling::scaled_weight(g, 0.0) == 0.0);
  CHECK(scaling::scaled_weight(quartic_ctx(100), 1.0) == doctest::Approx(1.01).epsilon(1e-14));
  CHECK_THROWS_AS(scaling::scaled_weight(quartic_ctx(100), 4.7), DomainError);
  CHECK_NOTHROW(scaling::scaled_weight(quartic_ctx(100), 4.6));
}

TEST_CASE("model part of the weight") {
  const auto q = quartic_ctx(10);
  CHECK(q.model_hessian() == doctest::Approx(1.0));
  CHECK(std::abs(q.model_pluriharmonic()) < 1e-15);
  const ScalingContext c(geometry::cubic(0.5, 2.0).weight, 10);
  CHECK(c.model_hessian() == doctest::Approx(0.5));
  CHECK(c.model_weight({1.0, 2.0}) == doctest::Approx(2.5));
  const geometry::Weight shifted(1, [](geometry::Point z) { return 1.0 + std::norm(z[0]); });
  CHECK_THROWS_AS(ScalingContext(shifted, 10), DomainError);
  CHECK_THROWS_AS(ScalingContext(geometry::gaussian({1.0, 1.0}).weight, 10), DomainError);
}

TEST_CASE("quadratic weights have zero deviation") {
  for (double lambda : {1.0, -0.75, 3.1}) {
    for (int k : {2, 17, 1000, 123457}) {
      const ScalingContext ctx(geometry::gaussian({lambda}).weight, k);
      for (int order = 0; order <= 2; ++order) CHECK(scaling::weight_deviation(ctx, order) == 0.0);
    }
  }
  CHECK_THROWS_AS(scaling::weight_deviation(quartic_ctx(10), 3), DomainError);
}

TEST_CASE("quartic deviation closed forms") {
  for (int k : {100, 10000, 1000000}) {
    const auto ctx = quartic_ctx(k);
    const double l = std::log(double(k));
    CHECK(scaling::weight_deviation(ctx, 0) == doctest::Approx(quartic_oracle(k)).epsilon(1e-9));
    CHECK(scaling::weight_deviation(ctx, 1) == doctest::Approx(4 * l * l * l / k).epsilon(1e-7));
    CHECK(scaling::weight_deviation(ctx, 2) == doctest::Approx(12 * l * l / k).epsilon(1e-7));
  }
  CHECK(scaling::weight_deviation(quartic_ctx(1000000), 0) == doctest::Approx(0.03632).epsilon(1e-3));
}

TEST_CASE("quartic deviation rises then falls") {
  std::vector<double> dev;
  for (int k = 3; k <= 200; ++k) dev.push_back(scaling::weight_deviation(quartic_ctx(k), 0));
  const auto peak = std::max_element(dev.begin(), dev.end()) - dev.begin() + 3;
  CHECK(peak >= 54);
  CHECK(peak <= 56);
  for (std::size_t i = 1; i < dev.size(); ++i) {
    const int k = int(i) + 3;
    if (k <= peak) CHECK(dev[i] > dev[i - 1]);
    else CHECK(dev[i] < dev[i - 1]);
  }
}

TEST_CASE("cubic deviation scales like (ln k)^3 / sqrt k") {
  std::vector<double> ratio;
  for (int k : {100, 1000, 10000}) {
    const ScalingContext ctx(geometry::cubic(1.0, 0.7).weight, k);
    const double l = std::log(double(k));
    ratio.push_back(scaling::weight_deviation(ctx, 0) / (l * l * l / std::sqrt(double(k))));
  }
  for (double r : ratio) CHECK(r == doctest::Approx(ratio.front()).epsilon(0.05));
  CHECK(ratio.front() == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("norm localization") {
  const scaling::Section one = [](scaling::cplx) { return scaling::cplx(1.0); };
  const scaling::Section poly = [](scaling::cplx w) { return 1.0 + 3.0 * w * w; };
  for (int k : {4, 64, 900}) {
    const ScalingContext g(geometry::gaussian({2.0}).weight, k);
    CHECK(scaling::norm_localization_ratio(one, g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scaling::norm_localization_ratio(poly, g) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double r16 = scaling::norm_localization_ratio(one, quartic_ctx(16));
  const double r256 = scaling::norm_localization_ratio(one, quartic_ctx(256));
  CHECK(std::abs(r256 - 1.0) < std::abs(r16 - 1.0));
  CHECK(r16 < 1.0);
  const scaling::Section zero = [](scaling::cplx) { return scaling::cplx(0.0); };
  CHECK_THROWS_AS(scaling::norm_localization_ratio(zero, quartic_ctx(16)), DegenerateSectionError);
}

TEST_CASE("scaled Laplacian examples") {
  const model::ModelWeight one({1.0});
  model::MultiIndexForm z(1, 0);
  z.set(model::MultiIndex::first(0), model::Polynomial::z(1, 0));
  CHECK(scaling::scaled_laplacian_residual(one, z, 4) <= 1e-15);
  model::MultiIndexForm zb(1, 0);
  zb.set(model::MultiIndex::first(0), model::Polynomial::zbar(1, 0));
  CHECK(scaling::scaled_laplacian_residual(one, zb, 9) <= 1e-15);
  CHECK(scaling::scaled_laplacian_residual(one, model::MultiIndexForm(1, 0), 5) == 0.0);
}

TEST_CASE("scaled Laplacian identity on random forms") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> pick_n(1, 3), pick_k(2, 400);
  const double lambdas[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 1.5, 3.0};
  std::uniform_int_distribution<int> pick_l(0, 6);
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    const int n = pick_n(rng);
    std::vector<double> lambda;
    for (int i = 0; i < n; ++i) lambda.push_back(lambdas[pick_l(rng)]);
    const model::ModelWeight w(lambda);
    const int q = std::uniform_int_distribution<int>(0, n)(rng);
    model::MultiIndexForm alpha(n, q);
    for (const auto& idx : model::multi_indices(n, q)) {
      alpha.set(idx, model::random_polynomial(n, 5, 6, rng));
    }
    worst = std::max(worst, scaling::scaled_laplacian_residual(w, alpha, pick_k(rng)));
  }
  CHECK(worst <= 1e-12);
}
