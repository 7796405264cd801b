#include "bergman/numerics/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bergman/errors.hpp"

namespace bergman::numerics {

double log_factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer " + std::to_string(n));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_gaussian_moment(std::span<const int> a, std::span<const double> lambda) {
  if (a.size() != lambda.size()) {
    throw DomainError("gaussian_moment: exponent and weight dimensions differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(lambda[i] > 0.0)) {
      throw DomainError("gaussian_moment: lambda_" + std::to_string(i + 1) +
                        " must be positive, got " + std::to_string(lambda[i]));
    }
    s += std::log(std::numbers::pi) + log_factorial(a[i]) - (a[i] + 1) * std::log(lambda[i]);
  }
  return s;
}

double gaussian_moment(std::span<const int> a, std::span<const double> lambda) {
  if (a.size() != lambda.size()) {
    throw DomainError("gaussian_moment: exponent and weight dimensions differ");
  }
  double m = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(lambda[i] > 0.0)) {
      throw DomainError("gaussian_moment: lambda_" + std::to_string(i + 1) +
                        " must be positive, got " + std::to_string(lambda[i]));
    }
    if (a[i] < 0) throw DomainError("gaussian_moment: negative exponent");
    double f = std::numbers::pi / lambda[i];
    for (int j = 1; j <= a[i]; ++j) f *= j / lambda[i];
    m *= f;
  }
  return m;
}

}  // namespace bergman::numerics
