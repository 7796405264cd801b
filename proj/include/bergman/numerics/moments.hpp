#pragma once

#include <span>

namespace bergman::numerics {

/// Exact value of the integral over C^n of prod |z_i|^(2 a_i) exp(-sum lambda_i |z_i|^2),
/// i.e. prod_i pi * a_i! / lambda_i^(a_i + 1). Throws DomainError on lambda_i <= 0.
double gaussian_moment(std::span<const int> a, std::span<const double> lambda);

/// Natural log of gaussian_moment; usable where the moment itself would overflow.
double log_gaussian_moment(std::span<const int> a, std::span<const double> lambda);

double log_factorial(int n);

}  // namespace bergman::numerics
