#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bergman/geometry/weight.hpp"

namespace bergman::geometry {

/// Named weight family with its parameters, as written in run configurations.
struct Preset {
  std::string name;
  int d = 1;
  double s = 0.0;
  std::vector<double> lambda;
  double c = 0.0;
};

/// d log(1 + |z|^2) on the projective line, bundle degree d.
ManifoldChart fubini_study(int d);
/// -|d| log(1 + |z|^2), bundle degree -|d|.
ManifoldChart anti_fubini_study(int d);
/// d log(1+|z|^2) + s t(1-t) with t = |z|^2/(1+|z|^2). Curvature relative to
/// the round metric is d + s(1 - 6t + 6t^2).
ManifoldChart perturbed(int d, double s);
/// sum lambda_i |z_i|^2 on C^n.
ManifoldChart gaussian(std::vector<double> lambda);
/// lambda |z|^2 + c |z|^4 on C.
ManifoldChart quartic(double lambda, double c);
/// lambda |z|^2 + c Re(z^2 zbar) on C.
ManifoldChart cubic(double lambda, double c);

/// Curvature of the perturbed family relative to the round metric, as a
/// function of t = |z|^2/(1+|z|^2).
double perturbed_curvature(int d, double s, double t);

bool is_known_preset(std::string_view name);
const std::vector<std::string>& preset_names();
ManifoldChart make_chart(const Preset& preset);

/// Parses "name(arg, ...)" such as "perturbed(1, -2)" or "gaussian(1, -1)".
Preset parse_preset(std::string_view text);

}  // namespace bergman::geometry
