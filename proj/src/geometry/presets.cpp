#include "bergman/geometry/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman::geometry {
namespace {

RadialProfile log_profile(double d) {
  return {[d](double u) { return d * std::log1p(u); }, [d](double u) { return d / (1.0 + u); },
          [d](double u) { return -d / ((1.0 + u) * (1.0 + u)); }};
}

ManifoldChart projective(std::string name, int degree, RadialProfile profile) {
  ManifoldChart chart;
  chart.name = std::move(name);
  chart.weight = radial_weight(profile);
  // Every projective preset here is invariant under z -> 1/z once the
  // trivialisation is changed by w^d, so the far chart carries the same profile.
  chart.far_weight = radial_weight(std::move(profile));
  chart.metric = BaseMetric::fubini_study();
  chart.degree = degree;
  chart.kind = ChartKind::projective_line;
  return chart;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ManifoldChart fubini_study(int d) {
  return projective("fubini-study(" + std::to_string(d) + ")", d, log_profile(d));
}

ManifoldChart anti_fubini_study(int d) {
  const int degree = -std::abs(d);
  return projective("anti-fubini-study(" + std::to_string(d) + ")", degree, log_profile(degree));
}

ManifoldChart perturbed(int d, double s) {
  RadialProfile p{
      [d, s](double u) { return d * std::log1p(u) + s * u / ((1.0 + u) * (1.0 + u)); },
      [d, s](double u) {
        const double v = 1.0 + u;
        return d / v + s * (1.0 - u) / (v * v * v);
      },
      [d, s](double u) {
        const double v = 1.0 + u;
        return -d / (v * v) + s * (2.0 * u - 4.0) / (v * v * v * v);
      }};
  std::ostringstream name;
  name << "perturbed(" << d << ", " << s << ")";
  return projective(name.str(), d, p);
}

double perturbed_curvature(int d, double s, double t) {
  return d + s * (1.0 - 6.0 * t + 6.0 * t * t);
}

ManifoldChart gaussian(std::vector<double> lambda) {
  if (lambda.empty()) throw DomainError("gaussian preset needs at least one lambda");
  const int n = static_cast<int>(lambda.size());
  auto eval = [lambda](Point z) {
    double s = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * std::norm(z[i]);
    return s;
  };
  auto hess = [lambda](Point) {
    return HermitianMatrix::diagonal(Eigen::Map<const Eigen::VectorXd>(
        lambda.data(), static_cast<Eigen::Index>(lambda.size())));
  };
  auto jet = [lambda, n](Point z) {
    RealJet j;
    j.value = 0.0;
    j.grad = Eigen::VectorXd::Zero(2 * n);
    j.hess = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      j.value += lambda[i] * std::norm(z[i]);
      j.grad[2 * i] = 2.0 * lambda[i] * z[i].real();
      j.grad[2 * i + 1] = 2.0 * lambda[i] * z[i].imag();
      j.hess(2 * i, 2 * i) = j.hess(2 * i + 1, 2 * i + 1) = 2.0 * lambda[i];
    }
    return j;
  };
  ManifoldChart chart;
  std::ostringstream name;
  name << "gaussian(";
  for (int i = 0; i < n; ++i) name << (i ? ", " : "") << lambda[i];
  name << ")";
  chart.name = name.str();
  chart.weight = Weight(n, eval, hess, jet);
  chart.metric = BaseMetric::euclidean(n);
  chart.kind = ChartKind::plane;
  return chart;
}

ManifoldChart quartic(double lambda, double c) {
  ManifoldChart chart;
  std::ostringstream name;
  name << "quartic(" << lambda << ", " << c << ")";
  chart.name = name.str();
  chart.weight = radial_weight({[lambda, c](double u) { return lambda * u + c * u * u; },
                                [lambda, c](double u) { return lambda + 2.0 * c * u; },
                                [c](double) { return 2.0 * c; }});
  chart.metric = BaseMetric::euclidean(1);
  chart.kind = ChartKind::plane;
  return chart;
}

ManifoldChart cubic(double lambda, double c) {
  auto eval = [lambda, c](Point z) {
    const double x = z[0].real(), y = z[0].imag();
    return lambda * (x * x + y * y) + c * x * (x * x + y * y);
  };
  auto jet = [lambda, c](Point z) {
    const double x = z[0].real(), y = z[0].imag();
    RealJet j;
    j.value = lambda * (x * x + y * y) + c * x * (x * x + y * y);
    j.grad = Eigen::Vector2d(2.0 * lambda * x + c * (3.0 * x * x + y * y),
                             2.0 * lambda * y + 2.0 * c * x * y);
    j.hess.resize(2, 2);
    j.hess(0, 0) = 2.0 * lambda + 6.0 * c * x;
    j.hess(1, 1) = 2.0 * lambda + 2.0 * c * x;
    j.hess(0, 1) = j.hess(1, 0) = 2.0 * c * y;
    return j;
  };
  ManifoldChart chart;
  std::ostringstream name;
  name << "cubic(" << lambda << ", " << c << ")";
  chart.name = name.str();
  chart.weight = Weight(1, eval, {}, jet);
  chart.metric = BaseMetric::euclidean(1);
  chart.kind = ChartKind::plane;
  return chart;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fubini-study", "anti-fubini-study", "perturbed",
                                              "gaussian",     "quartic",           "cubic"};
  return names;
}

bool is_known_preset(std::string_view name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ManifoldChart make_chart(const Preset& p) {
  if (p.name == "fubini-study") return fubini_study(p.d);
  if (p.name == "anti-fubini-study") return anti_fubini_study(p.d);
  if (p.name == "perturbed") return perturbed(p.d, p.s);
  if (p.name == "gaussian") return gaussian(p.lambda);
  if (p.name == "quartic") {
    return quartic(p.lambda.empty() ? 1.0 : p.lambda.front(), p.c);
  }
  if (p.name == "cubic") return cubic(p.lambda.empty() ? 1.0 : p.lambda.front(), p.c);
  throw DomainError("unknown weight preset '" + p.name + "'");
}

Preset parse_preset(std::string_view text) {
  Preset p;
  const auto open = text.find('(');
  p.name = trim(text.substr(0, open));
  if (!is_known_preset(p.name)) throw ParseError("unknown weight preset '" + p.name + "'");
  std::vector<double> args;
  if (open != std::string_view::npos) {
    const auto close = text.rfind(')');
    if (close == std::string_view::npos || close < open) {
      throw ParseError("unbalanced parentheses in preset '" + std::string(text) + "'");
    }
    std::string inner(text.substr(open + 1, close - open - 1));
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      if (t.empty()) continue;
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (end == t.c_str() || *end != '\0') {
        throw ParseError("preset argument '" + t + "' is not a number");
      }
      args.push_back(v);
    }
  }
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw ParseError("preset '" + p.name + "' takes " + std::to_string(lo) + ".." +
                       std::to_string(hi) + " arguments");
    }
  };
  if (p.name == "fubini-study" || p.name == "anti-fubini-study") {
    need(0, 1);
    if (!args.empty()) p.d = static_cast<int>(std::lround(args[0]));
    if (p.name == "anti-fubini-study" && args.empty()) p.d = -1;
  } else if (p.name == "perturbed") {
    need(2, 2);
    p.d = static_cast<int>(std::lround(args[0]));
    p.s = args[1];
  } else if (p.name == "gaussian") {
    need(1, 3);
    p.lambda = args;
  } else {
    need(2, 2);
    p.lambda = {args[0]};
    p.c = args[1];
  }
  return p;
}

}  // namespace bergman::geometry
