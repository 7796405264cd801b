#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bergman/geometry/presets.hpp"

namespace bergman::cli {

enum class Command { model, manifold, scaling, spectral, report_all };

std::string_view command_name(Command c);

/// Check thresholds. Every value must be positive.
struct Tolerances {
  double model = 1e-4;       // Galerkin vs closed form when q matches the signature
  double model_zero = 1e-8;  // Galerkin value when it does not
  double kernel = 1e-6;      // relative, symmetric charts against dim / pi
  double trace = 1e-6;       // relative, integral of B against dim
  double sandwich = 1e-9;    // S <= B <= sum S_I
  double deviation = 1e-9;   // relative, scaled weight against its closed form
  double residual = 1e-12;   // operator identities
  double peak = 1e-14;       // relative, |alpha_k(0)|^2 against k^n c^2
  double pairing = 1e-8;     // exhaustion pairing against the energy
};

struct RunConfig {
  Command command = Command::model;
  std::optional<geometry::Preset> preset;
  std::vector<double> lambda;
  std::vector<int> k_list;
  int q = 0;
  int degree = 16;  // Galerkin D
  double nu = 0.0;
  std::vector<double> nu_sweep;
  int radial = 64;
  int angular = 32;
  std::string output = "bergman-out";
  Tolerances tolerances;
  /// Sub-runs of report-all, in execution order.
  std::vector<RunConfig> parts;

  /// Effective settings, defaults included.
  nlohmann::ordered_json echo() const;
};

/// ParseError names the offending field path; ValidationError reports
/// semantic problems of an otherwise well-formed document.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace bergman::cli
