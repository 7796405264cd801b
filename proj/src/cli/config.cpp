#include "bergman/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman::cli {

namespace {

using json = nlohmann::json;

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 2e9) return static_cast<int>(v);
    }
    schema(path, "expected an integer");
  }
  const auto v = j.get<long long>();
  if (v < -2000000000LL || v > 2000000000LL) schema(path, "integer out of range");
  return static_cast<int>(v);
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

template <class T, class Read>
std::vector<T> list(const json& j, const std::string& path, Read read) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::optional<Command> command_from(std::string_view s) {
  if (s == "model") return Command::model;
  if (s == "manifold") return Command::manifold;
  if (s == "scaling") return Command::scaling;
  if (s == "spectral") return Command::spectral;
  if (s == "report-all") return Command::report_all;
  return std::nullopt;
}

const std::set<std::string>& allowed_keys(Command c) {
  static const std::set<std::string> model{"command", "lambda", "q",   "D",
                                           "nu",      "output", "tolerances"};
  static const std::set<std::string> spectral{"command", "lambda", "q",    "D",      "nu",
                                              "nu_sweep", "k_list", "grid", "output", "tolerances"};
  static const std::set<std::string> manifold{"command", "preset", "d",      "s",         "k_list",
                                              "q",       "output", "tolerances"};
  static const std::set<std::string> scaling{"command", "preset", "lambda", "c",         "k_list",
                                             "grid",    "output", "tolerances"};
  static const std::set<std::string> all{"command",  "model",   "manifold", "scaling",
                                         "spectral", "output",  "tolerances"};
  switch (c) {
    case Command::model: return model;
    case Command::spectral: return spectral;
    case Command::manifold: return manifold;
    case Command::scaling: return scaling;
    case Command::report_all: return all;
  }
  return all;
}

void read_tolerances(const json& j, const std::string& path, Tolerances& t) {
  if (!j.is_object()) schema(path, "expected an object");
  const std::pair<const char*, double Tolerances::*> fields[] = {
      {"model", &Tolerances::model},       {"model_zero", &Tolerances::model_zero},
      {"kernel", &Tolerances::kernel},     {"trace", &Tolerances::trace},
      {"sandwich", &Tolerances::sandwich}, {"deviation", &Tolerances::deviation},
      {"residual", &Tolerances::residual}, {"peak", &Tolerances::peak},
      {"pairing", &Tolerances::pairing}};
  for (const auto& [key, value] : j.items()) {
    const std::string at = join(path, key);
    const auto* f = std::find_if(std::begin(fields), std::end(fields),
                                 [&](const auto& e) { return key == e.first; });
    if (f == std::end(fields)) schema(at, "unknown tolerance");
    const double v = number(value, at);
    if (!(v > 0.0)) invalid(at, "tolerances must be positive");
    t.*(f->second) = v;
  }
}

geometry::Preset read_preset(const json& j, Command command) {
  const std::string name = text(j["preset"], "preset");
  geometry::Preset p;
  if (name.find('(') != std::string::npos) {
    try {
      p = geometry::parse_preset(name);
    } catch (const ParseError& e) {
      schema("preset", e.what());
    }
    for (const char* key : {"d", "s", "lambda", "c"}) {
      if (j.contains(key)) schema(key, "parameters are already given in the preset string");
    }
    return p;
  }
  if (!geometry::is_known_preset(name)) schema("preset", "unknown weight preset '" + name + "'");
  p.name = name;
  if (name == "anti-fubini-study") p.d = -1;
  if (name == "quartic" || name == "cubic") {
    p.lambda = {1.0};
    p.c = 1.0;
  }
  if (j.contains("d")) p.d = integer(j["d"], "d");
  if (j.contains("s")) p.s = number(j["s"], "s");
  if (j.contains("c")) p.c = number(j["c"], "c");
  if (command == Command::scaling && j.contains("lambda")) {
    p.lambda = list<double>(j["lambda"], "lambda", number);
  }
  if (name == "gaussian" && p.lambda.empty()) schema("lambda", "gaussian preset needs lambda");
  return p;
}

bool is_projective(const std::string& name) {
  return name == "fubini-study" || name == "anti-fubini-study" || name == "perturbed";
}

int bundle_degree(const geometry::Preset& p) {
  return p.name == "anti-fubini-study" ? -std::abs(p.d) : p.d;
}

void check_increasing(const std::vector<int>& k, int least, const std::string& path) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < least) invalid(path, "every k must be at least " + std::to_string(least));
    if (i > 0 && k[i] <= k[i - 1]) invalid(path, "k_list must be strictly increasing");
  }
}

void check_lambda(const std::vector<double>& lambda) {
  if (lambda.empty() || lambda.size() > 3) invalid("lambda", "needs 1 to 3 eigenvalues");
  for (double l : lambda) {
    if (l == 0.0) invalid("lambda", "eigenvalues must be nonzero");
  }
}

RunConfig parse_command(const json& j, Command command, const Tolerances& inherited);

RunConfig parse_part(const json& root, const char* key, Command command, json fallback,
                     const Tolerances& inherited) {
  json doc = root.contains(key) ? root[key] : fallback;
  if (!doc.is_object()) schema(key, "expected an object");
  if (doc.contains("command")) schema(join(key, "command"), "is implied by the section name");
  doc["command"] = std::string(command_name(command));
  try {
    return parse_command(doc, command, inherited);
  } catch (const ParseError& e) {
    throw ParseError(std::string(key) + "." + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(key) + "." + e.what());
  }
}

RunConfig parse_command(const json& j, Command command, const Tolerances& inherited) {
  const auto& keys = allowed_keys(command);
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) {
      schema(key, "field is not used by the " + std::string(command_name(command)) + " command");
    }
  }

  RunConfig c;
  c.command = command;
  c.tolerances = inherited;
  if (j.contains("tolerances")) read_tolerances(j["tolerances"], "tolerances", c.tolerances);
  if (j.contains("output")) c.output = text(j["output"], "output");
  if (j.contains("k_list")) c.k_list = list<int>(j["k_list"], "k_list", integer);
  if (j.contains("q")) c.q = integer(j["q"], "q");
  if (j.contains("D")) c.degree = integer(j["D"], "D");
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) schema("grid", "expected an object");
    for (const auto& [key, value] : g.items()) {
      if (key == "radial") {
        c.radial = integer(value, "grid.radial");
      } else if (key == "angular") {
        c.angular = integer(value, "grid.angular");
      } else {
        schema(join("grid", key), "unknown grid field");
      }
    }
    if (c.radial < 4 || c.angular < 4) invalid("grid", "node counts must be at least 4");
  }

  switch (command) {
    case Command::model:
    case Command::spectral: {
      if (!j.contains("lambda")) schema("lambda", "missing");
      c.lambda = list<double>(j["lambda"], "lambda", number);
      check_lambda(c.lambda);
      const int n = static_cast<int>(c.lambda.size());
      if (!j.contains("q")) {
        c.q = static_cast<int>(std::count_if(c.lambda.begin(), c.lambda.end(),
                                             [](double l) { return l < 0.0; }));
      }
      if (c.q < 0 || c.q > n) invalid("q", "must lie in [0, n]");
      if (c.degree < 2 || c.degree > 32) invalid("D", "must lie in [2, 32]");
      double smallest = std::abs(c.lambda.front());
      for (double l : c.lambda) smallest = std::min(smallest, std::abs(l));
      c.nu = j.contains("nu") ? number(j["nu"], "nu") : 0.5 * smallest;
      if (c.nu < 0.0) invalid("nu", "must be nonnegative");
      if (command == Command::model && c.nu >= smallest) {
        invalid("nu", "must lie below the first excited level min|lambda_i|");
      }
      if (j.contains("nu_sweep")) {
        c.nu_sweep = list<double>(j["nu_sweep"], "nu_sweep", number);
        for (std::size_t i = 0; i < c.nu_sweep.size(); ++i) {
          if (c.nu_sweep[i] < 0.0) invalid("nu_sweep", "values must be nonnegative");
          if (i > 0 && c.nu_sweep[i] <= c.nu_sweep[i - 1]) {
            invalid("nu_sweep", "must be strictly increasing");
          }
        }
      }
      if (!c.k_list.empty()) {
        if (c.k_list.size() < 3) invalid("k_list", "the sequence check needs at least three k");
        check_increasing(c.k_list, 3, "k_list");
        if (n > 2) invalid("k_list", "the sequence check is available for n <= 2");
      }
      break;
    }
    case Command::manifold: {
      c.preset = j.contains("preset") ? read_preset(j, command) : geometry::parse_preset("fubini-study");
      if (!is_projective(c.preset->name)) {
        invalid("preset", "manifold runs need a projective-line preset");
      }
      if (!j.contains("k_list")) c.k_list = {4, 8, 16, 32};
      if (c.k_list.empty()) invalid("k_list", "must not be empty");
      check_increasing(c.k_list, 1, "k_list");
      if (c.q != 0 && c.q != 1) invalid("q", "must be 0 or 1 on the projective line");
      const int d = bundle_degree(*c.preset);
      if (c.q == 0 && d < 0) invalid("q", "kd < 0 leaves no sections for q = 0");
      break;
    }
    case Command::scaling: {
      c.preset = j.contains("preset") ? read_preset(j, command) : geometry::parse_preset("quartic(1, 1)");
      if (is_projective(c.preset->name)) invalid("preset", "scaling runs need a plane preset");
      if (c.preset->name == "gaussian" && c.preset->lambda.size() != 1) {
        invalid("preset", "scaling runs need a weight on C");
      }
      if (!j.contains("k_list")) c.k_list = {100, 10000, 1000000};
      if (c.k_list.empty()) invalid("k_list", "must not be empty");
      check_increasing(c.k_list, 2, "k_list");
      break;
    }
    case Command::report_all: {
      c.parts.push_back(parse_part(j, "model", Command::model, {{"lambda", {-1, 2}}}, c.tolerances));
      c.parts.push_back(parse_part(j, "manifold", Command::manifold,
                                   {{"preset", "perturbed(1, -2)"}, {"k_list", {16, 32, 64}}},
                                   c.tolerances));
      c.parts.push_back(parse_part(j, "scaling", Command::scaling, json::object(), c.tolerances));
      c.parts.push_back(parse_part(j, "spectral", Command::spectral,
                                   {{"lambda", {-1}}, {"k_list", {64, 256, 1024}}}, c.tolerances));
      break;
    }
  }
  return c;
}

nlohmann::ordered_json tolerance_echo(const Tolerances& t) {
  return {{"model", t.model},         {"model_zero", t.model_zero}, {"kernel", t.kernel},
          {"trace", t.trace},         {"sandwich", t.sandwich},     {"deviation", t.deviation},
          {"residual", t.residual},   {"peak", t.peak},             {"pairing", t.pairing}};
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::model: return "model";
    case Command::manifold: return "manifold";
    case Command::scaling: return "scaling";
    case Command::spectral: return "spectral";
    case Command::report_all: return "report-all";
  }
  return "unknown";
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["command"] = command_name(command);
  if (preset) {
    j["preset"] = {{"name", preset->name},
                   {"d", preset->d},
                   {"s", preset->s},
                   {"lambda", preset->lambda},
                   {"c", preset->c}};
  }
  switch (command) {
    case Command::model:
    case Command::spectral:
      j["lambda"] = lambda;
      j["q"] = q;
      j["D"] = degree;
      j["nu"] = nu;
      if (command == Command::spectral) {
        j["nu_sweep"] = nu_sweep;
        j["k_list"] = k_list;
        j["grid"] = {{"radial", radial}, {"angular", angular}};
      }
      break;
    case Command::manifold:
      j["k_list"] = k_list;
      j["q"] = q;
      break;
    case Command::scaling:
      j["k_list"] = k_list;
      j["grid"] = {{"radial", radial}, {"angular", angular}};
      break;
    case Command::report_all:
      for (const RunConfig& p : parts) j[std::string(command_name(p.command))] = p.echo();
      break;
  }
  j["output"] = output;
  j["tolerances"] = tolerance_echo(tolerances);
  return j;
}

RunConfig parse_config(std::string_view text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) schema("document", "expected a JSON object");
  if (!doc.contains("command")) schema("command", "missing");
  const std::string name = text(doc["command"], "command");
  const auto command = command_from(name);
  if (!command) schema("command", "unknown command '" + name + "'");
  return parse_command(doc, *command, Tolerances{});
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bergman::cli
