#include "bergman/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "bergman/errors.hpp"
#include "bergman/geometry/presets.hpp"
#include "bergman/manifold/report.hpp"
#include "bergman/manifold/section_space.hpp"
#include "bergman/model/model.hpp"
#include "bergman/model/polynomial.hpp"
#include "bergman/scaling/scaling.hpp"
#include "bergman/spectral/galerkin.hpp"
#include "bergman/spectral/low_energy.hpp"
#include "bergman/spectral/strong.hpp"

namespace bergman::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using cplx = std::complex<double>;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Cell {
  std::string text;
  Cell(double v) : text(format_number(v)) {}
  Cell(int v) : text(std::to_string(v)) {}
  Cell(bool v) : text(v ? "true" : "false") {}
};

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& conventions,
            std::initializer_list<const char*> columns)
      : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << "# " << conventions << '\n';
    bool first = true;
    for (const char* c : columns) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << '\n';
  }

  void row(std::initializer_list<Cell> cells) {
    bool first = true;
    for (const Cell& c : cells) {
      out_ << (first ? "" : ",") << c.text;
      first = false;
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

struct Outcome {
  ojson values = ojson::object();
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  void check(std::string name, bool pass, double value, double bound) {
    checks.push_back({std::move(name), pass, value, bound});
  }
  bool passed(bool strict) const {
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    return ok && !(strict && !warnings.empty());
  }
};

void write_json(const fs::path& path, const ojson& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

ojson outcome_json(const Outcome& o, bool strict) {
  ojson j;
  j["values"] = o.values;
  ojson checks = ojson::array();
  for (const Check& c : o.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"bound", c.bound}});
  }
  j["checks"] = checks;
  j["warnings"] = o.warnings;
  j["status"] = o.passed(strict) ? "pass" : "fail";
  return j;
}

double worst_commutator(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(1, 3), lam(-12, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = nd(rng);
    std::vector<double> l(n);
    for (auto& x : l) {
      int v = 0;
      while (v == 0) v = lam(rng);
      x = v / 4.0;
    }
    const model::ModelWeight w(l);
    std::uniform_int_distribution<int> axis(0, n - 1);
    const auto p = model::random_polynomial(n, 6, 8, rng);
    const int i = axis(rng), j = axis(rng);
    worst = std::max(worst, model::commutator_residual(w, i, j, p).max_abs_coeff());
  }
  return worst;
}

double worst_scaled_laplacian(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nd(1, 3), pick_k(2, 400), pick_l(0, 6);
  const double lambdas[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 1.5, 3.0};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = nd(rng);
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
  return worst;
}

double smallest_rate(const std::vector<double>& lambda) {
  double m = std::numeric_limits<double>::infinity();
  for (double l : lambda) m = std::min(m, std::abs(l));
  return m;
}

// Galerkin value at the origin against the closed form. Shared by model and
// spectral runs.
struct OriginComparison {
  double closed = 0.0;
  double galerkin = 0.0;
  bool matching = false;
  bool pass = false;
};

OriginComparison compare_origin(const spectral::SpectralSlice& slice, double nu,
                                const Tolerances& tol) {
  const model::ModelWeight& w = slice.weight();
  const std::vector<cplx> origin(w.n(), 0.0);
  OriginComparison c;
  c.closed = model::model_kernel_origin(w, slice.q());
  c.galerkin = spectral::low_energy_bergman(slice, nu, origin);
  c.matching = w.signature() == slice.q();
  c.pass = c.matching ? std::abs(c.galerkin - c.closed) <= tol.model
                      : c.galerkin <= tol.model_zero;
  return c;
}

Outcome run_model(const RunConfig& c, const RunOptions& opt, const fs::path& dir) {
  Outcome o;
  const model::ModelWeight w(c.lambda);
  const auto slice = spectral::galerkin_assemble(w, c.q, c.degree);
  const auto cmp = compare_origin(slice, c.nu, c.tolerances);
  const auto eig = slice.eigenvalues();
  const auto modes = std::count_if(eig.begin(), eig.end(), [&](double e) { return e <= c.nu; });
  const double diff = std::abs(cmp.galerkin - cmp.closed);

  o.values["closed_form"] = cmp.closed;
  o.values["galerkin"] = cmp.galerkin;
  o.values["abs_diff"] = diff;
  o.values["pass"] = cmp.pass;
  o.values["signature"] = w.signature();
  o.values["basis_size"] = slice.basis().size();
  o.values["modes_below_nu"] = modes;
  o.values["lowest_eigenvalue"] = eig.empty() ? 0.0 : eig.front();

  CsvWriter csv(dir / "model.csv",
                "density at the origin in units of 1/area against exp(-sum lambda_i |z_i|^2); "
                "closed_form = prod|lambda_i|/pi^n when q equals the signature, else 0; "
                "galerkin sums eigenforms with eigenvalue <= nu",
                {"q", "closed_form", "galerkin", "abs_diff", "nu", "D", "basis_size",
                 "modes_below_nu", "pass"});
  csv.row({c.q, cmp.closed, cmp.galerkin, diff, c.nu, c.degree, static_cast<int>(slice.basis().size()),
           static_cast<int>(modes), cmp.pass});

  if (cmp.matching) {
    o.check("closed_form", cmp.pass, diff, c.tolerances.model);
  } else {
    o.check("closed_form", cmp.pass, cmp.galerkin, c.tolerances.model_zero);
  }
  const double comm = worst_commutator(opt.seed);
  o.values["commutator_residual"] = comm;
  o.check("commutator_identity", comm <= c.tolerances.residual, comm, c.tolerances.residual);
  return o;
}

// Mass of the unit ground state outside |w| <= rho for the given rates; n <= 2.
double gaussian_tail(const std::vector<double>& rates, double rho) {
  const double r2 = rho * rho;
  if (rates.size() == 1) return std::exp(-rates[0] * r2);
  const double a = rates[0], b = rates[1];
  if (std::abs(a - b) <= 1e-9 * std::max(a, b)) return (1.0 + a * r2) * std::exp(-a * r2);
  return (b * std::exp(-a * r2) - a * std::exp(-b * r2)) / (b - a);
}

Outcome run_spectral(const RunConfig& c, const RunOptions&, const fs::path& dir) {
  Outcome o;
  const model::ModelWeight w(c.lambda);
  const auto slice = spectral::galerkin_assemble(w, c.q, c.degree);
  const auto eig = slice.eigenvalues();
  const double gap = smallest_rate(c.lambda);

  {
    CsvWriter csv(dir / "spectrum.csv",
                  "lowest Galerkin eigenvalues of the model Laplacian on (0,q)-forms, "
                  "in units of the curvature eigenvalues",
                  {"index", "eigenvalue"});
    const std::size_t shown = std::min<std::size_t>(eig.size(), 64);
    for (std::size_t i = 0; i < shown; ++i) csv.row({static_cast<int>(i), eig[i]});
  }
  o.values["basis_size"] = slice.basis().size();
  o.values["lowest_eigenvalue"] = eig.empty() ? 0.0 : eig.front();

  {
    CsvWriter csv(dir / "low_energy.csv",
                  "Galerkin low-energy density at the origin in units of 1/area; below the first "
                  "excited level the bound is the closed form, above it the previous value",
                  {"nu", "value", "contract_bound", "pass"});
    const std::vector<double> nus = c.nu_sweep.empty() ? std::vector<double>{c.nu} : c.nu_sweep;
    bool all = true;
    double worst = 0.0, previous = 0.0;
    for (std::size_t i = 0; i < nus.size(); ++i) {
      const double nu = nus[i];
      double value, bound;
      bool pass;
      if (nu < gap) {
        const auto cmp = compare_origin(slice, nu, c.tolerances);
        value = cmp.galerkin;
        bound = cmp.closed;
        pass = cmp.pass;
        worst = std::max(worst, std::abs(value - bound));
      } else {
        const std::vector<cplx> origin(w.n(), 0.0);
        value = spectral::low_energy_bergman(slice, nu, origin);
        bound = previous;
        pass = value >= previous * (1.0 - 1e-12);
      }
      previous = value;
      all = all && pass;
      csv.row({nu, value, bound, pass});
    }
    o.values["low_energy_max_abs_diff"] = worst;
    o.check("low_energy", all, worst, w.signature() == c.q ? c.tolerances.model : c.tolerances.model_zero);
  }

  if (!c.k_list.empty()) {
    const spectral::LowEnergyGrid grid{c.radial, c.angular, 24};
    const auto rep = spectral::verify_low_energy_sequence(w, c.k_list, spectral::CutoffFunction(), grid);
    const auto beta = spectral::build_beta(w, w.signature());
    const auto rates = beta.weight.abs_lambda();
    const std::vector<double> rate_list(rates.begin(), rates.end());

    CsvWriter peak(dir / "sequence_peak.csv",
                   "|alpha_k(0)|^2 in units of 1/area; bound k^n prod|lambda_i|/pi^n",
                   {"k", "value", "contract_bound", "pass"});
    CsvWriter norm(dir / "sequence_norm.csv",
                   "||alpha_k||^2 against exp(-k phi_0), unit ground state; bound is the ground "
                   "state mass outside the cutoff plateau |w| <= ln(k)/2, pass when 0 <= 1 - value <= bound",
                   {"k", "value", "contract_bound", "pass"});
    CsvWriter rayleigh(dir / "sequence_rayleigh.csv",
                       "||k^{-1/2}(dbar + dbar^*) alpha_k||^2; bound is delta_k on the first row and "
                       "the previous value after it",
                       {"k", "value", "contract_bound", "pass"});
    CsvWriter laplacian(dir / "sequence_laplacian.csv",
                        "||k^{-1} Delta alpha_k||^2; bound is the previous value",
                        {"k", "value", "contract_bound", "pass"});
    CsvWriter hypothesis(dir / "sequence_hypothesis.csv",
                         "delta_k / mu_k with mu_k = sqrt(delta_k); bound 1 on the first row and "
                         "the previous value after it",
                         {"k", "value", "contract_bound", "pass"});
    bool peak_ok = true, norm_ok = true, ray_ok = true, lap_ok = true, hyp_ok = true;
    double worst_peak = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& r = rep.rows[i];
      const double rel = std::abs(r.peak - r.peak_expected) / r.peak_expected;
      worst_peak = std::max(worst_peak, rel);
      const bool p1 = rel <= c.tolerances.peak;
      peak.row({r.k, r.peak, r.peak_expected, p1});

      const double tail = gaussian_tail(rate_list, 0.5 * std::log(double(r.k)));
      const double defect = 1.0 - r.norm2;
      const bool p2 = defect >= -1e-10 && defect <= tail + 1e-10;
      norm.row({r.k, r.norm2, tail, p2});

      const double rb = i == 0 ? r.delta : rep.rows[i - 1].rayleigh;
      const bool p3 = i == 0 ? r.rayleigh <= rb : r.rayleigh < rb;
      rayleigh.row({r.k, r.rayleigh, rb, p3});

      const double lb = i == 0 ? r.laplacian_norm2 : rep.rows[i - 1].laplacian_norm2;
      const bool p4 = i == 0 || r.laplacian_norm2 < lb;
      laplacian.row({r.k, r.laplacian_norm2, lb, p4});

      const double hb = i == 0 ? 1.0 : rep.rows[i - 1].hypothesis_ratio;
      const bool p5 = r.hypothesis_ratio < hb;
      hypothesis.row({r.k, r.hypothesis_ratio, hb, p5});

      peak_ok = peak_ok && p1;
      norm_ok = norm_ok && p2;
      ray_ok = ray_ok && p3;
      lap_ok = lap_ok && p4;
      hyp_ok = hyp_ok && p5;
    }
    const auto& last = rep.rows.back();
    o.values["sequence_last_norm2"] = last.norm2;
    o.values["sequence_last_rayleigh"] = last.rayleigh;
    o.values["sequence_last_hypothesis_ratio"] = last.hypothesis_ratio;
    o.check("sequence_peak", peak_ok, worst_peak, c.tolerances.peak);
    o.check("sequence_norm", norm_ok, 1.0 - last.norm2,
            gaussian_tail(rate_list, 0.5 * std::log(double(last.k))));
    o.check("sequence_rayleigh", ray_ok, last.rayleigh, rep.rows.front().rayleigh);
    o.check("sequence_laplacian", lap_ok, last.laplacian_norm2, rep.rows.front().laplacian_norm2);
    o.check("sequence_hypothesis", hyp_ok, last.hypothesis_ratio, rep.rows.front().hypothesis_ratio);

    // Ground state plus |w_1|^2 times the same Gaussian, which is not harmonic.
    model::GaussianForm probe = beta.form;
    for (auto& [I, f] : probe.components) {
      model::Monomial m;
      m.a[0] = m.b[0] = 1;
      f.p.add(m, 0.5);
    }
    CsvWriter pairing(dir / "pairing.csv",
                      "|<Delta beta, chi(|z|/R)^2 beta> - ||(dbar + dbar^*) beta||^2| for beta = "
                      "ground state + |w_1|^2 ground state; R = 4, 8, 16 over sqrt(min|lambda_i|) in units of length; bound is the "
                      "previous value",
                      {"R", "value", "contract_bound", "pass"});
    bool pairing_ok = true;
    double previous = 0.0, residual = 0.0;
    const double unit = 1.0 / std::sqrt(smallest_rate(c.lambda));
    const double radii[] = {4.0 * unit, 8.0 * unit, 16.0 * unit};
    for (std::size_t i = 0; i < 3; ++i) {
      residual = spectral::gromov_pairing_residual(beta.weight, probe, radii[i], grid);
      const double bound = i == 0 ? residual : previous;
      const bool p = i == 0 || residual < bound;
      pairing.row({radii[i], residual, bound, p});
      pairing_ok = pairing_ok && p;
      previous = residual;
    }
    o.values["pairing_residual"] = residual;
    o.check("pairing", pairing_ok && residual <= c.tolerances.pairing, residual,
            c.tolerances.pairing);
  }
  return o;
}

double closed_deviation(const geometry::Preset& p, int k) {
  const double lk = std::log(double(k));
  if (p.name == "quartic") return std::abs(p.c) * std::pow(lk, 4) / k;
  if (p.name == "cubic") return std::abs(p.c) * std::pow(lk, 3) / std::sqrt(double(k));
  return 0.0;
}

Outcome run_scaling(const RunConfig& c, const RunOptions& opt, const fs::path& dir) {
  Outcome o;
  const auto chart = geometry::make_chart(*c.preset);
  CsvWriter csv(dir / "scaling.csv",
                "deviation_orderM = largest order-M partial of k phi(z/sqrt k) - phi_0 over "
                "|z| <= ln k; localization_ratio of the constant section, dimensionless",
                {"k", "deviation_order0", "deviation_order1", "deviation_order2",
                 "localization_ratio"});
  CsvWriter closed(dir / "deviation_closed_form.csv",
                   "deviation_order0 against its closed form: |c| (ln k)^4 / k for quartic, "
                   "|c| (ln k)^3 / sqrt(k) for cubic, 0 for gaussian",
                   {"k", "deviation_order0", "closed_form", "error", "pass"});
  const scaling::Section one = [](cplx) { return cplx(1.0); };
  bool dev_ok = true, loc_ok = true;
  double worst_dev = 0.0, previous_gap = std::numeric_limits<double>::infinity();
  const bool quadratic = c.preset->name == "gaussian";
  for (int k : c.k_list) {
    const scaling::ScalingContext ctx(chart.weight, k);
    const double d0 = scaling::weight_deviation(ctx, 0);
    const double d1 = scaling::weight_deviation(ctx, 1);
    const double d2 = scaling::weight_deviation(ctx, 2);
    const double ratio = scaling::norm_localization_ratio(one, ctx, c.radial, c.angular);
    csv.row({k, d0, d1, d2, ratio});

    const double expect = closed_deviation(*c.preset, k);
    const double err = expect > 0.0 ? std::abs(d0 - expect) / expect : std::abs(d0);
    const bool pass = err <= c.tolerances.deviation;
    closed.row({k, d0, expect, err, pass});
    worst_dev = std::max(worst_dev, err);
    dev_ok = dev_ok && pass;

    const double gap = std::abs(ratio - 1.0);
    loc_ok = loc_ok && (quadratic ? gap <= c.tolerances.deviation : gap <= previous_gap);
    previous_gap = gap;
  }
  o.check("deviation_closed_form", dev_ok, worst_dev, c.tolerances.deviation);
  o.check("localization", loc_ok, previous_gap, quadratic ? c.tolerances.deviation : 1.0);
  const double lap = worst_scaled_laplacian(opt.seed);
  o.values["scaled_laplacian_residual"] = lap;
  o.check("scaled_laplacian_identity", lap <= c.tolerances.residual, lap, c.tolerances.residual);
  return o;
}

bool symmetric_chart(const std::string& name) {
  return name == "fubini-study" || name == "anti-fubini-study";
}

Outcome run_manifold(const RunConfig& c, const RunOptions& opt, const fs::path& dir) {
  Outcome o;
  const auto chart = geometry::make_chart(*c.preset);
  const auto points = manifold::default_sample_points();
  const auto rep = manifold::weak_morse_report(chart, c.k_list, c.q, points, opt.jobs);
  const Tolerances& tol = c.tolerances;

  CsvWriter csv(dir / "kernel.csv",
                "B and S in units of 1/area for the round metric of area pi; density = "
                "|curvature|/pi on X(q) else 0; ratio = B/(k density), or B/k where density is 0; "
                "excess = (B/k - density)^+; point is the affine coordinate",
                {"k", "q", "point_re", "point_im", "B", "S", "density", "ratio", "dim",
                 "rhs_integral", "excess"});
  double worst_margin = std::numeric_limits<double>::infinity(), worst_kernel = 0.0;
  for (const auto& r : rep.rows) {
    const cplx z = r.point.affine();
    csv.row({r.k, r.q, z.real(), z.imag(), r.b, r.s, r.density, r.ratio, r.dim, r.rhs_integral,
             r.excess});
    worst_margin = std::min({worst_margin, r.lower_margin, r.upper_margin});
    if (symmetric_chart(c.preset->name)) {
      const double expect = r.dim / std::numbers::pi;
      worst_kernel = std::max(worst_kernel,
                              std::abs(r.b - expect) / (std::max(r.dim, 1) / std::numbers::pi));
    }
  }
  o.check("sandwich", worst_margin >= -tol.sandwich, worst_margin, -tol.sandwich);
  if (symmetric_chart(c.preset->name)) {
    o.check("symmetric_kernel", worst_kernel <= tol.kernel, worst_kernel, tol.kernel);
  }

  CsvWriter integ(dir / "integrated.csv",
                  "dim of the space against k times the Morse density integral over X(q); "
                  "gap = dim - rhs_integral; constant = gap/(sqrt(k) ln k); trace_integral is "
                  "the integral of B",
                  {"k", "q", "dim", "density_integral", "rhs_integral", "gap", "gap_over_k",
                   "constant", "trace_integral"});
  bool dims_ok = true;
  double worst_trace = 0.0;
  std::size_t skipped = 0;
  for (const auto& r : rep.integrated) {
    integ.row({r.k, r.q, r.dim, r.density_integral, r.rhs_integral, r.gap, r.gap_over_k,
               r.constant, r.trace_integral});
    dims_ok = dims_ok && r.dim == manifold::expected_dimension(chart.degree, r.k, c.q);
    worst_trace = std::max(worst_trace, std::abs(r.trace_integral - r.dim) / std::max(r.dim, 1));
    skipped += r.skipped_nodes;
  }
  o.check("dimension", dims_ok, 0.0, 0.0);
  o.check("trace", worst_trace <= tol.trace, worst_trace, tol.trace);
  if (skipped > 0) {
    o.warnings.push_back(std::to_string(skipped) + " quadrature nodes on degenerate curvature skipped");
  }

  if (c.k_list.size() >= 2) {
    const std::size_t np = points.size();
    const std::size_t last = rep.rows.size() - np;
    bool contraction = true, monotone = true;
    double worst_excess = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      const auto& first = rep.rows[p];
      if (first.degenerate) continue;
      if (first.density > 0.0) {
        const double e0 = first.excess, e1 = rep.rows[last + p].excess;
        contraction = contraction && (e0 > 0.0 ? e1 < e0 : e1 <= 0.0);
        worst_excess = std::max(worst_excess, e1);
      } else {
        for (std::size_t i = p + np; i < rep.rows.size(); i += np) {
          const double before = rep.rows[i - np].b / rep.rows[i - np].k;
          const double now = rep.rows[i].b / rep.rows[i].k;
          monotone = monotone && (before > 0.0 ? now < before : now <= 0.0);
        }
      }
    }
    o.check("weak_contraction", contraction, worst_excess, 0.0);
    o.check("degenerate_locus_decay", monotone, 0.0, 0.0);
    const double g0 = std::max(rep.integrated.front().gap_over_k, 0.0);
    const double g1 = std::max(rep.integrated.back().gap_over_k, 0.0);
    o.check("integrated_weak", g0 > 0.0 ? g1 < g0 : g1 <= 0.0, g1, g0);
  }

  const auto strong = spectral::strong_morse_report(chart, c.k_list, c.q, opt.jobs);
  CsvWriter sc(dir / "strong.csv",
               "alternating dimension sums against k times signed density integrals; "
               "euler_margin = (dim0 - dim1) - (kd + 1), reported for q = 1",
               {"k", "q", "dim0", "dim1", "lhs", "rhs", "margin", "margin_over_k", "euler_margin"});
  bool euler_ok = true;
  int worst_euler = 0;
  double worst_strong = -std::numeric_limits<double>::infinity();
  for (const auto& r : strong.rows) {
    sc.row({r.k, r.q, r.dim0, r.dim1, r.lhs, r.rhs, r.margin, r.margin_over_k, r.euler_margin});
    euler_ok = euler_ok && r.euler_margin == 0;
    worst_euler = std::max(worst_euler, std::abs(r.euler_margin));
    worst_strong = std::max(worst_strong, r.margin);
  }
  if (c.q == 1) {
    o.check("euler_characteristic", euler_ok, worst_euler, 0.0);
  } else if (worst_strong > 0.0) {
    o.warnings.push_back("strong inequality margin " + format_number(worst_strong) +
                         " is positive at some k");
  }
  o.values["strong_worst_margin"] = worst_strong;
  o.values["integrated_last_gap_over_k"] = rep.integrated.back().gap_over_k;
  return o;
}

Outcome dispatch(const RunConfig& c, const RunOptions& opt, const fs::path& dir) {
  fs::create_directories(dir);
  switch (c.command) {
    case Command::model: return run_model(c, opt, dir);
    case Command::spectral: return run_spectral(c, opt, dir);
    case Command::scaling: return run_scaling(c, opt, dir);
    case Command::manifold: return run_manifold(c, opt, dir);
    case Command::report_all: break;
  }
  throw std::logic_error("report-all is not a leaf command");
}

fs::path output_dir(const std::string& configured, const RunOptions& opt) {
  return opt.out_dir.empty() ? fs::path(configured) : fs::path(opt.out_dir);
}

int record_error(const fs::path& dir, const std::string& kind, const std::string& message,
                 int status) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::remove(dir / "summary.json", ec);
  ojson j;
  j["status"] = "error";
  j["kind"] = kind;
  j["message"] = message;
  j["exit_code"] = status;
  try {
    write_json(dir / "error.json", j);
  } catch (const std::exception&) {
  }
  std::fprintf(stderr, "bergman-lab: %s error: %s\n", kind.c_str(), message.c_str());
  return status;
}

}  // namespace

int run(const RunConfig& config, const RunOptions& options) {
  const fs::path dir = output_dir(config.output, options);
  try {
    fs::create_directories(dir);
    fs::remove(dir / "error.json");
    fs::remove(dir / "summary.json");

    ojson summary;
    summary["command"] = command_name(config.command);
    summary["config"] = config.echo();
    summary["seed"] = options.seed;
    summary["strict"] = options.strict;
    bool passed = true;
    if (config.command == Command::report_all) {
      ojson parts = ojson::object();
      for (const RunConfig& part : config.parts) {
        const std::string name(command_name(part.command));
        const Outcome o = dispatch(part, options, dir / name);
        parts[name] = outcome_json(o, options.strict);
        passed = passed && o.passed(options.strict);
      }
      summary["parts"] = parts;
    } else {
      const Outcome o = dispatch(config, options, dir);
      const ojson body = outcome_json(o, options.strict);
      for (const auto& [key, value] : body.items()) summary[key] = value;
      passed = o.passed(options.strict);
    }
    const int status = passed ? kPassed : kCheckFailed;
    summary["status"] = passed ? "pass" : "fail";
    summary["exit_code"] = status;
    write_json(dir / "summary.json", summary);
    return status;
  } catch (const Error& e) {
    return record_error(dir, e.kind(), e.what(), kRuntimeError);
  } catch (const std::exception& e) {
    return record_error(dir, "internal", e.what(), kRuntimeError);
  }
}

int run_file(const std::string& config_path, const RunOptions& options) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    return record_error(output_dir(RunConfig{}.output, options), e.kind(), e.what(), kConfigError);
  }
  return run(config, options);
}

}  // namespace bergman::cli
