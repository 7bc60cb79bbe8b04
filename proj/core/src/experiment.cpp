#include "fracbeam/experiment.hpp"

#include "fracbeam/csv.hpp"
#include "fracbeam/quadrature.hpp"
#include "fracbeam/time_evolution.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace fracbeam {

std::optional<Command> parse_command(std::string_view name) {
  if (name == "verify") return Command::verify;
  if (name == "spectrum") return Command::spectrum;
  if (name == "resolvent") return Command::resolvent;
  if (name == "fit-exponent") return Command::fit_exponent;
  if (name == "simulate") return Command::simulate;
  if (name == "region-map") return Command::region_map;
  return std::nullopt;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::verify: return "verify";
    case Command::spectrum: return "spectrum";
    case Command::resolvent: return "resolvent";
    case Command::fit_exponent: return "fit-exponent";
    case Command::simulate: return "simulate";
    case Command::region_map: return "region-map";
  }
  return "unknown";
}

std::string_view region_label(Region region) {
  switch (region) {
    case Region::analytic: return "R_A";
    case Region::gevrey: return "R_CG\\R_A";
    case Region::none: return "none";
  }
  return "none";
}

Region classify_region(double tau, double sigma) {
  if (tau >= 0.5 && tau <= 1.0 && sigma >= 0.5 && sigma <= 1.0) return Region::analytic;
  if (tau > 0.0 && tau < 1.0 && sigma > 0.0 && sigma < 1.0) return Region::gevrey;
  return Region::none;
}

double gevrey_exponent(double tau, double sigma) {
  const double m = std::min(tau, sigma);
  return 2.0 * m / (m + 1.0);
}

double guaranteed_exponent(double tau, double sigma) {
  switch (classify_region(tau, sigma)) {
    case Region::analytic: return 1.0;
    case Region::gevrey: return gevrey_exponent(tau, sigma);
    case Region::none: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

ExponentFit fit_in_config_window(const RunConfig& config, std::span<const ResolventSample> samples) {
  std::vector<ResolventSample> inside;
  for (const auto& s : samples) {
    if (s.lambda >= config.lambda_min && s.lambda <= config.lambda_max) inside.push_back(s);
  }
  if (inside.empty()) throw std::invalid_argument("no resolvent samples inside [lambda_min, lambda_max]");
  return fit_decay_exponent(inside, top_decades_window(inside));
}

RegionClassification measure_region(const RunConfig& config, double tau, double sigma) {
  PhysicalParams params = config.params;
  params.tau = tau;
  params.sigma = sigma;
  const auto model = ModalModel::assemble(params);
  const auto grid = log_grid(config.lambda_min, config.lambda_max, config.points_per_decade);
  const auto sweep = resolvent_sweep(model, grid);
  const auto fit = fit_in_config_window(config, sweep.samples);

  RegionClassification row;
  row.tau = tau;
  row.sigma = sigma;
  row.region = classify_region(tau, sigma);
  row.phi_theory = guaranteed_exponent(tau, sigma);
  row.phi_hat = fit.phi_hat;
  row.r_squared = fit.r_squared;
  if (row.region != Region::none) row.pass = fit.phi_hat >= row.phi_theory - config.tolerance;
  return row;
}

std::string format_check(const CheckResult& check) {
  std::ostringstream os;
  if (check.passed) {
    os << "PASS " << check.name;
  } else {
    os << "FAIL check=" << check.name;
  }
  os << " value=" << format_double(check.value) << " limit=" << format_double(check.limit);
  if (!check.detail.empty()) os << ' ' << check.detail;
  return os.str();
}

namespace {

Eigen::VectorXd random_unit_energy_state(const ModalModel& model, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd y(model.dimension());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = normal(rng);
  return model.from_energy_coords(y.normalized());
}

std::vector<double> uniform_times(double t_final, int steps) {
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) times[i] = t_final * i / steps;
  return times;
}

CheckResult upper_bound(std::string name, double value, double limit, std::string detail = {}) {
  return {std::move(name), value <= limit, value, limit, std::move(detail)};
}

std::string tag(const PhysicalParams& p) {
  std::ostringstream os;
  os << "tau=" << format_double(p.tau) << " sigma=" << format_double(p.sigma)
     << " n_modes=" << p.n_modes;
  return os.str();
}

}  // namespace

std::vector<CheckResult> verify_suite(const RunConfig& config) {
  const auto& p = config.params;
  const auto model = ModalModel::assemble(p);
  const std::string where = tag(p);
  const int n = p.n_modes;
  std::vector<CheckResult> checks;
  std::mt19937_64 rng(config.seed);

  // beam_model
  const auto diss = verify_dissipativity(model);
  checks.push_back(upper_bound("dissipativity_identity", diss.relative_residual, 1e-12, where));
  checks.push_back(upper_bound("dissipativity_symmetric_part",
                               diss.max_symmetric_eigenvalue / diss.scale, 1e-10, where));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> energy_eig(model.energy(), Eigen::EigenvaluesOnly);
  const double min_energy_eig = energy_eig.eigenvalues().minCoeff();
  checks.push_back({"energy_positive_definite", min_energy_eig > 0.0, min_energy_eig, 0.0, where});

  const auto& g = model.coupling().g;
  double structure_defect = (g + g.transpose()).cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if ((k + j) % 2 == 0) structure_defect = std::max(structure_defect, std::abs(g(k, j)));
    }
  }
  checks.push_back(upper_bound("coupling_skew_parity", structure_defect, 0.0, where));

  double quadrature_gap = 0.0;
  for (int k = 1; k <= std::min(n, 8); ++k) {
    for (int j = 1; j <= std::min(n, 8); ++j) {
      quadrature_gap = std::max(quadrature_gap,
                                std::abs(g(k - 1, j - 1) - coupling_entry_by_quadrature(k, j, p.length)));
    }
  }
  checks.push_back(upper_bound("coupling_quadrature", quadrature_gap, 1e-10, where));

  // spectral_analysis
  const auto spectrum = compute_spectrum(model);
  const auto pairing = check_conjugate_pairing(spectrum.eigenvalues);
  checks.push_back(upper_bound("spectrum_conjugate_pairing", pairing.max_distance, 1e-8, where));
  checks.push_back({"spectral_abscissa_negative", spectrum.spectral_abscissa < 0.0,
                    spectrum.spectral_abscissa, 0.0, where});

  const std::vector<double> hy_grid = {0.01, 1.0, 100.0, 1e4};
  const auto hy = hille_yosida_check(model, hy_grid);
  checks.push_back(upper_bound("hille_yosida", hy.worst_ratio, 1.0 + 1e-8,
                               where + " lambda=" + format_double(hy.worst_lambda)));

  double symmetry_gap = 0.0;
  for (double l : {0.5, 3.0, 40.0, 700.0}) {
    const double plus = resolvent_norm(model, l);
    const double minus = resolvent_norm(model, -l);
    symmetry_gap = std::max(symmetry_gap, std::abs(plus - minus) / plus);
  }
  checks.push_back(upper_bound("resolvent_conjugate_symmetry", symmetry_gap, 1e-8, where));

  double static_residual = 0.0;
  double static_bound = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::VectorXd f = random_unit_energy_state(model, rng);
    const auto sol = static_solve(model, f);
    static_residual =
        std::max(static_residual, (model.generator() * sol.state - f).norm() / f.norm());
    static_bound = std::max(static_bound, sol.ratio / sol.bound);
  }
  checks.push_back(upper_bound("static_solve_roundtrip", static_residual, 1e-10, where));
  checks.push_back(upper_bound("static_solve_bound", static_bound, 1.0 + 1e-8, where));

  std::vector<std::array<double, 3>> triples = {{0.0, 0.5, 1.0}};
  if (p.tau > 0.0) triples.push_back({-0.5, 0.0, p.tau / 2.0});
  if (p.sigma > 0.0 && p.sigma != p.tau) triples.push_back({-0.5, 0.0, p.sigma / 2.0});
  for (const auto& [a, b, c] : triples) {
    const auto interp = verify_interpolation(model.basis(), a, b, c, 1000, rng());
    std::ostringstream os;
    os << where << " exponents=(" << a << "," << b << "," << c << ")";
    checks.push_back(upper_bound("interpolation", interp.max_ratio, 1.0 + 1e-10, os.str()));
  }

  const auto lemma_grid = log_grid(std::max(kLemmaDeltaFloor, 1.0), 1e4, 20);
  const auto lemmas = verify_lemma_estimates(model, lemma_grid, 10, rng());
  for (const auto& s : lemmas.series) {
    checks.push_back(upper_bound("lemma_" + s.name, s.last_decade_max / s.median, 2.0,
                                 where + " overall_max=" + format_double(s.overall_max)));
  }

  // time_evolution
  const auto times = uniform_times(config.t_final, config.steps);
  const auto traj = propagate(model, random_unit_energy_state(model, rng), times);
  const auto trace = energy_trace(model, traj);
  checks.push_back(upper_bound("energy_monotone", trace.worst_increase, 1.0, where));

  double contraction = 0.0;
  for (double t : {0.01, 0.1, 1.0, 5.0}) contraction = std::max(contraction, propagator_norm(model, t));
  checks.push_back(upper_bound("contraction", contraction, 1.0 + 1e-9, where));

  double semigroup_gap = 0.0;
  for (const auto& [t, s] : {std::pair{0.3, 0.7}, std::pair{1.5, 2.5}}) {
    const Eigen::MatrixXd joint = propagator(model, t + s);
    const Eigen::MatrixXd split = propagator(model, t) * propagator(model, s);
    semigroup_gap = std::max(semigroup_gap, (joint - split).norm() / joint.norm());
  }
  checks.push_back(upper_bound("semigroup_property", semigroup_gap, 1e-8, where));
  return checks;
}

namespace {

int require_out(const CommandOptions& options, std::ostream& err) {
  if (!options.out) {
    err << "error: " << to_string(options.command) << " requires --out <path>\n";
    return kExitUsage;
  }
  return kExitSuccess;
}

int run_verify(const RunConfig& config, std::ostream& log, std::ostream& err) {
  const auto checks = verify_suite(config);
  int failures = 0;
  for (const auto& c : checks) {
    if (c.passed) {
      log << format_check(c) << '\n';
    } else {
      err << format_check(c) << '\n';
      ++failures;
    }
  }
  log << (failures == 0 ? "verify: all " : "verify: ") << checks.size() - failures << "/"
      << checks.size() << " checks passed\n";
  return failures == 0 ? kExitSuccess : kExitCheckFailure;
}

int run_spectrum(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const auto model = ModalModel::assemble(config.params);
  const auto report = compute_spectrum(model);
  std::vector<CsvRow> rows;
  for (const auto& l : report.eigenvalues) rows.push_back({l.real(), l.imag()});
  write_csv(rows, schema::spectrum, *options.out);
  log << "spectral_abscissa=" << format_double(report.spectral_abscissa) << '\n'
      << "sector_half_angle=" << format_double(report.sector_half_angle) << '\n';
  return kExitSuccess;
}

int run_resolvent(const RunConfig& config, const CommandOptions& options, std::ostream& log) {
  const auto model = ModalModel::assemble(config.params);
  const auto grid = log_grid(config.lambda_min, config.lambda_max, config.points_per_decade);
  const auto sweep = resolvent_sweep(model, grid);
  std::vector<CsvRow> rows;
  for (const auto& s : sweep.samples) rows.push_back({s.lambda, s.norm});
  write_csv(rows, schema::resolvent, *options.out);
  for (double l : sweep.failed) log << "skipped lambda=" << format_double(l) << '\n';
  log << "samples=" << sweep.samples.size() << '\n';
  return kExitSuccess;
}

int run_fit(const RunConfig& config, const CommandOptions& options, std::ostream& log,
            std::ostream& err) {
  if (!options.in) {
    err << "error: fit-exponent requires --in <resolvent.csv>\n";
    return kExitUsage;
  }
  std::vector<ResolventSample> samples;
  try {
    const auto table = read_csv(*options.in);
    const auto lambda_col = table.column("lambda");
    const auto norm_col = table.column("norm");
    for (const auto& row : table.rows) {
      samples.push_back({parse_number(row[lambda_col], "lambda"), parse_number(row[norm_col], "norm")});
    }
  } catch (const std::runtime_error& e) {
    err << "error: " << options.in->string() << ": " << e.what() << '\n';
    return kExitUsage;
  }
  const auto fit = fit_in_config_window(config, samples);
  log << "phi_hat=" << format_double(fit.phi_hat) << '\n'
      << "r2=" << format_double(fit.r_squared) << '\n'
      << "window=" << format_double(fit.window.lambda_min) << ","
      << format_double(fit.window.lambda_max) << '\n'
      << "samples=" << fit.n_samples << '\n';
  return kExitSuccess;
}

int run_simulate(const RunConfig& config, const CommandOptions& options, std::ostream& log,
                 std::ostream& err) {
  const auto model = ModalModel::assemble(config.params);
  std::mt19937_64 rng(config.seed);
  const auto x0 = random_unit_energy_state(model, rng);
  const auto traj = propagate(model, x0, uniform_times(config.t_final, config.steps));
  const auto trace = energy_trace(model, traj);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < trace.times.size(); ++i) rows.push_back({trace.times[i], trace.energies[i]});
  write_csv(rows, schema::energy, *options.out);
  log << "method=" << to_string(traj.method) << '\n'
      << "fitted_rate=" << format_double(trace.fitted_rate) << '\n'
      << "tail_start=" << format_double(trace.tail_start) << '\n';
  const CheckResult monotone =
      upper_bound("energy_monotone", trace.worst_increase, 1.0, tag(config.params));
  if (!monotone.passed) {
    err << format_check(monotone) << '\n';
    return kExitCheckFailure;
  }
  return kExitSuccess;
}

int run_region_map(const RunConfig& config, const CommandOptions& options, std::ostream& log,
                   std::ostream& err) {
  std::vector<RegionClassification> cells;
  for (double tau : config.tau_grid) {
    for (double sigma : config.sigma_grid) cells.push_back(measure_region(config, tau, sigma));
  }
  std::vector<CsvRow> rows;
  int failures = 0;
  for (const auto& c : cells) {
    const std::string pass = c.pass ? (*c.pass ? "true" : "false") : "na";
    rows.push_back({c.tau, c.sigma, std::string(region_label(c.region)), c.phi_theory, c.phi_hat,
                    c.r_squared, pass});
    if (c.pass && !*c.pass) {
      ++failures;
      err << "FAIL check=region_exponent tau=" << format_double(c.tau)
          << " sigma=" << format_double(c.sigma) << " value=" << format_double(c.phi_hat)
          << " limit=" << format_double(c.phi_theory - config.tolerance) << '\n';
    }
  }
  write_csv(rows, schema::regionmap, *options.out);
  log << "cells=" << cells.size() << " failures=" << failures << '\n';
  return failures == 0 ? kExitSuccess : kExitCheckFailure;
}

}  // namespace

int run_command(const RunConfig& config, const CommandOptions& options, std::ostream& log,
                std::ostream& err) {
  try {
    config.validate();
    switch (options.command) {
      case Command::verify:
        return run_verify(config, log, err);
      case Command::spectrum:
        if (int rc = require_out(options, err)) return rc;
        return run_spectrum(config, options, log);
      case Command::resolvent:
        if (int rc = require_out(options, err)) return rc;
        return run_resolvent(config, options, log);
      case Command::fit_exponent:
        return run_fit(config, options, log, err);
      case Command::simulate:
        if (int rc = require_out(options, err)) return rc;
        return run_simulate(config, options, log, err);
      case Command::region_map:
        if (int rc = require_out(options, err)) return rc;
        return run_region_map(config, options, log, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "FAIL check=" << to_string(options.command) << " error=\"" << e.what() << "\"\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}

}  // namespace fracbeam
