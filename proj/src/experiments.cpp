#include "zeno/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "zeno/analysis.hpp"
#include "zeno/constraints.hpp"
#include "zeno/error.hpp"
#include "zeno/evolution.hpp"
#include "zeno/operators.hpp"
#include "zeno/states.hpp"

namespace zeno {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"fig2-spectrum", "decay-rate spectrum of the bundled instance and its unsatisfiable variant"},
      {"fig3-dissipative", "dissipative sweeps over total runtime"},
      {"fig4-measurement", "projective-measurement sweeps over measurement count"},
      {"fig5-spectra", "adiabatic spectra with and without the offset, and their gap"},
      {"fig6-adiabatic", "adiabatic sweeps over total runtime with and without the offset"},
      {"fig7-scan", "three-state and transverse-field success versus constraint strength"},
      {"figE-dw4", "projected sweep of a four-qubit domain wall"},
      {"figE-oh5", "projected sweep of a five-qubit one-hot variable"},
      {"figE-g2", "projected sweep with at most two zeros under random fields"},
      {"stirap-check", "dark state of the four-level pulse Hamiltonian along a crossfade"},
      {"appxA-identities", "residuals of the qudit, biased and one-hot identities"},
  };
  return catalog;
}

bool is_experiment(const std::string& name) {
  const auto& c = experiment_catalog();
  return std::any_of(c.begin(), c.end(), [&](const ExperimentInfo& e) { return e.name == name; });
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void CsvTable::add(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::logic_error("csv row width does not match header");
    line(r);
  }
  return out.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw InputError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

namespace {

const std::vector<double> kFields = {-0.67513783, -0.62099006, -0.14675767, 0.72688415, 0.56602992};

struct Run {
  std::string name;
  fs::path dir;
  std::vector<fs::path> files;
  ordered_json params = ordered_json::object();

  void param(const std::string& key, const ordered_json& value, bool given) {
    params[key] = {{"value", value}, {"origin", given ? "given" : "chosen"}};
  }
  void csv(const std::string& file, const CsvTable& t) {
    write_file_atomic(dir / file, t.str());
    files.push_back(dir / file);
  }
  void finish() {
    ordered_json meta;
    meta["experiment"] = name;
    meta["parameters"] = params;
    ordered_json list = ordered_json::array();
    for (const auto& f : files) list.push_back(f.filename().string());
    meta["files"] = list;
    write_file_atomic(dir / "metadata.json", meta.dump(2) + "\n");
    files.push_back(dir / "metadata.json");
  }
};

std::vector<double> decades(int lo, int hi, int per_decade = 1) {
  std::vector<double> g;
  for (int k = lo * per_decade; k <= hi * per_decade; ++k) g.push_back(std::pow(10.0, double(k) / per_decade));
  return g;
}

std::string indexed(const std::string& stem, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%02zu.csv", i);
  return stem + buf;
}

std::string eig_column(Eigen::Index c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eig_%03ld", long(c));
  return buf;
}

CsvTable trajectory_table(const Trajectory& t, std::size_t stride = 1) {
  CsvTable tab{{"theta", "survival", "success"}, {}};
  for (std::size_t k = 0; k < t.steps.size(); ++k)
    if ((k + 1) % stride == 0 || k + 1 == t.steps.size()) {
      const auto& r = t.steps[k];
      tab.add({r.theta, r.survival, r.success});
    }
  return tab;
}

CsvTable spectrum_table(const std::vector<double>& grid, const Eigen::MatrixXd& values, const std::string& cls) {
  CsvTable tab;
  tab.header.push_back("theta");
  for (Eigen::Index c = 0; c < values.cols(); ++c) tab.header.push_back(eig_column(c));
  tab.header.push_back("class");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_number(grid[i])};
    for (Eigen::Index c = 0; c < values.cols(); ++c) row.push_back(format_number(values(Eigen::Index(i), c)));
    row.push_back(cls);
    tab.rows.push_back(std::move(row));
  }
  return tab;
}

std::string class_label(const SpectrumScan& s) {
  return std::to_string(s.lowest) + "/" + std::to_string(s.cluster) + "/" + std::to_string(s.rest);
}

std::vector<double> resource_grid(const ExperimentOptions& opt, std::vector<double> fallback, Run& run,
                                  const std::string& key, bool fallback_given) {
  const bool custom = !opt.grid.empty();
  std::vector<double> g = custom ? opt.grid : std::move(fallback);
  run.param(key, g, !custom && fallback_given);
  return g;
}

SweepModel bundled_model() {
  const SpaceSpec spec(5);
  return SweepModel(spec, clause_entries(load_bundled_instance(), spec), 1.0);
}

// ------------------------------------------------------------------ experiments

void fig2(Run& run, const ExperimentOptions& opt) {
  const CnfFormula sat = load_bundled_instance();
  const auto grid = linear_grid(0.0, kPi / 2, 100);
  run.param("instance", "bundled", true);
  run.param("gamma", 1.0, true);
  run.param("theta_points", 100, false);
  for (const auto& [label, f] : {std::pair{"sat", sat}, std::pair{"unsat", unsatisfiable_variant(sat)}}) {
    const CnfFormula formula = f;
    const auto s = spectrum_vs_theta([&](double th) { return formula_generator(formula, th); }, grid,
                                     SpectrumQuantity::magnitude, opt.exec);
    run.csv(std::string("spectrum_") + label + ".csv", spectrum_table(grid, s.tracked, class_label(s)));
    run.csv(std::string("spectrum_") + label + "_sorted.csv", spectrum_table(grid, s.sorted, class_label(s)));
  }
}

void fig3(Run& run, const ExperimentOptions& opt) {
  const auto times = resource_grid(opt, decades(0, 10), run, "total_times", false);
  Schedule sch;
  sch.steps = opt.steps;
  run.param("instance", "bundled", true);
  run.param("gamma", 1.0, true);
  run.param("steps", opt.steps, true);
  run.param("target", "00000", true);
  const auto trs = dissipative_scan(bundled_model(), TritString(5, 0), times, sch, opt.exec);
  CsvTable summary{{"total_time", "final_success", "final_survival"}, {}};
  for (std::size_t i = 0; i < trs.size(); ++i) {
    run.csv(indexed("trajectory", i), trajectory_table(trs[i]));
    summary.add({trs[i].total_time, trs[i].final_success, trs[i].final_survival});
  }
  run.csv("summary.csv", summary);
}

void fig4(Run& run, const ExperimentOptions& opt) {
  const auto counts = resource_grid(opt, decades(1, 6), run, "n_measurements", false);
  run.param("instance", "bundled", true);
  run.param("target", "00000", true);
  run.param("max_rows_per_trajectory", 1000, false);
  const SweepModel model = bundled_model();
  std::vector<Trajectory> trs(counts.size());
  for (double c : counts)
    if (!(c >= 1.0) || c != std::floor(c)) throw InputError("measurement counts must be positive integers");
  parallel_for(
      int(counts.size()), [&](int i) { trs[i] = measurement_sweep(model, TritString(5, 0), long(counts[i])); },
      opt.exec);
  CsvTable summary{{"n_measurements", "final_success", "final_survival", "theta_half"}, {}};
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const std::size_t stride = std::max<std::size_t>(1, trs[i].steps.size() / 1000);
    run.csv(indexed("trajectory", i), trajectory_table(trs[i], stride));
    double half = std::nan("");
    for (const auto& r : trs[i].steps)
      if (r.survival < 0.5) {
        half = r.theta;
        break;
      }
    summary.add({counts[i], trs[i].final_success, trs[i].final_survival, half});
  }
  run.csv("summary.csv", summary);
}

void fig5(Run& run, const ExperimentOptions& opt) {
  const SweepModel model = bundled_model();
  const auto grid = linear_grid(0.0, kPi / 2, 100);
  run.param("instance", "bundled", true);
  run.param("c", 1.0, true);
  run.param("alphas", {0.0, 0.1}, true);
  run.param("theta_points", 100, false);
  CsvTable gaps{{"theta", "gap_alpha_0", "gap_alpha_0.1"}, {}};
  std::vector<std::vector<double>> g;
  for (double alpha : {0.0, 0.1}) {
    const Mat off = offset_hamiltonian({alpha}, model.space());
    const GeneratorBuilder b = [&](double th) { return Mat(model.generator(th) + off); };
    const auto s = spectrum_vs_theta(b, grid, SpectrumQuantity::value, opt.exec);
    run.csv("spectrum_alpha_" + format_number(alpha) + ".csv", spectrum_table(grid, s.tracked, class_label(s)));
    std::vector<double> gap(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) gap[i] = std::max(0.0, s.sorted(Eigen::Index(i), 1) - s.sorted(Eigen::Index(i), 0));
    g.push_back(gap);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) gaps.add({grid[i], g[0][i], g[1][i]});
  run.csv("gap.csv", gaps);
}

void fig6(Run& run, const ExperimentOptions& opt) {
  const SweepModel model = bundled_model();
  Schedule sch;
  sch.steps = opt.steps;
  run.param("instance", "bundled", true);
  run.param("c", 1.0, true);
  run.param("steps", opt.steps, true);
  run.param("target", "00000", true);
  const bool custom = !opt.grid.empty();
  const std::vector<std::pair<double, std::vector<double>>> cases = {
      {0.0, custom ? opt.grid : decades(0, 10)}, {0.1, custom ? opt.grid : decades(1, 7)}};
  run.param("total_times_alpha_0", cases[0].second, false);
  run.param("total_times_alpha_0.1", cases[1].second, false);
  run.param("alphas", {0.0, 0.1}, true);
  CsvTable summary{{"alpha", "total_time", "final_success"}, {}};
  for (const auto& [alpha, times] : cases) {
    const auto trs = adiabatic_scan(model, Mat(), {alpha}, TritString(5, 0), times, sch, opt.exec);
    for (std::size_t i = 0; i < trs.size(); ++i) {
      run.csv(indexed("trajectory_alpha_" + format_number(alpha), i), trajectory_table(trs[i]));
      summary.add({alpha, trs[i].total_time, trs[i].final_success});
    }
  }
  run.csv("summary.csv", summary);
}

StrengthScanSetup fig7_setup(int steps) {
  StrengthScanSetup s;
  s.problem = IsingProblem::fields(kFields);
  s.constraint = {CardinalityKind::exactly, 3, {0, 1, 2, 3, 4}};
  s.alpha = 1.0;
  s.target = {0, 0, 1, 1, 1};
  s.steps = steps;
  return s;
}

void fig7(Run& run, const ExperimentOptions& opt) {
  const auto strengths = resource_grid(opt, decades(-1, 3, 2), run, "strengths", false);
  const std::vector<double> times = opt.times.empty() ? std::vector<double>{1.0, 10.0, 100.0} : opt.times;
  const StrengthScanSetup setup = fig7_setup(opt.steps);
  run.param("total_times", times, false);
  run.param("fields", kFields, true);
  run.param("constraint", "exactly 3 ones over 5", true);
  run.param("alpha", 1.0, true);
  run.param("target", "00111", true);
  run.param("steps", opt.steps, true);
  const auto tables = constraint_strength_scan(strengths, times, setup, opt.exec);
  for (std::size_t c = 0; c < times.size(); ++c) {
    CsvTable t{{"strength", "success_3state", "success_tf", "success_projected"}, {}};
    for (const auto& r : tables[c]) t.add({r.strength, r.success_3state, r.success_tf, r.success_projected});
    run.csv("scan_T" + format_number(times[c]) + ".csv", t);
  }

  // final diagonal (theta = pi/2, s = 1) ground state versus the intended solution
  const SpaceSpec spec(5);
  const Eigen::VectorXd problem = ising_diagonal(setup.problem, spec);
  const auto patterns = cardinality_forbidden_patterns(setup.constraint, spec);
  const Eigen::VectorXd qubit = qubit_ising_diagonal(setup.problem);
  const auto bad_bits = cardinality_forbidden_bits(setup.constraint, 5);
  const std::size_t target3 = basis_index(setup.target, spec), target2 = bits_index(setup.target);
  CsvTable flags{{"strength", "ground_state_correct_3state", "ground_state_correct_tf"}, {}};
  for (double w : strengths) {
    Eigen::VectorXd d3 = problem;
    for (std::size_t i : patterns) d3(Eigen::Index(i)) += w;
    for (std::size_t i = 0; i < spec.dim(); ++i) {
      const TritString t = trit_string(i, spec);
      d3(Eigen::Index(i)) += (w - setup.alpha) * double(std::count(t.begin(), t.end(), 2));
    }
    Eigen::VectorXd d2 = qubit;
    for (std::size_t i : bad_bits) d2(Eigen::Index(i)) += w;
    Eigen::Index a3, a2;
    d3.minCoeff(&a3);
    d2.minCoeff(&a2);
    flags.add({w, double(std::size_t(a3) == target3), double(std::size_t(a2) == target2)});
  }
  run.csv("ground_state.csv", flags);
}

void appendix_sweep(Run& run, const ExperimentOptions& opt, const SweepModel& model, const Eigen::VectorXd& problem,
                    double alpha, const TritString& target) {
  const auto times = resource_grid(opt, decades(0, 3, 2), run, "total_times", false);
  run.param("alpha", alpha, true);
  run.param("steps", opt.steps, true);
  run.param("target", bits_to_string(target), true);
  Schedule sch;
  sch.steps = opt.steps;
  const auto trs = projected_scan(problem, model, {alpha}, target, times, sch, opt.exec);
  CsvTable summary{{"total_time", "final_success", "final_survival"}, {}};
  for (std::size_t i = 0; i < trs.size(); ++i) {
    run.csv(indexed("trajectory", i), trajectory_table(trs[i]));
    summary.add({trs[i].total_time, trs[i].final_success, trs[i].final_survival});
  }
  run.csv("summary.csv", summary);

  // spectrum of the Hamiltonian restricted to the allowed manifold
  const auto grid = linear_grid(0.0, kPi / 2, 100);
  const Eigen::VectorXd energy = problem + offset_diagonal({alpha}, model.space());
  std::vector<Eigen::VectorXd> values(grid.size());
  parallel_for(
      int(grid.size()),
      [&](int i) {
        const Mat K = kernel_basis(hermitian_eigendecomposition(model.generator(grid[i])));
        if (K.cols() == 0) return;
        const Mat R = K.adjoint() * energy.cast<cplx>().asDiagonal() * K;
        values[i] = hermitian_eigendecomposition(R).values;
      },
      opt.exec);
  Eigen::Index width = 0;
  for (const auto& v : values) width = std::max(width, v.size());
  CsvTable spec_tab;
  spec_tab.header = {"theta", "manifold_dim"};
  for (Eigen::Index c = 0; c < width; ++c) spec_tab.header.push_back(eig_column(c));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_number(grid[i]), std::to_string(values[i].size())};
    for (Eigen::Index c = 0; c < width; ++c) row.push_back(c < values[i].size() ? format_number(values[i](c)) : "");
    spec_tab.rows.push_back(std::move(row));
  }
  run.csv("spectrum.csv", spec_tab);
}

void fig_dw4(Run& run, const ExperimentOptions& opt) {
  const SpaceSpec spec(4);
  const SweepModel model(spec, clause_entries(domain_wall_clauses(5), spec), 1.0);
  const TritString target(4, 1);
  Eigen::VectorXd problem = Eigen::VectorXd::Zero(Eigen::Index(spec.dim()));
  problem(Eigen::Index(basis_index(target, spec))) = -2.0;
  run.param("encoding", "domain wall, 5 values on 4 qubits", true);
  run.param("target_energy", -2.0, true);
  appendix_sweep(run, opt, model, problem, 2.0, target);
}

void fig_oh5(Run& run, const ExperimentOptions& opt) {
  const SpaceSpec spec(5);
  const CardinalityConstraint c{CardinalityKind::exactly, 1, {0, 1, 2, 3, 4}};
  const SweepModel model(spec, basis_entries(cardinality_forbidden_patterns(c, spec), spec), 1.0);
  TritString target(5, 0);
  target[0] = 1;
  Eigen::VectorXd problem = Eigen::VectorXd::Zero(Eigen::Index(spec.dim()));
  problem(Eigen::Index(basis_index(target, spec))) = -2.0;
  run.param("encoding", "one hot over 5 qubits", true);
  run.param("target_energy", -2.0, false);
  appendix_sweep(run, opt, model, problem, 2.0, target);
}

void fig_g2(Run& run, const ExperimentOptions& opt) {
  const SpaceSpec spec(5);
  const CardinalityConstraint c{CardinalityKind::at_most_zeros, 2, {0, 1, 2, 3, 4}};
  const SweepModel model(spec, basis_entries(cardinality_forbidden_patterns(c, spec), spec), 1.0);
  run.param("constraint", "at most 2 zeros over 5", true);
  run.param("fields", kFields, true);
  appendix_sweep(run, opt, model, ising_diagonal(IsingProblem::fields(kFields), spec), 1.0, {0, 0, 1, 1, 1});
}

void stirap(Run& run, const ExperimentOptions&) {
  const auto tau = linear_grid(0.0, 1.0, 100);
  const auto pulses = stirap_schedule(tau);
  run.param("tau_points", 100, false);
  run.param("pulses", "A = cos(pi tau / 2), B = sin(pi tau / 2)", false);
  CsvTable t{{"tau", "A", "B", "theta", "eig_0", "eig_1", "eig_2", "eig_3", "dark_residual"}, {}};
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const StirapPulse& p = pulses[i];
    const Mat H = stirap_hamiltonian(p);
    const Eigen::VectorXd ev = hermitian_eigendecomposition(H).values;
    Vec dark = Vec::Zero(4);
    dark.head(3) = tilde_basis(p.theta()).first;
    t.add({tau[i], p.A, p.B, p.theta(), ev(0), ev(1), ev(2), ev(3), (H * dark).norm()});
  }
  run.csv("stirap.csv", t);
}

void identities(Run& run, const ExperimentOptions&) {
  run.param("alpha", 1.0, false);
  run.param("theta_points", 10, false);
  CsvTable t{{"identity", "parameter", "residual"}, {}};
  auto row = [&](const std::string& id, double param, double residual) {
    t.rows.push_back({id, format_number(param), format_number(residual)});
  };
  const auto thetas = linear_grid(0.05, kPi / 2 - 0.05, 10);
  for (int m = 2; m <= 5; ++m) {
    double worst = 0.0;
    for (double th : thetas) {
      const QuditDrive d = qudit_drive_matrix(th, 1.0, m);
      const double c2 = std::cos(th) * std::cos(th);
      worst = std::max(worst, max_abs(d.restricted - Mat::Constant(m, m, -c2 * qudit_drive_prefactor(m))));
    }
    row("qudit_drive", m, worst);
  }
  const Eigen::Vector3d z(1.0, -1.0, 0.0);
  for (double phi : linear_grid(0.1, kPi / 2 - 0.1, 6)) {
    double worst = 0.0;
    for (double th : thetas) {
      const BiasCoefficients b = biased_Z_coefficients(phi, th);
      const Vec t0 = tilde_bit(th, 0, phi), t1 = tilde_bit(th, 1, phi);
      auto sandwich = [&](const Vec& a, const Vec& c) { return (a.adjoint() * z.cast<cplx>().asDiagonal() * c)(0).real(); };
      worst = std::max({worst, std::abs(sandwich(t0, t0) - (b.b1 + b.bz)), std::abs(sandwich(t1, t1) - (b.b1 - b.bz)),
                        std::abs(sandwich(t0, t1) - b.bx)});
    }
    row("biased_z", phi, worst);
  }
  double reduction = 0.0;
  for (double th : thetas)
    for (int j = 0; j < 2; ++j) {
      const Vec a = qudit_tilde_j(th, j, 2), b = tilde_bit(th, j);
      reduction = std::max(reduction, std::min((a - b).norm(), (a + b).norm()));
    }
  row("qudit_reduction_m2", 2, reduction);
  for (double th : thetas) {
    const Mat bar = one_hot_states(5, th);
    row("one_hot_orthonormal", th, max_abs(bar.adjoint() * bar - Mat::Identity(5, 5)));
  }
  for (double th : thetas) {
    const OneHotCoefficients k = one_hot_coefficients(5, th);
    row("one_hot_offdiag_closed_form_gap", th, std::abs(k.offdiag - k.offdiag_printed));
  }
  run.csv("identities.csv", t);
}

}  // namespace

std::vector<fs::path> run_experiment(const std::string& name, const ExperimentOptions& opt) {
  if (!is_experiment(name)) throw InputError("unknown experiment '" + name + "'");
  if (opt.steps < 1) throw InputError("steps must be positive");
  Run run{name, opt.out_dir / name, {}, {}};
  if (name == "fig2-spectrum") fig2(run, opt);
  else if (name == "fig3-dissipative") fig3(run, opt);
  else if (name == "fig4-measurement") fig4(run, opt);
  else if (name == "fig5-spectra") fig5(run, opt);
  else if (name == "fig6-adiabatic") fig6(run, opt);
  else if (name == "fig7-scan") fig7(run, opt);
  else if (name == "figE-dw4") fig_dw4(run, opt);
  else if (name == "figE-oh5") fig_oh5(run, opt);
  else if (name == "figE-g2") fig_g2(run, opt);
  else if (name == "stirap-check") stirap(run, opt);
  else identities(run, opt);
  run.finish();
  return run.files;
}

}  // namespace zeno
