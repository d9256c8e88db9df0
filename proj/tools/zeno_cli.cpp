#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zeno/analysis.hpp"
#include "zeno/constraints.hpp"
#include "zeno/error.hpp"
#include "zeno/evolution.hpp"
#include "zeno/experiments.hpp"
#include "zeno/states.hpp"

namespace fs = std::filesystem;
using namespace zeno;

namespace {

struct InstanceArgs {
  bool bundled = false;
  std::string cnf;
  std::vector<std::string> add_clauses;

  void attach(CLI::App* app) {
    app->add_flag("--bundled", bundled, "use the bundled 45-clause instance (default)");
    app->add_option("--cnf", cnf, "DIMACS CNF file")->check(CLI::ExistingFile);
    app->add_option("--add-clause", add_clauses, "extra clause as 1-based DIMACS literals, e.g. \"1 2 3\"");
  }

  CnfFormula load() const {
    if (bundled && !cnf.empty()) throw InputError("--bundled and --cnf are exclusive");
    CnfFormula f = cnf.empty() ? load_bundled_instance() : read_dimacs_file(cnf);
    for (const auto& c : add_clauses) {
      f.clauses.push_back(parse_clause(c));
      f.planted.reset();
    }
    f.validate();
    return f;
  }
};

fs::path default_out_dir() {
  const char* env = std::getenv("ZENO_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path("runs");
}

void save_config(const CLI::App& app, const fs::path& dir) {
  write_file_atomic(dir / "effective_config.ini", app.config_to_str(true, false));
}

TritString parse_target(const std::string& s, int n) {
  TritString t = bits_from_string(s);
  if (int(t.size()) != n) throw InputError("target length does not match the instance");
  return t;
}

void write_trajectories(const fs::path& dir, const std::vector<Trajectory>& trs, const std::string& resource) {
  CsvTable summary{{resource, "final_success", "final_survival"}, {}};
  for (std::size_t i = 0; i < trs.size(); ++i) {
    CsvTable t{{"theta", "survival", "success"}, {}};
    for (const auto& r : trs[i].steps) t.add({r.theta, r.survival, r.success});
    char name[32];
    std::snprintf(name, sizeof name, "trajectory_%02zu.csv", i);
    write_file_atomic(dir / name, t.str());
    summary.add({trs[i].total_time, trs[i].final_success, trs[i].final_survival});
  }
  write_file_atomic(dir / "summary.csv", summary.str());
  std::cout << summary.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for optimisation with Zeno-projected three-level units"};
  app.set_config("--config", "", "read options from an INI/TOML file; flags given on the command line win");
  app.require_subcommand(1);
  app.fallthrough();  // global options may also follow the subcommand
  std::string out = default_out_dir().string();
  bool serial = false;
  app.add_option("--out", out, "output directory (default $ZENO_OUT_DIR or ./runs)");
  app.add_flag("--serial", serial, "disable OpenMP parallel kernels");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a catalog experiment")->configurable();
  std::string exp_name;
  ExperimentOptions exp_opt;
  bool list_only = false;
  exp->add_option("name", exp_name, "experiment name");
  exp->add_flag("--list", list_only, "print the catalog and exit");
  exp->add_option("--steps", exp_opt.steps, "sweep steps")->check(CLI::PositiveNumber);
  exp->add_option("--grid", exp_opt.grid, "override the resource grid (times, counts or strengths)");
  exp->add_option("--times", exp_opt.times, "fig7-scan total times");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of the generator along theta")->configurable();
  InstanceArgs spec_inst;
  spec_inst.attach(spec_cmd);
  std::string spec_engine = "dissipative";
  double spec_alpha = 0.0;
  int spec_points = 100;
  spec_cmd->add_option("--engine", spec_engine, "dissipative (decay rates) or adiabatic (energies)")
      ->check(CLI::IsMember({"dissipative", "adiabatic"}));
  spec_cmd->add_option("--alpha", spec_alpha, "offset strength (adiabatic)");
  spec_cmd->add_option("--points", spec_points, "theta grid points")->check(CLI::PositiveNumber);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "single-protocol sweeps")->configurable();
  InstanceArgs sweep_inst;
  sweep_inst.attach(sweep);
  std::string engine;
  std::vector<double> times{1.0};
  std::vector<long> counts{100};
  double alpha = 0.0, penalty = 0.0;
  int steps = 1000;
  std::string target;
  sweep->add_option("--engine", engine, "protocol")
      ->required()
      ->check(CLI::IsMember({"dissipative", "measurement", "adiabatic", "projected", "tf"}));
  sweep->add_option("-T,--total-time", times, "total runtimes");
  sweep->add_option("-n,--measurements", counts, "measurement counts (measurement engine)");
  sweep->add_option("--alpha", alpha, "offset strength");
  sweep->add_option("--penalty", penalty, "constraint penalty (tf engine)");
  sweep->add_option("--steps", steps, "piecewise-constant steps")->check(CLI::PositiveNumber);
  sweep->add_option("--target", target, "target bit string (default: planted assignment, or 00111 for tf)");

  // witness
  auto* wit = app.add_subcommand("witness", "decide satisfiability from the generator kernel");
  InstanceArgs wit_inst;
  wit_inst.attach(wit);
  double wit_theta = 0.2;
  wit->add_option("--theta", wit_theta, "probe angle in (0, pi/2]");

  // solve-iterative
  auto* solve = app.add_subcommand("solve-iterative", "repeated partial sweeps with measurement")->configurable();
  InstanceArgs solve_inst;
  solve_inst.attach(solve);
  std::uint64_t seed = 0;
  double theta_stop = kPi / 4, solve_T = 1.0;
  int solve_steps = 1000;
  long samples = 0;
  solve->add_option("--seed", seed, "random seed")->required();
  solve->add_option("--theta-stop", theta_stop, "sweep end angle");
  solve->add_option("-T,--total-time", solve_T, "runtime of each sweep");
  solve->add_option("--steps", solve_steps, "steps per sweep")->check(CLI::PositiveNumber);
  solve->add_option("--samples", samples, "instead of solving, estimate the u fraction from this many samples");

  // generate
  auto* gen = app.add_subcommand("generate", "write a planted 3-SAT instance")->configurable();
  int planted_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--planted", planted_n, "number of variables")->required();
  gen->add_option("--seed", gen_seed, "random seed")->required();
  gen->add_option("-o,--output", gen_out, "output CNF path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const Exec exec = serial ? Exec::serial : Exec::parallel;
  const fs::path out_dir(out);

  try {
    if (*exp) {
      if (list_only) {
        for (const auto& e : experiment_catalog()) std::cout << e.name << "  " << e.summary << "\n";
        return 0;
      }
      if (exp_name.empty()) throw InputError("experiment name required (see --list)");
      exp_opt.out_dir = out_dir;
      exp_opt.exec = exec;
      if (!is_experiment(exp_name)) throw InputError("unknown experiment '" + exp_name + "'");
      for (const auto& f : run_experiment(exp_name, exp_opt)) std::cout << f.string() << "\n";
      save_config(app, out_dir / exp_name);
    } else if (*spec_cmd) {
      const CnfFormula f = spec_inst.load();
      const auto grid = linear_grid(0.0, kPi / 2, spec_points);
      const SpaceSpec space(f.n_vars);
      const Mat off = offset_hamiltonian({spec_alpha}, space);
      const bool decay = spec_engine == "dissipative";
      const auto scan = spectrum_vs_theta(
          [&](double th) { return decay ? formula_generator(f, th) : Mat(formula_generator(f, th) + off); }, grid,
          decay ? SpectrumQuantity::magnitude : SpectrumQuantity::value, exec);
      CsvTable t;
      t.header.push_back("theta");
      for (Eigen::Index c = 0; c < scan.tracked.cols(); ++c) {
        char name[32];
        std::snprintf(name, sizeof name, "eig_%03ld", long(c));
        t.header.push_back(name);
      }
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (Eigen::Index c = 0; c < scan.tracked.cols(); ++c) row.push_back(scan.tracked(Eigen::Index(i), c));
        t.add(row);
      }
      const fs::path dir = out_dir / "spectrum";
      write_file_atomic(dir / "spectrum.csv", t.str());
      save_config(app, dir);
      std::cout << (dir / "spectrum.csv").string() << "\n";
      std::cout << "class " << scan.lowest << "/" << scan.cluster << "/" << scan.rest << "\n";
    } else if (*sweep) {
      const CnfFormula f = sweep_inst.load();
      const SpaceSpec space(f.n_vars);
      const SweepModel model(space, clause_entries(f, space), 1.0);
      Schedule sch;
      sch.steps = steps;
      TritString tgt;
      if (!target.empty()) tgt = parse_target(target, f.n_vars);
      else if (engine == "tf") tgt = {0, 0, 1, 1, 1};
      else if (f.planted) tgt = *f.planted;
      else throw InputError("--target required: the instance has no planted assignment");
      const fs::path dir = out_dir / ("sweep-" + engine);
      if (engine == "dissipative") {
        write_trajectories(dir, dissipative_scan(model, tgt, times, sch, exec), "total_time");
      } else if (engine == "adiabatic") {
        write_trajectories(dir, adiabatic_scan(model, Mat(), {alpha}, tgt, times, sch, exec), "total_time");
      } else if (engine == "projected") {
        try {
          write_trajectories(dir, projected_scan(Eigen::VectorXd(), model, {alpha}, tgt, times, sch, exec),
                             "total_time");
        } catch (const ProtocolFailure& e) {
          std::cout << "protocol failure: " << e.what() << "\n";
          save_config(app, dir);
          return 1;
        }
      } else if (engine == "measurement") {
        std::vector<Trajectory> trs;
        for (long n : counts) trs.push_back(measurement_sweep(model, tgt, n));
        write_trajectories(dir, trs, "n_measurements");
      } else {
        // fields problem with an exactly-three-ones constraint over five qubits
        if (int(tgt.size()) != 5) throw InputError("tf engine runs the five-variable fields problem");
        const IsingProblem p = IsingProblem::fields({-0.67513783, -0.62099006, -0.14675767, 0.72688415, 0.56602992});
        const auto bad = cardinality_forbidden_bits({CardinalityKind::exactly, 3, {0, 1, 2, 3, 4}}, 5);
        write_trajectories(dir, tf_scan(qubit_ising_diagonal(p), penalty, bad, bits_index(tgt), times, sch, exec),
                           "total_time");
      }
      save_config(app, dir);
    } else if (*wit) {
      std::cout << to_string(satisfiability_witness(wit_inst.load(), wit_theta)) << "\n";
    } else if (*solve) {
      const CnfFormula f = solve_inst.load();
      SweepCache cache;
      if (samples > 0) {
        const FractionEstimate e = sampled_u_fraction(f, theta_stop, solve_T, samples, seed, solve_steps, &cache, exec);
        std::cout << "u_fraction " << format_number(e.mean) << " std_error " << format_number(e.std_error)
                  << " samples " << e.samples << "\n";
        return 0;
      }
      const IterativeResult r = iterative_sat_solve(f, theta_stop, solve_T, seed, solve_steps, &cache, exec);
      switch (r.status) {
        case SolveStatus::solved:
          std::cout << bits_to_string(r.assignment) << "\n";
          break;
        case SolveStatus::unsatisfiable:
          std::cout << "unsatisfiable\n";
          break;
        case SolveStatus::gave_up:
          std::cout << "gave up after " << r.rounds << " rounds\n";
          return 1;
      }
      std::cerr << "rounds " << r.rounds << " backtracks " << r.backtracks << "\n";
    } else if (*gen) {
      const CnfFormula f = planted_generator(planted_n, gen_seed);
      std::ostringstream text;
      write_dimacs(text, f);
      if (gen_out.empty()) std::cout << text.str();
      else write_file_atomic(gen_out, text.str());
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProtocolFailure& e) {
    std::cerr << "protocol failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
