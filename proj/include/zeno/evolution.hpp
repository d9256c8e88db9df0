#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zeno/constraints.hpp"
#include "zeno/hilbert.hpp"
#include "zeno/operators.hpp"
#include "zeno/parallel.hpp"

namespace zeno {

// Forbidden states as a function of theta: fixed constraint entries plus weight * xi_j(theta) on every unit.
class SweepModel {
 public:
  SweepModel(SpaceSpec spec, ForbiddenSet constraints = {}, double unit_weight = 1.0, std::vector<double> phis = {});

  const SpaceSpec& space() const { return spec_; }
  double unit_weight() const { return unit_weight_; }
  const ForbiddenSet& constraints() const { return constraints_; }

  Mat generator(double theta) const;
  ForbiddenSet forbidden_set(double theta) const;
  std::vector<Vec> unit_states(double theta) const;

  // 1 where no constraint pattern matches; only defined when every constraint is a basis pattern.
  const Eigen::VectorXd& allowed_mask() const;

 private:
  SpaceSpec spec_;
  ForbiddenSet constraints_;
  double unit_weight_;
  std::vector<double> phis_;
  Mat static_part_;
  Eigen::VectorXd mask_;
  bool diagonal_constraints_ = true;
};

struct Schedule {
  int steps = 1000;
  double total_time = 1.0;
  double theta_end = 1.5707963267948966;
  std::function<double(double)> theta_of;  // fraction in (0,1] to theta; linear when empty

  // theta held during step k (value at the end of the interval).
  double theta(int k) const;
  double dt() const { return total_time / steps; }
  void validate() const;
};

struct StepRecord {
  double theta = 0.0;
  double survival = 1.0;
  double success = 0.0;
};

struct Trajectory {
  double total_time = 0.0;
  std::vector<StepRecord> steps;
  double final_success = 0.0;
  double final_survival = 1.0;
};

std::vector<Trajectory> dissipative_scan(const SweepModel& model, const TritString& target,
                                         const std::vector<double>& total_times, const Schedule& base,
                                         Exec exec = Exec::parallel);
Trajectory dissipative_sweep(const SweepModel& model, const TritString& target, const Schedule& sch,
                             Exec exec = Exec::parallel);

// Projective measurements at n evenly spaced theta values ending at theta_end.
Trajectory measurement_sweep(const SweepModel& model, const TritString& target, long n_measurements,
                             double theta_end = 1.5707963267948966);

// H(theta) = forbidden generator + problem + offset; problem may be empty.
std::vector<Trajectory> adiabatic_scan(const SweepModel& model, const Mat& problem, const OffsetSpec& offset,
                                       const TritString& target, const std::vector<double>& total_times,
                                       const Schedule& base, Exec exec = Exec::parallel);
Trajectory adiabatic_sweep(const SweepModel& model, const Mat& problem, const OffsetSpec& offset,
                           const TritString& target, const Schedule& sch, Exec exec = Exec::parallel);

// Each step: project onto the kernel of the forbidden generator, then evolve under diag(problem) + offset
// restricted to that kernel (the strong-projection limit).
// Throws ProtocolFailure when the kernel is empty.
std::vector<Trajectory> projected_scan(const Eigen::VectorXd& problem_diag, const SweepModel& model,
                                       const OffsetSpec& offset, const TritString& target,
                                       const std::vector<double>& total_times, const Schedule& base,
                                       Exec exec = Exec::parallel);
Trajectory projected_sweep(const Eigen::VectorXd& problem_diag, const SweepModel& model, const OffsetSpec& offset,
                           const TritString& target, const Schedule& sch, Exec exec = Exec::parallel);

// Final (unnormalised) state of a projected sweep with no problem Hamiltonian and no offset.
Vec projected_final_state(const SweepModel& model, const Schedule& sch, Exec exec = Exec::parallel);

// Qubit-space sweep of -(1-s) sum X + s (problem + penalty * forbidden), s = (k+1)/steps.
// Records store s in the theta field.
std::vector<Trajectory> tf_scan(const Eigen::VectorXd& problem_diag, double penalty,
                                const std::vector<std::size_t>& forbidden_bits, std::size_t target_bits,
                                const std::vector<double>& total_times, const Schedule& base,
                                Exec exec = Exec::parallel);
Trajectory tf_sweep(const Eigen::VectorXd& problem_diag, double penalty, const std::vector<std::size_t>& forbidden_bits,
                    std::size_t target_bits, const Schedule& sch, Exec exec = Exec::parallel);

// Diagonal of an Ising problem over 2^n bit strings (bit j of the index is unit j).
Eigen::VectorXd qubit_ising_diagonal(const IsingProblem& p);
// Bit-string index of a trit string without u digits.
std::size_t bits_index(const TritString& bits);
// Qubit-space indices of bit strings violating the constraint.
std::vector<std::size_t> cardinality_forbidden_bits(const CardinalityConstraint& c, int n);

struct StrengthScanSetup {
  IsingProblem problem;
  CardinalityConstraint constraint;
  double alpha = 1.0;
  TritString target;
  int steps = 1000;
};

struct StrengthScanRow {
  double strength = 0.0;
  double success_3state = 0.0;
  double success_tf = 0.0;
  double success_projected = 0.0;
};

std::vector<StrengthScanRow> constraint_strength_scan(const std::vector<double>& strengths, double total_time,
                                                      const StrengthScanSetup& setup, Exec exec = Exec::parallel);
// One table per total time; eigendecompositions are shared across the times.
std::vector<std::vector<StrengthScanRow>> constraint_strength_scan(const std::vector<double>& strengths,
                                                                   const std::vector<double>& total_times,
                                                                   const StrengthScanSetup& setup,
                                                                   Exec exec = Exec::parallel);

enum class SolveStatus { solved, unsatisfiable, gave_up };

struct IterativeResult {
  SolveStatus status = SolveStatus::gave_up;
  std::vector<int> assignment;
  int rounds = 0;
  int backtracks = 0;
};

// Final projected states keyed by reduced formula, shared across solver calls.
struct SweepCache {
  std::map<std::string, std::optional<Vec>> states;
};

IterativeResult iterative_sat_solve(const CnfFormula& f, double theta_stop, double total_time, std::uint64_t seed,
                                    int steps = 1000, SweepCache* cache = nullptr, Exec exec = Exec::parallel);

struct FractionEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

FractionEstimate sampled_u_fraction(const CnfFormula& f, double theta_stop, double total_time, long n_samples,
                                    std::uint64_t seed, int steps = 1000, SweepCache* cache = nullptr,
                                    Exec exec = Exec::parallel);

// Sequential per-unit sampling in the {0,1,u} basis with collapse; state need not be normalised.
TritString sample_units(const Vec& state, const SpaceSpec& spec, std::mt19937_64& rng);

}  // namespace zeno
