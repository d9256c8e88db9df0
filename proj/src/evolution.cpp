#include "zeno/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "zeno/error.hpp"
#include "zeno/states.hpp"

namespace zeno {

// ---------------------------------------------------------------- model

namespace {

// Entry whose local state is a single basis vector: returns that local index.
std::optional<Eigen::Index> basis_position(const Vec& v) {
  Eigen::Index pos = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == cplx(0.0)) continue;
    if (pos >= 0 || std::abs(std::abs(v(i)) - 1.0) > 1e-15) return std::nullopt;
    pos = i;
  }
  if (pos < 0) return std::nullopt;
  return pos;
}

// Full-space indices whose digits on `units` spell the local index `local`.
std::vector<std::size_t> matching_indices(const SpaceSpec& spec, const std::vector<int>& units, Eigen::Index local) {
  std::vector<int> want(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    want[i] = int(local % spec.local_dim());
    local /= spec.local_dim();
  }
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < spec.dim(); ++idx) {
    const TritString t = trit_string(idx, spec);
    bool ok = true;
    for (std::size_t i = 0; i < units.size() && ok; ++i) ok = t[units[i]] == want[i];
    if (ok) out.push_back(idx);
  }
  return out;
}

void add_unit_rank1(Mat& G, const Vec& v, int unit, double weight, const SpaceSpec& spec) {
  const Eigen::Index d = spec.local_dim();
  Eigen::Index stride = 1;
  for (int j = 0; j < unit; ++j) stride *= d;
  const Eigen::Index N = Eigen::Index(spec.dim());
  const Mat block = weight * (v * v.adjoint());
  for (Eigen::Index outer = 0; outer < N; outer += stride * d)
    for (Eigen::Index inner = 0; inner < stride; ++inner) {
      const Eigen::Index base = outer + inner;
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) G(base + a * stride, base + b * stride) += block(a, b);
    }
}

}  // namespace

SweepModel::SweepModel(SpaceSpec spec, ForbiddenSet constraints, double unit_weight, std::vector<double> phis)
    : spec_(spec), constraints_(std::move(constraints)), unit_weight_(unit_weight), phis_(std::move(phis)) {
  if (unit_weight_ < 0.0) throw InputError("unit weight must be non-negative");
  if (!phis_.empty() && int(phis_.size()) != spec_.n_units) throw InputError("one bias angle per unit required");
  if (!phis_.empty() && spec_.levels != 2) throw UnsupportedError("biased driving is only defined for m = 2");
  const Eigen::Index N = Eigen::Index(spec_.dim());
  static_part_ = Mat::Zero(N, N);
  mask_ = Eigen::VectorXd::Ones(N);
  for (const ForbiddenEntry& e : constraints_) {
    if (e.weight < 0.0) throw InputError("forbidden-state weights must be non-negative");
    const auto pos = basis_position(e.state);
    if (pos) {
      for (std::size_t i : matching_indices(spec_, e.units, *pos)) {
        static_part_(Eigen::Index(i), Eigen::Index(i)) += e.weight;
        if (e.weight > 0.0) mask_(Eigen::Index(i)) = 0.0;
      }
    } else {
      diagonal_constraints_ = false;
      if (e.weight > 0.0) static_part_ += e.weight * embed_local(e.state * e.state.adjoint(), e.units, spec_);
    }
  }
}

std::vector<Vec> SweepModel::unit_states(double theta) const {
  std::vector<Vec> out;
  for (int j = 0; j < spec_.n_units; ++j)
    out.push_back(xi_state(theta, phis_.empty() ? kUnbiased : phis_[j], spec_.levels));
  return out;
}

Mat SweepModel::generator(double theta) const {
  Mat G = static_part_;
  if (unit_weight_ > 0.0) {
    const std::vector<Vec> xs = unit_states(theta);
    for (int j = 0; j < spec_.n_units; ++j) add_unit_rank1(G, xs[j], j, unit_weight_, spec_);
  }
  return G;
}

ForbiddenSet SweepModel::forbidden_set(double theta) const {
  ForbiddenSet f = constraints_;
  const ForbiddenSet units = unit_forbidden_entries(theta, spec_, unit_weight_, phis_);
  f.insert(f.end(), units.begin(), units.end());
  return f;
}

const Eigen::VectorXd& SweepModel::allowed_mask() const {
  if (!diagonal_constraints_) throw UnsupportedError("constraint entries are not all basis patterns");
  return mask_;
}

// ---------------------------------------------------------------- schedule

double Schedule::theta(int k) const {
  const double frac = double(k + 1) / steps;
  return theta_of ? theta_of(frac) : theta_end * frac;
}

void Schedule::validate() const {
  if (steps < 1) throw InputError("schedule needs at least one step");
  if (!(total_time >= 0.0)) throw InputError("total time must be non-negative");
  checked_theta(theta_end);
}

// ---------------------------------------------------------------- helpers

namespace {

void check_times(const std::vector<double>& ts) {
  if (ts.empty()) throw InputError("at least one total time required");
  for (double t : ts)
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("total times must be finite and non-negative");
}

std::vector<Trajectory> new_trajectories(const std::vector<double>& ts, int steps) {
  std::vector<Trajectory> out(ts.size());
  for (std::size_t c = 0; c < ts.size(); ++c) {
    out[c].total_time = ts[c];
    out[c].steps.reserve(std::size_t(steps));
  }
  return out;
}

void record(std::vector<Trajectory>& trs, const Mat& states, Eigen::Index target, double theta) {
  for (std::size_t c = 0; c < trs.size(); ++c) {
    const Eigen::Index col = Eigen::Index(c);
    StepRecord r{theta, states.col(col).squaredNorm(), std::norm(states(target, col))};
    trs[c].steps.push_back(r);
    trs[c].final_survival = r.survival;
    trs[c].final_success = r.success;
  }
}

std::vector<double> step_lengths(const std::vector<double>& ts, int steps) {
  std::vector<double> dts;
  for (double t : ts) dts.push_back(t / steps);
  return dts;
}

Mat initial_columns(const SpaceSpec& spec, std::size_t count) {
  Mat psi = Mat::Zero(Eigen::Index(spec.dim()), Eigen::Index(count));
  psi.row(Eigen::Index(spec.dim()) - 1).setOnes();
  return psi;
}

Trajectory single(std::vector<Trajectory> trs) { return std::move(trs.front()); }

}  // namespace

// ---------------------------------------------------------------- engines

std::vector<Trajectory> dissipative_scan(const SweepModel& model, const TritString& target,
                                         const std::vector<double>& total_times, const Schedule& base, Exec exec) {
  base.validate();
  check_times(total_times);
  const SpaceSpec& spec = model.space();
  const Eigen::Index tidx = Eigen::Index(basis_index(target, spec));
  Mat psi = initial_columns(spec, total_times.size());
  auto trs = new_trajectories(total_times, base.steps);
  const auto dts = step_lengths(total_times, base.steps);
  for_each_step_eigensystem(
      base.steps, [&](int k) { return model.generator(base.theta(k)); },
      [&](int k, const Eigensystem& es) {
        evolve_columns(psi, es, dts, StepMode::decay);
        record(trs, psi, tidx, base.theta(k));
      },
      exec);
  return trs;
}

Trajectory dissipative_sweep(const SweepModel& model, const TritString& target, const Schedule& sch, Exec exec) {
  return single(dissipative_scan(model, target, {sch.total_time}, sch, exec));
}

Trajectory measurement_sweep(const SweepModel& model, const TritString& target, long n_measurements,
                             double theta_end) {
  if (n_measurements < 1) throw InputError("at least one measurement required");
  checked_theta(theta_end);
  const SpaceSpec& spec = model.space();
  const Eigen::Index N = Eigen::Index(spec.dim());
  const Eigen::Index d = spec.local_dim();
  const Eigen::Index tidx = Eigen::Index(basis_index(target, spec));
  const Eigen::VectorXd& mask = model.allowed_mask();

  // every state and projector involved is real
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(N);
  psi(N - 1) = 1.0;
  std::vector<Eigen::Index> stride(spec.n_units, 1);
  for (int j = 1; j < spec.n_units; ++j) stride[j] = stride[j - 1] * d;

  Trajectory tr;
  tr.total_time = double(n_measurements);
  tr.steps.reserve(std::size_t(n_measurements));
  std::vector<double> amp(d);
  for (long k = 0; k < n_measurements; ++k) {
    const double theta = theta_end * double(k + 1) / double(n_measurements);
    if (model.unit_weight() > 0.0) {
      const std::vector<Vec> xs = model.unit_states(theta);
      for (int j = 0; j < spec.n_units; ++j) {
        const Eigen::VectorXd v = xs[j].real();
        const Eigen::Index s = stride[j];
        for (Eigen::Index outer = 0; outer < N; outer += s * d)
          for (Eigen::Index inner = 0; inner < s; ++inner) {
            const Eigen::Index b = outer + inner;
            double dot = 0.0;
            for (Eigen::Index a = 0; a < d; ++a) dot += v(a) * psi(b + a * s);
            for (Eigen::Index a = 0; a < d; ++a) psi(b + a * s) -= dot * v(a);
          }
      }
    }
    psi.array() *= mask.array();
    StepRecord r{theta, psi.squaredNorm(), psi(tidx) * psi(tidx)};
    tr.steps.push_back(r);
  }
  tr.final_survival = tr.steps.back().survival;
  tr.final_success = tr.steps.back().success;
  return tr;
}

std::vector<Trajectory> adiabatic_scan(const SweepModel& model, const Mat& problem, const OffsetSpec& offset,
                                       const TritString& target, const std::vector<double>& total_times,
                                       const Schedule& base, Exec exec) {
  base.validate();
  check_times(total_times);
  const SpaceSpec& spec = model.space();
  const Eigen::Index N = Eigen::Index(spec.dim());
  if (problem.size() != 0 && (problem.rows() != N || problem.cols() != N))
    throw InputError("problem Hamiltonian dimension does not match the space");
  Mat fixed = offset_hamiltonian(offset, spec);
  if (problem.size() != 0) fixed += problem;
  const Eigen::Index tidx = Eigen::Index(basis_index(target, spec));
  Mat psi = initial_columns(spec, total_times.size());
  auto trs = new_trajectories(total_times, base.steps);
  const auto dts = step_lengths(total_times, base.steps);
  for_each_step_eigensystem(
      base.steps, [&](int k) { return Mat(model.generator(base.theta(k)) + fixed); },
      [&](int k, const Eigensystem& es) {
        evolve_columns(psi, es, dts, StepMode::unitary);
        record(trs, psi, tidx, base.theta(k));
      },
      exec);
  return trs;
}

Trajectory adiabatic_sweep(const SweepModel& model, const Mat& problem, const OffsetSpec& offset,
                           const TritString& target, const Schedule& sch, Exec exec) {
  return single(adiabatic_scan(model, problem, offset, target, {sch.total_time}, sch, exec));
}

namespace {

Mat kernel_of(const Eigensystem& es, double theta) {
  Mat K = kernel_basis(es);
  if (K.cols() == 0) {
    std::ostringstream msg;
    msg << "allowed subspace is empty at theta = " << theta;
    throw ProtocolFailure(msg.str());
  }
  return K;
}

void project_onto_kernel(Mat& psi, const Eigensystem& es, double theta) {
  const Mat K = kernel_of(es, theta);
  psi = K * (K.adjoint() * psi);
}

}  // namespace

std::vector<Trajectory> projected_scan(const Eigen::VectorXd& problem_diag, const SweepModel& model,
                                       const OffsetSpec& offset, const TritString& target,
                                       const std::vector<double>& total_times, const Schedule& base, Exec exec) {
  base.validate();
  check_times(total_times);
  const SpaceSpec& spec = model.space();
  const Eigen::Index N = Eigen::Index(spec.dim());
  Eigen::VectorXd energy = offset_diagonal(offset, spec);
  if (problem_diag.size() != 0) {
    if (problem_diag.size() != N) throw InputError("problem diagonal length does not match the space");
    energy += problem_diag;
  }
  const Eigen::Index tidx = Eigen::Index(basis_index(target, spec));
  Mat psi = initial_columns(spec, total_times.size());
  auto trs = new_trajectories(total_times, base.steps);
  const auto dts = step_lengths(total_times, base.steps);
  for_each_step_eigensystem(
      base.steps, [&](int k) { return model.generator(base.theta(k)); },
      [&](int k, const Eigensystem& es) {
        const Mat K = kernel_of(es, base.theta(k));
        // Zeno dynamics: the Hamiltonian acts only through its restriction to the allowed subspace
        const Mat restricted = K.adjoint() * energy.cast<cplx>().asDiagonal() * K;
        Mat coeffs = K.adjoint() * psi;
        evolve_columns(coeffs, hermitian_eigendecomposition(restricted), dts, StepMode::unitary);
        psi = K * coeffs;
        record(trs, psi, tidx, base.theta(k));
      },
      exec);
  return trs;
}

Trajectory projected_sweep(const Eigen::VectorXd& problem_diag, const SweepModel& model, const OffsetSpec& offset,
                           const TritString& target, const Schedule& sch, Exec exec) {
  return single(projected_scan(problem_diag, model, offset, target, {sch.total_time}, sch, exec));
}

Vec projected_final_state(const SweepModel& model, const Schedule& sch, Exec exec) {
  sch.validate();
  Mat psi = initial_columns(model.space(), 1);
  for_each_step_eigensystem(
      sch.steps, [&](int k) { return model.generator(sch.theta(k)); },
      [&](int k, const Eigensystem& es) { project_onto_kernel(psi, es, sch.theta(k)); }, exec);
  return psi.col(0);
}

std::vector<Trajectory> tf_scan(const Eigen::VectorXd& problem_diag, double penalty,
                                const std::vector<std::size_t>& forbidden_bits, std::size_t target_bits,
                                const std::vector<double>& total_times, const Schedule& base, Exec exec) {
  base.validate();
  check_times(total_times);
  if (penalty < 0.0) throw InputError("penalty must be non-negative");
  const Eigen::Index N = problem_diag.size();
  if (Eigen::Index(target_bits) >= N) throw InputError("target bit string out of range");
  Eigen::VectorXd diag = problem_diag;
  for (std::size_t i : forbidden_bits) {
    if (Eigen::Index(i) >= N) throw InputError("forbidden bit string out of range");
    diag(Eigen::Index(i)) += penalty;
  }
  Mat psi = Mat::Constant(N, Eigen::Index(total_times.size()), cplx(1.0 / std::sqrt(double(N)), 0.0));
  auto trs = new_trajectories(total_times, base.steps);
  const auto dts = step_lengths(total_times, base.steps);
  auto s_of = [&](int k) { return double(k + 1) / base.steps; };
  for_each_step_eigensystem(
      base.steps, [&](int k) { return transverse_field_hamiltonian(s_of(k), diag); },
      [&](int k, const Eigensystem& es) {
        evolve_columns(psi, es, dts, StepMode::unitary);
        record(trs, psi, Eigen::Index(target_bits), s_of(k));
      },
      exec);
  return trs;
}

Trajectory tf_sweep(const Eigen::VectorXd& problem_diag, double penalty, const std::vector<std::size_t>& forbidden_bits,
                    std::size_t target_bits, const Schedule& sch, Exec exec) {
  return single(tf_scan(problem_diag, penalty, forbidden_bits, target_bits, {sch.total_time}, sch, exec));
}

Eigen::VectorXd qubit_ising_diagonal(const IsingProblem& p) {
  p.validate();
  const int n = p.size();
  if (n < 1 || n > 24) throw UnsupportedError("qubit space limited to 24 variables");
  const Eigen::Index N = Eigen::Index(1) << n;
  Eigen::VectorXd d(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      const double zj = ((i >> j) & 1) ? -1.0 : 1.0;
      e += p.h[j] * zj;
      for (int k = j + 1; k < n; ++k) e += p.J(j, k) * zj * (((i >> k) & 1) ? -1.0 : 1.0);
    }
    d(i) = e;
  }
  return d;
}

std::size_t bits_index(const TritString& bits) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0 && bits[j] != 1) throw InputError("bit string may not contain u");
    idx |= std::size_t(bits[j]) << j;
  }
  return idx;
}

std::vector<std::size_t> cardinality_forbidden_bits(const CardinalityConstraint& c, int n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < (std::size_t(1) << n); ++i) {
    std::vector<int> bits(n);
    for (int j = 0; j < n; ++j) bits[j] = int((i >> j) & 1);
    if (!cardinality_holds(c, bits)) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<StrengthScanRow>> constraint_strength_scan(const std::vector<double>& strengths,
                                                                   const std::vector<double>& total_times,
                                                                   const StrengthScanSetup& setup, Exec exec) {
  if (strengths.empty()) throw InputError("at least one strength required");
  for (double w : strengths)
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("strengths must be positive");
  check_times(total_times);
  const int n = setup.problem.size();
  const SpaceSpec spec(n);
  const OffsetSpec offset{setup.alpha};
  Schedule sch;
  sch.steps = setup.steps;

  const auto patterns = cardinality_forbidden_patterns(setup.constraint, spec);
  const Eigen::VectorXd problem_diag = ising_diagonal(setup.problem, spec);
  const Mat problem = problem_diag.cast<cplx>().asDiagonal();

  const SweepModel reference(spec, basis_entries(patterns, spec, 1.0), 1.0);
  const auto projected = projected_scan(problem_diag, reference, offset, setup.target, total_times, sch, exec);

  const Eigen::VectorXd qubit_problem = qubit_ising_diagonal(setup.problem);
  const auto forbidden_bits = cardinality_forbidden_bits(setup.constraint, n);
  const std::size_t target_bits = bits_index(setup.target);

  std::vector<std::vector<StrengthScanRow>> out(total_times.size());
  for (double w : strengths) {
    const SweepModel model(spec, basis_entries(patterns, spec, w), w);
    const auto three = adiabatic_scan(model, problem, offset, setup.target, total_times, sch, exec);
    const auto tf = tf_scan(qubit_problem, w, forbidden_bits, target_bits, total_times, sch, exec);
    for (std::size_t c = 0; c < total_times.size(); ++c)
      out[c].push_back({w, three[c].final_success, tf[c].final_success, projected[c].final_success});
  }
  return out;
}

std::vector<StrengthScanRow> constraint_strength_scan(const std::vector<double>& strengths, double total_time,
                                                      const StrengthScanSetup& setup, Exec exec) {
  return constraint_strength_scan(strengths, std::vector<double>{total_time}, setup, exec).front();
}

// ---------------------------------------------------------------- iterative solver

TritString sample_units(const Vec& state, const SpaceSpec& spec, std::mt19937_64& rng) {
  if (state.size() != Eigen::Index(spec.dim())) throw InputError("state dimension does not match the space");
  Eigen::VectorXd prob = state.cwiseAbs2();
  if (!(prob.sum() > 0.0)) throw InputError("cannot sample from a zero state");
  const int d = spec.local_dim();
  TritString out(spec.n_units);
  std::size_t stride = 1;
  for (int j = 0; j < spec.n_units; ++j) {
    std::vector<double> marginal(d, 0.0);
    for (Eigen::Index i = 0; i < prob.size(); ++i) marginal[(std::size_t(i) / stride) % d] += prob(i);
    const double total = std::accumulate(marginal.begin(), marginal.end(), 0.0);
    const double r = double(rng() >> 11) * 0x1.0p-53 * total;
    double acc = 0.0;
    int pick = d - 1;
    for (int a = 0; a < d; ++a) {
      acc += marginal[a];
      if (r < acc && marginal[a] > 0.0) {
        pick = a;
        break;
      }
    }
    out[j] = pick;
    for (Eigen::Index i = 0; i < prob.size(); ++i)
      if (int((std::size_t(i) / stride) % d) != pick) prob(i) = 0.0;
    stride *= d;
  }
  return out;
}

namespace {

struct Reduced {
  CnfFormula formula;
  std::vector<int> free_vars;  // reduced index -> original variable
  bool falsified = false;
};

Reduced reduce(const CnfFormula& f, const std::vector<int>& fixed) {
  Reduced r;
  std::vector<int> to_reduced(f.n_vars, -1);
  for (int v = 0; v < f.n_vars; ++v)
    if (fixed[v] < 0) {
      to_reduced[v] = int(r.free_vars.size());
      r.free_vars.push_back(v);
    }
  r.formula.n_vars = int(r.free_vars.size());
  for (const Clause& c : f.clauses) {
    Clause out;
    bool satisfied = false;
    for (std::size_t i = 0; i < c.vars.size() && !satisfied; ++i) {
      const int v = c.vars[i];
      if (fixed[v] < 0) {
        out.vars.push_back(to_reduced[v]);
        out.negated.push_back(c.negated[i]);
      } else if (bool(fixed[v]) != bool(c.negated[i])) {
        satisfied = true;
      }
    }
    if (satisfied) continue;
    if (out.vars.empty()) {
      r.falsified = true;
      continue;
    }
    r.formula.clauses.push_back(out);
  }
  return r;
}

std::string cache_key(const CnfFormula& f, const Schedule& sch) {
  std::ostringstream key;
  key.precision(17);
  key << sch.theta_end << " " << sch.total_time << " " << sch.steps << "\n";
  write_dimacs(key, f);
  return key.str();
}

// Normalised final state of the zero-Hamiltonian projected sweep, or nothing if the allowed space empties.
std::optional<Vec> final_state(const CnfFormula& f, const Schedule& sch, SweepCache* cache, Exec exec) {
  const std::string key = cache_key(f, sch);
  if (cache) {
    auto it = cache->states.find(key);
    if (it != cache->states.end()) return it->second;
  }
  std::optional<Vec> result;
  try {
    const SpaceSpec spec(f.n_vars);
    const SweepModel model(spec, clause_entries(f, spec), 1.0);
    Vec psi = projected_final_state(model, sch, exec);
    const double norm = psi.norm();
    if (norm > 0.0) result = Vec(psi / norm);
  } catch (const ProtocolFailure&) {
  }
  if (cache) cache->states[key] = result;
  return result;
}

Schedule solver_schedule(double theta_stop, double total_time, int steps) {
  if (!(theta_stop > 0.0 && theta_stop <= kPi / 2 + 1e-12)) throw InputError("theta_stop must lie in (0, pi/2]");
  Schedule sch;
  sch.steps = steps;
  sch.total_time = total_time;
  sch.theta_end = std::min(theta_stop, kPi / 2);
  sch.validate();
  return sch;
}

}  // namespace

IterativeResult iterative_sat_solve(const CnfFormula& f, double theta_stop, double total_time, std::uint64_t seed,
                                    int steps, SweepCache* cache, Exec exec) {
  f.validate();
  const Schedule sch = solver_schedule(theta_stop, total_time, steps);
  std::mt19937_64 rng(seed);
  IterativeResult res;
  std::vector<int> current(f.n_vars, -1);
  std::vector<std::vector<int>> history;
  const int limit = 10 * f.n_vars;
  while (res.rounds < limit) {
    const Reduced red = reduce(f, current);
    if (red.free_vars.empty()) {
      res.status = SolveStatus::solved;
      res.assignment = current;
      return res;
    }
    ++res.rounds;
    const auto state = final_state(red.formula, sch, cache, exec);
    if (!state) {
      if (history.empty()) {
        res.status = SolveStatus::unsatisfiable;
        return res;
      }
      current = history.back();
      history.pop_back();
      ++res.backtracks;
      continue;
    }
    const TritString outcome = sample_units(*state, SpaceSpec(red.formula.n_vars), rng);
    std::vector<int> next = current;
    bool any = false;
    for (std::size_t i = 0; i < outcome.size(); ++i)
      if (outcome[i] != 2) {
        next[red.free_vars[i]] = outcome[i];
        any = true;
      }
    if (!any) continue;
    if (reduce(f, next).falsified) {
      ++res.backtracks;
      continue;
    }
    history.push_back(current);
    current = next;
  }
  if (std::none_of(current.begin(), current.end(), [](int v) { return v < 0; })) {
    res.status = SolveStatus::solved;
    res.assignment = current;
  }
  return res;
}

FractionEstimate sampled_u_fraction(const CnfFormula& f, double theta_stop, double total_time, long n_samples,
                                    std::uint64_t seed, int steps, SweepCache* cache, Exec exec) {
  f.validate();
  if (n_samples < 2) throw InputError("at least two samples required");
  const Schedule sch = solver_schedule(theta_stop, total_time, steps);
  const auto state = final_state(f, sch, cache, exec);
  if (!state) throw ProtocolFailure("allowed subspace is empty; no state to sample");
  const SpaceSpec spec(f.n_vars);
  std::mt19937_64 rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    const TritString t = sample_units(*state, spec, rng);
    const double frac = double(std::count(t.begin(), t.end(), 2)) / f.n_vars;
    sum += frac;
    sum2 += frac * frac;
  }
  FractionEstimate est;
  est.samples = n_samples;
  est.mean = sum / n_samples;
  const double var = std::max(0.0, (sum2 - n_samples * est.mean * est.mean) / (n_samples - 1));
  est.std_error = std::sqrt(var / n_samples);
  return est;
}

}  // namespace zeno
