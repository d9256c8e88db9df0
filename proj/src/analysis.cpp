#include "zeno/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "zeno/error.hpp"
#include "zeno/states.hpp"

namespace zeno {

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw InputError("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * double(i) / double(points - 1);
  g.back() = hi;
  return g;
}

Eigen::MatrixXd track_curves(const Eigen::MatrixXd& sorted) {
  Eigen::MatrixXd out = sorted;
  const Eigen::Index cols = sorted.cols();
  for (Eigen::Index r = 1; r < sorted.rows(); ++r) {
    std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> pairs;
    pairs.reserve(std::size_t(cols * cols));
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index v = 0; v < cols; ++v) pairs.emplace_back(std::abs(out(r - 1, c) - sorted(r, v)), c, v);
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
    std::vector<bool> curve_done(cols, false), value_used(cols, false);
    for (const auto& [dist, c, v] : pairs) {
      if (curve_done[c] || value_used[v]) continue;
      out(r, c) = sorted(r, v);
      curve_done[c] = value_used[v] = true;
    }
  }
  return out;
}

SpectrumScan spectrum_vs_theta(const GeneratorBuilder& builder, const std::vector<double>& grid,
                               SpectrumQuantity quantity, Exec exec, double tol) {
  if (grid.empty()) throw InputError("spectrum scan needs a non-empty grid");
  const Mat first = builder(grid.front());
  const Eigen::Index dim = first.rows();
  SpectrumScan scan;
  scan.theta_grid = grid;
  scan.sorted.resize(Eigen::Index(grid.size()), dim);
  parallel_for(
      int(grid.size()),
      [&](int i) {
        const Mat G = i == 0 ? first : builder(grid[i]);
        if (G.rows() != dim) throw InputError("builder changed dimension along the grid");
        Eigen::VectorXd v = hermitian_eigendecomposition(G).values;
        if (quantity == SpectrumQuantity::magnitude) {
          v = v.cwiseAbs();
          std::sort(v.data(), v.data() + v.size());
        }
        scan.sorted.row(i) = v.transpose();
      },
      exec);
  scan.tracked = track_curves(scan.sorted);
  int degenerate = 0;
  for (Eigen::Index c = 0; c < dim; ++c)
    if (std::abs(scan.sorted(0, c)) < tol) ++degenerate;
  scan.lowest = 1;
  scan.cluster = std::max(0, degenerate - 1);
  scan.rest = int(dim) - scan.lowest - scan.cluster;
  return scan;
}

std::vector<double> gap_vs_theta(const GeneratorBuilder& builder, const std::vector<double>& grid, Exec exec) {
  const SpectrumScan s = spectrum_vs_theta(builder, grid, SpectrumQuantity::value, exec);
  if (s.sorted.cols() < 2) throw InputError("gap needs dimension at least 2");
  std::vector<double> gap(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    gap[i] = std::max(0.0, s.sorted(Eigen::Index(i), 1) - s.sorted(Eigen::Index(i), 0));
  return gap;
}

double min_abs_eigenvalue(const Mat& G) { return hermitian_eigendecomposition(G).values.cwiseAbs().minCoeff(); }

std::string to_string(Verdict v) { return v == Verdict::satisfiable ? "satisfiable" : "unsatisfiable"; }

Mat formula_generator(const CnfFormula& f, double theta) {
  const SpaceSpec spec(f.n_vars);
  ForbiddenSet set = clause_entries(f, spec);
  const ForbiddenSet units = unit_forbidden_entries(theta, spec);
  set.insert(set.end(), units.begin(), units.end());
  return forbidden_generator(set, spec);
}

Verdict satisfiability_witness(const CnfFormula& f, double theta_probe) {
  if (!(theta_probe > 0.0 && theta_probe <= kPi / 2 + 1e-12)) throw InputError("theta_probe must lie in (0, pi/2]");
  return min_abs_eigenvalue(formula_generator(f, std::min(theta_probe, kPi / 2))) < kKernelTol
             ? Verdict::satisfiable
             : Verdict::unsatisfiable;
}

Eigen::MatrixXd projected_effective_hamiltonian(double theta, const IsingProblem& p, const OffsetSpec& o) {
  checked_theta(theta);
  const int n = p.size();
  if (n < 1 || n > 6) throw UnsupportedError("exact projection limited to 1 <= n <= 6");
  const SpaceSpec spec(n);
  const Eigen::Index M = Eigen::Index(1) << n;
  Mat frame(Eigen::Index(spec.dim()), M);
  const Vec t0 = tilde_bit(theta, 0), t1 = tilde_bit(theta, 1);
  for (Eigen::Index b = 0; b < M; ++b) {
    std::vector<Vec> factors;
    for (int j = 0; j < n; ++j) factors.push_back(((b >> j) & 1) ? t1 : t0);
    frame.col(b) = product_state(factors);
  }
  const Mat H = ising_hamiltonian(p, spec) + offset_hamiltonian(o, spec);
  const Mat R = frame.adjoint() * H * frame;
  return R.real();
}

double effective_hamiltonian_residual(double theta, const IsingProblem& p, const OffsetSpec& o) {
  const Eigen::MatrixXd exact = projected_effective_hamiltonian(theta, p, o);
  const Eigen::MatrixXd predicted = predicted_effective_hamiltonian(theta, p, o);
  return (exact - predicted).cwiseAbs().maxCoeff();
}

namespace {

void check_one_hot(int n, double theta) {
  if (n < 2) throw InputError("one-hot construction needs n >= 2");
  checked_theta(theta);
  if (theta <= 0.0) throw InputError("one-hot states coincide at theta = 0; start at a small positive theta");
  if (n > 10) throw UnsupportedError("one-hot construction limited to n <= 10");
}

}  // namespace

Mat one_hot_raw_states(int n, double theta) {
  check_one_hot(n, theta);
  const SpaceSpec spec(n);
  Mat raw(Eigen::Index(spec.dim()), n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> s(n, 0);
    s[j] = 1;
    raw.col(j) = phi_sat(theta, s);
  }
  return raw;
}

OneHotCoefficients one_hot_coefficients(int n, double theta) {
  check_one_hot(n, theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double per_unit = std::cos(theta) * std::cos(theta) / (1.0 + s2);
  OneHotCoefficients k;
  k.overlap = per_unit * per_unit;  // the two states differ on exactly two units
  const double o = k.overlap;
  // o - 2 a c1 + a^2 b = 0 with the smaller root (a = 0 when o = 0)
  const double c1 = 1.0 + (n - 2) * o;
  k.b = (n - 2) + ((n - 1.0) * (n - 1.0) - (n - 2)) * o;
  k.a = o / (c1 + std::sqrt(std::max(0.0, c1 * c1 - k.b * o)));
  const double norm2 = 1.0 + k.a * k.a * ((n - 1) + (n - 1.0) * (n - 2.0) * o) - 2.0 * k.a * (n - 1) * o;
  k.normalisation = std::sqrt(norm2);

  const Mat bar = one_hot_states(n, theta);
  const SpaceSpec spec(n);
  const Eigen::VectorXd z = ising_diagonal(IsingProblem::fields([&] {
                                              std::vector<double> h(n, 0.0);
                                              h[1] = 1.0;
                                              return h;
                                            }()),
                                            spec);
  k.offdiag = (bar.col(0).adjoint() * z.cast<cplx>().asDiagonal() * bar.col(1))(0).real();
  const double r = std::sqrt(2.0) - 1.0;
  k.offdiag_printed = 4.0 * s2 * k.a / (norm2 * std::pow(1.0 + s2 * r * r, n));
  return k;
}

Mat one_hot_states(int n, double theta) {
  const Mat raw = one_hot_raw_states(n, theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double per_unit = std::cos(theta) * std::cos(theta) / (1.0 + s2);
  const double o = per_unit * per_unit;
  const double c1 = 1.0 + (n - 2) * o;
  const double b = (n - 2) + ((n - 1.0) * (n - 1.0) - (n - 2)) * o;
  const double a = o / (c1 + std::sqrt(std::max(0.0, c1 * c1 - b * o)));
  const Vec total = raw.rowwise().sum();
  Mat bar(raw.rows(), n);
  for (int j = 0; j < n; ++j) {
    Vec v = (1.0 + a) * raw.col(j) - a * total;
    bar.col(j) = v / v.norm();
  }
  return bar;
}

}  // namespace zeno
