#include "zeno/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

IsingProblem IsingProblem::fields(std::vector<double> h) {
  IsingProblem p;
  p.J = Eigen::MatrixXd::Zero(Eigen::Index(h.size()), Eigen::Index(h.size()));
  p.h = std::move(h);
  return p;
}

void IsingProblem::validate() const {
  const auto n = Eigen::Index(h.size());
  if (J.rows() != n || J.cols() != n) throw InputError("coupling matrix size does not match field count");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (J(j, j) != 0.0) throw InputError("coupling matrix must have zero diagonal");
    for (Eigen::Index k = 0; k < j; ++k)
      if (std::abs(J(j, k) - J(k, j)) > 1e-14) throw InputError("coupling matrix must be symmetric");
  }
}

double StirapPulse::theta() const {
  if (A == 0.0 && B == 0.0) throw InputError("STIRAP angle undefined when both amplitudes vanish");
  return std::atan2(B, A);
}

Eigen::VectorXd z_values(int m) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m + 1);
  z(0) = 1.0;
  z(1) = -1.0;
  return z;
}

Eigen::VectorXd ising_diagonal(const IsingProblem& p, const SpaceSpec& spec) {
  p.validate();
  if (p.size() != spec.n_units) throw InputError("Ising problem size does not match the number of units");
  const Eigen::VectorXd z = z_values(spec.levels);
  const std::size_t N = spec.dim();
  Eigen::VectorXd d(N);
  for (std::size_t i = 0; i < N; ++i) {
    const TritString t = trit_string(i, spec);
    double e = 0.0;
    for (int j = 0; j < spec.n_units; ++j) {
      e += p.h[j] * z(t[j]);
      for (int k = j + 1; k < spec.n_units; ++k) e += p.J(j, k) * z(t[j]) * z(t[k]);
    }
    d(Eigen::Index(i)) = e;
  }
  return d;
}

Mat ising_hamiltonian(const IsingProblem& p, const SpaceSpec& spec) {
  return ising_diagonal(p, spec).cast<cplx>().asDiagonal();
}

Eigen::VectorXd offset_diagonal(const OffsetSpec& o, const SpaceSpec& spec) {
  if (o.alpha < 0.0) throw InputError("offset alpha must be non-negative");
  const std::size_t N = spec.dim();
  Eigen::VectorXd d(N);
  for (std::size_t i = 0; i < N; ++i) {
    const TritString t = trit_string(i, spec);
    d(Eigen::Index(i)) = -o.alpha * double(std::count(t.begin(), t.end(), spec.undefined_level()));
  }
  return d;
}

Mat offset_hamiltonian(const OffsetSpec& o, const SpaceSpec& spec) {
  return offset_diagonal(o, spec).cast<cplx>().asDiagonal();
}

Mat forbidden_generator(const ForbiddenSet& f, const SpaceSpec& spec) {
  Mat G = Mat::Zero(spec.dim(), spec.dim());
  for (const ForbiddenEntry& e : f) {
    if (e.weight < 0.0) throw InputError("forbidden-state weights must be non-negative");
    if (e.weight == 0.0) continue;
    G += e.weight * embed_local(e.state * e.state.adjoint(), e.units, spec);
  }
  return G;
}

ForbiddenSet unit_forbidden_entries(double theta, const SpaceSpec& spec, double weight,
                                    const std::vector<double>& phis) {
  if (!phis.empty() && int(phis.size()) != spec.n_units)
    throw InputError("one bias angle per unit required");
  ForbiddenSet f;
  for (int j = 0; j < spec.n_units; ++j) {
    const double phi = phis.empty() ? kUnbiased : phis[j];
    f.push_back({xi_state(theta, phi, spec.levels), {j}, weight});
  }
  return f;
}

Eigen::MatrixXd predicted_effective_hamiltonian(double theta, const IsingProblem& p, const OffsetSpec& o) {
  checked_theta(theta);
  p.validate();
  if (o.alpha < 0.0) throw InputError("offset alpha must be non-negative");
  const int n = p.size();
  if (n < 1 || n > 20) throw UnsupportedError("effective Hamiltonian needs 1 <= n <= 20");
  const Eigen::Index N = Eigen::Index(1) << n;
  const double c2 = std::cos(theta) * std::cos(theta), s = std::sin(theta);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double diag = -0.5 * o.alpha * c2 * n;
    for (int j = 0; j < n; ++j) {
      const double zj = ((i >> j) & 1) ? -1.0 : 1.0;
      diag += s * p.h[j] * zj;
      for (int k = j + 1; k < n; ++k) {
        const double zk = ((i >> k) & 1) ? -1.0 : 1.0;
        diag += s * s * p.J(j, k) * zj * zk;
      }
      H(i ^ (Eigen::Index(1) << j), i) += -0.5 * o.alpha * c2;
    }
    H(i, i) += diag;
  }
  return H;
}

IsingProblem auxiliary_field_transform(const IsingProblem& p) {
  p.validate();
  const int n = p.size();
  IsingProblem q;
  q.h.assign(n + 1, 0.0);
  q.J = Eigen::MatrixXd::Zero(n + 1, n + 1);
  q.J.topLeftCorner(n, n) = p.J;
  for (int j = 0; j < n; ++j) q.J(n, j) = q.J(j, n) = p.h[j];
  return q;
}

Mat transverse_field_hamiltonian(double s, const Eigen::VectorXd& problem_diag) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("s must lie in [0, 1]");
  const Eigen::Index N = problem_diag.size();
  int n = 0;
  while ((Eigen::Index(1) << n) < N) ++n;
  if (N < 2 || (Eigen::Index(1) << n) != N) throw InputError("problem diagonal length must be a power of two");
  Mat H = Mat::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    H(i, i) = s * problem_diag(i);
    for (int j = 0; j < n; ++j) H(i ^ (Eigen::Index(1) << j), i) = -(1.0 - s);
  }
  return H;
}

Mat stirap_hamiltonian(const StirapPulse& p) {
  Mat H = Mat::Zero(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  H(0, 3) = H(3, 0) = p.A * r;
  H(1, 3) = H(3, 1) = p.A * r;
  H(2, 3) = H(3, 2) = -p.B;
  return H;
}

std::vector<StirapPulse> stirap_schedule(const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) throw InputError("STIRAP schedule needs at least two time points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1]) throw InputError("time grid must be non-decreasing");
  const double t0 = t_grid.front(), t1 = t_grid.back();
  if (!(t1 > t0)) throw InputError("time grid must span a positive interval");
  std::vector<StirapPulse> out;
  for (double t : t_grid) {
    const double tau = (t - t0) / (t1 - t0);
    StirapPulse p{std::cos(kPi / 2 * tau), std::sin(kPi / 2 * tau)};
    if (tau == 0.0) p = {1.0, 0.0};
    if (tau == 1.0) p = {0.0, 1.0};
    out.push_back(p);
  }
  return out;
}

double qudit_drive_prefactor(int m) {
  if (m < 2) throw InputError("qudit dimension must be at least 2");
  return 1.0 / m;
}

QuditDrive qudit_drive_matrix(double theta, double alpha, int m) {
  const Vec w = omega_tilde(theta, m);
  const double c2 = std::cos(theta) * std::cos(theta);
  QuditDrive d;
  d.full = -alpha * c2 * (w * w.adjoint());
  Mat frame(m + 1, m);
  for (int j = 0; j < m; ++j) frame.col(j) = qudit_tilde_j(theta, j, m);
  d.restricted = frame.adjoint() * d.full * frame;
  return d;
}

Mat pair_drive_matrix(double theta, double alpha) {
  checked_theta(theta);
  const Vec one = tilde_bit(theta, 0) + tilde_bit(theta, 1);
  const Vec all = product_state({one, one});
  const double c2 = std::cos(theta) * std::cos(theta);
  return -(alpha * c2 / 4.0) * (all * all.adjoint());
}

BiasCoefficients biased_Z_coefficients(double phi, double theta) {
  checked_phi(phi);
  checked_theta(theta);
  const double c = std::cos(phi), s = std::sin(phi), S = std::sin(theta);
  const double d = c * c - s * s;
  BiasCoefficients b;
  b.b1 = 0.5 * d * (S * S - 1.0);
  b.bz = 0.5 * d * d * (S * S + 1.0) + 4.0 * c * c * s * s * S;
  b.bx = d * (S * S + 1.0 - 2.0 * S) * c * s;
  return b;
}

Mat bias_correction_hamiltonian(const IsingProblem& p, const std::vector<double>& phis, double theta,
                                const SpaceSpec& spec) {
  p.validate();
  const int n = p.size();
  if (int(phis.size()) != n) throw InputError("one bias angle per variable required");
  if (spec.n_units != n || spec.levels != 2) throw InputError("correction needs a qubit-unit space of matching size");
  // Each J Z_j Z_k leaves cross terms B1_j (B_Z Z~_k + B_X X~_k); a lab-frame Z_k with weight -J B1_j cancels both.
  std::vector<double> b1(n);
  for (int j = 0; j < n; ++j) b1[j] = biased_Z_coefficients(phis[j], theta).b1;
  IsingProblem fields = IsingProblem::fields(std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      fields.h[k] -= p.J(j, k) * b1[j];
      fields.h[j] -= p.J(j, k) * b1[k];
    }
  return ising_hamiltonian(fields, spec);
}

double bias_alpha_lower_bound(const IsingProblem& p, const std::vector<double>& phis) {
  p.validate();
  const int n = p.size();
  if (int(phis.size()) != n) throw InputError("one bias angle per variable required");
  if (n == 0) return 0.0;
  std::vector<double> zm(n);
  for (int j = 0; j < n; ++j) {
    const double c = std::cos(checked_phi(phis[j])), s = std::sin(phis[j]);
    zm[j] = s * s - c * c;  // <zeta-|Z|zeta->
  }
  double lo = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += 0.5 * p.J(j, k) * zm[k];
    lo = std::min(lo, zm[j] * acc);
  }
  return -lo + 0.0;
}

}  // namespace zeno
