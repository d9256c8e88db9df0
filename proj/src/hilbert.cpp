#include "zeno/hilbert.hpp"

#include <cmath>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

SpaceSpec::SpaceSpec(int n, int m) : n_units(n), levels(m) {
  if (n < 1) throw InputError("n_units must be positive, got " + std::to_string(n));
  if (m < 2) throw InputError("levels_per_unit must be at least 2, got " + std::to_string(m));
  double d = std::pow(double(m + 1), n);
  if (d > 1e8) throw UnsupportedError("space dimension too large for dense matrices");
}

std::size_t SpaceSpec::dim() const {
  std::size_t d = 1;
  for (int j = 0; j < n_units; ++j) d *= std::size_t(local_dim());
  return d;
}

std::size_t basis_index(const TritString& t, const SpaceSpec& spec) {
  if (int(t.size()) != spec.n_units)
    throw InputError("trit string has " + std::to_string(t.size()) + " digits, expected " +
                     std::to_string(spec.n_units));
  std::size_t idx = 0, stride = 1;
  for (int j = 0; j < spec.n_units; ++j) {
    if (t[j] < 0 || t[j] > spec.levels)
      throw InputError("digit " + std::to_string(t[j]) + " out of range at unit " + std::to_string(j));
    idx += std::size_t(t[j]) * stride;
    stride *= std::size_t(spec.local_dim());
  }
  return idx;
}

TritString trit_string(std::size_t index, const SpaceSpec& spec) {
  if (index >= spec.dim()) throw InputError("basis index out of range: " + std::to_string(index));
  TritString t(spec.n_units);
  for (int j = 0; j < spec.n_units; ++j) {
    t[j] = int(index % std::size_t(spec.local_dim()));
    index /= std::size_t(spec.local_dim());
  }
  return t;
}

Mat embed_local(const Mat& op, const std::vector<int>& subset, const SpaceSpec& spec) {
  const int d = spec.local_dim();
  std::size_t sub_dim = 1;
  std::vector<bool> used(spec.n_units, false);
  for (int u : subset) {
    if (u < 0 || u >= spec.n_units) throw InputError("unit index out of range: " + std::to_string(u));
    if (used[u]) throw InputError("repeated unit in subset: " + std::to_string(u));
    used[u] = true;
    sub_dim *= std::size_t(d);
  }
  if (op.rows() != op.cols() || std::size_t(op.rows()) != sub_dim)
    throw InputError("operator dimension " + std::to_string(op.rows()) + " does not match subset dimension " +
                     std::to_string(sub_dim));

  std::vector<std::size_t> stride(spec.n_units, 1);
  for (int j = 1; j < spec.n_units; ++j) stride[j] = stride[j - 1] * std::size_t(d);

  // offset[r]: contribution of subset digits r to the full index
  std::vector<std::size_t> offset(sub_dim, 0);
  for (std::size_t r = 0; r < sub_dim; ++r) {
    std::size_t rem = r;
    for (int u : subset) {
      offset[r] += (rem % d) * stride[u];
      rem /= d;
    }
  }

  const std::size_t N = spec.dim();
  Mat out = Mat::Zero(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    std::size_t base = i, r = 0, mult = 1;
    for (int u : subset) {
      std::size_t digit = (i / stride[u]) % d;
      base -= digit * stride[u];
      r += digit * mult;
      mult *= d;
    }
    for (std::size_t c = 0; c < sub_dim; ++c) {
      const cplx v = op(r, c);
      if (v != cplx(0.0)) out(i, base + offset[c]) = v;
    }
  }
  return out;
}

double max_abs(const Mat& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

Eigensystem hermitian_eigendecomposition(const Mat& G) {
  if (G.rows() != G.cols()) throw InputError("generator is not square");
  const double scale = std::max(1.0, max_abs(G));
  if (max_abs(G - G.adjoint()) > 1e-10 * scale) throw InputError("generator is not Hermitian");

  Eigensystem es;
  if (G.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::MatrixXd R = G.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> solver(G);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
  }
  return es;
}

Mat kernel_basis(const Eigensystem& es, double tol) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (std::abs(es.values(i)) < tol) keep.push_back(i);
  Mat K(es.vectors.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) K.col(Eigen::Index(c)) = es.vectors.col(keep[c]);
  return K;
}

Mat kernel_basis(const Mat& G, double tol) { return kernel_basis(hermitian_eigendecomposition(G), tol); }

namespace {

// Decay factors for PSD generators; eigenvalues that are negative only by rounding count as zero
// so that the norm can never grow.
cplx step_factor(double lambda, double dt, StepMode mode, double clamp) {
  if (mode == StepMode::unitary) return std::exp(cplx(0.0, -lambda * dt));
  if (lambda < 0.0 && lambda > -clamp) lambda = 0.0;
  return cplx(std::exp(-lambda * dt), 0.0);
}

double clamp_level(const Eigensystem& es) {
  double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
  return kKernelTol * std::max(1.0, scale);
}

}  // namespace

Vec evolve_step(const Vec& psi, const Eigensystem& es, double dt, StepMode mode) {
  if (dt < 0.0) throw InputError("negative time step");
  if (psi.size() != es.vectors.rows()) throw InputError("state dimension does not match generator");
  const double clamp = clamp_level(es);
  Vec c = es.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= step_factor(es.values(i), dt, mode, clamp);
  return es.vectors * c;
}

Vec evolve_step(const Vec& psi, const Mat& G, double dt, StepMode mode) {
  if (dt < 0.0) throw InputError("negative time step");
  return evolve_step(psi, hermitian_eigendecomposition(G), dt, mode);
}

void evolve_columns(Mat& states, const Eigensystem& es, const std::vector<double>& dts, StepMode mode) {
  if (std::size_t(states.cols()) != dts.size()) throw InputError("one time step per column required");
  for (double dt : dts)
    if (dt < 0.0) throw InputError("negative time step");
  const double clamp = clamp_level(es);
  const Mat before = states;
  Mat c = es.vectors.adjoint() * states;
  for (Eigen::Index col = 0; col < c.cols(); ++col)
    for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, col) *= step_factor(es.values(i), dts[col], mode, clamp);
  states.noalias() = es.vectors * c;
  // a zero step is the identity exactly, without basis-change roundoff
  for (Eigen::Index col = 0; col < c.cols(); ++col)
    if (dts[col] == 0.0) states.col(col) = before.col(col);
}

}  // namespace zeno
