#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace zeno {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kKernelTol = 1e-9;

// n units, each with m computational levels plus the undefined level u (local index m).
struct SpaceSpec {
  int n_units = 1;
  int levels = 2;

  SpaceSpec() = default;
  SpaceSpec(int n, int m = 2);

  int local_dim() const { return levels + 1; }
  int undefined_level() const { return levels; }
  std::size_t dim() const;
};

using TritString = std::vector<int>;

// Little-endian: index = sum_j digits[j] * (m+1)^j.
std::size_t basis_index(const TritString& t, const SpaceSpec& spec);
TritString trit_string(std::size_t index, const SpaceSpec& spec);

// op acts on the listed units (first listed unit is the least significant digit of op's index).
Mat embed_local(const Mat& op, const std::vector<int>& subset, const SpaceSpec& spec);

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Mat vectors;             // orthonormal columns
};

Eigensystem hermitian_eigendecomposition(const Mat& G);

Mat kernel_basis(const Mat& G, double tol = kKernelTol);
Mat kernel_basis(const Eigensystem& es, double tol = kKernelTol);

enum class StepMode { unitary, decay };

// unitary: exp(-i G dt) psi, decay: exp(-G dt) psi.
Vec evolve_step(const Vec& psi, const Mat& G, double dt, StepMode mode);
Vec evolve_step(const Vec& psi, const Eigensystem& es, double dt, StepMode mode);

// Same propagator applied to each column of states, with its own dt per column.
// Columns with dt == 0 are left untouched.
void evolve_columns(Mat& states, const Eigensystem& es, const std::vector<double>& dts, StepMode mode);

double max_abs(const Mat& A);

}  // namespace zeno
