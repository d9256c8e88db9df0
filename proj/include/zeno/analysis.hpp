#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zeno/constraints.hpp"
#include "zeno/hilbert.hpp"
#include "zeno/operators.hpp"
#include "zeno/parallel.hpp"

namespace zeno {

using GeneratorBuilder = std::function<Mat(double)>;

enum class SpectrumQuantity { value, magnitude };

struct SpectrumScan {
  std::vector<double> theta_grid;
  Eigen::MatrixXd sorted;   // grid x dim, each row ascending in the plotted quantity
  Eigen::MatrixXd tracked;  // same values, columns follow curves across the grid
  int lowest = 1;           // column 0 of `sorted`
  int cluster = 0;          // next columns: the rest of the degenerate set at the first grid point
  int rest = 0;
};

std::vector<double> linear_grid(double lo, double hi, int points);

SpectrumScan spectrum_vs_theta(const GeneratorBuilder& builder, const std::vector<double>& grid,
                               SpectrumQuantity quantity = SpectrumQuantity::value, Exec exec = Exec::parallel,
                               double tol = kKernelTol);

// Nearest-neighbour matching of consecutive rows.
Eigen::MatrixXd track_curves(const Eigen::MatrixXd& sorted);

std::vector<double> gap_vs_theta(const GeneratorBuilder& builder, const std::vector<double>& grid,
                                 Exec exec = Exec::parallel);

double min_abs_eigenvalue(const Mat& G);

enum class Verdict { satisfiable, unsatisfiable };
std::string to_string(Verdict v);

// Forbidden generator for the formula (clause patterns plus xi on every unit, all weights 1).
Mat formula_generator(const CnfFormula& f, double theta);

Verdict satisfiability_witness(const CnfFormula& f, double theta_probe = 0.2);

// Exact restriction of ising + offset to the product tilde frame (2^n x 2^n).
Eigen::MatrixXd projected_effective_hamiltonian(double theta, const IsingProblem& p, const OffsetSpec& o);
double effective_hamiltonian_residual(double theta, const IsingProblem& p, const OffsetSpec& o);

struct OneHotCoefficients {
  double overlap = 0.0;          // <phi_j|phi_l>, j != l
  double a = 0.0;
  double b = 0.0;                // quadratic coefficient of the orthogonality condition
  double normalisation = 1.0;    // norm of phi_j - a sum_{k != j} phi_k
  double offdiag = 0.0;          // <phibar_j|Z_l|phibar_l>, computed directly
  double offdiag_printed = 0.0;  // closed-form expression with the same a and normalisation
};

OneHotCoefficients one_hot_coefficients(int n, double theta);

// Columns are the orthogonalised states phibar_0..phibar_{n-1}.
Mat one_hot_states(int n, double theta);
// Columns are the raw states phi_0..phi_{n-1}.
Mat one_hot_raw_states(int n, double theta);

}  // namespace zeno
