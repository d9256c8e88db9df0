#pragma once

#include <vector>

#include "zeno/hilbert.hpp"
#include "zeno/states.hpp"

namespace zeno {

struct IsingProblem {
  std::vector<double> h;
  Eigen::MatrixXd J;  // symmetric, zero diagonal

  static IsingProblem fields(std::vector<double> h);
  int size() const { return int(h.size()); }
  void validate() const;
};

struct OffsetSpec {
  double alpha = 0.0;
};

// One forbidden state: local vector over `units` (first unit least significant) with weight Gamma_j or c_j.
struct ForbiddenEntry {
  Vec state;
  std::vector<int> units;
  double weight = 1.0;
};

using ForbiddenSet = std::vector<ForbiddenEntry>;

struct StirapPulse {
  double A = 1.0;
  double B = 0.0;
  double theta() const;
};

// Z = diag(1, -1, 0) on every unit.
Eigen::VectorXd z_values(int m = 2);
Eigen::VectorXd ising_diagonal(const IsingProblem& p, const SpaceSpec& spec);
Mat ising_hamiltonian(const IsingProblem& p, const SpaceSpec& spec);
Mat offset_hamiltonian(const OffsetSpec& o, const SpaceSpec& spec);
Eigen::VectorXd offset_diagonal(const OffsetSpec& o, const SpaceSpec& spec);

Mat forbidden_generator(const ForbiddenSet& f, const SpaceSpec& spec);

// One xi(theta) entry per unit; phis empty means unbiased.
ForbiddenSet unit_forbidden_entries(double theta, const SpaceSpec& spec, double weight = 1.0,
                                    const std::vector<double>& phis = {});

// Transverse-field Ising form of (ising + offset) restricted to the allowed space,
// in the product |0~>,|1~> labelling (qubit index little-endian, bit b_j of unit j).
Eigen::MatrixXd predicted_effective_hamiltonian(double theta, const IsingProblem& p, const OffsetSpec& o);

IsingProblem auxiliary_field_transform(const IsingProblem& p);

// Over 2^n qubits, little-endian bit order.
Mat transverse_field_hamiltonian(double s, const Eigen::VectorXd& problem_diag);

// Basis order {|0>, |1>, |u>, |beta>}.
Mat stirap_hamiltonian(const StirapPulse& p);
std::vector<StirapPulse> stirap_schedule(const std::vector<double>& t_grid);

struct QuditDrive {
  Mat full;        // (m+1)x(m+1): -alpha cos^2(theta) |omega~><omega~|
  Mat restricted;  // m x m in the |j~> frame
};

double qudit_drive_prefactor(int m);
QuditDrive qudit_drive_matrix(double theta, double alpha, int m);

// Two units (9x9): -(alpha cos^2(theta)/4) (sum_ab |a~ b~>)(sum_ab <a~ b~|).
Mat pair_drive_matrix(double theta, double alpha);

struct BiasCoefficients {
  double b1 = 0.0;
  double bz = 0.0;
  double bx = 0.0;
};

// Z restricted to the biased allowed frame: b1 * 1 + bz * Z~ + bx * X~.
BiasCoefficients biased_Z_coefficients(double phi, double theta);

Mat bias_correction_hamiltonian(const IsingProblem& p, const std::vector<double>& phis, double theta,
                                const SpaceSpec& spec);
double bias_alpha_lower_bound(const IsingProblem& p, const std::vector<double>& phis);

}  // namespace zeno
