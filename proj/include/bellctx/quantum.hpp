// Finite-dimensional quantum constructions: assemblages steered by Alice's
// measurements on a bipartite state, and the converse purification +
// POVM construction realising a prescribed assemblage. Floating point lives
// only here; exact modules are reached through the explicit rational snap.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "bellctx/correlation.hpp"

namespace bellctx {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct QuantumTolerances {
  double hermiticity = 1e-10;
  double psd = 1e-10;        // eigenvalue floor: lambda >= -psd
  double completeness = 1e-10;
  double trace = 1e-10;
  double eps_rank = 1e-10;   // eigenvalue truncation in hjw_construct
  double weight_floor = 1e-12;  // p_A below this counts as a vanished outcome
};

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_psd(const ComplexMatrix& m, double tol);

struct QuantumBellRealisation {
  int dim_A = 0, dim_B = 0;
  ComplexMatrix rho;                          // on A (x) B
  std::vector<std::vector<ComplexMatrix>> M;  // M[x-1][a-1] on A
  std::vector<std::vector<ComplexMatrix>> N;  // N[y-1][b-1] on B

  BellScenario scenario() const;
  void validate(const QuantumTolerances& tol = {}) const;
};

/// Bob's conditional states rho_{a|x} with weights p_A(a|x), averaging to the
/// same rho_B for every x. Outcomes whose weight vanished are flagged by
/// `appears`.
struct Assemblage {
  int dim = 0;
  std::vector<std::vector<double>> weights;          // [x-1][a-1]
  std::vector<std::vector<bool>> appears;            // weight above the floor
  std::vector<std::vector<ComplexMatrix>> states;    // [x-1][a-1], d x d
  ComplexMatrix rho_B;

  void validate(const QuantumTolerances& tol = {}) const;
  /// max over x of || sum_a p(a|x) rho_{a|x} - rho_B || (max-abs entry).
  double averaging_residual() const;
};

/// Floating-point tables produced by the quantum module.
struct NumericCorrelation {
  BellScenario scenario;
  std::vector<double> table;  // layout of BellCorrelation::raw()

  double& at(int a, int b, int x, int y);
  double at(int a, int b, int x, int y) const;
};

struct NumericBehaviour {
  std::vector<PrepLabel> preps;
  std::vector<int> outcomes_B;
  std::vector<double> table;  // prep-major, (y, b) within
};

ComplexMatrix partial_trace_A(const ComplexMatrix& op, int dim_A, int dim_B);
ComplexMatrix partial_trace_B(const ComplexMatrix& op, int dim_A, int dim_B);

/// Steers the assemblage out of a Bell realisation and evaluates the mapped
/// behaviour q(b|[a|x],y) = Tr(N^y_b rho_{a|x}).
std::pair<Assemblage, NumericBehaviour> assemblage_from_bell(const QuantumBellRealisation& r,
                                                             const QuantumTolerances& tol = {});

/// Purification + Alice POVMs realising the assemblage on the support of
/// rho_B: |Psi> = sum_n sqrt(lambda_n) |n>|n>, M^x_a = S (p rho^T) S in the
/// eigenbasis, acting on the support (dimension = rank of rho_B).
struct HjwRealisation {
  int support_dim = 0;
  ComplexVector psi;                          // on support (x) B
  std::vector<std::vector<ComplexMatrix>> M;  // [x-1][a-1], support-dim square
  ComplexMatrix support_basis;                // d x r, columns = kept eigenvectors
  std::vector<double> eigenvalues;            // kept, descending
};

HjwRealisation hjw_construct(const Assemblage& asm_in, const QuantumTolerances& tol = {});

struct SteeringResiduals {
  double state_residual = 0;        // max over (a,x), max-abs entry norm
  double completeness_residual = 0; // max over x of || sum_a M^x_a - Pi_B ||
};

SteeringResiduals verify_steering(const ComplexVector& psi,
                                  const std::vector<std::vector<ComplexMatrix>>& M,
                                  const Assemblage& asm_in);

NumericCorrelation realisation_to_tables(const QuantumBellRealisation& r);

/// Correlation of (psi on support (x) B, Alice POVMs on the support, Bob
/// POVMs on B) — the output side of the round trip.
NumericCorrelation realisation_to_tables(const ComplexVector& psi,
                                         const std::vector<std::vector<ComplexMatrix>>& M,
                                         const std::vector<std::vector<ComplexMatrix>>& N);

/// Rational snap of the float table: every entry within `tol` of a rational
/// with denominator <= max_den, validated exactly; empty when any entry
/// fails to snap or the snapped table is not a correlation.
std::optional<BellCorrelation> snap_correlation(const NumericCorrelation& t, const Int& max_den,
                                                double tol);

/// CHSH value of a (2,2,2,2) float correlation under the (-1)^{a+b} signs.
double chsh_value(const NumericCorrelation& t);

}  // namespace bellctx
