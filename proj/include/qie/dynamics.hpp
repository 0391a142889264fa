#pragma once

// Lindblad dynamics of the collective engine in the maximal-spin Dicke ladder
// |n/2, m>, m = -n/2 .. n/2 (index i <-> m = -n/2 + i), and the single-qubit
// thermal states of the independently coupled engine.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "qie/errors.hpp"

namespace qie {

template <class Scalar = double>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Bath at inverse temperature beta with spectral function Gamma(omega) =
/// gamma_rate. Gamma(-omega) follows from the KMS condition.
struct BathSpec {
  double beta = 1.0;
  double gamma_rate = 1.0;
  double omega = 1.0;

  void validate() const;
  /// Gamma(omega): rate of the lowering jump.
  double rate_down() const { return gamma_rate; }
  /// Gamma(-omega) = exp(-beta omega) Gamma(omega): rate of the raising jump.
  double rate_up() const { return std::exp(-beta * omega) * gamma_rate; }
};

template <class Scalar = double>
struct CollectiveOperators {
  int n = 0;
  ComplexMatrix<Scalar> jz, jplus, jminus, hamiltonian;
  ComplexMatrix<Scalar> jplus_jminus, jminus_jplus;

  Eigen::Index dim() const { return jz.rows(); }
};

/// J_z, J_+, J_- and H = omega J_z on the j = n/2 ladder, with
/// <m+1|J_+|m> = sqrt(j(j+1) - m(m+1)).
template <class Scalar = double>
CollectiveOperators<Scalar> build_collective_operators(int n, Scalar omega = Scalar(1)) {
  using std::sqrt;
  if (n < 1) throw DomainError("build_collective_operators: n must be >= 1");
  using C = std::complex<Scalar>;
  const Eigen::Index dim = n + 1;
  const Scalar j = Scalar(n) / 2;
  CollectiveOperators<Scalar> ops;
  ops.n = n;
  ops.jz = ComplexMatrix<Scalar>::Zero(dim, dim);
  ops.jplus = ComplexMatrix<Scalar>::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Scalar m = -j + Scalar(i);
    ops.jz(i, i) = C(m, 0);
    if (i + 1 < dim) ops.jplus(i + 1, i) = C(sqrt(j * (j + 1) - m * (m + 1)), 0);
  }
  ops.jminus = ops.jplus.adjoint();
  ops.hamiltonian = ops.jz * C(omega, 0);
  ops.jplus_jminus = ops.jplus * ops.jminus;
  ops.jminus_jplus = ops.jminus * ops.jplus;
  return ops;
}

/// d rho / dt = -i[H, rho] + Gamma(omega) D(J_+) rho + Gamma(-omega) D(J_-) rho,
/// D[O] rho = (2 O^dag rho O - O O^dag rho - rho O O^dag) / 2.
template <class Scalar = double>
ComplexMatrix<Scalar> lindblad_rhs(const ComplexMatrix<Scalar>& rho,
                                   const CollectiveOperators<Scalar>& ops, const BathSpec& bath) {
  using C = std::complex<Scalar>;
  if (rho.rows() != ops.dim() || rho.cols() != ops.dim()) {
    throw DomainError("lindblad_rhs: density matrix dimension does not match operators");
  }
  const C minus_i(0, -1);
  const Scalar down(bath.rate_down());
  const Scalar up(bath.rate_up());
  ComplexMatrix<Scalar> out = minus_i * (ops.hamiltonian * rho - rho * ops.hamiltonian);
  // D(J_+): jump J_-, anticommutator with J_+ J_-.
  out.noalias() += down * (ops.jminus * rho * ops.jplus);
  out.noalias() -= (down / 2) * (ops.jplus_jminus * rho + rho * ops.jplus_jminus);
  // D(J_-): jump J_+, anticommutator with J_- J_+.
  out.noalias() += up * (ops.jplus * rho * ops.jminus);
  out.noalias() -= (up / 2) * (ops.jminus_jplus * rho + rho * ops.jminus_jplus);
  return out;
}

/// Density matrix on the Dicke ladder. Construction checks Hermiticity and
/// unit trace to 1e-12 and eigenvalues >= -1e-10.
class DickeState {
 public:
  explicit DickeState(ComplexMatrix<> matrix);

  /// exp(-beta m omega) / Z_{n/2} on the diagonal.
  static DickeState gibbs(int n, double beta, double omega);
  static DickeState maximally_mixed(int n);
  static DickeState basis(int n, int twice_m);

  int n() const { return static_cast<int>(matrix_.rows()) - 1; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix<>& matrix() const { return matrix_; }
  /// Diagonal in order m = -n/2 .. n/2.
  std::vector<double> populations() const;

 private:
  ComplexMatrix<> matrix_;
};

double hermiticity_error(const ComplexMatrix<>& rho);
double min_eigenvalue(const ComplexMatrix<>& rho);
/// (1/2) sum |eig(a - b)|.
double trace_distance(const ComplexMatrix<>& a, const ComplexMatrix<>& b);

/// Adaptive Dormand-Prince 5(4) settings. The state is re-hermitized and
/// trace-renormalized after every accepted step.
struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-14;
  double initial_step = 1e-3;
  long max_steps = 50'000'000;
  /// Eigendecompose every accepted state to track positivity.
  bool monitor_positivity = true;
};

struct TrajectoryDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  long accepted_steps = 0;
  long rejected_steps = 0;
};

struct EvolutionResult {
  ComplexMatrix<> rho;
  TrajectoryDiagnostics diagnostics;
};

/// Integrates for a fixed duration.
EvolutionResult evolve_for(const ComplexMatrix<>& rho0, const CollectiveOperators<>& ops,
                           const BathSpec& bath, double duration, const IntegratorOptions& opts = {});

struct SteadyStateResult {
  ComplexMatrix<> rho_ss;
  bool converged = false;
  double t_elapsed = 0.0;
  /// max |d rho / dt| at the returned state.
  double residual = 0.0;
  TrajectoryDiagnostics diagnostics;
};

/// Bound on the entrywise size of the generator: 2 max|H| + 2 (Gamma(omega) +
/// Gamma(-omega)) max|J_+ J_-|.
double generator_scale(const CollectiveOperators<>& ops, const BathSpec& bath);

/// Integrates until max |d rho / dt| < tol * generator_scale(ops, bath) or
/// t_max is reached; the latter returns converged = false rather than
/// throwing. The explicit integrator leaves O(rtol) noise on the stiff modes,
/// so an absolute residual floor would grow like n^2.
SteadyStateResult evolve_to_steady_state(const ComplexMatrix<>& rho0,
                                         const CollectiveOperators<>& ops, const BathSpec& bath,
                                         double tol, double t_max,
                                         const IntegratorOptions& opts = {});

/// Single-qubit thermal state exp(-beta omega sigma_z / 2) / Tr[...] in the
/// basis (ground, excited), one copy per qubit.
std::vector<Eigen::Matrix2cd> independent_steady_state(int n, const BathSpec& bath);

/// Distribution of 2m over {-n, -n+2, .., n} for a product of single-qubit
/// states, by convolving their populations.
std::vector<double> magnetization_law(const std::vector<Eigen::Matrix2cd>& qubits);

}  // namespace qie
