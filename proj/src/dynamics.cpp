#include "qie/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qie/errors.hpp"

namespace qie {
namespace {

constexpr double kStateTolerance = 1e-12;
constexpr double kPositivityTolerance = 1e-10;

double max_abs(const ComplexMatrix<>& m) { return m.cwiseAbs().maxCoeff(); }

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Integrator {
 public:
  Integrator(const ComplexMatrix<>& rho0, const CollectiveOperators<>& ops, const BathSpec& bath,
             const IntegratorOptions& opts)
      : ops_(ops), bath_(bath), opts_(opts), rho_(rho0), h_(opts.initial_step) {
    bath.validate();
    if (rho0.rows() != ops.dim() || rho0.cols() != ops.dim()) {
      throw DomainError("evolve: initial state dimension does not match operators");
    }
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0) || !(opts.initial_step > 0.0)) {
      throw DomainError("evolve: tolerances and initial step must be > 0");
    }
    DickeState check(rho0);  // validates the initial state
    (void)check;
    k1_ = lindblad_rhs(rho_, ops_, bath_);
    record(rho_);
  }

  /// One accepted step, never past t_end. Returns false if already there.
  bool step(double t_end) {
    if (t_ >= t_end) return false;
    for (;;) {
      if (diag_.accepted_steps + diag_.rejected_steps >= opts_.max_steps) {
        throw NumericalError("evolve: step budget exhausted", t_, diag_.accepted_steps);
      }
      const bool last = t_ + h_ >= t_end;
      const double h = last ? t_end - t_ : h_;
      const ComplexMatrix<> k2 = rhs(rho_ + h * (a21 * k1_));
      const ComplexMatrix<> k3 = rhs(rho_ + h * (a31 * k1_ + a32 * k2));
      const ComplexMatrix<> k4 = rhs(rho_ + h * (a41 * k1_ + a42 * k2 + a43 * k3));
      const ComplexMatrix<> k5 = rhs(rho_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
      const ComplexMatrix<> k6 =
          rhs(rho_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      ComplexMatrix<> next = rho_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const ComplexMatrix<> k7 = rhs(next);
      const ComplexMatrix<> err =
          h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double norm = 0.0;
      for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
          const double scale =
              opts_.atol + opts_.rtol * std::max(std::abs(rho_(i, j)), std::abs(next(i, j)));
          norm = std::max(norm, std::abs(err(i, j)) / scale);
        }
      }
      const double factor =
          norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0) {
        t_ = last ? t_end : t_ + h;
        if (!last) h_ = h * factor;
        accept(std::move(next));
        return true;
      }
      ++diag_.rejected_steps;
      h_ = h * std::max(factor, 0.2);
      if (h_ < 1e-14 * std::max(1.0, std::abs(t_))) {
        throw NumericalError("evolve: step size underflow", t_, diag_.accepted_steps);
      }
    }
  }

  double time() const { return t_; }
  const ComplexMatrix<>& state() const { return rho_; }
  /// max |d rho / dt| at the current state.
  double residual() const { return max_abs(k1_); }
  const TrajectoryDiagnostics& diagnostics() const { return diag_; }

 private:
  ComplexMatrix<> rhs(const ComplexMatrix<>& rho) const { return lindblad_rhs(rho, ops_, bath_); }

  void accept(ComplexMatrix<> next) {
    ++diag_.accepted_steps;
    record(next);
    const ComplexMatrix<> herm = (next + next.adjoint()) / 2.0;
    rho_ = herm / herm.trace().real();
    k1_ = rhs(rho_);
  }

  void record(const ComplexMatrix<>& rho) {
    const std::complex<double> tr = rho.trace();
    diag_.max_trace_drift = std::max(diag_.max_trace_drift, std::abs(tr - 1.0));
    diag_.max_hermiticity_error = std::max(diag_.max_hermiticity_error, hermiticity_error(rho));
    if (opts_.monitor_positivity) {
      diag_.min_eigenvalue = std::min(diag_.min_eigenvalue, min_eigenvalue(rho));
    }
    if (diag_.max_trace_drift > kStateTolerance || diag_.max_hermiticity_error > kStateTolerance) {
      throw NumericalError("evolve: trace or Hermiticity drift above 1e-12 in one step", t_,
                           diag_.accepted_steps);
    }
  }

  const CollectiveOperators<>& ops_;
  BathSpec bath_;
  IntegratorOptions opts_;
  ComplexMatrix<> rho_;
  ComplexMatrix<> k1_;
  double t_ = 0.0;
  double h_;
  TrajectoryDiagnostics diag_;
};

}  // namespace

double generator_scale(const CollectiveOperators<>& ops, const BathSpec& bath) {
  const double ladder = ops.jplus_jminus.cwiseAbs().maxCoeff();
  const double spectrum = ops.hamiltonian.cwiseAbs().maxCoeff();
  return 2.0 * spectrum + 2.0 * (bath.rate_down() + bath.rate_up()) * ladder;
}

void BathSpec::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("bath: beta must be finite and >= 0");
  }
  if (!(gamma_rate > 0.0) || !std::isfinite(gamma_rate)) {
    throw DomainError("bath: gamma must be finite and > 0");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("bath: omega must be > 0");
}

DickeState::DickeState(ComplexMatrix<> matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 2 || matrix_.rows() != matrix_.cols()) {
    throw DomainError("DickeState: matrix must be square with dimension n + 1 >= 2");
  }
  if (hermiticity_error(matrix_) > kStateTolerance) {
    throw DomainError("DickeState: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - 1.0) > kStateTolerance) {
    throw DomainError("DickeState: trace differs from 1");
  }
  if (min_eigenvalue(matrix_) < -kPositivityTolerance) {
    throw DomainError("DickeState: matrix is not positive semidefinite");
  }
}

DickeState DickeState::gibbs(int n, double beta, double omega) {
  if (n < 1) throw DomainError("DickeState::gibbs: n must be >= 1");
  if (!(beta >= 0.0) || !(omega > 0.0)) {
    throw DomainError("DickeState::gibbs: need beta >= 0 and omega > 0");
  }
  const Eigen::Index dim = n + 1;
  Eigen::VectorXd logw(dim);
  for (Eigen::Index i = 0; i < dim; ++i) logw(i) = -beta * omega * (-n / 2.0 + double(i));
  const double top = logw.maxCoeff();
  Eigen::VectorXd w = (logw.array() - top).exp();
  w /= w.sum();
  return DickeState(w.cast<std::complex<double>>().asDiagonal().toDenseMatrix());
}

DickeState DickeState::maximally_mixed(int n) {
  if (n < 1) throw DomainError("DickeState::maximally_mixed: n must be >= 1");
  return DickeState(ComplexMatrix<>::Identity(n + 1, n + 1) / double(n + 1));
}

DickeState DickeState::basis(int n, int twice_m) {
  if (n < 1 || twice_m < -n || twice_m > n || (twice_m + n) % 2 != 0) {
    throw DomainError("DickeState::basis: need n >= 1 and 2m in {-n, -n+2, .., n}");
  }
  ComplexMatrix<> m = ComplexMatrix<>::Zero(n + 1, n + 1);
  const Eigen::Index i = (twice_m + n) / 2;
  m(i, i) = 1.0;
  return DickeState(std::move(m));
}

std::vector<double> DickeState::populations() const {
  std::vector<double> p(static_cast<std::size_t>(dim()));
  for (Eigen::Index i = 0; i < dim(); ++i) p[static_cast<std::size_t>(i)] = matrix_(i, i).real();
  return p;
}

double hermiticity_error(const ComplexMatrix<>& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix<>& rho) {
  const ComplexMatrix<> herm = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<>> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double trace_distance(const ComplexMatrix<>& a, const ComplexMatrix<>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("trace_distance: dimension mismatch");
  }
  const ComplexMatrix<> d = a - b;
  const ComplexMatrix<> herm = (d + d.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<>> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

EvolutionResult evolve_for(const ComplexMatrix<>& rho0, const CollectiveOperators<>& ops,
                           const BathSpec& bath, double duration, const IntegratorOptions& opts) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw DomainError("evolve_for: duration must be finite and >= 0");
  }
  Integrator integ(rho0, ops, bath, opts);
  while (integ.step(duration)) {
  }
  return {integ.state(), integ.diagnostics()};
}

SteadyStateResult evolve_to_steady_state(const ComplexMatrix<>& rho0,
                                         const CollectiveOperators<>& ops, const BathSpec& bath,
                                         double tol, double t_max,
                                         const IntegratorOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("evolve_to_steady_state: tol must be > 0");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw DomainError("evolve_to_steady_state: t_max must be finite and > 0");
  }
  Integrator integ(rho0, ops, bath, opts);
  const double threshold = tol * generator_scale(ops, bath);
  bool converged = integ.residual() < threshold;
  while (!converged && integ.step(t_max)) converged = integ.residual() < threshold;
  SteadyStateResult out;
  out.rho_ss = integ.state();
  out.converged = converged;
  out.t_elapsed = integ.time();
  out.residual = integ.residual();
  out.diagnostics = integ.diagnostics();
  return out;
}

std::vector<Eigen::Matrix2cd> independent_steady_state(int n, const BathSpec& bath) {
  if (n < 1) throw DomainError("independent_steady_state: n must be >= 1");
  bath.validate();
  // Populations from the detailed-balance ratio Gamma(-omega) / Gamma(omega).
  const double x = bath.beta * bath.omega;
  const double excited = 1.0 / (1.0 + std::exp(x));
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  rho(0, 0) = 1.0 - excited;
  rho(1, 1) = excited;
  return std::vector<Eigen::Matrix2cd>(static_cast<std::size_t>(n), rho);
}

std::vector<double> magnetization_law(const std::vector<Eigen::Matrix2cd>& qubits) {
  if (qubits.empty()) throw DomainError("magnetization_law: no qubits");
  // law[k] = P(k qubits excited) <-> 2m = 2k - n.
  std::vector<double> law{1.0};
  for (const auto& q : qubits) {
    const double ground = q(0, 0).real();
    const double excited = q(1, 1).real();
    std::vector<double> next(law.size() + 1, 0.0);
    for (std::size_t k = 0; k < law.size(); ++k) {
      next[k] += law[k] * ground;
      next[k + 1] += law[k] * excited;
    }
    law = std::move(next);
  }
  return law;
}

}  // namespace qie
