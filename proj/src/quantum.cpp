#include "bellctx/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace bellctx {

namespace {

double max_abs(const ComplexMatrix& m) {
  double worst = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

BellScenario QuantumBellRealisation::scenario() const {
  BellScenario s;
  for (const auto& povm : M) s.outcomes_A.push_back(static_cast<int>(povm.size()));
  for (const auto& povm : N) s.outcomes_B.push_back(static_cast<int>(povm.size()));
  return s;
}

void QuantumBellRealisation::validate(const QuantumTolerances& tol) const {
  if (dim_A < 1 || dim_B < 1) fail(errc::invalid_realisation, "dimensions must be positive");
  const int d = dim_A * dim_B;
  if (rho.rows() != d || rho.cols() != d)
    fail(errc::invalid_realisation, "state dimension does not match dims");
  if (!is_psd(rho, tol.psd)) fail(errc::invalid_realisation, "state is not PSD");
  if (std::abs(rho.trace().real() - 1.0) > tol.trace || std::abs(rho.trace().imag()) > tol.trace)
    fail(errc::invalid_realisation, "state trace is not one");
  if (M.empty() || N.empty()) fail(errc::invalid_realisation, "each party needs a measurement");
  auto check_povms = [&](const std::vector<std::vector<ComplexMatrix>>& povms, int dim,
                         const char* side) {
    for (std::size_t i = 0; i < povms.size(); ++i) {
      if (povms[i].empty()) fail(errc::invalid_realisation, "empty POVM");
      ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
      for (const ComplexMatrix& e : povms[i]) {
        if (e.rows() != dim || e.cols() != dim)
          fail(errc::invalid_realisation, std::string(side) + " effect has wrong dimension");
        if (!is_psd(e, tol.psd))
          fail(errc::invalid_realisation, std::string(side) + " effect is not PSD");
        sum += e;
      }
      if (max_abs(sum - ComplexMatrix::Identity(dim, dim)) > tol.completeness)
        fail(errc::invalid_realisation,
             std::string(side) + " POVM " + std::to_string(i + 1) + " is not complete");
    }
  };
  check_povms(M, dim_A, "Alice");
  check_povms(N, dim_B, "Bob");
}

void Assemblage::validate(const QuantumTolerances& tol) const {
  if (dim < 1) fail(errc::invalid_realisation, "assemblage dimension must be positive");
  if (weights.empty()) fail(errc::invalid_realisation, "assemblage has no inputs");
  if (weights.size() != states.size() || weights.size() != appears.size())
    fail(errc::invalid_realisation, "assemblage fields disagree on the input count");
  for (std::size_t x = 0; x < weights.size(); ++x) {
    double total = 0;
    for (std::size_t a = 0; a < weights[x].size(); ++a) {
      if (!appears[x][a]) continue;
      total += weights[x][a];
      const ComplexMatrix& st = states[x][a];
      if (st.rows() != dim || st.cols() != dim)
        fail(errc::invalid_realisation, "conditional state has wrong dimension");
      if (!is_psd(st, tol.psd)) fail(errc::invalid_realisation, "conditional state is not PSD");
      if (std::abs(st.trace().real() - 1.0) > 1e-8)
        fail(errc::invalid_realisation, "conditional state trace is not one");
    }
    if (std::abs(total - 1.0) > 1e-8)
      fail(errc::invalid_realisation, "weights for input " + std::to_string(x + 1) +
                                          " sum to " + std::to_string(total));
  }
  if (averaging_residual() > 1e-8)
    fail(errc::invalid_realisation, "conditional states do not average to rho_B");
}

double Assemblage::averaging_residual() const {
  double worst = 0;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    ComplexMatrix avg = ComplexMatrix::Zero(dim, dim);
    for (std::size_t a = 0; a < weights[x].size(); ++a)
      if (appears[x][a]) avg += weights[x][a] * states[x][a];
    worst = std::max(worst, max_abs(avg - rho_B));
  }
  return worst;
}

double& NumericCorrelation::at(int a, int b, int x, int y) {
  std::size_t off_a = 0, off_b = 0;
  for (int i = 1; i < x; ++i) off_a += scenario.outcomes_A[i - 1];
  for (int i = 1; i < y; ++i) off_b += scenario.outcomes_B[i - 1];
  return table[(off_a + a - 1) * scenario.norm_B() + off_b + b - 1];
}

double NumericCorrelation::at(int a, int b, int x, int y) const {
  return const_cast<NumericCorrelation*>(this)->at(a, b, x, y);
}

ComplexMatrix partial_trace_A(const ComplexMatrix& op, int dim_A, int dim_B) {
  if (op.rows() != dim_A * dim_B || op.cols() != dim_A * dim_B)
    fail(errc::dimension_mismatch, "operator does not factor as dim_A x dim_B");
  ComplexMatrix out = ComplexMatrix::Zero(dim_B, dim_B);
  for (int i = 0; i < dim_B; ++i)
    for (int j = 0; j < dim_B; ++j)
      for (int k = 0; k < dim_A; ++k) out(i, j) += op(k * dim_B + i, k * dim_B + j);
  return out;
}

ComplexMatrix partial_trace_B(const ComplexMatrix& op, int dim_A, int dim_B) {
  if (op.rows() != dim_A * dim_B || op.cols() != dim_A * dim_B)
    fail(errc::dimension_mismatch, "operator does not factor as dim_A x dim_B");
  ComplexMatrix out = ComplexMatrix::Zero(dim_A, dim_A);
  for (int i = 0; i < dim_A; ++i)
    for (int j = 0; j < dim_A; ++j)
      for (int k = 0; k < dim_B; ++k) out(i, j) += op(i * dim_B + k, j * dim_B + k);
  return out;
}

std::pair<Assemblage, NumericBehaviour> assemblage_from_bell(const QuantumBellRealisation& r,
                                                             const QuantumTolerances& tol) {
  r.validate(tol);
  Assemblage asm_out;
  asm_out.dim = r.dim_B;
  asm_out.rho_B = partial_trace_A(r.rho, r.dim_A, r.dim_B);

  NumericBehaviour behaviour;
  behaviour.outcomes_B = r.scenario().outcomes_B;

  const ComplexMatrix id_B = ComplexMatrix::Identity(r.dim_B, r.dim_B);
  for (std::size_t x = 0; x < r.M.size(); ++x) {
    std::vector<double> w;
    std::vector<bool> app;
    std::vector<ComplexMatrix> st;
    for (std::size_t a = 0; a < r.M[x].size(); ++a) {
      ComplexMatrix big = ComplexMatrix::Zero(r.dim_A * r.dim_B, r.dim_A * r.dim_B);
      // (M (x) I) rho without forming the Kronecker product explicitly
      for (int i = 0; i < r.dim_A; ++i)
        for (int k = 0; k < r.dim_A; ++k) {
          const std::complex<double> m = r.M[x][a](i, k);
          if (m == std::complex<double>(0, 0)) continue;
          big.block(i * r.dim_B, 0, r.dim_B, r.dim_A * r.dim_B) +=
              m * r.rho.block(k * r.dim_B, 0, r.dim_B, r.dim_A * r.dim_B);
        }
      const ComplexMatrix steered = partial_trace_A(big, r.dim_A, r.dim_B);
      const double weight = steered.trace().real();
      w.push_back(weight);
      if (weight > tol.weight_floor) {
        app.push_back(true);
        st.push_back(steered / weight);
      } else {
        app.push_back(false);
        st.push_back(ComplexMatrix::Zero(r.dim_B, r.dim_B));
      }
    }
    asm_out.weights.push_back(std::move(w));
    asm_out.appears.push_back(std::move(app));
    asm_out.states.push_back(std::move(st));
  }
  (void)id_B;

  for (std::size_t x = 0; x < r.M.size(); ++x)
    for (std::size_t a = 0; a < r.M[x].size(); ++a) {
      if (!asm_out.appears[x][a]) continue;
      behaviour.preps.push_back({static_cast<int>(a) + 1, static_cast<int>(x) + 1});
    }
  std::sort(behaviour.preps.begin(), behaviour.preps.end());
  for (const PrepLabel& prep : behaviour.preps) {
    const ComplexMatrix& state = asm_out.states[prep.x - 1][prep.a - 1];
    for (std::size_t y = 0; y < r.N.size(); ++y)
      for (std::size_t b = 0; b < r.N[y].size(); ++b)
        behaviour.table.push_back((r.N[y][b] * state).trace().real());
  }
  return {std::move(asm_out), std::move(behaviour)};
}

HjwRealisation hjw_construct(const Assemblage& asm_in, const QuantumTolerances& tol) {
  asm_in.validate(tol);
  const int d = asm_in.dim;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(asm_in.rho_B);
  if (solver.info() != Eigen::Success) fail(errc::internal, "eigensolver failed on rho_B");

  // Keep eigenvalues above the rank cutoff, sorted descending, with the
  // phase of each eigenvector fixed: first component of significant modulus
  // made real positive.
  std::vector<std::pair<double, ComplexVector>> kept;
  for (int i = 0; i < d; ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda <= tol.eps_rank) continue;
    ComplexVector v = solver.eigenvectors().col(i);
    for (int j = 0; j < d; ++j) {
      if (std::abs(v(j)) > 1e-8) {
        v *= std::conj(v(j)) / std::abs(v(j));
        break;
      }
    }
    kept.emplace_back(lambda, std::move(v));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  const int rank = static_cast<int>(kept.size());
  if (rank == 0) fail(errc::rank_deficient, "rho_B has no eigenvalue above the cutoff");

  HjwRealisation out;
  out.support_dim = rank;
  out.support_basis = ComplexMatrix(d, rank);
  for (int n = 0; n < rank; ++n) {
    out.eigenvalues.push_back(kept[n].first);
    out.support_basis.col(n) = kept[n].second;
  }

  // Conditional states must live on the support.
  const ComplexMatrix projector = out.support_basis * out.support_basis.adjoint();
  for (std::size_t x = 0; x < asm_in.states.size(); ++x)
    for (std::size_t a = 0; a < asm_in.states[x].size(); ++a) {
      if (!asm_in.appears[x][a]) continue;
      const ComplexMatrix& st = asm_in.states[x][a];
      if (max_abs(st - projector * st * projector) > 1e-7)
        fail(errc::rank_deficient, "conditional state leaks outside supp(rho_B)");
    }

  out.psi = ComplexVector::Zero(rank * d);
  for (int n = 0; n < rank; ++n)
    out.psi.segment(n * d, d) += std::sqrt(kept[n].first) * kept[n].second;

  ComplexMatrix scale = ComplexMatrix::Zero(rank, rank);
  for (int n = 0; n < rank; ++n) scale(n, n) = 1.0 / std::sqrt(kept[n].first);

  for (std::size_t x = 0; x < asm_in.states.size(); ++x) {
    std::vector<ComplexMatrix> povm;
    for (std::size_t a = 0; a < asm_in.states[x].size(); ++a) {
      if (!asm_in.appears[x][a]) {
        povm.push_back(ComplexMatrix::Zero(rank, rank));
        continue;
      }
      const ComplexMatrix in_basis =
          out.support_basis.adjoint() * asm_in.states[x][a] * out.support_basis;
      povm.push_back(scale * (asm_in.weights[x][a] * in_basis.transpose()) * scale);
    }
    out.M.push_back(std::move(povm));
  }
  return out;
}

SteeringResiduals verify_steering(const ComplexVector& psi,
                                  const std::vector<std::vector<ComplexMatrix>>& M,
                                  const Assemblage& asm_in) {
  SteeringResiduals res;
  const int d = asm_in.dim;
  if (M.empty() || M.front().empty()) fail(errc::dimension_mismatch, "no POVMs to verify");
  const int r = static_cast<int>(M.front().front().rows());
  if (psi.size() != r * d) fail(errc::dimension_mismatch, "state does not match POVM/assemblage dims");

  const ComplexMatrix rho_psi = psi * psi.adjoint();
  for (std::size_t x = 0; x < M.size(); ++x) {
    ComplexMatrix total = ComplexMatrix::Zero(r, r);
    for (std::size_t a = 0; a < M[x].size(); ++a) {
      total += M[x][a];
      ComplexMatrix big = ComplexMatrix::Zero(r * d, r * d);
      for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
          const std::complex<double> m = M[x][a](i, k);
          if (m == std::complex<double>(0, 0)) continue;
          big.block(i * d, 0, d, r * d) += m * rho_psi.block(k * d, 0, d, r * d);
        }
      const ComplexMatrix steered = partial_trace_A(big, r, d);
      ComplexMatrix target = ComplexMatrix::Zero(d, d);
      if (x < asm_in.weights.size() && a < asm_in.weights[x].size() && asm_in.appears[x][a])
        target = asm_in.weights[x][a] * asm_in.states[x][a];
      res.state_residual = std::max(res.state_residual, max_abs(steered - target));
    }
    res.completeness_residual =
        std::max(res.completeness_residual, max_abs(total - ComplexMatrix::Identity(r, r)));
  }
  return res;
}

NumericCorrelation realisation_to_tables(const QuantumBellRealisation& r) {
  NumericCorrelation out;
  out.scenario = r.scenario();
  for (std::size_t x = 0; x < r.M.size(); ++x)
    for (std::size_t a = 0; a < r.M[x].size(); ++a)
      for (std::size_t y = 0; y < r.N.size(); ++y)
        for (std::size_t b = 0; b < r.N[y].size(); ++b) {
          ComplexMatrix big = ComplexMatrix::Zero(r.dim_A * r.dim_B, r.dim_A * r.dim_B);
          for (int i = 0; i < r.dim_A; ++i)
            for (int k = 0; k < r.dim_A; ++k) {
              const std::complex<double> m = r.M[x][a](i, k);
              if (m == std::complex<double>(0, 0)) continue;
              for (int p = 0; p < r.dim_B; ++p)
                for (int q = 0; q < r.dim_B; ++q)
                  big(i * r.dim_B + p, k * r.dim_B + q) = m * r.N[y][b](p, q);
            }
          out.table.push_back((big * r.rho).trace().real());
        }
  return out;
}

NumericCorrelation realisation_to_tables(const ComplexVector& psi,
                                         const std::vector<std::vector<ComplexMatrix>>& M,
                                         const std::vector<std::vector<ComplexMatrix>>& N) {
  if (M.empty() || M.front().empty() || N.empty() || N.front().empty())
    fail(errc::dimension_mismatch, "empty measurement family");
  const int r = static_cast<int>(M.front().front().rows());
  const int d = static_cast<int>(N.front().front().rows());
  if (psi.size() != r * d) fail(errc::dimension_mismatch, "state does not match POVM dims");

  NumericCorrelation out;
  for (const auto& povm : M) out.scenario.outcomes_A.push_back(static_cast<int>(povm.size()));
  for (const auto& povm : N) out.scenario.outcomes_B.push_back(static_cast<int>(povm.size()));
  for (std::size_t x = 0; x < M.size(); ++x)
    for (std::size_t a = 0; a < M[x].size(); ++a)
      for (std::size_t y = 0; y < N.size(); ++y)
        for (std::size_t b = 0; b < N[y].size(); ++b) {
          // <psi| M (x) N |psi>
          ComplexVector applied = ComplexVector::Zero(r * d);
          for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k) {
              const std::complex<double> m = M[x][a](i, k);
              if (m == std::complex<double>(0, 0)) continue;
              applied.segment(i * d, d) += m * (N[y][b] * psi.segment(k * d, d));
            }
          out.table.push_back(std::real(psi.dot(applied)));
        }
  return out;
}

std::optional<BellCorrelation> snap_correlation(const NumericCorrelation& t, const Int& max_den,
                                                double tol) {
  std::vector<Rational> table;
  table.reserve(t.table.size());
  for (double v : t.table) {
    Rational snapped;
    if (!snap_rational(v, max_den, tol, snapped)) return std::nullopt;
    table.push_back(std::move(snapped));
  }
  if (!BellCorrelation::validate_table(t.scenario, table).ok()) return std::nullopt;
  return BellCorrelation::from_table(t.scenario, std::move(table));
}

double chsh_value(const NumericCorrelation& t) {
  const auto& s = t.scenario;
  if (s.outcomes_A != std::vector<int>{2, 2} || s.outcomes_B != std::vector<int>{2, 2})
    fail(errc::shape_mismatch, "CHSH needs the (2,2,2,2) scenario");
  double value = 0;
  for (int x = 1; x <= 2; ++x)
    for (int y = 1; y <= 2; ++y) {
      double corr = 0;
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) corr += (a == b ? 1.0 : -1.0) * t.at(a, b, x, y);
      value += (x == 2 && y == 2 ? -1.0 : 1.0) * corr;
    }
  return value;
}

}  // namespace bellctx
