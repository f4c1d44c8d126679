#include "bellctx/simplex.hpp"

#include <algorithm>

namespace bellctx {

void LinearSystem::validate() const {
  if (A.size() != b.size()) fail(errc::dimension_mismatch, "row count of A differs from b");
  const std::size_t n = cols();
  for (const auto& row : A)
    if (row.size() != n) fail(errc::dimension_mismatch, "ragged constraint matrix");
  if (!nonneg.empty() && nonneg.size() != n)
    fail(errc::dimension_mismatch, "nonneg flags do not match column count");
  if (objective && objective->size() != n)
    fail(errc::dimension_mismatch, "objective does not match column count");
}

namespace {

// Dense tableau for the sign-normalised system (b >= 0) with one artificial
// per row. Columns: [0, n) structural (free columns split into +/- pairs),
// [n, n+m) artificial, column n+m the right-hand side.
class Tableau {
 public:
  Tableau(const LinearSystem& sys) : m_(sys.rows()) {
    const std::size_t n0 = sys.cols();
    split_.reserve(n0);
    for (std::size_t j = 0; j < n0; ++j) {
      const bool nn = sys.nonneg.empty() || sys.nonneg[j];
      split_.push_back(nn ? -1 : static_cast<int>(n0 + negatives_.size()));
      if (!nn) negatives_.push_back(j);
    }
    n_ = n0 + negatives_.size();
    row_sign_.assign(m_, 1);
    rows_.assign(m_, std::vector<Rational>(n_ + m_ + 1, Rational(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const int s = sys.b[i] < 0 ? -1 : 1;
      row_sign_[i] = s;
      for (std::size_t j = 0; j < n0; ++j) {
        rows_[i][j] = s * sys.A[i][j];
        if (split_[j] >= 0) rows_[i][split_[j]] = -s * sys.A[i][j];
      }
      rows_[i][n_ + i] = 1;
      rows_[i][n_ + m_] = s * sys.b[i];
      basis_[i] = n_ + i;
    }
  }

  // Phase I: minimise the sum of artificials. Returns the optimal value.
  Rational phase_one() {
    obj_.assign(n_ + m_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) {
      Rational colsum(0);
      for (std::size_t i = 0; i < m_; ++i) colsum += rows_[i][j];
      obj_[j] = -colsum;
    }
    Rational value(0);
    for (std::size_t i = 0; i < m_; ++i) value += rhs(i);
    obj_[n_ + m_] = -value;  // negated objective value
    run(true);
    return -obj_[n_ + m_];
  }

  // Phase II over a feasible basis; artificials are blocked from entering.
  // `cost` is over the split structural columns. Returns the optimal value,
  // or nothing when unbounded.
  std::optional<Rational> phase_two(const std::vector<Rational>& cost) {
    drive_out_artificials();
    obj_.assign(n_ + m_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (dead_[i] || basis_[i] >= n_) continue;
      const Rational c = cost[basis_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= n_ + m_; ++j) obj_[j] -= c * rows_[i][j];
    }
    if (!run(false)) return std::nullopt;
    return -obj_[n_ + m_];
  }

  std::vector<Rational> extract(std::size_t n0) const {
    std::vector<Rational> x(n0, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (dead_[i]) continue;
      const std::size_t j = basis_[i];
      if (j >= n_) continue;  // artificial basic at zero
      if (j < n0) x[j] += rhs(i);
      else x[negatives_[j - n0]] -= rhs(i);
    }
    return x;
  }

  // Dual multipliers of phase I in the original row space.
  std::vector<Rational> farkas() const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = row_sign_[i] * (1 - obj_[n_ + i]);
    return y;
  }

  std::size_t split_cols() const { return n_; }
  const std::vector<std::size_t>& negatives() const { return negatives_; }

 private:
  Rational rhs(std::size_t i) const { return rows_[i][n_ + m_]; }

  // Bland's rule; returns false on unbounded (phase II only).
  bool run(bool phase_one) {
    if (dead_.size() != m_) dead_.assign(m_, false);
    const std::size_t limit = phase_one ? n_ + m_ : n_;
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] < 0) { enter = j; break; }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (dead_[i] || rows_[i][enter] <= 0) continue;
        const Rational ratio = rhs(i) / rows_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / rows_[row][col];
    for (auto& v : rows_[row]) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j <= n_ + m_; ++j) rows_[i][j] -= f * rows_[row][j];
    }
    if (obj_[col] != 0) {
      const Rational f = obj_[col];
      for (std::size_t j = 0; j <= n_ + m_; ++j) obj_[j] -= f * rows_[row][j];
    }
    basis_[row] = col;
  }

  // Pivot basic artificials (necessarily at zero) onto structural columns;
  // rows with no structural entry are redundant and marked dead.
  void drive_out_artificials() {
    if (dead_.size() != m_) dead_.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      if (dead_[i] || basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[i][j] != 0) { col = j; break; }
      if (col == n_) dead_[i] = true;
      else pivot(i, col);
    }
  }

  std::size_t m_ = 0, n_ = 0;
  std::vector<std::size_t> negatives_;  // original indices of free columns
  std::vector<int> split_;              // original col -> split negative col (or -1)
  std::vector<int> row_sign_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> dead_;
};

std::vector<Rational> split_cost(const Tableau& t, const LinearSystem& sys) {
  std::vector<Rational> cost(t.split_cols(), Rational(0));
  const auto& c = *sys.objective;
  for (std::size_t j = 0; j < sys.cols(); ++j) cost[j] = c[j];
  for (std::size_t k = 0; k < t.negatives().size(); ++k)
    cost[sys.cols() + k] = -c[t.negatives()[k]];
  return cost;
}

}  // namespace

FeasibilityResult lp_feasibility(const LinearSystem& sys) {
  sys.validate();
  Tableau tableau(sys);
  if (tableau.phase_one() == 0) return FeasiblePoint{tableau.extract(sys.cols())};
  FarkasCertificate cert{tableau.farkas()};
  if (!farkas_valid(sys, cert)) fail(errc::internal, "phase-I dual is not a Farkas certificate");
  return cert;
}

bool farkas_valid(const LinearSystem& sys, const FarkasCertificate& cert) {
  if (cert.y.size() != sys.rows()) return false;
  for (std::size_t j = 0; j < sys.cols(); ++j) {
    Rational dot(0);
    for (std::size_t i = 0; i < sys.rows(); ++i) dot += cert.y[i] * sys.A[i][j];
    const bool nn = sys.nonneg.empty() || sys.nonneg[j];
    if (nn ? dot > 0 : dot != 0) return false;
  }
  Rational rhs(0);
  for (std::size_t i = 0; i < sys.rows(); ++i) rhs += cert.y[i] * sys.b[i];
  return rhs > 0;
}

LpOptimum lp_minimise(const LinearSystem& sys) {
  sys.validate();
  if (!sys.objective) fail(errc::dimension_mismatch, "lp_minimise needs an objective");
  Tableau tableau(sys);
  LpOptimum out;
  if (tableau.phase_one() != 0) {
    out.status = LpStatus::infeasible;
    return out;
  }
  const auto value = tableau.phase_two(split_cost(tableau, sys));
  if (!value) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = tableau.extract(sys.cols());
  out.value = *value;
  return out;
}

}  // namespace bellctx
