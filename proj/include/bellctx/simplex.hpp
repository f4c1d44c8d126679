// Exact rational linear programming in equality form:
//
//   A x = b,   x_j >= 0 for the flagged columns,   minimise c.x (optional).
//
// Feasibility runs phase-I simplex with Bland's rule; infeasible systems
// yield a Farkas vector y with y.A <= 0 on nonnegative columns, y.A = 0 on
// free columns and y.b > 0, certifying emptiness. Everything is exact; the
// pivot order is fixed, so results are deterministic.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bellctx/rational.hpp"

namespace bellctx {

struct LinearSystem {
  std::vector<std::vector<Rational>> A;  // rows
  std::vector<Rational> b;
  std::vector<bool> nonneg;              // per column; empty means all nonnegative
  std::optional<std::vector<Rational>> objective;

  std::size_t rows() const { return A.size(); }
  std::size_t cols() const { return A.empty() ? 0 : A.front().size(); }
  void validate() const;
};

struct FeasiblePoint {
  std::vector<Rational> x;
};

struct FarkasCertificate {
  std::vector<Rational> y;
};

using FeasibilityResult = std::variant<FeasiblePoint, FarkasCertificate>;

FeasibilityResult lp_feasibility(const LinearSystem& sys);

/// Exact re-check of a Farkas certificate against the system.
bool farkas_valid(const LinearSystem& sys, const FarkasCertificate& cert);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOptimum {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational value;
};

/// Two-phase simplex minimising sys.objective (required).
LpOptimum lp_minimise(const LinearSystem& sys);

}  // namespace bellctx
