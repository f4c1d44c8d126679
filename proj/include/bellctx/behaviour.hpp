// Contextuality-scenario behaviours q(b|[a|x],y) and the operational
// equivalence residuals that decide contextual-set membership.

#pragma once

#include <vector>

#include "bellctx/correlation.hpp"
#include "bellctx/scenario.hpp"

namespace bellctx {

class CtxBehaviour {
 public:
  static CtxBehaviour from_table(CtxScenario scenario, std::vector<Rational> table);
  static ValidationReport validate_table(const CtxScenario& scenario,
                                         const std::vector<Rational>& table);

  const CtxScenario& scenario() const { return scenario_; }

  const Rational& at(int prep_idx, int y, int b) const { return table_[index(prep_idx, y, b)]; }
  const std::vector<Rational>& raw() const { return table_; }

  /// Flat index of (prep,y,b): prep * ||B|| + off_B[y] + b-1.
  std::size_t index(int prep_idx, int y, int b) const;

  bool operator==(const CtxBehaviour&) const = default;

 private:
  CtxBehaviour(CtxScenario scenario, std::vector<Rational> table);

  CtxScenario scenario_;
  std::vector<int> off_B_;
  std::vector<Rational> table_;
};

/// Per-equivalence residual: max over (b,y) of |sum_lhs - sum_rhs| on q.
/// All residuals zero <=> q lies in the contextual set of its scenario.
std::vector<Rational> equivalence_residuals(const CtxBehaviour& q);

Rational max_equivalence_residual(const CtxBehaviour& q);

/// The NS(p_A) equivalence chain of a well-defined Alice marginal: X-1
/// pairwise equivalences anchoring decomposition x=1 against each x >= 2,
/// zero-coefficient preparations omitted. X < 2 yields an empty list.
std::vector<PreparationEquivalence> canonical_ns_equivalence(const Marginals& m);

}  // namespace bellctx
