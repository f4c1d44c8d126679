// Bell correlations p(a,b|x,y) over exact rationals, their validation,
// marginals and the no-signalling check.

#pragma once

#include <string>
#include <vector>

#include "bellctx/scenario.hpp"

namespace bellctx {

/// One violated validation constraint; `where` locates the offending cell or
/// input pair.
struct Violation {
  std::string kind;
  std::string where;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// A validated correlation. The table is total: every (a,b,x,y) with
/// a in [A_x], b in [B_y] has an entry; entries are nonnegative and each
/// (x,y) block sums to one exactly.
class BellCorrelation {
 public:
  /// Validates and constructs; throws errc::malformed_table /
  /// errc::normalisation with the full violation list in the message.
  static BellCorrelation from_table(BellScenario scenario, std::vector<Rational> table);

  /// Non-throwing validation of a candidate table.
  static ValidationReport validate_table(const BellScenario& scenario,
                                         const std::vector<Rational>& table);

  const BellScenario& scenario() const { return scenario_; }

  const Rational& at(int a, int b, int x, int y) const { return table_[index(a, b, x, y)]; }
  const std::vector<Rational>& raw() const { return table_; }

  /// Flat index of (a,b,x,y): (off_A[x]+a-1) * ||B|| + off_B[y]+b-1.
  std::size_t index(int a, int b, int x, int y) const;

  bool operator==(const BellCorrelation&) const = default;

 private:
  BellCorrelation(BellScenario scenario, std::vector<Rational> table);

  BellScenario scenario_;
  std::vector<int> off_A_, off_B_;
  std::vector<Rational> table_;
};

struct Marginals {
  // p_A[x-1][a-1], p_B[y-1][b-1]; computed at the reference slice y=1 / x=1.
  std::vector<std::vector<Rational>> p_A;
  std::vector<std::vector<Rational>> p_B;
  bool alice_well_defined = false;
  bool bob_well_defined = false;
};

/// Marginals from the y=1 (x=1) slice; the well-defined flags record whether
/// every other slice agrees. Disagreement is reported, never thrown.
Marginals marginals(const BellCorrelation& c);

struct NoSignallingVerdict {
  bool no_signalling = false;
  Rational max_residual;  // largest absolute constraint violation, exact
};

NoSignallingVerdict check_no_signalling(const BellCorrelation& c);

}  // namespace bellctx
