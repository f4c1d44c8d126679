// Classicality certification: membership of the local polytope (Bell side)
// and of the non-contextual polytope (contextuality side), with
// machine-checkable certificates in both directions, plus exact vertex and
// facet enumeration of both polytopes.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellctx/behaviour.hpp"
#include "bellctx/polytope.hpp"
#include "bellctx/simplex.hpp"

namespace bellctx {

/// A deterministic local strategy: one outcome per input for each party.
struct DeterministicStrategy {
  std::vector<int> alice;  // a(x)
  std::vector<int> bob;    // b(y)
  bool operator==(const DeterministicStrategy&) const = default;
};

/// All deterministic strategies of the scenario, lexicographic (Alice-major).
std::vector<DeterministicStrategy> local_strategies(const BellScenario& scenario,
                                                    const Budget& budget);

BellCorrelation strategy_correlation(const BellScenario& scenario,
                                     const DeterministicStrategy& strategy);

/// The vertices of the local polytope as correlations, in enumeration order.
std::vector<BellCorrelation> local_vertices(const BellScenario& scenario, const Budget& budget);

/// A Bell inequality in the form  coeffs . p <= bound, violated by `violation`.
/// Coefficients are laid out like BellCorrelation::raw() and integer-scaled.
struct BellInequality {
  std::vector<Rational> coeffs;
  Rational bound;
  Rational violation;
};

struct LocalVerdict {
  bool member = false;
  // member: convex weights over deterministic strategies reproducing p.
  std::vector<std::pair<DeterministicStrategy, Rational>> weights;
  // non-member: separating inequality, tight on at least one vertex.
  std::optional<BellInequality> inequality;
};

LocalVerdict check_local(const BellCorrelation& p, const Budget& budget = {});

/// Deterministic response-function assignments lambda: y -> outcome,
/// lexicographic; xi_y(b|lambda) = [lambda(y) = b].
std::vector<std::vector<int>> response_function_atlas(const CtxScenario& scenario,
                                                      const Budget& budget);

/// A finite ontic model: deterministic response functions plus one measure
/// per preparation (rows follow the scenario's preparation order).
struct OnticModel {
  std::vector<std::vector<int>> responses;  // per lambda, outcome per y
  std::vector<std::vector<Rational>> mu;    // per preparation, per lambda
};

/// A noncontextuality inequality in the form coeffs . q <= bound; the
/// coefficient layout matches CtxBehaviour::raw().
struct NCInequality {
  std::vector<Rational> coeffs;
  Rational bound;
  Rational violation;
};

struct NCVerdict {
  bool member = false;
  std::optional<OnticModel> model;
  std::optional<NCInequality> inequality;
};

NCVerdict check_noncontextual(const CtxBehaviour& q, const Budget& budget = {});

struct Polytope {
  std::size_t dim = 0;
  std::vector<std::string> coordinates;          // legend, one name per coordinate
  std::vector<std::vector<Rational>> vertices;   // canonical order
  FacetSystem hrep;
};

/// The non-contextual polytope of a scenario in free behaviour coordinates
/// (outcome b = B_y dropped per measurement): vertices by projection of the
/// mu-polytope's vertex set, facets by double description of the hull.
Polytope nc_polytope(const CtxScenario& scenario, const Budget& budget = {});

/// The local polytope of a Bell scenario in full table coordinates.
Polytope local_polytope(const BellScenario& scenario, const Budget& budget = {});

/// Free behaviour coordinates of q (the polytope's coordinate system).
std::vector<Rational> behaviour_coordinates(const CtxBehaviour& q);

/// Classification of a canonical facet: does it state nonnegativity of a
/// behaviour probability (including the dropped outcome's)?
bool is_positivity_facet(const Polytope& polytope, const std::vector<Rational>& facet);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
  // satisfied-check tallies (exact equalities that were re-verified)
  int normalisations = 0;
  int equivalence_equalities = 0;
  int data_equalities = 0;
  int vertex_checks = 0;

  void require(bool condition, const std::string& what);
};

/// Re-checks every claim of the verdict by direct arithmetic, independent of
/// the solver. Failures are reported with their location, never thrown.
VerifyReport verify_certificate(const BellCorrelation& p, const LocalVerdict& verdict,
                                const Budget& budget = {});
VerifyReport verify_certificate(const CtxBehaviour& q, const NCVerdict& verdict,
                                const Budget& budget = {});

}  // namespace bellctx
