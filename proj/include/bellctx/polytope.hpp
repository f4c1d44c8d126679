// Exact convex geometry: the double description method for polyhedral cones
// and the polytope conversions built on it (vertex enumeration from an
// H-representation, facet enumeration from a V-representation), with
// canonical integer forms for facets and affine-hull equalities.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bellctx/rational.hpp"

namespace bellctx {

struct Budget {
  std::size_t max_atlas = 4096;      // deterministic response assignments
  std::size_t max_vertices = 100000; // enumerated vertices / points
  std::size_t max_rays = 100000;     // intermediate double-description rays

  static Budget from_env();          // BELLCTX_BUDGET overrides all knobs
  Budget with_all(std::size_t n) const;
};

/// Minimal generating pair (rays, lineality basis) of the cone
/// { y : a.y >= 0 for inequalities, e.y == 0 for equalities }.
struct DDCone {
  std::vector<std::vector<Rational>> rays;
  std::vector<std::vector<Rational>> lineality;
};

DDCone dd_cone(std::size_t dim, const std::vector<std::vector<Rational>>& inequalities,
               const std::vector<std::vector<Rational>>& equalities, std::size_t max_rays);

/// Vertices of the polytope { x >= 0 : lhs.x = rhs }, via homogenisation.
/// Throws errc::internal if the feasible set is unbounded (never the case for
/// the probability polytopes handled here) and errc::budget_exceeded when the
/// intermediate ray count passes the budget.
std::vector<std::vector<Rational>> polytope_vertices(std::size_t n,
                                                     const std::vector<std::vector<Rational>>& lhs,
                                                     const std::vector<Rational>& rhs,
                                                     std::size_t max_rays);

/// H-representation of conv(points). Facet rows (c0, c) mean c0 + c.x >= 0;
/// equality rows span the affine hull, also in (e0, e) form.
struct FacetSystem {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> facets;
  std::vector<std::vector<Rational>> equalities;
};

/// Facets via double description on the polar cone, canonicalised: equalities
/// in reduced row-echelon form with pivots scanned from the highest
/// coordinate down, facets reduced modulo the equalities and scaled to
/// coprime integers (orientation preserved), both families sorted.
FacetSystem facets_of_points(const std::vector<std::vector<Rational>>& points,
                             std::size_t max_rays);

/// Vertices of the polytope described by a facet system (the reverse
/// conversion, used as a self-check).
std::vector<std::vector<Rational>> vertices_of_facets(const FacetSystem& system,
                                                      std::size_t max_rays);

/// Primitive integer form: clears denominators and divides by the gcd;
/// orientation is preserved. The zero vector is returned unchanged.
std::vector<Rational> primitive_integer(const std::vector<Rational>& v);

/// Canonical representative of an inequality (c0, c) modulo the equality
/// rows of the system: entries on the equalities' pivot columns are
/// eliminated, then the row is scaled to coprime integers.
std::vector<Rational> reduce_modulo_equalities(const FacetSystem& system,
                                               const std::vector<Rational>& row);

/// True iff `point` is a vertex of the polytope: the facets tight at the
/// point, together with the affine hull, fix it uniquely.
bool is_polytope_vertex(const FacetSystem& system, const std::vector<Rational>& point);

}  // namespace bellctx
