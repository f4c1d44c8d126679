#include "bellctx/polytope.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace bellctx {

Budget Budget::from_env() {
  Budget budget;
  if (const char* env = std::getenv("BELLCTX_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) budget = budget.with_all(static_cast<std::size_t>(v));
  }
  return budget;
}

Budget Budget::with_all(std::size_t n) const {
  Budget b = *this;
  b.max_atlas = n;
  b.max_vertices = n;
  b.max_rays = n;
  return b;
}

namespace {

Rational dot(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  Rational s(0);
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

using ZeroSet = boost::dynamic_bitset<>;

struct Ray {
  std::vector<Rational> v;
  ZeroSet zero;  // processed constraints satisfied with equality
};

// Incremental double description. Rays and the lineality basis generate the
// intersection of the constraints processed so far; the quotient modulo the
// lineality stays pointed throughout, which the combinatorial adjacency test
// relies on.
class DD {
 public:
  DD(std::size_t dim, std::size_t max_rays) : dim_(dim), max_rays_(max_rays) {
    lineality_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<Rational> e(dim, Rational(0));
      e[i] = 1;
      lineality_.push_back(std::move(e));
    }
  }

  void add(const std::vector<Rational>& a, bool is_equality) {
    if (reduce_lineality(a, is_equality)) {
      if (!is_equality) {
        note_processed(a);
        for (auto& ray : rays_) ray.zero.push_back(dot(a, ray.v) == 0);
      }
      return;
    }
    std::vector<Rational> vals(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) vals[i] = dot(a, rays_[i].v);

    std::vector<Ray> next;
    for (std::size_t p = 0; p < rays_.size(); ++p) {
      if (vals[p] <= 0) continue;
      for (std::size_t q = 0; q < rays_.size(); ++q) {
        if (vals[q] >= 0) continue;
        if (!adjacent(p, q)) continue;
        std::vector<Rational> combo(dim_);
        for (std::size_t j = 0; j < dim_; ++j)
          combo[j] = vals[p] * rays_[q].v[j] - vals[q] * rays_[p].v[j];
        next.push_back(Ray{primitive_integer(combo), ZeroSet{}});
      }
    }
    // Keep the rays on the feasible side (and the boundary).
    std::vector<Ray> kept;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (vals[i] > 0 && is_equality) continue;
      if (vals[i] < 0) continue;
      kept.push_back(std::move(rays_[i]));
    }
    note_processed(a);
    for (auto& ray : kept) ray.zero.push_back(dot(a, ray.v) == 0);
    for (auto& ray : next) {
      ray.zero = zero_set(ray.v);
      kept.push_back(std::move(ray));
    }
    rays_ = std::move(kept);
    if (rays_.size() > max_rays_)
      fail(errc::budget_exceeded,
           "double description ray count " + std::to_string(rays_.size()) + " exceeds budget");
  }

  DDCone result() && {
    DDCone cone;
    for (auto& ray : rays_) cone.rays.push_back(std::move(ray.v));
    cone.lineality = std::move(lineality_);
    return cone;
  }

 private:
  bool reduce_lineality(const std::vector<Rational>& a, bool is_equality) {
    std::size_t hit = lineality_.size();
    for (std::size_t i = 0; i < lineality_.size(); ++i) {
      if (dot(a, lineality_[i]) != 0) { hit = i; break; }
    }
    if (hit == lineality_.size()) return false;
    std::vector<Rational> l0 = std::move(lineality_[hit]);
    lineality_.erase(lineality_.begin() + hit);
    const Rational s = dot(a, l0);
    for (auto& l : lineality_) {
      const Rational f = dot(a, l) / s;
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) l[j] -= f * l0[j];
    }
    for (auto& ray : rays_) {
      const Rational f = dot(a, ray.v) / s;
      if (f != 0)
        for (std::size_t j = 0; j < dim_; ++j) ray.v[j] -= f * l0[j];
      ray.v = primitive_integer(ray.v);
      // tightness against processed rows is unchanged: the lineality is
      // orthogonal to every processed row
    }
    if (!is_equality) {
      Ray r0;
      r0.v = primitive_integer(s > 0 ? l0 : [&] {
        for (auto& v : l0) v = -v;
        return l0;
      }());
      r0.zero = zero_set(r0.v);
      rays_.push_back(std::move(r0));
    }
    return true;
  }

  void note_processed(const std::vector<Rational>& a) { processed_.push_back(a); }

  ZeroSet zero_set(const std::vector<Rational>& v) const {
    ZeroSet z(processed_.size());
    for (std::size_t i = 0; i < processed_.size(); ++i)
      if (dot(processed_[i], v) == 0) z.set(i);
    return z;
  }

  bool adjacent(std::size_t p, std::size_t q) const {
    ZeroSet common = rays_[p].zero & rays_[q].zero;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      if (r == p || r == q) continue;
      if (common.is_subset_of(rays_[r].zero)) return false;
    }
    return true;
  }

  std::size_t dim_;
  std::size_t max_rays_;
  std::vector<std::vector<Rational>> lineality_;
  std::vector<Ray> rays_;
  std::vector<std::vector<Rational>> processed_;
};

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<Rational> primitive_integer(const std::vector<Rational>& v) {
  Int lcm(1);
  for (const Rational& x : v) {
    const Int d = denominator(x);
    lcm = lcm / gcd(lcm, d) * d;
  }
  Int g(0);
  std::vector<Int> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = numerator(v[i]) * (lcm / denominator(v[i]));
    g = gcd(g, ints[i]);
  }
  if (g == 0) return v;
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

DDCone dd_cone(std::size_t dim, const std::vector<std::vector<Rational>>& inequalities,
               const std::vector<std::vector<Rational>>& equalities, std::size_t max_rays) {
  DD dd(dim, max_rays);
  for (const auto& e : equalities) dd.add(e, true);
  for (const auto& a : inequalities) dd.add(a, false);
  return std::move(dd).result();
}

std::vector<std::vector<Rational>> polytope_vertices(std::size_t n,
                                                     const std::vector<std::vector<Rational>>& lhs,
                                                     const std::vector<Rational>& rhs,
                                                     std::size_t max_rays) {
  // Homogenise: variables (t, x); equalities lhs.x - rhs t = 0; t >= 0, x >= 0.
  std::vector<std::vector<Rational>> eqs;
  eqs.reserve(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    std::vector<Rational> row(n + 1);
    row[0] = -rhs[i];
    for (std::size_t j = 0; j < n; ++j) row[j + 1] = lhs[i][j];
    eqs.push_back(std::move(row));
  }
  std::vector<std::vector<Rational>> ineqs;
  ineqs.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Rational> row(n + 1, Rational(0));
    row[j] = 1;
    ineqs.push_back(std::move(row));
  }
  DDCone cone = dd_cone(n + 1, ineqs, eqs, max_rays);
  if (!cone.lineality.empty())
    fail(errc::internal, "feasible region is not pointed");
  std::vector<std::vector<Rational>> vertices;
  for (const auto& ray : cone.rays) {
    if (ray[0] == 0) fail(errc::internal, "feasible region is unbounded");
    std::vector<Rational> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = ray[j + 1] / ray[0];
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end(), lex_less);
  return vertices;
}

namespace {

// Reduced row echelon form with pivot columns scanned from the highest
// coordinate down to the constant column. Returns pivot column per row.
std::vector<std::size_t> rref_reverse(std::vector<std::vector<Rational>>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  std::vector<std::size_t> order;
  for (std::size_t c = width; c-- > 1;) order.push_back(c);
  order.push_back(0);
  for (const std::size_t c : order) {
    std::size_t sel = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (rows[i][c] != 0) { sel = i; break; }
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const Rational inv = 1 / rows[rank][c];
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < width; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivots.push_back(c);
    if (++rank == rows.size()) break;
  }
  rows.resize(rank);
  return pivots;
}

}  // namespace

std::vector<Rational> reduce_modulo_equalities(const FacetSystem& system,
                                               const std::vector<Rational>& row) {
  // system.equalities are kept in reverse-pivot RREF by facets_of_points.
  std::vector<Rational> r = row;
  for (const auto& eq : system.equalities) {
    // pivot = highest-index nonzero column of the (integer-scaled) RREF row
    std::size_t pivot = eq.size();
    for (std::size_t c = eq.size(); c-- > 0;)
      if (eq[c] != 0) { pivot = c; break; }
    if (pivot == eq.size() || r[pivot] == 0) continue;
    const Rational f = r[pivot] / eq[pivot];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * eq[j];
  }
  return primitive_integer(r);
}

FacetSystem facets_of_points(const std::vector<std::vector<Rational>>& points,
                             std::size_t max_rays) {
  if (points.empty()) fail(errc::shape_mismatch, "no points to hull");
  const std::size_t d = points.front().size();
  std::vector<std::vector<Rational>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != d) fail(errc::dimension_mismatch, "points of mixed dimension");
    std::vector<Rational> row(d + 1);
    row[0] = 1;
    for (std::size_t j = 0; j < d; ++j) row[j + 1] = p[j];
    rows.push_back(std::move(row));
  }
  DDCone polar = dd_cone(d + 1, rows, {}, max_rays);

  FacetSystem system;
  system.dim = d;
  system.equalities = std::move(polar.lineality);
  const auto pivots = rref_reverse(system.equalities);
  (void)pivots;
  for (auto& eq : system.equalities) {
    eq = primitive_integer(eq);
    // sign: first nonzero coefficient positive
    for (const auto& v : eq) {
      if (v == 0) continue;
      if (v < 0)
        for (auto& w : eq) w = -w;
      break;
    }
  }
  std::sort(system.equalities.begin(), system.equalities.end(), lex_less);

  std::set<std::vector<Rational>> unique;
  {
    // RREF order was destroyed by the sort above for presentation; rebuild a
    // working copy for reduction in pivot order.
    FacetSystem reducer;
    reducer.dim = d;
    reducer.equalities = system.equalities;
    rref_reverse(reducer.equalities);
    for (auto& eq : reducer.equalities) eq = primitive_integer(eq);
    for (const auto& ray : polar.rays) unique.insert(reduce_modulo_equalities(reducer, ray));
  }
  system.facets.assign(unique.begin(), unique.end());
  std::sort(system.facets.begin(), system.facets.end(), lex_less);
  return system;
}

std::vector<std::vector<Rational>> vertices_of_facets(const FacetSystem& system,
                                                      std::size_t max_rays) {
  // Homogenise (t, x): facet rows stay inequalities, equality rows equalities,
  // t >= 0 added; vertices are rays with t > 0.
  const std::size_t d = system.dim;
  std::vector<std::vector<Rational>> ineqs, eqs;
  std::vector<Rational> t_row(d + 1, Rational(0));
  t_row[0] = 1;
  ineqs.push_back(t_row);
  for (const auto& f : system.facets) ineqs.push_back(f);
  for (const auto& e : system.equalities) eqs.push_back(e);
  DDCone cone = dd_cone(d + 1, ineqs, eqs, max_rays);
  if (!cone.lineality.empty()) fail(errc::internal, "facet system is not pointed");
  std::vector<std::vector<Rational>> vertices;
  for (const auto& ray : cone.rays) {
    if (ray[0] == 0) fail(errc::internal, "facet system is unbounded");
    std::vector<Rational> v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = ray[j + 1] / ray[0];
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end(), lex_less);
  return vertices;
}

bool is_polytope_vertex(const FacetSystem& system, const std::vector<Rational>& point) {
  const std::size_t d = system.dim;
  if (point.size() != d) return false;
  std::vector<std::vector<Rational>> tight;
  for (const auto& eq : system.equalities) {
    std::vector<Rational> n(eq.begin() + 1, eq.end());
    tight.push_back(std::move(n));
  }
  for (const auto& f : system.facets) {
    Rational value = f[0];
    for (std::size_t j = 0; j < d; ++j) value += f[j + 1] * point[j];
    if (value == 0) tight.emplace_back(f.begin() + 1, f.end());
  }
  // rank of the tight normals
  std::size_t rank = 0;
  for (std::size_t c = 0; c < d && rank < tight.size(); ++c) {
    std::size_t sel = tight.size();
    for (std::size_t i = rank; i < tight.size(); ++i)
      if (tight[i][c] != 0) { sel = i; break; }
    if (sel == tight.size()) continue;
    std::swap(tight[rank], tight[sel]);
    for (std::size_t i = 0; i < tight.size(); ++i) {
      if (i == rank || tight[i][c] == 0) continue;
      const Rational f = tight[i][c] / tight[rank][c];
      for (std::size_t j = 0; j < d; ++j) tight[i][j] -= f * tight[rank][j];
    }
    ++rank;
  }
  return rank == d;
}

}  // namespace bellctx
