#include "bellctx/classicality.hpp"

#include <algorithm>
#include <set>

namespace bellctx {

namespace {

bool next_odometer(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] < radix[i]) {
      ++digits[i];
      for (std::size_t j = i + 1; j < digits.size(); ++j) digits[j] = 1;
      return true;
    }
  }
  return false;
}

std::size_t checked_product(const std::vector<int>& counts, std::size_t limit,
                            const char* what) {
  std::size_t product = 1;
  for (int c : counts) {
    product *= static_cast<std::size_t>(c);
    if (product > limit)
      fail(errc::budget_exceeded, std::string(what) + " enumeration exceeds budget of " +
                                      std::to_string(limit));
  }
  return product;
}

// Scale an inequality (coeffs, bound, violation) to primitive integer
// coefficients, keeping orientation.
void canonical_scale(std::vector<Rational>& coeffs, Rational& bound, Rational& violation) {
  Int lcm(1);
  for (const Rational& c : coeffs) {
    const Int d = denominator(c);
    lcm = lcm / gcd(lcm, d) * d;
  }
  Int g(0);
  for (const Rational& c : coeffs) g = gcd(g, Int(numerator(c) * (lcm / denominator(c))));
  if (g == 0) return;
  const Rational factor(lcm, g);
  for (Rational& c : coeffs) c *= factor;
  bound *= factor;
  violation *= factor;
}

}  // namespace

std::vector<DeterministicStrategy> local_strategies(const BellScenario& scenario,
                                                    const Budget& budget) {
  scenario.validate();
  std::vector<int> counts = scenario.outcomes_A;
  counts.insert(counts.end(), scenario.outcomes_B.begin(), scenario.outcomes_B.end());
  checked_product(counts, budget.max_vertices, "local vertex");

  std::vector<DeterministicStrategy> out;
  std::vector<int> alice(scenario.inputs_X(), 1);
  do {
    std::vector<int> bob(scenario.inputs_Y(), 1);
    do {
      out.push_back({alice, bob});
    } while (next_odometer(bob, scenario.outcomes_B));
  } while (next_odometer(alice, scenario.outcomes_A));
  return out;
}

BellCorrelation strategy_correlation(const BellScenario& scenario,
                                     const DeterministicStrategy& strategy) {
  std::vector<Rational> table(static_cast<std::size_t>(scenario.norm_A()) * scenario.norm_B(),
                              Rational(0));
  std::size_t cell = 0;
  for (int x = 1; x <= scenario.inputs_X(); ++x)
    for (int a = 1; a <= scenario.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= scenario.inputs_Y(); ++y)
        for (int b = 1; b <= scenario.outcomes_B[y - 1]; ++b)
          table[cell++] = Rational(strategy.alice[x - 1] == a && strategy.bob[y - 1] == b ? 1 : 0);
  return BellCorrelation::from_table(scenario, std::move(table));
}

std::vector<BellCorrelation> local_vertices(const BellScenario& scenario, const Budget& budget) {
  std::vector<BellCorrelation> out;
  for (const auto& strategy : local_strategies(scenario, budget))
    out.push_back(strategy_correlation(scenario, strategy));
  return out;
}

namespace {

// Value of a coefficient table on a deterministic strategy, without
// materialising the vertex: sum over (x,y) of coeffs at the strategy's cell.
Rational strategy_value(const BellScenario& s, const std::vector<Rational>& coeffs,
                        const DeterministicStrategy& strategy) {
  Rational value(0);
  std::vector<int> off_A(s.inputs_X(), 0), off_B(s.inputs_Y(), 0);
  for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + s.outcomes_A[i - 1];
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int y = 1; y <= s.inputs_Y(); ++y)
      value += coeffs[static_cast<std::size_t>(off_A[x - 1] + strategy.alice[x - 1] - 1) *
                          s.norm_B() +
                      off_B[y - 1] + strategy.bob[y - 1] - 1];
  return value;
}

}  // namespace

LocalVerdict check_local(const BellCorrelation& p, const Budget& budget) {
  const BellScenario& s = p.scenario();
  const auto strategies = local_strategies(s, budget);
  const std::size_t cells = p.raw().size();

  LinearSystem sys;
  sys.A.assign(cells + 1, std::vector<Rational>(strategies.size(), Rational(0)));
  sys.b.assign(cells + 1, Rational(0));
  for (std::size_t v = 0; v < strategies.size(); ++v) {
    const auto& st = strategies[v];
    std::vector<int> off_A(s.inputs_X(), 0), off_B(s.inputs_Y(), 0);
    for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + s.outcomes_A[i - 1];
    for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];
    for (int x = 1; x <= s.inputs_X(); ++x)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        sys.A[static_cast<std::size_t>(off_A[x - 1] + st.alice[x - 1] - 1) * s.norm_B() +
              off_B[y - 1] + st.bob[y - 1] - 1][v] = 1;
    sys.A[cells][v] = 1;  // weights sum to one
  }
  for (std::size_t i = 0; i < cells; ++i) sys.b[i] = p.raw()[i];
  sys.b[cells] = 1;

  LocalVerdict verdict;
  auto result = lp_feasibility(sys);
  if (auto* point = std::get_if<FeasiblePoint>(&result)) {
    verdict.member = true;
    for (std::size_t v = 0; v < strategies.size(); ++v)
      if (point->x[v] != 0) verdict.weights.emplace_back(strategies[v], point->x[v]);
    return verdict;
  }

  const auto& farkas = std::get<FarkasCertificate>(result);
  BellInequality ineq;
  ineq.coeffs.assign(farkas.y.begin(), farkas.y.begin() + cells);
  bool first = true;
  for (const auto& st : strategies) {
    const Rational value = strategy_value(s, ineq.coeffs, st);
    if (first || value > ineq.bound) ineq.bound = value;
    first = false;
  }
  Rational at_p(0);
  for (std::size_t i = 0; i < cells; ++i) at_p += ineq.coeffs[i] * p.raw()[i];
  ineq.violation = at_p - ineq.bound;
  if (ineq.violation <= 0) fail(errc::internal, "separating inequality fails to separate");
  canonical_scale(ineq.coeffs, ineq.bound, ineq.violation);
  verdict.inequality = std::move(ineq);
  return verdict;
}

std::vector<std::vector<int>> response_function_atlas(const CtxScenario& scenario,
                                                      const Budget& budget) {
  scenario.validate();
  checked_product(scenario.outcomes_B, budget.max_atlas, "response function");
  std::vector<std::vector<int>> atlas;
  std::vector<int> assignment(scenario.num_measurements(), 1);
  do {
    atlas.push_back(assignment);
  } while (next_odometer(assignment, scenario.outcomes_B));
  return atlas;
}

namespace {

struct MuSystem {
  std::vector<std::vector<int>> atlas;
  std::size_t vars = 0;                              // preps * |atlas|
  std::vector<std::vector<Rational>> eq_lhs;         // normalisations + equivalences
  std::vector<Rational> eq_rhs;
};

std::size_t mu_col(std::size_t prep, std::size_t lambda, std::size_t n_lambda) {
  return prep * n_lambda + lambda;
}

// Normalisation and per-lambda equivalence rows of the mu-polytope.
MuSystem mu_system(const CtxScenario& scenario, const Budget& budget) {
  MuSystem sys;
  sys.atlas = response_function_atlas(scenario, budget);
  const std::size_t L = sys.atlas.size();
  const std::size_t Z = scenario.preps.size();
  sys.vars = Z * L;
  for (std::size_t p = 0; p < Z; ++p) {
    std::vector<Rational> row(sys.vars, Rational(0));
    for (std::size_t l = 0; l < L; ++l) row[mu_col(p, l, L)] = 1;
    sys.eq_lhs.push_back(std::move(row));
    sys.eq_rhs.push_back(Rational(1));
  }
  for (const auto& eq : scenario.equivalences) {
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<Rational> row(sys.vars, Rational(0));
      for (const auto& [label, coeff] : eq.lhs)
        row[mu_col(scenario.prep_index(label), l, L)] += coeff;
      for (const auto& [label, coeff] : eq.rhs)
        row[mu_col(scenario.prep_index(label), l, L)] -= coeff;
      sys.eq_lhs.push_back(std::move(row));
      sys.eq_rhs.push_back(Rational(0));
    }
  }
  return sys;
}

}  // namespace

NCVerdict check_noncontextual(const CtxBehaviour& q, const Budget& budget) {
  const CtxScenario& s = q.scenario();
  MuSystem base = mu_system(s, budget);
  const std::size_t L = base.atlas.size();
  const std::size_t Z = s.preps.size();

  LinearSystem sys;
  sys.A = base.eq_lhs;
  sys.b = base.eq_rhs;
  // data rows: sum_lambda xi_y(b|lambda) mu_p(lambda) = q(b|p,y)
  const std::size_t data_start = sys.A.size();
  for (std::size_t p = 0; p < Z; ++p) {
    for (int y = 1; y <= s.num_measurements(); ++y) {
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
        std::vector<Rational> row(base.vars, Rational(0));
        for (std::size_t l = 0; l < L; ++l)
          if (base.atlas[l][y - 1] == b) row[mu_col(p, l, L)] = 1;
        sys.A.push_back(std::move(row));
        sys.b.push_back(q.at(static_cast<int>(p), y, b));
      }
    }
  }

  NCVerdict verdict;
  auto result = lp_feasibility(sys);
  if (auto* point = std::get_if<FeasiblePoint>(&result)) {
    verdict.member = true;
    OnticModel model;
    model.responses = base.atlas;
    model.mu.resize(Z);
    for (std::size_t p = 0; p < Z; ++p) {
      model.mu[p].resize(L);
      for (std::size_t l = 0; l < L; ++l) model.mu[p][l] = point->x[mu_col(p, l, L)];
    }
    verdict.model = std::move(model);
    return verdict;
  }

  const auto& farkas = std::get<FarkasCertificate>(result);
  NCInequality ineq;
  ineq.coeffs.assign(farkas.y.begin() + data_start, farkas.y.end());

  // Tight bound: maximise coeffs . q over the non-contextual set, an LP over
  // the mu-polytope with objective pushed through the response functions.
  LinearSystem bound_lp;
  bound_lp.A = base.eq_lhs;
  bound_lp.b = base.eq_rhs;
  std::vector<Rational> objective(base.vars, Rational(0));
  for (std::size_t p = 0; p < Z; ++p)
    for (std::size_t l = 0; l < L; ++l) {
      Rational c(0);
      for (int y = 1; y <= s.num_measurements(); ++y)
        c += ineq.coeffs[q.index(static_cast<int>(p), y, base.atlas[l][y - 1])];
      objective[mu_col(p, l, L)] = -c;  // minimise the negation
    }
  bound_lp.objective = std::move(objective);
  const LpOptimum opt = lp_minimise(bound_lp);
  if (opt.status != LpStatus::optimal)
    fail(errc::internal, "bound LP over the mu-polytope did not solve");
  ineq.bound = -opt.value;

  Rational at_q(0);
  for (std::size_t i = 0; i < ineq.coeffs.size(); ++i) at_q += ineq.coeffs[i] * q.raw()[i];
  ineq.violation = at_q - ineq.bound;
  if (ineq.violation <= 0) fail(errc::internal, "noncontextuality inequality fails to separate");
  canonical_scale(ineq.coeffs, ineq.bound, ineq.violation);
  verdict.inequality = std::move(ineq);
  return verdict;
}

std::vector<Rational> behaviour_coordinates(const CtxBehaviour& q) {
  const CtxScenario& s = q.scenario();
  std::vector<Rational> coords;
  for (int p = 0; p < s.num_preparations(); ++p)
    for (int y = 1; y <= s.num_measurements(); ++y)
      for (int b = 1; b < s.outcomes_B[y - 1]; ++b) coords.push_back(q.at(p, y, b));
  return coords;
}

Polytope nc_polytope(const CtxScenario& scenario, const Budget& budget) {
  scenario.validate();
  MuSystem base = mu_system(scenario, budget);
  const std::size_t L = base.atlas.size();
  const std::size_t Z = scenario.preps.size();

  const auto mu_vertices = polytope_vertices(base.vars, base.eq_lhs, base.eq_rhs, budget.max_rays);
  if (mu_vertices.size() > budget.max_vertices)
    fail(errc::budget_exceeded, "mu-polytope vertex count exceeds budget");

  Polytope polytope;
  for (int p = 0; p < static_cast<int>(Z); ++p)
    for (int y = 1; y <= scenario.num_measurements(); ++y)
      for (int b = 1; b < scenario.outcomes_B[y - 1]; ++b)
        polytope.coordinates.push_back(scenario.preps[p].str() + "," + std::to_string(y) + "," +
                                       std::to_string(b));
  polytope.dim = polytope.coordinates.size();

  std::set<std::vector<Rational>> distinct;
  for (const auto& mu : mu_vertices) {
    std::vector<Rational> point;
    point.reserve(polytope.dim);
    for (std::size_t p = 0; p < Z; ++p)
      for (int y = 1; y <= scenario.num_measurements(); ++y)
        for (int b = 1; b < scenario.outcomes_B[y - 1]; ++b) {
          Rational v(0);
          for (std::size_t l = 0; l < L; ++l)
            if (base.atlas[l][y - 1] == b) v += mu[mu_col(p, l, L)];
          point.push_back(std::move(v));
        }
    distinct.insert(std::move(point));
  }

  std::vector<std::vector<Rational>> points(distinct.begin(), distinct.end());
  polytope.hrep = facets_of_points(points, budget.max_rays);
  for (const auto& point : points)
    if (is_polytope_vertex(polytope.hrep, point)) polytope.vertices.push_back(point);
  return polytope;
}

Polytope local_polytope(const BellScenario& scenario, const Budget& budget) {
  Polytope polytope;
  for (int x = 1; x <= scenario.inputs_X(); ++x)
    for (int a = 1; a <= scenario.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= scenario.inputs_Y(); ++y)
        for (int b = 1; b <= scenario.outcomes_B[y - 1]; ++b)
          polytope.coordinates.push_back(std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(x) + "," + std::to_string(y));
  polytope.dim = polytope.coordinates.size();

  std::vector<std::vector<Rational>> points;
  for (const auto& vertex : local_vertices(scenario, budget)) points.push_back(vertex.raw());
  polytope.hrep = facets_of_points(points, budget.max_rays);
  for (const auto& point : points)
    if (is_polytope_vertex(polytope.hrep, point)) polytope.vertices.push_back(point);
  std::sort(polytope.vertices.begin(), polytope.vertices.end(),
            [](const auto& a, const auto& b) {
              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
            });
  return polytope;
}

bool is_positivity_facet(const Polytope& polytope, const std::vector<Rational>& facet) {
  // candidates: coord >= 0 for every coordinate, and for the dropped outcome
  // of each (prep, y) block: 1 - sum of that block's coordinates >= 0. For
  // full-coordinate polytopes only the plain coord >= 0 family applies.
  const std::size_t d = polytope.dim;
  std::vector<std::vector<Rational>> candidates;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(d + 1, Rational(0));
    row[i + 1] = 1;
    candidates.push_back(std::move(row));
  }
  // group behaviour coordinates "a|x,y,b" by their (prep, y) prefix; full
  // table coordinates carry no '|' and get no dropped-outcome candidates
  std::map<std::string, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < polytope.coordinates.size(); ++i) {
    const std::string& name = polytope.coordinates[i];
    if (name.find('|') == std::string::npos) continue;
    const auto cut = name.rfind(',');
    if (cut == std::string::npos) continue;
    blocks[name.substr(0, cut)].push_back(i);
  }
  for (const auto& [prefix, idxs] : blocks) {
    std::vector<Rational> row(d + 1, Rational(0));
    row[0] = 1;
    for (std::size_t i : idxs) row[i + 1] = -1;
    candidates.push_back(std::move(row));
  }
  for (const auto& candidate : candidates)
    if (reduce_modulo_equalities(polytope.hrep, candidate) == facet) return true;
  return false;
}

void VerifyReport::require(bool condition, const std::string& what) {
  if (!condition) {
    ok = false;
    failures.push_back(what);
  }
}

VerifyReport verify_certificate(const BellCorrelation& p, const LocalVerdict& verdict,
                                const Budget& budget) {
  VerifyReport report;
  const BellScenario& s = p.scenario();
  if (verdict.member) {
    report.require(!verdict.weights.empty(), "member verdict carries no weights");
    Rational total(0);
    std::vector<Rational> mix(p.raw().size(), Rational(0));
    for (std::size_t i = 0; i < verdict.weights.size(); ++i) {
      const auto& [strategy, weight] = verdict.weights[i];
      report.require(weight >= 0, "weight[" + std::to_string(i) + "] is negative");
      bool shaped = static_cast<int>(strategy.alice.size()) == s.inputs_X() &&
                    static_cast<int>(strategy.bob.size()) == s.inputs_Y();
      if (shaped) {
        for (int x = 1; x <= s.inputs_X(); ++x)
          shaped = shaped && strategy.alice[x - 1] >= 1 && strategy.alice[x - 1] <= s.outcomes_A[x - 1];
        for (int y = 1; y <= s.inputs_Y(); ++y)
          shaped = shaped && strategy.bob[y - 1] >= 1 && strategy.bob[y - 1] <= s.outcomes_B[y - 1];
      }
      report.require(shaped, "strategy[" + std::to_string(i) + "] is malformed");
      total += weight;
      if (!report.ok) continue;
      const BellCorrelation vertex = strategy_correlation(s, strategy);
      for (std::size_t c = 0; c < mix.size(); ++c) mix[c] += weight * vertex.raw()[c];
      ++report.vertex_checks;
    }
    report.require(total == 1, "weights sum to " + rational_str(total));
    if (report.ok) {
      for (std::size_t c = 0; c < mix.size(); ++c) {
        if (mix[c] == p.raw()[c]) ++report.data_equalities;
        else report.require(false, "mixture disagrees with p at cell " + std::to_string(c));
      }
    }
    return report;
  }

  report.require(verdict.inequality.has_value(), "non-member verdict carries no inequality");
  if (!verdict.inequality) return report;
  const BellInequality& ineq = *verdict.inequality;
  report.require(ineq.coeffs.size() == p.raw().size(), "inequality has wrong arity");
  if (!report.ok) return report;
  bool tight = false;
  for (const auto& strategy : local_strategies(s, budget)) {
    const Rational value = strategy_value(s, ineq.coeffs, strategy);
    if (value > ineq.bound) {
      report.require(false, "inequality fails on a deterministic vertex");
      return report;
    }
    if (value == ineq.bound) tight = true;
    ++report.vertex_checks;
  }
  report.require(tight, "bound is not tight on any vertex");
  Rational at_p(0);
  for (std::size_t c = 0; c < ineq.coeffs.size(); ++c) at_p += ineq.coeffs[c] * p.raw()[c];
  report.require(at_p - ineq.bound == ineq.violation,
                 "claimed violation " + rational_str(ineq.violation) + " but actual is " +
                     rational_str(at_p - ineq.bound));
  report.require(ineq.violation > 0, "violation is not positive");
  return report;
}

VerifyReport verify_certificate(const CtxBehaviour& q, const NCVerdict& verdict,
                                const Budget& budget) {
  VerifyReport report;
  const CtxScenario& s = q.scenario();
  const std::size_t Z = s.preps.size();
  if (verdict.member) {
    report.require(verdict.model.has_value(), "member verdict carries no ontic model");
    if (!verdict.model) return report;
    const OnticModel& model = *verdict.model;
    const std::size_t L = model.responses.size();
    report.require(L > 0, "ontic model has no states");
    for (std::size_t l = 0; l < L; ++l) {
      report.require(static_cast<int>(model.responses[l].size()) == s.num_measurements(),
                     "response[" + std::to_string(l) + "] has wrong arity");
      for (int y = 1; y <= s.num_measurements(); ++y) {
        const int b = model.responses[l][y - 1];
        report.require(b >= 1 && b <= s.outcomes_B[y - 1],
                       "response[" + std::to_string(l) + "] outcome out of range at y=" +
                           std::to_string(y));
      }
    }
    report.require(model.mu.size() == Z, "mu table has wrong preparation count");
    if (!report.ok) return report;
    for (std::size_t p = 0; p < Z; ++p) {
      report.require(model.mu[p].size() == L,
                     "mu row for " + s.preps[p].str() + " has wrong length");
      if (model.mu[p].size() != L) return report;
      Rational total(0);
      for (std::size_t l = 0; l < L; ++l) {
        report.require(model.mu[p][l] >= 0,
                       "mu(" + s.preps[p].str() + ", lambda=" + std::to_string(l + 1) +
                           ") is negative");
        total += model.mu[p][l];
      }
      if (total == 1) ++report.normalisations;
      else
        report.require(false, "mu for " + s.preps[p].str() + " sums to " + rational_str(total));
    }
    for (std::size_t e = 0; e < s.equivalences.size(); ++e) {
      const auto& eq = s.equivalences[e];
      for (std::size_t l = 0; l < L; ++l) {
        Rational diff(0);
        for (const auto& [label, coeff] : eq.lhs) diff += coeff * model.mu[s.prep_index(label)][l];
        for (const auto& [label, coeff] : eq.rhs) diff -= coeff * model.mu[s.prep_index(label)][l];
        if (diff == 0) ++report.equivalence_equalities;
        else
          report.require(false, "equivalence " + std::to_string(e + 1) +
                                    " violated at lambda=" + std::to_string(l + 1) + " by " +
                                    rational_str(diff));
      }
    }
    for (std::size_t p = 0; p < Z; ++p) {
      for (int y = 1; y <= s.num_measurements(); ++y) {
        for (int b = 1; b < s.outcomes_B[y - 1]; ++b) {
          Rational lhs(0);
          for (std::size_t l = 0; l < L; ++l)
            if (model.responses[l][y - 1] == b) lhs += model.mu[p][l];
          if (lhs == q.at(static_cast<int>(p), y, b)) ++report.data_equalities;
          else
            report.require(false, "model disagrees with q at (" + s.preps[p].str() + "," +
                                      std::to_string(y) + "," + std::to_string(b) + ")");
        }
      }
    }
    return report;
  }

  report.require(verdict.inequality.has_value(), "non-member verdict carries no inequality");
  if (!verdict.inequality) return report;
  const NCInequality& ineq = *verdict.inequality;
  report.require(ineq.coeffs.size() == q.raw().size(), "inequality has wrong arity");
  if (!report.ok) return report;

  // Validity over the whole non-contextual polytope, against its vertex list.
  MuSystem base = mu_system(s, budget);
  const std::size_t L = base.atlas.size();
  const auto mu_vertices = polytope_vertices(base.vars, base.eq_lhs, base.eq_rhs, budget.max_rays);
  bool tight = false;
  for (const auto& mu : mu_vertices) {
    Rational value(0);
    for (std::size_t p = 0; p < Z; ++p)
      for (std::size_t l = 0; l < L; ++l) {
        if (mu[mu_col(p, l, L)] == 0) continue;
        Rational c(0);
        for (int y = 1; y <= s.num_measurements(); ++y)
          c += ineq.coeffs[q.index(static_cast<int>(p), y, base.atlas[l][y - 1])];
        value += c * mu[mu_col(p, l, L)];
      }
    if (value > ineq.bound) {
      report.require(false, "inequality fails on a non-contextual vertex");
      return report;
    }
    if (value == ineq.bound) tight = true;
    ++report.vertex_checks;
  }
  report.require(tight, "bound is not attained on the non-contextual polytope");
  Rational at_q(0);
  for (std::size_t c = 0; c < ineq.coeffs.size(); ++c) at_q += ineq.coeffs[c] * q.raw()[c];
  report.require(at_q - ineq.bound == ineq.violation,
                 "claimed violation " + rational_str(ineq.violation) + " but actual is " +
                     rational_str(at_q - ineq.bound));
  report.require(ineq.violation > 0, "violation is not positive");
  return report;
}

}  // namespace bellctx
