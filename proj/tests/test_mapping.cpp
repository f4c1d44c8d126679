#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace bellctx;
using namespace fixtures;

TEST_CASE("PR box maps to deterministic rows under uniform marginals") {
  const auto mapped = bell_to_ctx(pr_box());
  CHECK(mapped.index_A == std::vector<int>{2, 2});
  const CtxScenario& s = mapped.behaviour.scenario();
  CHECK(s.num_preparations() == 4);
  REQUIRE(s.equivalences.size() == 1);
  for (const PrepLabel& prep : s.preps)
    for (int y = 1; y <= 2; ++y)
      for (int b = 1; b <= 2; ++b) {
        const Rational& v = mapped.behaviour.at(s.prep_index(prep), y, b);
        const bool hit = ((prep.a - 1) ^ (b - 1)) == (prep.x - 1) * (y - 1);
        CHECK(v == (hit ? rat(1) : rat(0)));
      }
}

TEST_CASE("uniform correlation maps to the uniform behaviour") {
  const BellScenario s = chsh_scenario();
  const auto mapped = bell_to_ctx(uniform_correlation(s));
  for (const Rational& v : mapped.behaviour.raw()) CHECK(v == rat(1, 2));
}

TEST_CASE("vanished outcomes leave the preparation list") {
  // mix deterministic strategies that never produce a=1 on x=1
  const BellScenario s = chsh_scenario();
  const BellCorrelation v1 = strategy_correlation(s, {{2, 1}, {1, 1}});
  const BellCorrelation v2 = strategy_correlation(s, {{2, 2}, {2, 2}});
  std::vector<Rational> mix(v1.raw().size());
  for (std::size_t i = 0; i < mix.size(); ++i)
    mix[i] = rat(1, 2) * v1.raw()[i] + rat(1, 2) * v2.raw()[i];
  const auto p = BellCorrelation::from_table(s, mix);
  REQUIRE(check_no_signalling(p).no_signalling);
  const auto mapped = bell_to_ctx(p);
  const CtxScenario& sc = mapped.behaviour.scenario();
  CHECK(sc.prep_index({1, 1}) == -1);
  CHECK(sc.num_preparations() == 3);
  // remaining rows follow the defining ratio
  const Marginals m = marginals(p);
  for (const PrepLabel& prep : sc.preps)
    for (int y = 1; y <= 2; ++y)
      for (int b = 1; b <= 2; ++b)
        CHECK(mapped.behaviour.at(sc.prep_index(prep), y, b) ==
              p.at(prep.a, b, prep.x, y) / m.p_A[prep.x - 1][prep.a - 1]);
}

TEST_CASE("signalling input is rejected unless the policy relaxes it") {
  const BellScenario s = chsh_scenario();
  auto table = uniform_correlation(s).raw();
  const BellCorrelation view = uniform_correlation(s);
  // Bob-side signalling only: Alice's marginal stays well-defined
  table[view.index(1, 1, 1, 1)] += rat(1, 10);
  table[view.index(1, 2, 1, 1)] -= rat(1, 10);
  const auto p = BellCorrelation::from_table(s, table);
  REQUIRE(marginals(p).alice_well_defined);
  REQUIRE_FALSE(check_no_signalling(p).no_signalling);
  CHECK_THROWS_AS(bell_to_ctx(p), Error);
  const auto mapped = bell_to_ctx(p, SignallingPolicy::alice_only);
  Rational worst(0);
  for (const Rational& r : equivalence_residuals(mapped.behaviour)) worst = std::max(worst, r);
  CHECK(worst == rat(1, 10));
}

TEST_CASE("round trip through the map is the identity on NS correlations") {
  Rng rng(11);
  const std::vector<BellScenario> scenarios = {
      chsh_scenario(), {{2, 3}, {2, 2}}, {{3, 2, 2}, {2, 3}}, {{2, 2}, {3, 3}}};
  for (const auto& s : scenarios)
    for (int i = 0; i < 25; ++i) {
      const BellCorrelation p = random_ns_correlation(rng, s);
      const auto mapped = bell_to_ctx(p);
      const BellCorrelation back = ctx_to_bell(mapped);
      CHECK(back == p);
    }
}

TEST_CASE("round trip through the inverse map is the identity on NS-form behaviours") {
  Rng rng(13);
  for (int i = 0; i < 25; ++i) {
    const auto ns = random_ns_scenario(rng, 3, 2, 3, 3);
    const CtxBehaviour q = random_contextual_behaviour(rng, ns);
    const BellCorrelation p = ctx_to_bell(q);
    const auto mapped = bell_to_ctx(p);
    CHECK(mapped.behaviour == q);
    CHECK(mapped.index_A == *ns.scenario.index_A);
  }
}

TEST_CASE("the inverse map honours an inflated index tuple") {
  // five preparations with weights (1/2,1/2 | 1/4,3/4 | 1) mapped into
  // A = (5,3,2): relabelled outcomes never occur
  CtxScenario s;
  s.preps = {{2, 1}, {5, 1}, {1, 2}, {2, 2}, {2, 3}};
  std::sort(s.preps.begin(), s.preps.end());
  s.outcomes_B = {2, 2};
  PreparationEquivalence e1, e2;
  e1.lhs = {{{2, 1}, rat(1, 2)}, {{5, 1}, rat(1, 2)}};
  e1.rhs = {{{1, 2}, rat(1, 4)}, {{2, 2}, rat(3, 4)}};
  e2.lhs = e1.lhs;
  e2.rhs = {{{2, 3}, rat(1)}};
  s.equivalences = {e1, e2};
  s.validate();
  std::vector<Rational> table;
  for (int p = 0; p < 5; ++p)
    for (int c = 0; c < 4; ++c) table.push_back(rat(1, 2));
  const auto q = CtxBehaviour::from_table(s, table);
  const BellCorrelation p = ctx_to_bell(q, std::vector<int>{5, 3, 2});
  CHECK(p.scenario().outcomes_A == std::vector<int>{5, 3, 2});
  const Marginals m = marginals(p);
  CHECK(m.p_A[1][0] == rat(1, 4));  // p_A(1|2) = 1/4
  CHECK(m.p_A[0][0] == rat(0));     // p_A(1|1) = 0
  CHECK(m.p_A[0][1] == rat(1, 2));
  CHECK(check_no_signalling(p).no_signalling);

  // too small an index tuple is refused
  CHECK_THROWS_AS(ctx_to_bell(q, std::vector<int>{4, 3, 2}), Error);
}

TEST_CASE("uniform behaviour with uniform weights maps to the uniform correlation") {
  Rng rng(1);
  Marginals m;
  m.alice_well_defined = true;
  m.p_A = {{rat(1, 2), rat(1, 2)}, {rat(1, 2), rat(1, 2)}};
  CtxScenario s;
  s.preps = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  std::sort(s.preps.begin(), s.preps.end());
  s.outcomes_B = {2, 2};
  s.equivalences = canonical_ns_equivalence(m);
  s.index_A = std::vector<int>{2, 2};
  std::vector<Rational> table(16, rat(1, 2));
  const auto q = CtxBehaviour::from_table(s, table);
  const BellCorrelation p = ctx_to_bell(q);
  for (const Rational& v : p.raw()) CHECK(v == rat(1, 4));
}

TEST_CASE("tau reduction removes deterministic inputs and zero outcomes") {
  // X=3; input 3 deterministic; input 1 has a dead outcome
  const BellScenario s{{3, 2, 2}, {2, 2}};
  const auto base = make_correlation(s, [](int a, int b, int x, int) -> Rational {
    if (x == 1) {
      // outcomes 1 and 3 carry mass 1/2 each, outcome 2 never occurs
      if (a == 2) return rat(0);
      return b == (a == 1 ? 1 : 2) ? rat(1, 2) : rat(0);
    }
    if (x == 2) return (a == b) ? rat(1, 2) : rat(0);
    return a == 2 && b == 1 ? rat(1, 2) : (a == 2 && b == 2 ? rat(1, 2) : rat(0));
  });
  REQUIRE(check_no_signalling(base).no_signalling);
  const TauReduction tau = reduce_tau(base);
  REQUIRE_FALSE(tau.fully_deterministic);
  REQUIRE(tau.reduced.has_value());
  CHECK(tau.record.removed_inputs.size() == 1);
  CHECK(tau.record.removed_inputs[0].x == 3);
  CHECK(tau.record.removed_inputs[0].certain_outcome == 2);
  CHECK(tau.reduced->scenario().outcomes_A == std::vector<int>{2, 2});
  const Marginals m = marginals(*tau.reduced);
  for (const auto& row : m.p_A)
    for (const Rational& w : row) {
      CHECK(w > 0);
      CHECK(w < 1);
    }
  CHECK(embed_bell(*tau.reduced, tau.record) == base);
}

TEST_CASE("tau reduction is a fixed point on full-support correlations") {
  Rng rng(17);
  const BellScenario s = chsh_scenario();
  for (int i = 0; i < 10; ++i) {
    // uniform blend guarantees full support and no deterministic inputs
    const BellCorrelation p = interior_blend(random_ns_correlation(rng, s), 3);
    const TauReduction tau = reduce_tau(p);
    REQUIRE(tau.reduced.has_value());
    CHECK(*tau.reduced == p);
    CHECK(tau.record.identity());
  }
}

TEST_CASE("fully deterministic correlations reduce to the record only") {
  const BellScenario s{{2, 2}, {2}};
  const auto p = make_correlation(s, [](int a, int b, int x, int) {
    return (a == 1 && b == (x == 1 ? 1 : 2)) ? rat(1) : rat(0);
  });
  // b differs per x? that would signal; use b = 1 always
  const auto det = make_correlation(s, [](int a, int b, int, int) {
    return (a == 1 && b == 1) ? rat(1) : rat(0);
  });
  (void)p;
  const TauReduction tau = reduce_tau(det);
  CHECK(tau.fully_deterministic);
  CHECK_FALSE(tau.reduced.has_value());
  CHECK(tau.record.removed_inputs.size() == 2);
}

TEST_CASE("tau round trip on correlations with planted structure") {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    // plant a deterministic input and a dead outcome into a (3,2,3),(2,2) box
    const BellScenario s{{3, 2, 3}, {2, 2}};
    const BellCorrelation inner = random_ns_correlation(rng, {{2, 2}, {2, 2}});
    const Marginals im = marginals(inner);
    const auto planted = make_correlation(s, [&](int a, int b, int x, int y) -> Rational {
      if (x == 3) return a == 2 ? im.p_B[y - 1][b - 1] : rat(0);  // deterministic input
      if (x == 1 && a == 3) return rat(0);                        // dead outcome
      if (x == 1) return inner.at(a, b, 1, y);
      return a <= 2 ? inner.at(a, b, 2, y) : rat(0);
    });
    REQUIRE(check_no_signalling(planted).no_signalling);
    const TauReduction tau = reduce_tau(planted);
    if (!tau.reduced) continue;  // inner happened to be deterministic too
    const Marginals rm = marginals(*tau.reduced);
    for (const auto& row : rm.p_A)
      for (const Rational& w : row) {
        CHECK(w > 0);
        CHECK(w < 1);
      }
    CHECK(embed_bell(*tau.reduced, tau.record) == planted);
  }
}

TEST_CASE("embedding a restored input reproduces Bob's marginal") {
  const BellScenario s{{2, 2}, {2, 2}};
  Rng rng(29);
  const BellCorrelation inner = interior_blend(random_ns_correlation(rng, s), 2);
  RelabellingRecord record;
  record.original_A = {2, 2, 3};
  record.surviving_inputs = {1, 2};
  record.outcome_order = {{1, 2}, {1, 2}};
  record.reduced_A = {2, 2};
  record.removed_inputs = {{3, 2}};
  const BellCorrelation restored = embed_bell(inner, record);
  const Marginals m = marginals(inner);
  for (int y = 1; y <= 2; ++y)
    for (int b = 1; b <= 2; ++b) {
      CHECK(restored.at(2, b, 3, y) == m.p_B[y - 1][b - 1]);
      CHECK(restored.at(1, b, 3, y) == 0);
      CHECK(restored.at(3, b, 3, y) == 0);
    }
  CHECK(check_no_signalling(restored).no_signalling);
}

TEST_CASE("normal form: the two-sided P1 example") {
  PreparationEquivalence eq;
  eq.lhs = {{{1, 1}, rat(1, 2)}, {{2, 1}, rat(1, 2)}};
  eq.rhs = {{{1, 1}, rat(1, 3)}, {{3, 1}, rat(1, 3)}, {{4, 1}, rat(1, 3)}};
  const auto result = single_equivalence_normal_form(eq);
  REQUIRE_FALSE(result.vacuous);
  const std::map<PrepLabel, Rational> lhs = {{{1, 1}, rat(1, 4)}, {{2, 1}, rat(3, 4)}};
  const std::map<PrepLabel, Rational> rhs = {{{3, 1}, rat(1, 2)}, {{4, 1}, rat(1, 2)}};
  CHECK(result.equivalence.lhs == lhs);
  CHECK(result.equivalence.rhs == rhs);
}

TEST_CASE("normal form leaves disjoint equivalences unchanged") {
  PreparationEquivalence eq;
  eq.lhs = {{{1, 1}, rat(1, 4)}, {{2, 1}, rat(3, 4)}};
  eq.rhs = {{{3, 1}, rat(1, 2)}, {{4, 1}, rat(1, 2)}};
  const auto result = single_equivalence_normal_form(eq);
  CHECK_FALSE(result.vacuous);
  CHECK(result.equivalence == eq);
}

TEST_CASE("normal form flags identical sides as vacuous") {
  PreparationEquivalence eq;
  eq.lhs = {{{1, 1}, rat(1, 2)}, {{2, 1}, rat(1, 2)}};
  eq.rhs = eq.lhs;
  const auto result = single_equivalence_normal_form(eq);
  CHECK(result.vacuous);
  CHECK(result.equivalence.lhs.empty());
  CHECK(result.equivalence.rhs.empty());
}

TEST_CASE("normal form preserves the constraint set on random behaviours") {
  Rng rng(31);
  PreparationEquivalence eq;
  eq.lhs = {{{1, 1}, rat(1, 2)}, {{2, 1}, rat(1, 2)}};
  eq.rhs = {{{1, 1}, rat(1, 3)}, {{3, 1}, rat(1, 3)}, {{4, 1}, rat(1, 3)}};
  const auto nf = single_equivalence_normal_form(eq).equivalence;
  // residuals under eq and nf agree up to the renormalisation factor 2/3:
  // (1/2-1/3) subtracted from P1, residual mass 2/3 on both sides
  for (int i = 0; i < 40; ++i) {
    std::map<PrepLabel, Rational> row;  // a random one-measurement behaviour value per prep
    for (int j = 1; j <= 4; ++j) row[{j, 1}] = random_rational(rng, 12);
    auto eval = [&](const PreparationEquivalence& e) {
      Rational v(0);
      for (const auto& [l, c] : e.lhs) v += c * row[l];
      for (const auto& [l, c] : e.rhs) v -= c * row[l];
      return v;
    };
    CHECK(eval(eq) == eval(nf) * rat(2, 3));
  }
}

TEST_CASE("embedding the five-preparation scenario clones the shared preparations") {
  const CtxScenario h = five_prep_scenario();
  const CtxBehaviour qc = five_prep_contextual();
  const PrepEmbedding embedded = embed_repeated_preparations(h, qc);

  REQUIRE(embedded.decompositions.size() == 3);
  const std::map<PrepLabel, Rational> d1 = {{{1, 1}, rat(3, 8)}, {{2, 1}, rat(5, 8)}};
  const std::map<PrepLabel, Rational> d2 = {
      {{6, 1}, rat(1, 6)}, {{3, 1}, rat(5, 12)}, {{4, 1}, rat(5, 12)}};
  const std::map<PrepLabel, Rational> d3 = {{{7, 1}, rat(1, 2)}, {{5, 1}, rat(1, 2)}};
  CHECK(embedded.decompositions[0] == d1);
  CHECK(embedded.decompositions[1] == d2);
  CHECK(embedded.decompositions[2] == d3);

  CHECK(embedded.scenario.num_preparations() == 7);
  REQUIRE(embedded.clone_of.size() == 2);
  CHECK(embedded.clone_of.at({6, 1}) == PrepLabel{1, 1});
  CHECK(embedded.clone_of.at({7, 1}) == PrepLabel{3, 1});

  // clone rows copy their source rows
  const CtxScenario& s2 = embedded.scenario;
  for (int y = 1; y <= 2; ++y)
    for (int b = 1; b <= 2; ++b) {
      CHECK(embedded.behaviour.at(s2.prep_index({6, 1}), y, b) ==
            qc.at(h.prep_index({1, 1}), y, b));
      CHECK(embedded.behaviour.at(s2.prep_index({7, 1}), y, b) ==
            qc.at(h.prep_index({3, 1}), y, b));
    }

  // the embedded equivalences are NS-form after relabelling
  const auto relabelled = assign_ns_labels(embedded.scenario, embedded.behaviour);
  CHECK(relabelled.first.index_A == std::vector<int>{2, 3, 2});
  CHECK_NOTHROW(extract_ns_form(relabelled.first));
}

TEST_CASE("embedding satisfaction transfer: equivalences keep holding") {
  const CtxScenario h = five_prep_scenario();
  const CtxBehaviour qc = five_prep_contextual();
  const PrepEmbedding embedded = embed_repeated_preparations(h, qc);
  for (const Rational& r : equivalence_residuals(embedded.behaviour)) CHECK(r == 0);
}

TEST_CASE("embedding an already NS-form scenario is the identity") {
  Rng rng(37);
  const auto ns = random_ns_scenario(rng, 3, 2, 3, 2);
  const CtxBehaviour q = random_contextual_behaviour(rng, ns);
  const PrepEmbedding embedded = embed_repeated_preparations(ns.scenario, q);
  CHECK(embedded.clone_of.empty());
  CHECK(embedded.behaviour.raw() == q.raw());
  CHECK(embedded.scenario.preps == ns.scenario.preps);
}

TEST_CASE("interior blend endpoints and marginal preservation") {
  const BellCorrelation pr = pr_box();
  const BellCorrelation p1 = interior_blend(pr, 1);
  for (const Rational& v : p1.raw()) CHECK(v == rat(1, 4));  // p_int itself
  for (long n : {2L, 3L, 5L}) {
    const BellCorrelation pn = interior_blend(pr, n);
    const Marginals m = marginals(pn);
    for (int x = 1; x <= 2; ++x)
      for (int a = 1; a <= 2; ++a) CHECK(m.p_A[x - 1][a - 1] == rat(1, 2));
  }
  CHECK_THROWS_AS(interior_blend(pr, 0), Error);
}
