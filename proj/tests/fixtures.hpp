// Shared test fixtures and independent generators: named correlations,
// the five-preparation scenario with its contextual behaviour, the published
// ontic model for the embedded scenario, and random-instance generators used
// by the property and acceptance suites.

#pragma once

#include <algorithm>
#include <functional>
#include <random>

#include "bellctx/classicality.hpp"
#include "bellctx/mapping.hpp"

namespace fixtures {

using namespace bellctx;

using Rng = std::mt19937_64;

inline BellCorrelation make_correlation(
    const BellScenario& s, const std::function<Rational(int, int, int, int)>& fn) {
  std::vector<Rational> table;
  table.reserve(static_cast<std::size_t>(s.norm_A()) * s.norm_B());
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) table.push_back(fn(a, b, x, y));
  return BellCorrelation::from_table(s, std::move(table));
}

inline BellScenario chsh_scenario() { return BellScenario{{2, 2}, {2, 2}}; }

/// p(a,b|x,y) = 1/2 iff (a-1) xor (b-1) = (x-1)(y-1).
inline BellCorrelation pr_box() {
  return make_correlation(chsh_scenario(), [](int a, int b, int x, int y) {
    const int parity = ((a - 1) ^ (b - 1));
    return parity == (x - 1) * (y - 1) ? rat(1, 2) : rat(0);
  });
}

inline BellCorrelation uniform_correlation(const BellScenario& s) {
  return make_correlation(s, [&](int, int, int x, int y) {
    return Rational(1, Int(s.outcomes_A[x - 1]) * s.outcomes_B[y - 1]);
  });
}

/// The five-preparation scenario (5, 2, 2) with equivalences
///   1/2(P1+P2) ~ 1/3(P1+P3+P4) ~ 1/5 P1 + 2/5(P3+P5),
/// stored as the anchored chain. Preparations are labelled i|1.
inline CtxScenario five_prep_scenario() {
  CtxScenario s;
  for (int i = 1; i <= 5; ++i) s.preps.push_back({i, 1});
  s.outcomes_B = {2, 2};
  PreparationEquivalence e1, e2;
  e1.lhs = {{{1, 1}, rat(1, 2)}, {{2, 1}, rat(1, 2)}};
  e1.rhs = {{{1, 1}, rat(1, 3)}, {{3, 1}, rat(1, 3)}, {{4, 1}, rat(1, 3)}};
  e2.lhs = e1.lhs;
  e2.rhs = {{{1, 1}, rat(1, 5)}, {{3, 1}, rat(2, 5)}, {{5, 1}, rat(2, 5)}};
  s.equivalences = {e1, e2};
  s.validate();
  return s;
}

/// The contextual behaviour of the five-preparation scenario, 10-coordinate
/// reading: rows (q(1|i,1), q(1|i,2)) for i = 1..5, q(2|..) by normalisation.
inline CtxBehaviour five_prep_contextual() {
  const CtxScenario s = five_prep_scenario();
  const std::vector<std::pair<Rational, Rational>> rows = {
      {rat(19, 200), rat(1, 2)},    {rat(127, 200), rat(1, 2)},
      {rat(19, 200), rat(19, 200)}, {rat(181, 200), rat(181, 200)},
      {rat(77, 100), rat(181, 200)}};
  std::vector<Rational> table;
  for (const auto& [q1, q2] : rows) {
    table.push_back(q1);
    table.push_back(1 - q1);
    table.push_back(q2);
    table.push_back(1 - q2);
  }
  return CtxBehaviour::from_table(s, std::move(table));
}

/// The facet  2 - q(1|1,2) - 3 q(1|2,1) + 2 q(1|3,1) + 2 q(1|3,2) >= 0  of the
/// five-preparation non-contextual polytope, in the polytope's coordinate
/// order (preparation-major, then y).
inline std::vector<Rational> five_prep_facet() {
  std::vector<Rational> row(11, rat(0));
  row[0] = rat(2);
  row[2] = rat(-1);   // q(1|1,2)
  row[3] = rat(-3);   // q(1|2,1)
  row[5] = rat(2);    // q(1|3,1)
  row[6] = rat(2);    // q(1|3,2)
  return row;
}

/// The known non-contextual model of the embedded seven-preparation
/// behaviour, under the reconciled measurement indexing (the response
/// functions pair with the behaviour only after swapping the two measurement
/// labels). mu rows follow the published row order.
inline OnticModel seven_prep_model() {
  OnticModel model;
  model.responses = {{2, 2}, {2, 1}, {1, 2}, {1, 1}};
  const char* rows[4][7] = {
      {"1/2", "73/200", "1671/2000", "0", "0", "81/200", "133/160"},
      {"81/200", "0", "139/2000", "19/200", "23/100", "1/2", "59/800"},
      {"0", "27/200", "139/2000", "19/200", "19/200", "19/200", "59/800"},
      {"19/200", "1/2", "51/2000", "81/100", "27/40", "0", "17/800"}};
  model.mu.assign(7, std::vector<Rational>(4));
  for (int l = 0; l < 4; ++l)
    for (int x = 0; x < 7; ++x) model.mu[x][l] = parse_rational(rows[l][x]);
  return model;
}

// ---- random generators -------------------------------------------------------

inline Rational random_rational(Rng& rng, int max_den = 16) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(0, d);
  return rat(num(rng), d);
}

/// Random distribution over n outcomes with strictly positive entries when
/// `full_support`, as exact rationals with a common small denominator.
inline std::vector<Rational> random_distribution(Rng& rng, int n, bool full_support = false,
                                                 int resolution = 24) {
  std::vector<int> cuts(n, 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < resolution - (full_support ? n : 0); ++i) ++cuts[pick(rng)];
  if (full_support)
    for (int i = 0; i < n; ++i) ++cuts[i];
  std::vector<Rational> out(n);
  const int total = full_support ? resolution : resolution;
  for (int i = 0; i < n; ++i) out[i] = rat(cuts[i], total);
  return out;
}

inline DeterministicStrategy random_strategy(Rng& rng, const BellScenario& s) {
  DeterministicStrategy st;
  for (int x = 1; x <= s.inputs_X(); ++x) {
    std::uniform_int_distribution<int> pick(1, s.outcomes_A[x - 1]);
    st.alice.push_back(pick(rng));
  }
  for (int y = 1; y <= s.inputs_Y(); ++y) {
    std::uniform_int_distribution<int> pick(1, s.outcomes_B[y - 1]);
    st.bob.push_back(pick(rng));
  }
  return st;
}

/// Random convex mixture of `terms` deterministic vertices: always local.
inline BellCorrelation random_local_mixture(Rng& rng, const BellScenario& s, int terms = 6) {
  const auto weights = random_distribution(rng, terms);
  std::vector<Rational> table(static_cast<std::size_t>(s.norm_A()) * s.norm_B(), rat(0));
  for (int t = 0; t < terms; ++t) {
    const auto vertex = strategy_correlation(s, random_strategy(rng, s));
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += weights[t] * vertex.raw()[i];
  }
  return BellCorrelation::from_table(s, std::move(table));
}

/// A PR box padded into an arbitrary scenario with X, Y >= 2 and at least
/// two outcomes on the first two inputs of each side: the top-left block
/// carries the box, extra Alice outcomes never occur, extra Alice inputs are
/// deterministic, extra Bob inputs see the uniform distribution.
inline BellCorrelation padded_pr_box(const BellScenario& s) {
  return make_correlation(s, [&](int a, int b, int x, int y) -> Rational {
    const int By = s.outcomes_B[y - 1];
    if (x <= 2) {
      if (a > 2) return rat(0);
      if (y <= 2) {
        if (b > 2) return rat(0);
        return ((a - 1) ^ (b - 1)) == (x - 1) * (y - 1) ? rat(1, 2) : rat(0);
      }
      return Rational(Int(1), Int(2) * By);
    }
    if (a != 1) return rat(0);
    if (y <= 2) return b <= 2 ? rat(1, 2) : rat(0);
    return Rational(Int(1), Int(By));
  });
}

/// Random no-signalling correlation: local mixtures, optionally mixed with a
/// padded PR box (still no-signalling).
inline BellCorrelation random_ns_correlation(Rng& rng, const BellScenario& s) {
  BellCorrelation base = random_local_mixture(rng, s);
  std::uniform_int_distribution<int> coin(0, 2);
  if (s.inputs_X() >= 2 && s.inputs_Y() >= 2 && coin(rng) == 0) {
    const BellCorrelation box = padded_pr_box(s);
    const Rational w = random_rational(rng, 8);
    std::vector<Rational> table(base.raw().size());
    for (std::size_t i = 0; i < table.size(); ++i)
      table[i] = w * box.raw()[i] + (1 - w) * base.raw()[i];
    return BellCorrelation::from_table(s, std::move(table));
  }
  return base;
}

/// Random point of the transportation polytope with the given marginals
/// (rows sum to `row_sums`, columns to `col_sums`), as a mixture of
/// north-west-corner vertices under random row/column orders.
inline std::vector<std::vector<Rational>> random_coupling(Rng& rng,
                                                          const std::vector<Rational>& row_sums,
                                                          const std::vector<Rational>& col_sums,
                                                          int mixture_terms = 3) {
  const std::size_t R = row_sums.size(), C = col_sums.size();
  std::vector<std::vector<Rational>> out(R, std::vector<Rational>(C, rat(0)));
  const auto mix = random_distribution(rng, mixture_terms, true);
  for (int t = 0; t < mixture_terms; ++t) {
    std::vector<std::size_t> rows(R), cols(C);
    for (std::size_t i = 0; i < R; ++i) rows[i] = i;
    for (std::size_t j = 0; j < C; ++j) cols[j] = j;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<Rational> rem_r = row_sums, rem_c = col_sums;
    std::size_t i = 0, j = 0;
    while (i < R && j < C) {
      const Rational m = std::min(rem_r[rows[i]], rem_c[cols[j]]);
      out[rows[i]][cols[j]] += mix[t] * m;
      rem_r[rows[i]] -= m;
      rem_c[cols[j]] -= m;
      if (rem_r[rows[i]] == 0) ++i;
      else ++j;
    }
  }
  return out;
}

struct NsFormScenario {
  CtxScenario scenario;                 // labels [a|x], NS-form equivalences
  std::vector<std::vector<Rational>> weights;  // p_A(a|x) over appearing outcomes
};

/// Random NS-form contextuality scenario with X decompositions of
/// full-support weights.
inline NsFormScenario random_ns_scenario(Rng& rng, int X, int Y, int max_A, int max_B) {
  NsFormScenario out;
  std::uniform_int_distribution<int> apick(2, max_A), bpick(2, max_B);
  Marginals m;
  m.alice_well_defined = true;
  for (int x = 1; x <= X; ++x)
    m.p_A.push_back(random_distribution(rng, apick(rng), /*full_support=*/true));
  out.weights = m.p_A;
  for (int x = 1; x <= X; ++x)
    for (int a = 1; a <= static_cast<int>(m.p_A[x - 1].size()); ++a)
      out.scenario.preps.push_back({a, x});
  for (int y = 0; y < Y; ++y) out.scenario.outcomes_B.push_back(bpick(rng));
  out.scenario.equivalences = canonical_ns_equivalence(m);
  std::vector<int> index_A;
  for (const auto& row : m.p_A) index_A.push_back(static_cast<int>(row.size()));
  out.scenario.index_A = index_A;
  out.scenario.validate();
  return out;
}

/// Random behaviour in the contextual set of an NS-form scenario: every
/// decomposition averages to one shared distribution Q(.|y), built from
/// random couplings.
inline CtxBehaviour random_contextual_behaviour(Rng& rng, const NsFormScenario& ns) {
  const CtxScenario& s = ns.scenario;
  const int Y = s.num_measurements();
  std::vector<std::vector<Rational>> Q;  // shared Bob-side distribution per y
  for (int y = 1; y <= Y; ++y) Q.push_back(random_distribution(rng, s.outcomes_B[y - 1]));

  std::vector<Rational> table(static_cast<std::size_t>(s.num_preparations()) * s.norm_B());
  std::vector<int> off_B(Y, 0);
  for (int y = 1; y < Y; ++y) off_B[y] = off_B[y - 1] + s.outcomes_B[y - 1];
  for (int x = 1; x <= static_cast<int>(ns.weights.size()); ++x) {
    for (int y = 1; y <= Y; ++y) {
      const auto coupling = random_coupling(rng, ns.weights[x - 1], Q[y - 1]);
      for (int a = 1; a <= static_cast<int>(ns.weights[x - 1].size()); ++a) {
        const int prep = s.prep_index({a, x});
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b)
          table[static_cast<std::size_t>(prep) * s.norm_B() + off_B[y - 1] + b - 1] =
              coupling[a - 1][b - 1] / ns.weights[x - 1][a - 1];
      }
    }
  }
  return CtxBehaviour::from_table(s, std::move(table));
}

/// Random non-contextual behaviour with witness: measures built by coupling
/// each decomposition's weights to a shared ontic distribution.
inline std::pair<CtxBehaviour, OnticModel> random_nc_behaviour(Rng& rng,
                                                               const NsFormScenario& ns,
                                                               const Budget& budget = {}) {
  const CtxScenario& s = ns.scenario;
  const auto atlas = response_function_atlas(s, budget);
  const std::size_t L = atlas.size();
  const auto nu = random_distribution(rng, static_cast<int>(L));  // hypothetical preparation

  OnticModel model;
  model.responses = atlas;
  model.mu.assign(s.num_preparations(), {});
  for (int x = 1; x <= static_cast<int>(ns.weights.size()); ++x) {
    const auto coupling = random_coupling(rng, ns.weights[x - 1], nu);
    for (int a = 1; a <= static_cast<int>(ns.weights[x - 1].size()); ++a) {
      const int prep = s.prep_index({a, x});
      model.mu[prep].resize(L);
      for (std::size_t l = 0; l < L; ++l)
        model.mu[prep][l] = coupling[a - 1][l] / ns.weights[x - 1][a - 1];
    }
  }

  std::vector<Rational> table(static_cast<std::size_t>(s.num_preparations()) * s.norm_B());
  std::vector<int> off_B(s.num_measurements(), 0);
  for (int y = 1; y < s.num_measurements(); ++y) off_B[y] = off_B[y - 1] + s.outcomes_B[y - 1];
  for (int p = 0; p < s.num_preparations(); ++p)
    for (int y = 1; y <= s.num_measurements(); ++y)
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
        Rational v(0);
        for (std::size_t l = 0; l < L; ++l)
          if (atlas[l][y - 1] == b) v += model.mu[p][l];
        table[static_cast<std::size_t>(p) * s.norm_B() + off_B[y - 1] + b - 1] = v;
      }
  return {CtxBehaviour::from_table(s, std::move(table)), std::move(model)};
}

}  // namespace fixtures
