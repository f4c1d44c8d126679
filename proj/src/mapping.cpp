#include "bellctx/mapping.hpp"

#include <algorithm>
#include <set>

namespace bellctx {

MappedBehaviour bell_to_ctx(const BellCorrelation& p, SignallingPolicy policy) {
  const Marginals m = marginals(p);
  if (!m.alice_well_defined)
    fail(errc::signalling_input, "Alice marginal depends on Bob's input");
  if (policy == SignallingPolicy::reject) {
    const auto ns = check_no_signalling(p);
    if (!ns.no_signalling)
      fail(errc::signalling_input,
           "correlation is signalling (residual " + rational_str(ns.max_residual) + ")");
  }

  const BellScenario& s = p.scenario();
  CtxScenario target;
  target.outcomes_B = s.outcomes_B;
  target.equivalences = canonical_ns_equivalence(m);
  target.index_A = s.outcomes_A;
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      if (m.p_A[x - 1][a - 1] > 0) target.preps.push_back({a, x});
  std::sort(target.preps.begin(), target.preps.end());
  target.validate();

  std::vector<Rational> table(static_cast<std::size_t>(target.num_preparations()) * target.norm_B());
  std::size_t cell = 0;
  for (const PrepLabel& prep : target.preps) {
    const Rational& weight = m.p_A[prep.x - 1][prep.a - 1];
    for (int y = 1; y <= s.inputs_Y(); ++y)
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b)
        table[cell++] = p.at(prep.a, b, prep.x, y) / weight;
  }
  return {CtxBehaviour::from_table(std::move(target), std::move(table)), s.outcomes_A};
}

BellCorrelation ctx_to_bell(const CtxBehaviour& q, const std::optional<std::vector<int>>& index_A) {
  const CtxScenario& s = q.scenario();
  const NsForm form = extract_ns_form(s);

  std::vector<int> A;
  if (index_A) A = *index_A;
  else if (s.index_A) A = *s.index_A;
  else fail(errc::index_too_small, "no index tuple A supplied");

  if (static_cast<int>(A.size()) != form.inputs_X())
    fail(errc::shape_mismatch, "index_A has " + std::to_string(A.size()) + " entries but the scenario has " +
                                   std::to_string(form.inputs_X()) + " decompositions");
  for (int x = 1; x <= form.inputs_X(); ++x) {
    for (const auto& [a, w] : form.weights[x - 1]) {
      (void)w;
      if (A[x - 1] < a)
        fail(errc::index_too_small,
             "A_" + std::to_string(x) + " = " + std::to_string(A[x - 1]) +
                 " smaller than appearing outcome " + std::to_string(a));
    }
  }

  BellScenario bell{A, s.outcomes_B};
  bell.validate();
  std::vector<Rational> table(static_cast<std::size_t>(bell.norm_A()) * bell.norm_B(), Rational(0));
  std::vector<int> off_A(bell.inputs_X(), 0), off_B(bell.inputs_Y(), 0);
  for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + bell.outcomes_A[i - 1];
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + bell.outcomes_B[i - 1];
  for (int x = 1; x <= bell.inputs_X(); ++x) {
    for (const auto& [a, weight] : form.weights[x - 1]) {
      const int prep = s.prep_index({a, x});
      if (prep < 0) fail(errc::internal, "NS-form weight without preparation");
      for (int y = 1; y <= bell.inputs_Y(); ++y)
        for (int b = 1; b <= bell.outcomes_B[y - 1]; ++b)
          table[static_cast<std::size_t>(off_A[x - 1] + a - 1) * bell.norm_B() + off_B[y - 1] + b - 1] =
              weight * q.at(prep, y, b);
    }
  }
  return BellCorrelation::from_table(std::move(bell), std::move(table));
}

bool RelabellingRecord::identity() const {
  if (!removed_inputs.empty()) return false;
  if (reduced_A != original_A) return false;
  for (const auto& order : outcome_order)
    for (std::size_t k = 0; k < order.size(); ++k)
      if (order[k] != static_cast<int>(k) + 1) return false;
  return true;
}

TauReduction reduce_tau(const BellCorrelation& p) {
  const auto ns = check_no_signalling(p);
  if (!ns.no_signalling)
    fail(errc::signalling_input, "tau reduction requires a no-signalling correlation");
  const Marginals m = marginals(p);
  const BellScenario& s = p.scenario();

  TauReduction result;
  result.record.original_A = s.outcomes_A;

  for (int x = 1; x <= s.inputs_X(); ++x) {
    int certain = 0;
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      if (m.p_A[x - 1][a - 1] == 1) certain = a;
    if (certain != 0) {
      result.record.removed_inputs.push_back({x, certain});
      continue;
    }
    result.record.surviving_inputs.push_back(x);
    std::vector<int> order;
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      if (m.p_A[x - 1][a - 1] > 0) order.push_back(a);
    const int support = static_cast<int>(order.size());
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      if (m.p_A[x - 1][a - 1] == 0) order.push_back(a);
    result.record.outcome_order.push_back(std::move(order));
    result.record.reduced_A.push_back(support);
  }

  if (result.record.surviving_inputs.empty()) {
    result.fully_deterministic = true;
    return result;
  }

  BellScenario reduced{result.record.reduced_A, s.outcomes_B};
  std::vector<Rational> table;
  table.reserve(static_cast<std::size_t>(reduced.norm_A()) * reduced.norm_B());
  for (std::size_t i = 0; i < result.record.surviving_inputs.size(); ++i) {
    const int x = result.record.surviving_inputs[i];
    for (int k = 0; k < result.record.reduced_A[i]; ++k) {
      const int a = result.record.outcome_order[i][k];
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) table.push_back(p.at(a, b, x, y));
    }
  }
  result.reduced = BellCorrelation::from_table(std::move(reduced), std::move(table));
  return result;
}

BellCorrelation embed_bell(const BellCorrelation& reduced, const RelabellingRecord& record) {
  const BellScenario& rs = reduced.scenario();
  if (rs.outcomes_A != record.reduced_A)
    fail(errc::shape_mismatch, "reduced correlation does not match the record's reduced_A");
  if (record.surviving_inputs.size() != record.reduced_A.size() ||
      record.outcome_order.size() != record.reduced_A.size())
    fail(errc::shape_mismatch, "inconsistent relabelling record");
  const int X = static_cast<int>(record.original_A.size());
  if (static_cast<int>(record.surviving_inputs.size() + record.removed_inputs.size()) != X)
    fail(errc::shape_mismatch, "record inputs do not partition the original inputs");
  for (std::size_t i = 0; i < record.outcome_order.size(); ++i) {
    const int x = record.surviving_inputs[i];
    if (x < 1 || x > X) fail(errc::shape_mismatch, "surviving input out of range");
    if (static_cast<int>(record.outcome_order[i].size()) != record.original_A[x - 1])
      fail(errc::shape_mismatch, "outcome permutation does not cover input " + std::to_string(x));
  }

  const Marginals rm = marginals(reduced);

  BellScenario original{record.original_A, rs.outcomes_B};
  original.validate();
  std::vector<int> off_A(original.inputs_X(), 0), off_B(original.inputs_Y(), 0);
  for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + original.outcomes_A[i - 1];
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + original.outcomes_B[i - 1];
  std::vector<Rational> table(static_cast<std::size_t>(original.norm_A()) * original.norm_B(),
                              Rational(0));
  auto cell = [&](int a, int b, int x, int y) -> Rational& {
    return table[static_cast<std::size_t>(off_A[x - 1] + a - 1) * original.norm_B() +
                 off_B[y - 1] + b - 1];
  };

  for (std::size_t i = 0; i < record.surviving_inputs.size(); ++i) {
    const int x = record.surviving_inputs[i];
    for (int k = 0; k < record.reduced_A[i]; ++k) {
      const int a = record.outcome_order[i][k];
      for (int y = 1; y <= original.inputs_Y(); ++y)
        for (int b = 1; b <= original.outcomes_B[y - 1]; ++b)
          cell(a, b, x, y) = reduced.at(k + 1, b, static_cast<int>(i) + 1, y);
    }
  }
  for (const auto& removed : record.removed_inputs) {
    if (removed.x < 1 || removed.x > X || removed.certain_outcome < 1 ||
        removed.certain_outcome > record.original_A[removed.x - 1])
      fail(errc::shape_mismatch, "removed input record out of range");
    for (int y = 1; y <= original.inputs_Y(); ++y)
      for (int b = 1; b <= original.outcomes_B[y - 1]; ++b)
        cell(removed.certain_outcome, b, removed.x, y) = rm.p_B[y - 1][b - 1];
  }
  return BellCorrelation::from_table(std::move(original), std::move(table));
}

NormalFormResult single_equivalence_normal_form(const PreparationEquivalence& eq) {
  eq.validate();
  std::set<PrepLabel> labels;
  for (const auto& [label, coeff] : eq.lhs) labels.insert(label);
  for (const auto& [label, coeff] : eq.rhs) labels.insert(label);

  PreparationEquivalence out;
  Rational subtracted(0);
  for (const PrepLabel& label : labels) {
    const auto li = eq.lhs.find(label);
    const auto ri = eq.rhs.find(label);
    const Rational l = li == eq.lhs.end() ? Rational(0) : li->second;
    const Rational r = ri == eq.rhs.end() ? Rational(0) : ri->second;
    const Rational common = std::min(l, r);
    subtracted += common;
    if (l > common) out.lhs[label] = l - common;
    if (r > common) out.rhs[label] = r - common;
  }
  const Rational residual = 1 - subtracted;
  if (residual == 0) return {PreparationEquivalence{}, true};
  for (auto& [label, coeff] : out.lhs) coeff /= residual;
  for (auto& [label, coeff] : out.rhs) coeff /= residual;
  out.validate();
  return {std::move(out), false};
}

namespace {

// Distinct equivalence sides in first-appearance order, with a connectivity
// check: every side must be (transitively) equated with the first one.
std::vector<std::map<PrepLabel, Rational>> chained_decompositions(const CtxScenario& scenario) {
  if (scenario.equivalences.empty())
    fail(errc::not_one_hypothetical, "scenario has no preparation equivalences");
  std::vector<std::map<PrepLabel, Rational>> decs;
  std::vector<int> parent;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto locate = [&](const std::map<PrepLabel, Rational>& side) {
    for (std::size_t i = 0; i < decs.size(); ++i)
      if (decs[i] == side) return static_cast<int>(i);
    decs.push_back(side);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(decs.size()) - 1;
  };
  for (const auto& eq : scenario.equivalences) {
    const int l = locate(eq.lhs);
    const int r = locate(eq.rhs);
    parent[find(l)] = find(r);
  }
  for (std::size_t i = 0; i < decs.size(); ++i)
    if (find(static_cast<int>(i)) != find(0))
      fail(errc::not_one_hypothetical,
           "equivalences do not chain all decompositions of one hypothetical preparation");
  return decs;
}

std::vector<PreparationEquivalence> anchored_chain(
    const std::vector<std::map<PrepLabel, Rational>>& decs) {
  std::vector<PreparationEquivalence> chain;
  for (std::size_t d = 1; d < decs.size(); ++d) {
    PreparationEquivalence eq;
    eq.lhs = decs[0];
    eq.rhs = decs[d];
    chain.push_back(std::move(eq));
  }
  return chain;
}

}  // namespace

PrepEmbedding embed_repeated_preparations(const CtxScenario& scenario, const CtxBehaviour& q) {
  if (q.scenario() != scenario) fail(errc::shape_mismatch, "behaviour belongs to a different scenario");
  auto decs = chained_decompositions(scenario);

  // Subtract each preparation's minimum coefficient across all decompositions.
  std::map<PrepLabel, Rational> common;
  for (const auto& label : scenario.preps) {
    Rational least = Rational(-1);
    for (const auto& d : decs) {
      const auto it = d.find(label);
      const Rational c = it == d.end() ? Rational(0) : it->second;
      if (least < 0 || c < least) least = c;
    }
    if (least > 0) common[label] = least;
  }
  Rational mass(0);
  for (const auto& [label, c] : common) mass += c;
  const Rational residual = 1 - mass;
  if (residual == 0)
    fail(errc::not_one_hypothetical, "decompositions are identical; nothing to embed");
  for (auto& d : decs) {
    for (const auto& [label, c] : common) {
      auto it = d.find(label);
      if (it == d.end() || it->second < c) fail(errc::internal, "minimum subtraction mismatch");
      it->second -= c;
      if (it->second == 0) d.erase(it);
    }
    for (auto& [label, coeff] : d) coeff /= residual;
  }

  // Split preparations still shared between decompositions: the first
  // occurrence keeps its label, later ones become fresh clones, assigned in
  // decomposition order.
  int next_a = 0;
  for (const auto& label : scenario.preps) next_a = std::max(next_a, label.a);
  CtxScenario target;
  target.outcomes_B = scenario.outcomes_B;
  target.preps = scenario.preps;
  std::map<PrepLabel, PrepLabel> clone_of;
  std::set<PrepLabel> seen;
  for (auto& d : decs) {
    std::map<PrepLabel, Rational> renamed;
    for (const auto& [label, coeff] : d) {
      if (seen.insert(label).second) {
        renamed[label] = coeff;
      } else {
        const PrepLabel clone{++next_a, label.x};
        clone_of[clone] = label;
        target.preps.push_back(clone);
        renamed[clone] = coeff;
      }
    }
    d = std::move(renamed);
  }
  std::sort(target.preps.begin(), target.preps.end());
  target.equivalences = anchored_chain(decs);
  target.validate();

  std::vector<Rational> table(static_cast<std::size_t>(target.num_preparations()) *
                              target.norm_B());
  std::size_t cell = 0;
  for (const PrepLabel& prep : target.preps) {
    const auto it = clone_of.find(prep);
    const PrepLabel source = it == clone_of.end() ? prep : it->second;
    const int src = scenario.prep_index(source);
    if (src < 0) fail(errc::internal, "clone source missing");
    for (int y = 1; y <= target.num_measurements(); ++y)
      for (int b = 1; b <= target.outcomes_B[y - 1]; ++b) table[cell++] = q.at(src, y, b);
  }
  CtxBehaviour embedded = CtxBehaviour::from_table(target, std::move(table));
  return {std::move(target), std::move(embedded), std::move(clone_of), std::move(decs)};
}

BellCorrelation interior_blend(const BellCorrelation& p, long n) {
  if (n < 1) fail(errc::parse, "blend order n must be a positive integer");
  const Marginals m = marginals(p);
  if (!m.alice_well_defined) fail(errc::signalling_input, "Alice marginal is not well-defined");
  for (const auto& row : m.p_A)
    for (const Rational& w : row)
      if (w == 0) fail(errc::shape_mismatch, "interior blend needs full-support Alice marginals");

  const BellScenario& s = p.scenario();
  const Rational lam(1, n);
  std::vector<Rational> table;
  table.reserve(p.raw().size());
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
          const Rational interior = m.p_A[x - 1][a - 1] / s.outcomes_B[y - 1];
          table.push_back(lam * interior + (1 - lam) * p.at(a, b, x, y));
        }
  return BellCorrelation::from_table(s, std::move(table));
}

std::pair<CtxScenario, CtxBehaviour> assign_ns_labels(const CtxScenario& scenario,
                                                      const CtxBehaviour& q) {
  if (q.scenario() != scenario) fail(errc::shape_mismatch, "behaviour belongs to a different scenario");
  const auto decs = chained_decompositions(scenario);
  std::map<PrepLabel, PrepLabel> rename;  // old -> [a|x]
  std::vector<int> index_A;
  for (std::size_t d = 0; d < decs.size(); ++d) {
    int a = 0;
    for (const auto& [label, coeff] : decs[d]) {
      (void)coeff;
      if (rename.count(label))
        fail(errc::not_ns_form, "preparation " + label.str() + " appears in two decompositions");
      rename[label] = PrepLabel{++a, static_cast<int>(d) + 1};
    }
    index_A.push_back(a);
  }
  for (const auto& label : scenario.preps)
    if (!rename.count(label))
      fail(errc::not_ns_form, "preparation " + label.str() + " appears in no decomposition");

  CtxScenario out;
  out.outcomes_B = scenario.outcomes_B;
  out.index_A = index_A;
  for (const auto& [from, to] : rename) out.preps.push_back(to);
  std::sort(out.preps.begin(), out.preps.end());
  std::vector<std::map<PrepLabel, Rational>> renamed(decs.size());
  for (std::size_t d = 0; d < decs.size(); ++d)
    for (const auto& [label, coeff] : decs[d]) renamed[d][rename.at(label)] = coeff;
  out.equivalences = anchored_chain(renamed);
  out.validate();

  std::vector<Rational> table(static_cast<std::size_t>(out.num_preparations()) * out.norm_B());
  std::map<PrepLabel, PrepLabel> back;
  for (const auto& [from, to] : rename) back[to] = from;
  std::size_t cell = 0;
  for (const PrepLabel& prep : out.preps) {
    const int src = scenario.prep_index(back.at(prep));
    for (int y = 1; y <= out.num_measurements(); ++y)
      for (int b = 1; b <= out.outcomes_B[y - 1]; ++b) table[cell++] = q.at(src, y, b);
  }
  return {out, CtxBehaviour::from_table(out, std::move(table))};
}

}  // namespace bellctx
