#include "bellctx/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bellctx {

int BellScenario::norm_A() const {
  return std::accumulate(outcomes_A.begin(), outcomes_A.end(), 0);
}

int BellScenario::norm_B() const {
  return std::accumulate(outcomes_B.begin(), outcomes_B.end(), 0);
}

void BellScenario::validate() const {
  if (outcomes_A.empty() || outcomes_B.empty())
    fail(errc::shape_mismatch, "scenario needs at least one input per party");
  for (int v : outcomes_A)
    if (v < 1) fail(errc::shape_mismatch, "every A_x must be positive");
  for (int v : outcomes_B)
    if (v < 1) fail(errc::shape_mismatch, "every B_y must be positive");
}

PrepLabel PrepLabel::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos)
    fail(errc::parse, "preparation label must be 'a|x', got '" + std::string(text) + "'");
  PrepLabel label;
  try {
    label.a = std::stoi(std::string(text.substr(0, bar)));
    label.x = std::stoi(std::string(text.substr(bar + 1)));
  } catch (const std::exception&) {
    fail(errc::parse, "preparation label must be 'a|x', got '" + std::string(text) + "'");
  }
  if (label.a < 1 || label.x < 1)
    fail(errc::parse, "preparation label indices are 1-based: '" + std::string(text) + "'");
  return label;
}

namespace {

void validate_side(const std::map<PrepLabel, Rational>& side, const char* name) {
  Rational total(0);
  for (const auto& [label, coeff] : side) {
    if (coeff <= 0)
      fail(errc::not_ns_form, std::string("equivalence ") + name + " has non-positive coefficient at " + label.str());
    total += coeff;
  }
  if (total != 1)
    fail(errc::normalisation,
         std::string("equivalence ") + name + " coefficients sum to " + rational_str(total));
}

}  // namespace

void PreparationEquivalence::validate() const {
  validate_side(lhs, "lhs");
  validate_side(rhs, "rhs");
}

int CtxScenario::norm_B() const {
  return std::accumulate(outcomes_B.begin(), outcomes_B.end(), 0);
}

int CtxScenario::prep_index(const PrepLabel& label) const {
  const auto it = std::lower_bound(preps.begin(), preps.end(), label);
  if (it == preps.end() || *it != label) return -1;
  return static_cast<int>(it - preps.begin());
}

void CtxScenario::validate() const {
  if (preps.empty()) fail(errc::shape_mismatch, "scenario has no preparations");
  if (outcomes_B.empty()) fail(errc::shape_mismatch, "scenario has no measurements");
  for (int v : outcomes_B)
    if (v < 1) fail(errc::shape_mismatch, "every B_y must be positive");
  if (!std::is_sorted(preps.begin(), preps.end()))
    fail(errc::shape_mismatch, "preparation labels must be sorted by (x, a)");
  if (std::adjacent_find(preps.begin(), preps.end()) != preps.end())
    fail(errc::shape_mismatch, "duplicate preparation label");
  for (const auto& eq : equivalences) {
    eq.validate();
    for (const auto* side : {&eq.lhs, &eq.rhs})
      for (const auto& [label, coeff] : *side)
        if (prep_index(label) < 0)
          fail(errc::unknown_label, "equivalence references unknown preparation " + label.str());
  }
  if (index_A) {
    for (const auto& label : preps) {
      if (label.x > static_cast<int>(index_A->size()))
        fail(errc::index_too_small, "index_A has no entry for input " + std::to_string(label.x));
      if ((*index_A)[label.x - 1] < label.a)
        fail(errc::index_too_small,
             "A_" + std::to_string(label.x) + " smaller than outcome of " + label.str());
    }
  }
}

NsForm extract_ns_form(const CtxScenario& scenario) {
  // Each x group must carry exactly one decomposition; the same decomposition
  // may appear in any number of chain pairs, but its coefficients must agree
  // everywhere and no preparation may belong to two different groups.
  int max_x = 0;
  for (const auto& label : scenario.preps) max_x = std::max(max_x, label.x);
  if (scenario.equivalences.empty())
    fail(errc::not_ns_form, "no equivalences: NS-form weights are not recoverable");

  NsForm form;
  form.weights.resize(max_x);
  // Union-find over the x groups to check the chain connects them all.
  std::vector<int> parent(max_x);
  for (int i = 0; i < max_x; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  for (const auto& eq : scenario.equivalences) {
    int side_x[2] = {0, 0};
    int side_idx = 0;
    for (const auto* side : {&eq.lhs, &eq.rhs}) {
      if (side->empty()) fail(errc::not_ns_form, "empty equivalence side");
      const int x = side->begin()->first.x;
      for (const auto& [label, coeff] : *side)
        if (label.x != x)
          fail(errc::not_ns_form, "decomposition mixes preparations from different inputs");
      auto& weights = form.weights[x - 1];
      std::map<int, Rational> this_side;
      for (const auto& [label, coeff] : *side) this_side[label.a] = coeff;
      if (weights.empty()) {
        weights = std::move(this_side);
      } else if (weights != this_side) {
        fail(errc::not_ns_form,
             "input " + std::to_string(x) + " carries two different decompositions");
      }
      side_x[side_idx++] = x;
    }
    if (side_x[0] == side_x[1])
      fail(errc::not_ns_form, "equivalence equates a decomposition with itself");
    parent[find(side_x[0] - 1)] = find(side_x[1] - 1);
  }

  std::set<PrepLabel> covered;
  for (int x = 1; x <= max_x; ++x)
    for (const auto& [a, coeff] : form.weights[x - 1]) {
      (void)coeff;
      covered.insert({a, x});
    }
  for (const auto& label : scenario.preps)
    if (!covered.count(label))
      fail(errc::not_ns_form, "preparation " + label.str() + " appears in no decomposition");
  for (int x = 0; x < max_x; ++x) {
    if (form.weights[x].empty())
      fail(errc::not_ns_form, "input " + std::to_string(x + 1) + " has no decomposition");
    if (find(x) != find(0))
      fail(errc::not_ns_form, "equivalence chain does not connect all decompositions");
  }
  return form;
}

}  // namespace bellctx
