#include "bellctx/behaviour.hpp"

namespace bellctx {

namespace {

std::vector<int> prefix_offsets(const std::vector<int>& counts) {
  std::vector<int> off(counts.size(), 0);
  for (std::size_t i = 1; i < counts.size(); ++i) off[i] = off[i - 1] + counts[i - 1];
  return off;
}

}  // namespace

CtxBehaviour::CtxBehaviour(CtxScenario scenario, std::vector<Rational> table)
    : scenario_(std::move(scenario)),
      off_B_(prefix_offsets(scenario_.outcomes_B)),
      table_(std::move(table)) {}

std::size_t CtxBehaviour::index(int prep_idx, int y, int b) const {
  return static_cast<std::size_t>(prep_idx) * scenario_.norm_B() + off_B_[y - 1] + b - 1;
}

ValidationReport CtxBehaviour::validate_table(const CtxScenario& scenario,
                                              const std::vector<Rational>& table) {
  ValidationReport report;
  scenario.validate();
  const std::size_t expected =
      static_cast<std::size_t>(scenario.num_preparations()) * scenario.norm_B();
  if (table.size() != expected) {
    report.violations.push_back({"MalformedTable", "table",
                                 "expected " + std::to_string(expected) + " cells, got " +
                                     std::to_string(table.size())});
    return report;
  }
  const CtxBehaviour view(scenario, table);
  for (int p = 0; p < scenario.num_preparations(); ++p) {
    for (int y = 1; y <= scenario.num_measurements(); ++y) {
      Rational total(0);
      for (int b = 1; b <= scenario.outcomes_B[y - 1]; ++b) {
        const Rational& v = view.at(p, y, b);
        if (v < 0)
          report.violations.push_back({"NegativeEntry",
                                       "(prep,y,b)=(" + scenario.preps[p].str() + "," +
                                           std::to_string(y) + "," + std::to_string(b) + ")",
                                       rational_str(v)});
        total += v;
      }
      if (total != 1)
        report.violations.push_back({"NormalisationError",
                                     "(prep,y)=(" + scenario.preps[p].str() + "," +
                                         std::to_string(y) + ")",
                                     "sums to " + rational_str(total)});
    }
  }
  return report;
}

CtxBehaviour CtxBehaviour::from_table(CtxScenario scenario, std::vector<Rational> table) {
  const ValidationReport report = validate_table(scenario, table);
  if (!report.ok()) {
    const bool shape = report.violations.front().kind == "MalformedTable";
    fail(shape ? errc::malformed_table : errc::normalisation, report.summary());
  }
  return CtxBehaviour(std::move(scenario), std::move(table));
}

std::vector<Rational> equivalence_residuals(const CtxBehaviour& q) {
  const CtxScenario& s = q.scenario();
  std::vector<Rational> residuals;
  residuals.reserve(s.equivalences.size());
  for (const auto& eq : s.equivalences) {
    Rational worst(0);
    for (int y = 1; y <= s.num_measurements(); ++y) {
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
        Rational diff(0);
        for (const auto& [label, coeff] : eq.lhs) {
          const int idx = s.prep_index(label);
          if (idx < 0) fail(errc::unknown_label, "equivalence references " + label.str());
          diff += coeff * q.at(idx, y, b);
        }
        for (const auto& [label, coeff] : eq.rhs) {
          const int idx = s.prep_index(label);
          if (idx < 0) fail(errc::unknown_label, "equivalence references " + label.str());
          diff -= coeff * q.at(idx, y, b);
        }
        worst = std::max(worst, abs(diff));
      }
    }
    residuals.push_back(worst);
  }
  return residuals;
}

Rational max_equivalence_residual(const CtxBehaviour& q) {
  Rational worst(0);
  for (const Rational& r : equivalence_residuals(q)) worst = std::max(worst, r);
  return worst;
}

std::vector<PreparationEquivalence> canonical_ns_equivalence(const Marginals& m) {
  if (!m.alice_well_defined)
    fail(errc::signalling_input, "Alice marginal is not well-defined");
  const int X = static_cast<int>(m.p_A.size());
  std::vector<PreparationEquivalence> chain;
  if (X < 2) return chain;  // nothing to equate: a scenario with no constraints

  auto decomposition = [&](int x) {
    std::map<PrepLabel, Rational> side;
    for (int a = 1; a <= static_cast<int>(m.p_A[x - 1].size()); ++a) {
      const Rational& w = m.p_A[x - 1][a - 1];
      if (w > 0) side[{a, x}] = w;
    }
    return side;
  };

  const auto anchor = decomposition(1);
  for (int x = 2; x <= X; ++x) {
    PreparationEquivalence eq;
    eq.lhs = anchor;
    eq.rhs = decomposition(x);
    chain.push_back(std::move(eq));
  }
  return chain;
}

}  // namespace bellctx
