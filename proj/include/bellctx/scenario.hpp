// Scenario descriptions: Bell scenarios, preparation labels, preparation
// equivalences and prepare-and-measure contextuality scenarios.
//
// Conventions used everywhere: inputs, outputs and measurement labels are
// 1-based; preparation labels are composite "a|x" symbols ordered
// lexicographically by (x, a).

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellctx/rational.hpp"

namespace bellctx {

struct BellScenario {
  std::vector<int> outcomes_A;  // A_x per input x
  std::vector<int> outcomes_B;  // B_y per input y

  int inputs_X() const { return static_cast<int>(outcomes_A.size()); }
  int inputs_Y() const { return static_cast<int>(outcomes_B.size()); }
  int norm_A() const;  // ||A|| = sum_x A_x
  int norm_B() const;  // ||B|| = sum_y B_y

  /// Throws on empty tuples or non-positive outcome counts.
  void validate() const;

  bool operator==(const BellScenario&) const = default;
};

/// The composite preparation symbol [a|x].
struct PrepLabel {
  int a = 0;
  int x = 0;

  // Lexicographic by (x, a): deterministic serialisation order.
  friend auto operator<=>(const PrepLabel& l, const PrepLabel& r) {
    if (auto c = l.x <=> r.x; c != 0) return c;
    return l.a <=> r.a;
  }
  friend bool operator==(const PrepLabel&, const PrepLabel&) = default;

  std::string str() const { return std::to_string(a) + "|" + std::to_string(x); }
  static PrepLabel parse(std::string_view text);
};

/// One operational equivalence between two preparation mixtures. Both sides
/// are probability distributions; a coefficient-zero preparation is simply
/// absent from its side.
struct PreparationEquivalence {
  std::map<PrepLabel, Rational> lhs;
  std::map<PrepLabel, Rational> rhs;

  void validate() const;  // positive coefficients, both sides sum to one

  bool operator==(const PreparationEquivalence&) const = default;
};

struct CtxScenario {
  std::vector<PrepLabel> preps;  // sorted lexicographically by (x, a)
  std::vector<int> outcomes_B;   // B_y per measurement y
  std::vector<PreparationEquivalence> equivalences;
  std::optional<std::vector<int>> index_A;  // Bell-side tuple used for indexing

  int num_preparations() const { return static_cast<int>(preps.size()); }
  int num_measurements() const { return static_cast<int>(outcomes_B.size()); }
  int norm_B() const;

  /// Position of a label in `preps`, or -1.
  int prep_index(const PrepLabel& label) const;

  void validate() const;

  bool operator==(const CtxScenario&) const = default;
};

/// Weights of an NS-form equivalence set: decompositions grouped by x with
/// coefficients p_A(a|x), recovered from a scenario's equivalence chain.
struct NsForm {
  // weights[x-1] maps a -> p_A(a|x), only over the appearing outcomes.
  std::vector<std::map<int, Rational>> weights;
  int inputs_X() const { return static_cast<int>(weights.size()); }
};

/// Checks that the scenario's equivalences are a connected chain of pairwise
/// equations between the per-x decompositions, each preparation appearing in
/// exactly one decomposition with the label's own x. Throws errc::not_ns_form
/// otherwise. Scenarios with a single x group and no equivalences are
/// rejected as well: the weights are not recoverable.
NsForm extract_ns_form(const CtxScenario& scenario);

}  // namespace bellctx
