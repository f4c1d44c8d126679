// The invertible map between Bell correlations and contextuality behaviours,
// together with the reduction and embedding machinery around it:
//
//   * bell_to_ctx / ctx_to_bell     the map and its inverse
//   * reduce_tau / embed_bell       removal and restoration of deterministic
//                                   inputs and zero-probability outcomes
//   * single_equivalence_normal_form
//   * embed_repeated_preparations   one-hypothetical-preparation scenarios
//                                   into NS-form scenarios via cloned labels
//   * interior_blend                mixing towards the uniform-Bob interior
//                                   point with fixed Alice marginals

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bellctx/behaviour.hpp"

namespace bellctx {

struct MappedBehaviour {
  CtxBehaviour behaviour;          // scenario carries NS(p_A) and index_A
  std::vector<int> index_A;        // the source Bell tuple A
};

enum class SignallingPolicy {
  reject,       // require full no-signalling (the bijection's domain)
  alice_only,   // require only a well-defined Alice marginal (diagnostics)
};

/// The forward map: q(b|[a|x],y) = p(a,b|x,y) / p_A(a|x) over the
/// preparations with p_A(a|x) > 0, target scenario (Z, Y, B, NS(p_A), {}).
MappedBehaviour bell_to_ctx(const BellCorrelation& p,
                            SignallingPolicy policy = SignallingPolicy::reject);

/// The inverse map: p(a,b|x,y) = p_A(a|x) q(b|[a|x],y) for appearing
/// outcomes, zero otherwise. `index_A` must dominate the appearing outcomes;
/// when omitted the scenario's own index_A is used.
BellCorrelation ctx_to_bell(const CtxBehaviour& q,
                            const std::optional<std::vector<int>>& index_A = std::nullopt);

inline BellCorrelation ctx_to_bell(const MappedBehaviour& m) {
  return ctx_to_bell(m.behaviour, m.index_A);
}

/// Relabelling performed by the tau reduction; applying it to the reduced
/// correlation reconstructs the original exactly.
struct RelabellingRecord {
  struct RemovedInput {
    int x = 0;               // original input index
    int certain_outcome = 0; // the outcome with marginal one
  };
  std::vector<RemovedInput> removed_inputs;   // ascending by x
  std::vector<int> surviving_inputs;          // original indices, ascending
  // outcome_order[i][k] = original outcome stored at reduced position k+1 for
  // surviving input i; the first reduced_A[i] entries carry positive marginal.
  std::vector<std::vector<int>> outcome_order;
  std::vector<int> original_A;
  std::vector<int> reduced_A;

  bool identity() const;
};

struct TauReduction {
  std::optional<BellCorrelation> reduced;  // empty iff fully deterministic
  RelabellingRecord record;
  bool fully_deterministic = false;
};

/// Removes Alice inputs with deterministic outcomes and outcomes with zero
/// marginal; all reduced Alice marginals lie strictly in (0,1).
TauReduction reduce_tau(const BellCorrelation& p);

/// Inverse of reduce_tau: re-inserts zero-probability outcomes and restores
/// removed inputs as (certain outcome) x (Bob marginal).
BellCorrelation embed_bell(const BellCorrelation& reduced, const RelabellingRecord& record);

struct NormalFormResult {
  PreparationEquivalence equivalence;
  bool vacuous = false;  // sides were identical; equivalence is empty
};

/// Rewrites an equivalence so each preparation occurs on at most one side:
/// subtract min(lhs, rhs) per label and renormalise by the common residual.
NormalFormResult single_equivalence_normal_form(const PreparationEquivalence& eq);

struct PrepEmbedding {
  CtxScenario scenario;    // NS-form equivalences over original + clone labels
  CtxBehaviour behaviour;  // rows copied onto clones
  // clone -> original label, for every freshly introduced preparation.
  std::map<PrepLabel, PrepLabel> clone_of;
  // decompositions after subtraction/renormalisation, in chain order.
  std::vector<std::map<PrepLabel, Rational>> decompositions;
};

/// Embeds a behaviour from a one-hypothetical-preparation scenario into a
/// larger scenario whose equivalences are NS-form: subtracts each
/// preparation's minimum coefficient across the decompositions, renormalises,
/// and splits preparations still shared between decompositions into clones
/// (fresh labels in decomposition order; the first occurrence keeps its
/// label).
PrepEmbedding embed_repeated_preparations(const CtxScenario& scenario, const CtxBehaviour& q);

/// p^n = (1/n) p_int + (1 - 1/n) p with p_int(a,b|x,y) = p_A(a|x)/B_y.
/// Requires full-support Alice marginals; preserves them exactly.
BellCorrelation interior_blend(const BellCorrelation& p, long n);

/// Relabels a scenario whose equivalences are NS-form (arbitrary labels)
/// to canonical [a|x] labels: x = decomposition position in chain order,
/// a = position within the decomposition. Returns the relabelled pair.
std::pair<CtxScenario, CtxBehaviour> assign_ns_labels(const CtxScenario& scenario,
                                                      const CtxBehaviour& q);

}  // namespace bellctx
