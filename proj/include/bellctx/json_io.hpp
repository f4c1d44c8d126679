// JSON file formats (UTF-8, exact rational strings). Tables are keyed maps;
// a missing cell is always an error, never an implicit zero. Emission is
// canonical: sorted keys, two-space indent, trailing newline — byte-identical
// for equal values.

#pragma once

#include <filesystem>
#include <string>

#include "bellctx/classicality.hpp"
#include "bellctx/mapping.hpp"
#include "bellctx/quantum.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace bellctx::io {

using json = nlohmann::json;

json load_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& value);
std::string dump(const json& value);  // canonical text form

/// The "type" tag of a document; throws errc::parse when absent.
std::string type_of(const json& value);

// ---- core model -----------------------------------------------------------

json to_json(const BellScenario& scenario);
BellScenario bell_scenario_from_json(const json& value);

json to_json(const BellCorrelation& correlation);
BellCorrelation correlation_from_json(const json& value);

json to_json(const CtxScenario& scenario);
CtxScenario ctx_scenario_from_json(const json& value);

json to_json(const CtxBehaviour& behaviour);
/// `scenario_override` supplies the scenario when the behaviour document
/// carries only a table (the two-file form of `check nc`).
CtxBehaviour behaviour_from_json(const json& value,
                                 const CtxScenario* scenario_override = nullptr);

json to_json(const PreparationEquivalence& equivalence);
PreparationEquivalence equivalence_from_json(const json& value);

// ---- mapping --------------------------------------------------------------

json to_json(const MappedBehaviour& mapped);

json to_json(const TauReduction& reduction);
TauReduction tau_reduction_from_json(const json& value);

// ---- certificates ---------------------------------------------------------

json to_json(const BellCorrelation& p, const LocalVerdict& verdict);
LocalVerdict local_verdict_from_json(const BellCorrelation& p, const json& value);

json to_json(const CtxBehaviour& q, const NCVerdict& verdict);
NCVerdict nc_verdict_from_json(const CtxBehaviour& q, const json& value);

// ---- quantum --------------------------------------------------------------

json to_json(const QuantumBellRealisation& realisation);
QuantumBellRealisation realisation_from_json(const json& value);

json to_json(const Assemblage& assemblage);
Assemblage assemblage_from_json(const json& value);

json to_json(const NumericCorrelation& correlation);
NumericCorrelation numeric_correlation_from_json(const json& value);

// ---- polytopes -------------------------------------------------------------

json to_json(const Polytope& polytope);

/// Plain-text facet listing: legend header, equality block, facet block, one
/// coefficient row per line in "c0 + sum c_i coord_i >= 0" order.
std::string facet_text(const Polytope& polytope);

}  // namespace bellctx::io
