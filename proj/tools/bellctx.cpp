// bellctx — exact certification toolkit for Bell correlations and
// prepare-and-measure contextuality behaviours.
//
// Every subcommand prints a JSON report on stdout and a one-line human
// summary on stderr. Exit codes: 0 = completed with a verdict (non-member is
// a verdict, not a failure), 1 = input or validation error, 2 = enumeration
// budget exceeded, 3 = internal invariant failure.

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>

#include "bellctx/digest.hpp"
#include "bellctx/json_io.hpp"

namespace {

using namespace bellctx;
using io::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::vector<std::string> inputs;
  std::string behaviour_path;
  std::string output_path;
  std::string index_A;
  long blend_n = 0;
  long budget = 0;          // 0 = default / environment
  double tolerance = 1e-9;
  std::string snap_den = "1000000";
  int jobs = 1;
};

Budget effective_budget(const Options& opt) {
  Budget budget = Budget::from_env();
  if (opt.budget > 0) budget = budget.with_all(static_cast<std::size_t>(opt.budget));
  return budget;
}

std::vector<int> parse_index_tuple(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      out.push_back(std::stoi(token));
    } catch (const std::exception&) {
      fail(errc::parse, "bad --index-A entry '" + token + "'");
    }
  }
  if (out.empty()) fail(errc::parse, "--index-A must list at least one entry");
  return out;
}

json input_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return json{{"path", path}, {"sha256", sha256_hex(buffer.str())}};
}

class Report {
 public:
  Report(const std::string& command, const Options& opt) : opt_(opt) {
    body_["tool"] = "bellctx";
    body_["version"] = kVersion;
    body_["command"] = command;
    json inputs = json::array();
    for (const auto& path : opt.inputs) inputs.push_back(input_record(path));
    if (!opt.behaviour_path.empty()) inputs.push_back(input_record(opt.behaviour_path));
    body_["inputs"] = std::move(inputs);
    start_ = std::chrono::steady_clock::now();
  }

  json& body() { return body_; }

  void artifact(const json& value) {
    if (!opt_.output_path.empty()) {
      io::write_file(opt_.output_path, value);
      body_["output_path"] = opt_.output_path;
    } else {
      body_["result"] = value;
    }
  }

  void artifact_text(const std::string& text, const json& inline_result) {
    if (!opt_.output_path.empty()) {
      std::ofstream out(opt_.output_path);
      if (!out) fail(errc::io, "cannot write " + opt_.output_path);
      out << text;
      body_["output_path"] = opt_.output_path;
    }
    body_["result"] = inline_result;
  }

  int emit(const std::string& summary) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    // timing sits outside the deterministic region of the report
    body_["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    std::cout << io::dump(body_);
    std::cerr << summary << "\n";
    return 0;
  }

 private:
  const Options& opt_;
  json body_;
  std::chrono::steady_clock::time_point start_;
};

// ---- loading helpers ---------------------------------------------------------

BellCorrelation load_correlation(const std::string& path) {
  const json doc = io::load_file(path);
  if (io::type_of(doc) != "bell-correlation")
    fail(errc::parse, path + " is not a bell-correlation document");
  return io::correlation_from_json(doc);
}

CtxBehaviour load_behaviour_any(const std::string& path, const std::string& behaviour_path) {
  const json doc = io::load_file(path);
  const std::string type = io::type_of(doc);
  if (type == "ctx-behaviour" && behaviour_path.empty()) return io::behaviour_from_json(doc);
  if (type == "ctx-scenario") {
    if (behaviour_path.empty())
      fail(errc::parse, path + " is a scenario document; supply the table with --behaviour");
    const CtxScenario scenario = io::ctx_scenario_from_json(doc);
    return io::behaviour_from_json(io::load_file(behaviour_path), &scenario);
  }
  if (type == "ctx-behaviour") {
    const CtxBehaviour q = io::behaviour_from_json(doc);
    const CtxScenario scenario = q.scenario();
    return io::behaviour_from_json(io::load_file(behaviour_path), &scenario);
  }
  fail(errc::parse, path + " is neither a behaviour nor a scenario document");
}

// ---- subcommands ---------------------------------------------------------------

int run_validate(const Options& opt) {
  Report report("validate", opt);
  json results = json::array();
  bool all_valid = true;

  auto validate_one = [](const std::string& path) -> json {
    json entry{{"path", path}};
    try {
      const json doc = io::load_file(path);
      const std::string type = io::type_of(doc);
      entry["document_type"] = type;
      json violations = json::array();
      if (type == "bell-correlation") {
        try {
          io::correlation_from_json(doc);
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else if (type == "ctx-behaviour") {
        try {
          io::behaviour_from_json(doc);
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else if (type == "ctx-scenario") {
        try {
          io::ctx_scenario_from_json(doc);
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else if (type == "bell-scenario") {
        try {
          io::bell_scenario_from_json(doc);
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else if (type == "quantum-realisation") {
        try {
          io::realisation_from_json(doc).validate();
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else if (type == "assemblage") {
        try {
          io::assemblage_from_json(doc).validate();
        } catch (const Error& e) {
          violations.push_back(e.what());
        }
      } else {
        fail(errc::parse, "unknown document type '" + type + "'");
      }
      entry["valid"] = violations.empty();
      entry["violations"] = std::move(violations);
    } catch (const Error& e) {
      if (e.code() == errc::io || e.code() == errc::parse) throw;
      entry["valid"] = false;
      entry["violations"] = json::array({e.what()});
    }
    return entry;
  };

  if (opt.jobs > 1 && opt.inputs.size() > 1) {
    std::vector<std::future<json>> futures;
    for (const auto& path : opt.inputs)
      futures.push_back(std::async(std::launch::async, validate_one, path));
    for (auto& f : futures) {
      json entry = f.get();
      all_valid = all_valid && entry["valid"].get<bool>();
      results.push_back(std::move(entry));
    }
  } else {
    for (const auto& path : opt.inputs) {
      json entry = validate_one(path);
      all_valid = all_valid && entry["valid"].get<bool>();
      results.push_back(std::move(entry));
    }
  }
  report.body()["verdict"] = all_valid ? "valid" : "invalid";
  report.body()["results"] = std::move(results);
  return report.emit(all_valid ? "valid" : "invalid");
}

int run_map(const Options& opt) {
  Report report("map", opt);
  const BellCorrelation p = load_correlation(opt.inputs.front());
  const MappedBehaviour mapped = bell_to_ctx(p);
  report.body()["verdict"] = "mapped";
  report.body()["index_A"] = mapped.index_A;
  report.body()["preparations"] = mapped.behaviour.scenario().num_preparations();
  report.artifact(io::to_json(mapped));
  return report.emit("mapped to " + std::to_string(mapped.behaviour.scenario().num_preparations()) +
                     " preparations, index_A recorded");
}

int run_unmap(const Options& opt) {
  Report report("unmap", opt);
  const json doc = io::load_file(opt.inputs.front());
  const CtxBehaviour q = io::behaviour_from_json(doc);
  std::optional<std::vector<int>> index;
  if (!opt.index_A.empty()) index = parse_index_tuple(opt.index_A);
  const BellCorrelation p = ctx_to_bell(q, index);
  report.body()["verdict"] = "unmapped";
  report.body()["A"] = p.scenario().outcomes_A;
  report.body()["B"] = p.scenario().outcomes_B;
  report.artifact(io::to_json(p));
  return report.emit("unmapped into the Bell scenario");
}

int run_reduce(const Options& opt) {
  Report report("reduce", opt);
  const BellCorrelation p = load_correlation(opt.inputs.front());
  const TauReduction tau = reduce_tau(p);
  report.body()["verdict"] = tau.fully_deterministic ? "fully-deterministic" : "reduced";
  report.body()["removed_inputs"] = tau.record.removed_inputs.size();
  report.body()["reduced_A"] = tau.record.reduced_A;
  report.artifact(io::to_json(tau));
  return report.emit(tau.fully_deterministic
                         ? "every Alice input is deterministic; record only"
                         : "reduced; removed " + std::to_string(tau.record.removed_inputs.size()) +
                               " input(s)");
}

int run_embed_bell(const Options& opt) {
  Report report("embed-bell", opt);
  const TauReduction tau = io::tau_reduction_from_json(io::load_file(opt.inputs.front()));
  if (!tau.reduced)
    fail(errc::shape_mismatch,
         "reduction is flagged fully deterministic: Bob's data is not recoverable");
  const BellCorrelation p = embed_bell(*tau.reduced, tau.record);
  report.body()["verdict"] = "embedded";
  report.body()["A"] = p.scenario().outcomes_A;
  report.artifact(io::to_json(p));
  return report.emit("embedded back into the original scenario");
}

int run_normal_form(const Options& opt) {
  Report report("normal-form", opt);
  const json doc = io::load_file(opt.inputs.front());
  const std::string type = io::type_of(doc);
  if (type == "equivalence") {
    const PreparationEquivalence eq = io::equivalence_from_json(doc);
    const NormalFormResult result = single_equivalence_normal_form(eq);
    report.body()["verdict"] = result.vacuous ? "vacuous" : "normalised";
    json out = io::to_json(result.equivalence);
    out["vacuous"] = result.vacuous;
    report.artifact(out);
    return report.emit(result.vacuous ? "equivalence is vacuous" : "normal form computed");
  }
  if (type == "ctx-scenario") {
    CtxScenario s = io::ctx_scenario_from_json(doc);
    json results = json::array();
    std::vector<PreparationEquivalence> kept;
    for (const auto& eq : s.equivalences) {
      const NormalFormResult result = single_equivalence_normal_form(eq);
      json entry = io::to_json(result.equivalence);
      entry["vacuous"] = result.vacuous;
      results.push_back(std::move(entry));
      if (!result.vacuous) kept.push_back(result.equivalence);
    }
    s.equivalences = std::move(kept);
    report.body()["verdict"] = "normalised";
    report.body()["equivalences"] = std::move(results);
    report.artifact(io::to_json(s));
    return report.emit("normal forms computed for every equivalence");
  }
  fail(errc::parse, "normal-form expects an equivalence or ctx-scenario document");
}

int run_embed_preps(const Options& opt) {
  Report report("embed-preps", opt);
  const CtxBehaviour q = load_behaviour_any(opt.inputs.front(), opt.behaviour_path);
  const PrepEmbedding embedded = embed_repeated_preparations(q.scenario(), q);
  report.body()["verdict"] = "embedded";
  json label_map = json::object();
  for (const auto& [clone, original] : embedded.clone_of)
    label_map[clone.str()] = original.str();
  report.body()["label_map"] = std::move(label_map);
  json decs = json::array();
  for (const auto& d : embedded.decompositions) {
    json entry = json::object();
    for (const auto& [label, coeff] : d) entry[label.str()] = rational_str(coeff);
    decs.push_back(std::move(entry));
  }
  report.body()["decompositions"] = std::move(decs);
  report.artifact(io::to_json(embedded.behaviour));
  return report.emit("embedded with " + std::to_string(embedded.clone_of.size()) +
                     " cloned preparation(s)");
}

int run_blend(const Options& opt) {
  Report report("blend", opt);
  if (opt.blend_n < 1) fail(errc::parse, "--n must be a positive integer");
  const BellCorrelation p = load_correlation(opt.inputs.front());
  const BellCorrelation blended = interior_blend(p, opt.blend_n);
  report.body()["verdict"] = "blended";
  report.body()["n"] = opt.blend_n;
  report.artifact(io::to_json(blended));
  return report.emit("blended with weight 1/" + std::to_string(opt.blend_n) +
                     " towards the interior point");
}

int run_check(const std::string& what, const Options& opt) {
  Report report("check " + what, opt);
  const Budget budget = effective_budget(opt);

  if (what == "ns") {
    const BellCorrelation p = load_correlation(opt.inputs.front());
    const auto verdict = check_no_signalling(p);
    report.body()["verdict"] = verdict.no_signalling ? "no-signalling" : "signalling";
    report.body()["max_residual"] = rational_str(verdict.max_residual);
    return report.emit(verdict.no_signalling
                           ? "no-signalling (residual 0)"
                           : "signalling, residual " + rational_str(verdict.max_residual));
  }
  if (what == "local") {
    const BellCorrelation p = load_correlation(opt.inputs.front());
    const LocalVerdict verdict = check_local(p, budget);
    const VerifyReport recheck = verify_certificate(p, verdict, budget);
    if (!recheck.ok) fail(errc::internal, "certificate failed re-verification");
    report.body()["verdict"] = verdict.member ? "member" : "non-member";
    if (!verdict.member)
      report.body()["violation"] = rational_str(verdict.inequality->violation);
    report.artifact(io::to_json(p, verdict));
    return report.emit(verdict.member ? "local (member); witness attached"
                                      : "non-local; violated inequality attached");
  }
  if (what == "nc") {
    const CtxBehaviour q = load_behaviour_any(opt.inputs.front(), opt.behaviour_path);
    const NCVerdict verdict = check_noncontextual(q, budget);
    const VerifyReport recheck = verify_certificate(q, verdict, budget);
    if (!recheck.ok) fail(errc::internal, "certificate failed re-verification");
    report.body()["verdict"] = verdict.member ? "member" : "non-member";
    if (!verdict.member)
      report.body()["violation"] = rational_str(verdict.inequality->violation);
    report.artifact(io::to_json(q, verdict));
    return report.emit(verdict.member ? "non-contextual (member); ontic model attached"
                                      : "contextual; violated inequality attached");
  }
  if (what == "ctxset") {
    const CtxBehaviour q = load_behaviour_any(opt.inputs.front(), opt.behaviour_path);
    const auto residuals = equivalence_residuals(q);
    Rational worst(0);
    json list = json::array();
    for (const Rational& r : residuals) {
      list.push_back(rational_str(r));
      worst = std::max(worst, r);
    }
    report.body()["verdict"] = worst == 0 ? "member" : "non-member";
    report.body()["max_residual"] = rational_str(worst);
    report.body()["residuals"] = std::move(list);
    return report.emit(worst == 0 ? "inside the contextual set (all residuals exactly zero)"
                                  : "outside the contextual set, residual " + rational_str(worst));
  }
  fail(errc::parse, "unknown check '" + what + "'");
}

int run_facets(const Options& opt) {
  Report report("facets", opt);
  const Budget budget = effective_budget(opt);
  const json doc = io::load_file(opt.inputs.front());
  const std::string type = io::type_of(doc);
  Polytope polytope;
  if (type == "ctx-scenario" || type == "ctx-behaviour") {
    polytope = nc_polytope(io::ctx_scenario_from_json(doc), budget);
  } else if (type == "bell-scenario") {
    polytope = local_polytope(io::bell_scenario_from_json(doc), budget);
  } else {
    fail(errc::parse, "facets expects a ctx-scenario or bell-scenario document");
  }
  int positivity = 0;
  for (const auto& facet : polytope.hrep.facets)
    if (is_positivity_facet(polytope, facet)) ++positivity;
  report.body()["verdict"] = "enumerated";
  report.body()["facet_count"] = polytope.hrep.facets.size();
  report.body()["equality_count"] = polytope.hrep.equalities.size();
  report.body()["positivity_count"] = positivity;
  report.body()["nontrivial_count"] =
      static_cast<int>(polytope.hrep.facets.size()) - positivity;
  report.body()["vertex_count"] = polytope.vertices.size();
  report.artifact_text(io::facet_text(polytope), io::to_json(polytope));
  return report.emit(std::to_string(polytope.hrep.facets.size()) + " facets (" +
                     std::to_string(positivity) + " positivity), " +
                     std::to_string(polytope.hrep.equalities.size()) + " equalities");
}

int run_vertices(const Options& opt) {
  Report report("vertices", opt);
  const Budget budget = effective_budget(opt);
  const json doc = io::load_file(opt.inputs.front());
  const std::string type = io::type_of(doc);
  if (type == "bell-scenario") {
    const BellScenario s = io::bell_scenario_from_json(doc);
    const auto strategies = local_strategies(s, budget);
    report.body()["verdict"] = "enumerated";
    report.body()["vertex_count"] = strategies.size();
    json list = json::array();
    for (const auto& st : strategies)
      list.push_back(json{{"alice", st.alice}, {"bob", st.bob}});
    report.artifact(json{{"type", "local-vertices"},
                         {"A", s.outcomes_A},
                         {"B", s.outcomes_B},
                         {"strategies", std::move(list)}});
    return report.emit(std::to_string(strategies.size()) + " deterministic vertices");
  }
  if (type == "ctx-scenario" || type == "ctx-behaviour") {
    const Polytope polytope = nc_polytope(io::ctx_scenario_from_json(doc), budget);
    report.body()["verdict"] = "enumerated";
    report.body()["vertex_count"] = polytope.vertices.size();
    report.artifact(io::to_json(polytope));
    return report.emit(std::to_string(polytope.vertices.size()) +
                       " vertices of the non-contextual polytope");
  }
  fail(errc::parse, "vertices expects a scenario document");
}

int run_assemblage(const Options& opt) {
  Report report("assemblage", opt);
  const QuantumBellRealisation r =
      io::realisation_from_json(io::load_file(opt.inputs.front()));
  QuantumTolerances tol;
  tol.psd = opt.tolerance;
  tol.completeness = opt.tolerance;
  tol.trace = opt.tolerance;
  const auto [asm_out, behaviour] = assemblage_from_bell(r, tol);
  report.body()["verdict"] = "constructed";
  report.body()["averaging_residual"] = asm_out.averaging_residual();
  json q = json::object();
  std::size_t cell = 0;
  for (const PrepLabel& prep : behaviour.preps)
    for (std::size_t y = 1; y <= behaviour.outcomes_B.size(); ++y)
      for (int b = 1; b <= behaviour.outcomes_B[y - 1]; ++b)
        q[prep.str() + "," + std::to_string(y) + "," + std::to_string(b)] =
            behaviour.table[cell++];
  report.body()["behaviour"] = std::move(q);
  report.artifact(io::to_json(asm_out));
  return report.emit("assemblage extracted; averaging residual " +
                     std::to_string(asm_out.averaging_residual()));
}

int run_hjw(const Options& opt) {
  Report report("hjw", opt);
  const Assemblage asm_in = io::assemblage_from_json(io::load_file(opt.inputs.front()));
  QuantumTolerances tol;
  tol.eps_rank = 1e-10;
  const HjwRealisation hjw = hjw_construct(asm_in, tol);
  const SteeringResiduals residuals = verify_steering(hjw.psi, hjw.M, asm_in);
  report.body()["verdict"] = "constructed";
  report.body()["support_dim"] = hjw.support_dim;
  report.body()["state_residual"] = residuals.state_residual;
  report.body()["completeness_residual"] = residuals.completeness_residual;

  json psi = json::array();
  for (Eigen::Index i = 0; i < hjw.psi.size(); ++i)
    psi.push_back(json::array({hjw.psi(i).real(), hjw.psi(i).imag()}));
  json povms = json::array();
  for (const auto& povm : hjw.M) {
    json effects = json::array();
    for (const auto& effect : povm) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < effect.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < effect.cols(); ++j)
          row.push_back(json::array({effect(i, j).real(), effect(i, j).imag()}));
        rows.push_back(std::move(row));
      }
      effects.push_back(std::move(rows));
    }
    povms.push_back(std::move(effects));
  }
  report.artifact(json{{"type", "hjw-realisation"},
                       {"support_dim", hjw.support_dim},
                       {"psi", std::move(psi)},
                       {"M", std::move(povms)},
                       {"eigenvalues", hjw.eigenvalues}});
  return report.emit("construction verified; state residual " +
                     std::to_string(residuals.state_residual));
}

int run_snap(const Options& opt) {
  Report report("snap", opt);
  const json doc = io::load_file(opt.inputs.front());
  const std::string type = io::type_of(doc);
  NumericCorrelation table;
  if (type == "bell-correlation-float") {
    table = io::numeric_correlation_from_json(doc);
  } else if (type == "quantum-realisation") {
    table = realisation_to_tables(io::realisation_from_json(doc));
  } else {
    fail(errc::parse, "snap expects a float correlation or a quantum realisation");
  }
  const Int max_den(opt.snap_den);
  const auto snapped = snap_correlation(table, max_den, opt.tolerance);
  if (!snapped) {
    report.body()["verdict"] = "not-snapped";
    return report.emit("no rational table within tolerance at denominator bound " +
                       opt.snap_den);
  }
  report.body()["verdict"] = "snapped";
  report.artifact(io::to_json(*snapped));
  return report.emit("snapped to exact rationals");
}

int run_verify_cert(const Options& opt) {
  Report report("verify-cert", opt);
  const json object_doc = io::load_file(opt.inputs[0]);
  const json cert_doc = io::load_file(opt.inputs[1]);
  const std::string object_type = io::type_of(object_doc);
  VerifyReport result;
  if (object_type == "bell-correlation") {
    const BellCorrelation p = io::correlation_from_json(object_doc);
    result = verify_certificate(p, io::local_verdict_from_json(p, cert_doc),
                                effective_budget(opt));
  } else if (object_type == "ctx-behaviour") {
    const CtxBehaviour q = io::behaviour_from_json(object_doc);
    result =
        verify_certificate(q, io::nc_verdict_from_json(q, cert_doc), effective_budget(opt));
  } else {
    fail(errc::parse, "verify-cert expects a correlation or behaviour object");
  }
  report.body()["verdict"] = result.ok ? "verified" : "rejected";
  report.body()["failures"] = result.failures;
  report.body()["checks"] = json{{"normalisations", result.normalisations},
                                 {"equivalence_equalities", result.equivalence_equalities},
                                 {"data_equalities", result.data_equalities},
                                 {"vertex_checks", result.vertex_checks}};
  return report.emit(result.ok ? "certificate verified"
                               : "certificate rejected: " +
                                     (result.failures.empty() ? std::string("no detail")
                                                              : result.failures.front()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification toolkit for Bell and contextuality scenarios"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config");
  app.require_subcommand(1);

  Options opt;
  std::string check_what;

  auto add_common = [&](CLI::App* cmd, int inputs, bool budgeted = false) {
    cmd->add_option("inputs", opt.inputs)->expected(inputs)->required();
    cmd->add_option("--output", opt.output_path, "write the result artifact to this path");
    if (budgeted)
      cmd->add_option("--budget", opt.budget, "cap enumeration sizes (atlas, vertices, rays)");
  };

  add_common(app.add_subcommand("validate", "validate one or more documents"), -1);
  app.get_subcommand("validate")->add_option("--jobs", opt.jobs, "parallel batch validation");

  add_common(app.add_subcommand("map", "Bell correlation -> contextuality behaviour"), 1);
  auto* unmap = app.add_subcommand("unmap", "contextuality behaviour -> Bell correlation");
  add_common(unmap, 1);
  unmap->add_option("--index-A", opt.index_A, "outcome counts a1,a2,... of the target scenario");

  add_common(app.add_subcommand("reduce", "remove deterministic inputs and dead outcomes"), 1);
  add_common(app.add_subcommand("embed-bell", "invert a reduction from its record"), 1);
  add_common(app.add_subcommand("normal-form",
                                "rewrite equivalences so labels appear on one side only"),
             1);
  auto* embed_preps = app.add_subcommand(
      "embed-preps", "split repeated preparations into clones (NS-form embedding)");
  add_common(embed_preps, 1);
  embed_preps->add_option("--behaviour", opt.behaviour_path,
                          "behaviour table when the input is a scenario document");

  auto* blend = app.add_subcommand("blend", "mix towards the uniform-Bob interior point");
  add_common(blend, 1);
  blend->add_option("--n", opt.blend_n, "blend order: weight 1/n on the interior point")
      ->required();

  auto* check = app.add_subcommand("check", "membership and residual verdicts");
  check->add_option("what", check_what, "ns | local | nc | ctxset")->required();
  check->add_option("inputs", opt.inputs)->expected(1)->required();
  check->add_option("--behaviour", opt.behaviour_path,
                    "behaviour table when the input is a scenario document");
  check->add_option("--output", opt.output_path, "write the certificate to this path");
  check->add_option("--budget", opt.budget, "cap enumeration sizes");

  add_common(app.add_subcommand("facets", "facet enumeration (H-representation)"), 1, true);
  add_common(app.add_subcommand("vertices", "vertex enumeration (V-representation)"), 1, true);

  auto* assemblage = app.add_subcommand("assemblage", "steered assemblage of a realisation");
  add_common(assemblage, 1);
  assemblage->add_option("--tolerance", opt.tolerance, "validation tolerance");

  auto* hjw = app.add_subcommand("hjw", "purification + POVMs realising an assemblage");
  add_common(hjw, 1);
  hjw->add_option("--tolerance", opt.tolerance, "validation tolerance");

  auto* snap = app.add_subcommand("snap", "snap a float table to exact rationals");
  add_common(snap, 1);
  snap->add_option("--snap-den", opt.snap_den, "denominator bound");
  snap->add_option("--tolerance", opt.tolerance, "snap tolerance");

  auto* verify = app.add_subcommand("verify-cert", "re-check a certificate independently");
  verify->add_option("inputs", opt.inputs)->expected(2)->required();
  verify->add_option("--budget", opt.budget, "cap enumeration sizes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("validate")) return run_validate(opt);
    if (app.got_subcommand("map")) return run_map(opt);
    if (app.got_subcommand("unmap")) return run_unmap(opt);
    if (app.got_subcommand("reduce")) return run_reduce(opt);
    if (app.got_subcommand("embed-bell")) return run_embed_bell(opt);
    if (app.got_subcommand("normal-form")) return run_normal_form(opt);
    if (app.got_subcommand("embed-preps")) return run_embed_preps(opt);
    if (app.got_subcommand("blend")) return run_blend(opt);
    if (app.got_subcommand("check")) return run_check(check_what, opt);
    if (app.got_subcommand("facets")) return run_facets(opt);
    if (app.got_subcommand("vertices")) return run_vertices(opt);
    if (app.got_subcommand("assemblage")) return run_assemblage(opt);
    if (app.got_subcommand("hjw")) return run_hjw(opt);
    if (app.got_subcommand("snap")) return run_snap(opt);
    if (app.got_subcommand("verify-cert")) return run_verify_cert(opt);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == errc::budget_exceeded) return 2;
    if (e.code() == errc::internal) return 3;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
