#include "bellctx/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace bellctx::io {

namespace {

[[noreturn]] void bad(const std::string& message) { fail(errc::parse, message); }

const json& field(const json& value, const char* name) {
  const auto it = value.find(name);
  if (it == value.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<int> int_list(const json& value, const char* name) {
  if (!value.is_array()) bad(std::string("field '") + name + "' must be an array");
  std::vector<int> out;
  for (const auto& v : value) {
    if (!v.is_number_integer()) bad(std::string("field '") + name + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

Rational rational_field(const json& value, const std::string& where) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (!value.is_string()) bad("rational at " + where + " must be a string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const Error& e) {
    bad(std::string(e.what()) + " at " + where);
  }
}

// Splits "head,i,j,..." from the right into `tail_parts` integers plus the
// remaining head (which may itself contain commas or '|').
std::pair<std::string, std::vector<int>> split_key(const std::string& key,
                                                   std::size_t tail_parts,
                                                   const std::string& where) {
  std::vector<int> tail(tail_parts);
  std::string rest = key;
  for (std::size_t i = tail_parts; i-- > 0;) {
    const auto cut = rest.rfind(',');
    if (cut == std::string::npos) bad("malformed table key '" + key + "' in " + where);
    try {
      tail[i] = std::stoi(rest.substr(cut + 1));
    } catch (const std::exception&) {
      bad("malformed table key '" + key + "' in " + where);
    }
    rest.erase(cut);
  }
  return {rest, tail};
}

std::string join_ints(std::initializer_list<int> values) {
  std::string out;
  for (int v : values) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(v);
  }
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) bad("matrix at " + where + " must be a nonempty array");
  const std::size_t rows = value.size();
  const std::size_t cols = value.front().size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!value[i].is_array() || value[i].size() != cols) bad("ragged matrix at " + where);
    for (std::size_t j = 0; j < cols; ++j) {
      const json& cell = value[i][j];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        bad("matrix entries at " + where + " must be [re, im] pairs");
      m(i, j) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

}  // namespace

json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot read " + path.string());
  json value;
  try {
    in >> value;
  } catch (const json::exception& e) {
    fail(errc::parse, path.string() + ": " + e.what());
  }
  if (!value.is_object()) fail(errc::parse, path.string() + ": document must be a JSON object");
  return value;
}

void write_file(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) fail(errc::io, "cannot write " + path.string());
  out << dump(value);
  if (!out) fail(errc::io, "short write to " + path.string());
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

std::string type_of(const json& value) {
  const json& t = field(value, "type");
  if (!t.is_string()) bad("'type' must be a string");
  return t.get<std::string>();
}

// ---- core model -------------------------------------------------------------

json to_json(const BellScenario& scenario) {
  return json{{"type", "bell-scenario"}, {"A", scenario.outcomes_A}, {"B", scenario.outcomes_B}};
}

BellScenario bell_scenario_from_json(const json& value) {
  BellScenario s{int_list(field(value, "A"), "A"), int_list(field(value, "B"), "B")};
  s.validate();
  return s;
}

json to_json(const BellCorrelation& correlation) {
  const BellScenario& s = correlation.scenario();
  json table = json::object();
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b)
          table[join_ints({a, b, x, y})] = rational_str(correlation.at(a, b, x, y));
  return json{{"type", "bell-correlation"},
              {"A", s.outcomes_A},
              {"B", s.outcomes_B},
              {"table", std::move(table)}};
}

BellCorrelation correlation_from_json(const json& value) {
  BellScenario s{int_list(field(value, "A"), "A"), int_list(field(value, "B"), "B")};
  s.validate();
  const json& table = field(value, "table");
  if (!table.is_object()) bad("'table' must be an object");

  const std::size_t cells = static_cast<std::size_t>(s.norm_A()) * s.norm_B();
  std::vector<Rational> flat(cells);
  std::vector<bool> seen(cells, false);
  std::vector<int> off_A(s.inputs_X(), 0), off_B(s.inputs_Y(), 0);
  for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + s.outcomes_A[i - 1];
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];

  for (const auto& [key, cell] : table.items()) {
    const auto [head, tail] = split_key(key, 3, "correlation table");
    int a = 0;
    try {
      a = std::stoi(head);
    } catch (const std::exception&) {
      bad("malformed table key '" + key + "'");
    }
    const int b = tail[0], x = tail[1], y = tail[2];
    if (x < 1 || x > s.inputs_X() || y < 1 || y > s.inputs_Y() || a < 1 ||
        a > s.outcomes_A[x - 1] || b < 1 || b > s.outcomes_B[y - 1])
      fail(errc::malformed_table, "cell (" + key + ") is outside the scenario");
    const std::size_t idx =
        static_cast<std::size_t>(off_A[x - 1] + a - 1) * s.norm_B() + off_B[y - 1] + b - 1;
    seen[idx] = true;
    flat[idx] = rational_field(cell, "cell (" + key + ")");
  }
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
          const std::size_t idx =
              static_cast<std::size_t>(off_A[x - 1] + a - 1) * s.norm_B() + off_B[y - 1] + b - 1;
          if (!seen[idx])
            fail(errc::malformed_table, "missing cell (" + join_ints({a, b, x, y}) + ")");
        }
  return BellCorrelation::from_table(std::move(s), std::move(flat));
}

namespace {

json equivalence_to_json_value(const PreparationEquivalence& eq) {
  json lhs = json::object(), rhs = json::object();
  for (const auto& [label, coeff] : eq.lhs) lhs[label.str()] = rational_str(coeff);
  for (const auto& [label, coeff] : eq.rhs) rhs[label.str()] = rational_str(coeff);
  return json{{"lhs", std::move(lhs)}, {"rhs", std::move(rhs)}};
}

PreparationEquivalence equivalence_from_json_value(const json& value) {
  PreparationEquivalence eq;
  for (const auto& [name, side] : {std::pair{"lhs", &eq.lhs}, std::pair{"rhs", &eq.rhs}}) {
    const json& obj = field(value, name);
    if (!obj.is_object()) bad(std::string("equivalence '") + name + "' must be an object");
    for (const auto& [key, coeff] : obj.items())
      (*side)[PrepLabel::parse(key)] = rational_field(coeff, "equivalence " + key);
  }
  eq.validate();
  return eq;
}

json scenario_fields(const CtxScenario& s) {
  json preps = json::array();
  for (const auto& label : s.preps) preps.push_back(label.str());
  json eqs = json::array();
  for (const auto& eq : s.equivalences) eqs.push_back(equivalence_to_json_value(eq));
  json out{{"preps", std::move(preps)}, {"B", s.outcomes_B}, {"equivalences", std::move(eqs)}};
  if (s.index_A) out["index_A"] = *s.index_A;
  return out;
}

CtxScenario scenario_from_fields(const json& value) {
  CtxScenario s;
  const json& preps = field(value, "preps");
  if (!preps.is_array()) bad("'preps' must be an array");
  for (const auto& label : preps) {
    if (!label.is_string()) bad("preparation labels must be strings");
    s.preps.push_back(PrepLabel::parse(label.get<std::string>()));
  }
  s.outcomes_B = int_list(field(value, "B"), "B");
  const json& eqs = field(value, "equivalences");
  if (!eqs.is_array()) bad("'equivalences' must be an array");
  for (const auto& eq : eqs) s.equivalences.push_back(equivalence_from_json_value(eq));
  if (value.contains("index_A")) s.index_A = int_list(value["index_A"], "index_A");
  s.validate();
  return s;
}

}  // namespace

json to_json(const CtxScenario& scenario) {
  json out = scenario_fields(scenario);
  out["type"] = "ctx-scenario";
  return out;
}

CtxScenario ctx_scenario_from_json(const json& value) { return scenario_from_fields(value); }

json to_json(const CtxBehaviour& behaviour) {
  const CtxScenario& s = behaviour.scenario();
  json out = scenario_fields(s);
  out["type"] = "ctx-behaviour";
  json table = json::object();
  for (int p = 0; p < s.num_preparations(); ++p)
    for (int y = 1; y <= s.num_measurements(); ++y)
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b)
        table[s.preps[p].str() + "," + std::to_string(y) + "," + std::to_string(b)] =
            rational_str(behaviour.at(p, y, b));
  out["table"] = std::move(table);
  return out;
}

CtxBehaviour behaviour_from_json(const json& value, const CtxScenario* scenario_override) {
  CtxScenario s;
  if (scenario_override && !value.contains("preps")) {
    s = *scenario_override;
  } else {
    s = scenario_from_fields(value);
    if (scenario_override) {
      // index_A may come from either document; everything else must agree
      CtxScenario a = s, b = *scenario_override;
      const auto index = a.index_A ? a.index_A : b.index_A;
      a.index_A.reset();
      b.index_A.reset();
      if (!(a == b))
        fail(errc::shape_mismatch, "behaviour document disagrees with the scenario document");
      s.index_A = index;
    }
  }
  const json& table = field(value, "table");
  if (!table.is_object()) bad("'table' must be an object");

  const std::size_t cells = static_cast<std::size_t>(s.num_preparations()) * s.norm_B();
  std::vector<Rational> flat(cells);
  std::vector<bool> seen(cells, false);
  std::vector<int> off_B(s.num_measurements(), 0);
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];

  for (const auto& [key, cell] : table.items()) {
    const auto [head, tail] = split_key(key, 2, "behaviour table");
    const PrepLabel label = PrepLabel::parse(head);
    const int prep = s.prep_index(label);
    const int y = tail[0], b = tail[1];
    if (prep < 0 || y < 1 || y > s.num_measurements() || b < 1 || b > s.outcomes_B[y - 1])
      fail(errc::malformed_table, "cell (" + key + ") is outside the scenario");
    const std::size_t idx = static_cast<std::size_t>(prep) * s.norm_B() + off_B[y - 1] + b - 1;
    seen[idx] = true;
    flat[idx] = rational_field(cell, "cell (" + key + ")");
  }
  for (int p = 0; p < s.num_preparations(); ++p)
    for (int y = 1; y <= s.num_measurements(); ++y)
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
        const std::size_t idx = static_cast<std::size_t>(p) * s.norm_B() + off_B[y - 1] + b - 1;
        if (!seen[idx])
          fail(errc::malformed_table, "missing cell (" + s.preps[p].str() + "," +
                                          std::to_string(y) + "," + std::to_string(b) + ")");
      }
  return CtxBehaviour::from_table(std::move(s), std::move(flat));
}

json to_json(const PreparationEquivalence& equivalence) {
  json out = equivalence_to_json_value(equivalence);
  out["type"] = "equivalence";
  return out;
}

PreparationEquivalence equivalence_from_json(const json& value) {
  return equivalence_from_json_value(value);
}

// ---- mapping ----------------------------------------------------------------

json to_json(const MappedBehaviour& mapped) {
  json out = to_json(mapped.behaviour);
  out["index_A"] = mapped.index_A;  // mandatory for mapped behaviours
  return out;
}

json to_json(const TauReduction& reduction) {
  const RelabellingRecord& r = reduction.record;
  json removed = json::array();
  for (const auto& ri : r.removed_inputs)
    removed.push_back(json{{"x", ri.x}, {"outcome", ri.certain_outcome}});
  json record{{"removed_inputs", std::move(removed)},
              {"surviving_inputs", r.surviving_inputs},
              {"outcome_order", r.outcome_order},
              {"original_A", r.original_A},
              {"reduced_A", r.reduced_A}};
  json out{{"type", "tau-reduction"},
           {"fully_deterministic", reduction.fully_deterministic},
           {"record", std::move(record)}};
  if (reduction.reduced) out["reduced"] = to_json(*reduction.reduced);
  return out;
}

TauReduction tau_reduction_from_json(const json& value) {
  TauReduction out;
  out.fully_deterministic = field(value, "fully_deterministic").get<bool>();
  const json& record = field(value, "record");
  for (const auto& ri : field(record, "removed_inputs"))
    out.record.removed_inputs.push_back(
        {field(ri, "x").get<int>(), field(ri, "outcome").get<int>()});
  out.record.surviving_inputs = int_list(field(record, "surviving_inputs"), "surviving_inputs");
  for (const auto& order : field(record, "outcome_order"))
    out.record.outcome_order.push_back(int_list(order, "outcome_order"));
  out.record.original_A = int_list(field(record, "original_A"), "original_A");
  out.record.reduced_A = int_list(field(record, "reduced_A"), "reduced_A");
  if (value.contains("reduced")) out.reduced = correlation_from_json(value["reduced"]);
  if (!out.fully_deterministic && !out.reduced)
    bad("tau-reduction without a reduced correlation must be flagged fully_deterministic");
  return out;
}

// ---- certificates -----------------------------------------------------------

json to_json(const BellCorrelation& p, const LocalVerdict& verdict) {
  json out{{"type", "certificate"}, {"kind", "local"}};
  if (verdict.member) {
    out["verdict"] = "member";
    json weights = json::array();
    for (const auto& [strategy, weight] : verdict.weights)
      weights.push_back(json{{"alice", strategy.alice},
                             {"bob", strategy.bob},
                             {"weight", rational_str(weight)}});
    out["weights"] = std::move(weights);
    return out;
  }
  out["verdict"] = "non-member";
  const BellInequality& ineq = verdict.inequality.value();
  const BellScenario& s = p.scenario();
  json coeffs = json::object();
  std::size_t cell = 0;
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
          if (ineq.coeffs[cell] != 0)
            coeffs[join_ints({a, b, x, y})] = rational_str(ineq.coeffs[cell]);
          ++cell;
        }
  out["coefficients"] = std::move(coeffs);
  out["bound"] = rational_str(ineq.bound);
  out["violation"] = rational_str(ineq.violation);
  return out;
}

LocalVerdict local_verdict_from_json(const BellCorrelation& p, const json& value) {
  if (type_of(value) != "certificate" || field(value, "kind").get<std::string>() != "local")
    bad("not a local certificate");
  LocalVerdict verdict;
  const std::string kind = field(value, "verdict").get<std::string>();
  if (kind == "member") {
    verdict.member = true;
    for (const auto& w : field(value, "weights")) {
      DeterministicStrategy strategy{int_list(field(w, "alice"), "alice"),
                                     int_list(field(w, "bob"), "bob")};
      verdict.weights.emplace_back(std::move(strategy),
                                   rational_field(field(w, "weight"), "weight"));
    }
    return verdict;
  }
  if (kind != "non-member") bad("verdict must be member or non-member");
  const BellScenario& s = p.scenario();
  BellInequality ineq;
  ineq.coeffs.assign(p.raw().size(), Rational(0));
  std::vector<int> off_A(s.inputs_X(), 0), off_B(s.inputs_Y(), 0);
  for (std::size_t i = 1; i < off_A.size(); ++i) off_A[i] = off_A[i - 1] + s.outcomes_A[i - 1];
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];
  for (const auto& [key, coeff] : field(value, "coefficients").items()) {
    const auto [head, tail] = split_key(key, 3, "coefficients");
    int a = 0;
    try {
      a = std::stoi(head);
    } catch (const std::exception&) {
      bad("malformed coefficient key '" + key + "'");
    }
    const int b = tail[0], x = tail[1], y = tail[2];
    if (x < 1 || x > s.inputs_X() || y < 1 || y > s.inputs_Y() || a < 1 ||
        a > s.outcomes_A[x - 1] || b < 1 || b > s.outcomes_B[y - 1])
      bad("coefficient key (" + key + ") is outside the scenario");
    ineq.coeffs[static_cast<std::size_t>(off_A[x - 1] + a - 1) * s.norm_B() + off_B[y - 1] + b -
                1] = rational_field(coeff, key);
  }
  ineq.bound = rational_field(field(value, "bound"), "bound");
  ineq.violation = rational_field(field(value, "violation"), "violation");
  verdict.inequality = std::move(ineq);
  return verdict;
}

json to_json(const CtxBehaviour& q, const NCVerdict& verdict) {
  json out{{"type", "certificate"}, {"kind", "nc"}};
  const CtxScenario& s = q.scenario();
  if (verdict.member) {
    out["verdict"] = "member";
    const OnticModel& model = verdict.model.value();
    out["lambdas"] = model.responses;
    json mu = json::object();
    for (std::size_t p = 0; p < model.mu.size(); ++p) {
      json row = json::array();
      for (const Rational& v : model.mu[p]) row.push_back(rational_str(v));
      mu[s.preps[p].str()] = std::move(row);
    }
    out["mu"] = std::move(mu);
    return out;
  }
  out["verdict"] = "non-member";
  const NCInequality& ineq = verdict.inequality.value();
  json coeffs = json::object();
  std::size_t cell = 0;
  for (int p = 0; p < s.num_preparations(); ++p)
    for (int y = 1; y <= s.num_measurements(); ++y)
      for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
        if (ineq.coeffs[cell] != 0)
          coeffs[s.preps[p].str() + "," + std::to_string(y) + "," + std::to_string(b)] =
              rational_str(ineq.coeffs[cell]);
        ++cell;
      }
  out["coefficients"] = std::move(coeffs);
  out["bound"] = rational_str(ineq.bound);
  out["violation"] = rational_str(ineq.violation);
  return out;
}

NCVerdict nc_verdict_from_json(const CtxBehaviour& q, const json& value) {
  if (type_of(value) != "certificate" || field(value, "kind").get<std::string>() != "nc")
    bad("not a noncontextuality certificate");
  NCVerdict verdict;
  const CtxScenario& s = q.scenario();
  const std::string kind = field(value, "verdict").get<std::string>();
  if (kind == "member") {
    verdict.member = true;
    OnticModel model;
    for (const auto& lambda : field(value, "lambdas"))
      model.responses.push_back(int_list(lambda, "lambdas"));
    const json& mu = field(value, "mu");
    model.mu.resize(s.preps.size());
    std::set<std::string> expected;
    for (const auto& label : s.preps) expected.insert(label.str());
    for (const auto& [key, row] : mu.items()) {
      if (!expected.count(key)) bad("mu row for unknown preparation " + key);
      const int prep = s.prep_index(PrepLabel::parse(key));
      for (const auto& v : row) model.mu[prep].push_back(rational_field(v, "mu " + key));
    }
    verdict.model = std::move(model);
    return verdict;
  }
  if (kind != "non-member") bad("verdict must be member or non-member");
  NCInequality ineq;
  ineq.coeffs.assign(q.raw().size(), Rational(0));
  std::vector<int> off_B(s.num_measurements(), 0);
  for (std::size_t i = 1; i < off_B.size(); ++i) off_B[i] = off_B[i - 1] + s.outcomes_B[i - 1];
  for (const auto& [key, coeff] : field(value, "coefficients").items()) {
    const auto [head, tail] = split_key(key, 2, "coefficients");
    const int prep = s.prep_index(PrepLabel::parse(head));
    const int y = tail[0], b = tail[1];
    if (prep < 0 || y < 1 || y > s.num_measurements() || b < 1 || b > s.outcomes_B[y - 1])
      bad("coefficient key (" + key + ") is outside the scenario");
    ineq.coeffs[static_cast<std::size_t>(prep) * s.norm_B() + off_B[y - 1] + b - 1] =
        rational_field(coeff, key);
  }
  ineq.bound = rational_field(field(value, "bound"), "bound");
  ineq.violation = rational_field(field(value, "violation"), "violation");
  verdict.inequality = std::move(ineq);
  return verdict;
}

// ---- quantum ------------------------------------------------------------------

namespace {

json povm_family_to_json(const std::vector<std::vector<ComplexMatrix>>& family) {
  json out = json::array();
  for (const auto& povm : family) {
    json effects = json::array();
    for (const auto& effect : povm) effects.push_back(matrix_to_json(effect));
    out.push_back(std::move(effects));
  }
  return out;
}

std::vector<std::vector<ComplexMatrix>> povm_family_from_json(const json& value,
                                                              const std::string& where) {
  if (!value.is_array() || value.empty()) bad(where + " must be a nonempty array");
  std::vector<std::vector<ComplexMatrix>> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const json& povm = value[i];
    if (!povm.is_array() || povm.empty()) bad(where + " entries must be nonempty arrays");
    std::vector<ComplexMatrix> effects;
    for (std::size_t a = 0; a < povm.size(); ++a)
      effects.push_back(matrix_from_json(povm[a], where + "[" + std::to_string(i) + "][" +
                                                      std::to_string(a) + "]"));
    out.push_back(std::move(effects));
  }
  return out;
}

}  // namespace

json to_json(const QuantumBellRealisation& realisation) {
  return json{{"type", "quantum-realisation"},
              {"dims", json::array({realisation.dim_A, realisation.dim_B})},
              {"rho", matrix_to_json(realisation.rho)},
              {"M", povm_family_to_json(realisation.M)},
              {"N", povm_family_to_json(realisation.N)}};
}

QuantumBellRealisation realisation_from_json(const json& value) {
  QuantumBellRealisation r;
  const auto dims = int_list(field(value, "dims"), "dims");
  if (dims.size() != 2) bad("'dims' must be [dim_A, dim_B]");
  r.dim_A = dims[0];
  r.dim_B = dims[1];
  r.rho = matrix_from_json(field(value, "rho"), "rho");
  r.M = povm_family_from_json(field(value, "M"), "M");
  r.N = povm_family_from_json(field(value, "N"), "N");
  return r;
}

json to_json(const Assemblage& assemblage) {
  json weights = json::object(), states = json::object();
  for (std::size_t x = 0; x < assemblage.weights.size(); ++x)
    for (std::size_t a = 0; a < assemblage.weights[x].size(); ++a) {
      if (!assemblage.appears[x][a]) continue;
      const PrepLabel label{static_cast<int>(a) + 1, static_cast<int>(x) + 1};
      // exact dyadic rational of the double: bit-exact round trip
      weights[label.str()] = rational_str(Rational(assemblage.weights[x][a]));
      states[label.str()] = matrix_to_json(assemblage.states[x][a]);
    }
  return json{{"type", "assemblage"},
              {"dim", assemblage.dim},
              {"weights", std::move(weights)},
              {"states", std::move(states)}};
}

Assemblage assemblage_from_json(const json& value) {
  Assemblage out;
  out.dim = field(value, "dim").get<int>();
  const json& weights = field(value, "weights");
  const json& states = field(value, "states");
  if (!weights.is_object() || !states.is_object()) bad("'weights'/'states' must be objects");
  std::vector<PrepLabel> labels;
  for (const auto& [key, v] : weights.items()) {
    (void)v;
    labels.push_back(PrepLabel::parse(key));
    if (!states.contains(key)) bad("state missing for preparation " + key);
  }
  for (const auto& [key, v] : states.items()) {
    (void)v;
    if (!weights.contains(key)) bad("weight missing for preparation " + key);
  }
  int max_x = 0, max_a = 0;
  for (const auto& label : labels) {
    max_x = std::max(max_x, label.x);
    max_a = std::max(max_a, label.a);
  }
  if (max_x == 0) bad("assemblage has no preparations");
  out.weights.assign(max_x, {});
  out.appears.assign(max_x, {});
  out.states.assign(max_x, {});
  for (int x = 0; x < max_x; ++x) {
    int count = 0;
    for (const auto& label : labels)
      if (label.x == x + 1) count = std::max(count, label.a);
    out.weights[x].assign(count, 0.0);
    out.appears[x].assign(count, false);
    out.states[x].assign(count, ComplexMatrix::Zero(out.dim, out.dim));
  }
  for (const auto& label : labels) {
    const std::string key = label.str();
    out.weights[label.x - 1][label.a - 1] =
        to_double(rational_field(weights[key], "weight " + key));
    out.appears[label.x - 1][label.a - 1] = true;
    out.states[label.x - 1][label.a - 1] = matrix_from_json(states[key], "state " + key);
  }
  out.rho_B = ComplexMatrix::Zero(out.dim, out.dim);
  for (std::size_t x = 0; x < out.weights.size(); ++x) {
    ComplexMatrix avg = ComplexMatrix::Zero(out.dim, out.dim);
    for (std::size_t a = 0; a < out.weights[x].size(); ++a)
      if (out.appears[x][a]) avg += out.weights[x][a] * out.states[x][a];
    if (x == 0) out.rho_B = avg;
  }
  return out;
}

json to_json(const NumericCorrelation& correlation) {
  const BellScenario& s = correlation.scenario;
  json table = json::object();
  for (int x = 1; x <= s.inputs_X(); ++x)
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a)
      for (int y = 1; y <= s.inputs_Y(); ++y)
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b)
          table[join_ints({a, b, x, y})] = correlation.at(a, b, x, y);
  return json{{"type", "bell-correlation-float"},
              {"A", s.outcomes_A},
              {"B", s.outcomes_B},
              {"table", std::move(table)}};
}

NumericCorrelation numeric_correlation_from_json(const json& value) {
  NumericCorrelation out;
  out.scenario = BellScenario{int_list(field(value, "A"), "A"), int_list(field(value, "B"), "B")};
  out.scenario.validate();
  const std::size_t cells =
      static_cast<std::size_t>(out.scenario.norm_A()) * out.scenario.norm_B();
  out.table.assign(cells, 0.0);
  std::vector<bool> seen(cells, false);
  const json& table = field(value, "table");
  for (const auto& [key, cell] : table.items()) {
    const auto [head, tail] = split_key(key, 3, "table");
    int a = 0;
    try {
      a = std::stoi(head);
    } catch (const std::exception&) {
      bad("malformed table key '" + key + "'");
    }
    if (!cell.is_number()) bad("float table entries must be numbers");
    const BellScenario& s = out.scenario;
    const int b = tail[0], x = tail[1], y = tail[2];
    if (x < 1 || x > s.inputs_X() || y < 1 || y > s.inputs_Y() || a < 1 ||
        a > s.outcomes_A[x - 1] || b < 1 || b > s.outcomes_B[y - 1])
      fail(errc::malformed_table, "cell (" + key + ") is outside the scenario");
    out.at(a, b, x, y) = cell.get<double>();
    std::size_t off_a = 0, off_b = 0;
    for (int i = 1; i < x; ++i) off_a += s.outcomes_A[i - 1];
    for (int i = 1; i < y; ++i) off_b += s.outcomes_B[i - 1];
    seen[(off_a + a - 1) * s.norm_B() + off_b + b - 1] = true;
  }
  for (std::size_t i = 0; i < cells; ++i)
    if (!seen[i]) fail(errc::malformed_table, "float table has missing cells");
  return out;
}

// ---- polytopes -----------------------------------------------------------------

json to_json(const Polytope& polytope) {
  json vertices = json::array();
  for (const auto& v : polytope.vertices) {
    json row = json::array();
    for (const Rational& c : v) row.push_back(rational_str(c));
    vertices.push_back(std::move(row));
  }
  auto rows_to_json = [](const std::vector<std::vector<Rational>>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
      json row = json::array();
      for (const Rational& c : r) row.push_back(rational_str(c));
      out.push_back(std::move(row));
    }
    return out;
  };
  return json{{"type", "polytope"},
              {"dim", polytope.dim},
              {"coordinates", polytope.coordinates},
              {"vertices", std::move(vertices)},
              {"facets", rows_to_json(polytope.hrep.facets)},
              {"equalities", rows_to_json(polytope.hrep.equalities)}};
}

std::string facet_text(const Polytope& polytope) {
  std::ostringstream out;
  out << "# bellctx facets v1\n# coordinates:";
  for (const auto& name : polytope.coordinates) out << ' ' << name;
  out << "\n# rows are 'c0 c1 ... cd' meaning c0 + sum_i c_i * coord_i >= 0 (= 0 for equalities)\n";
  out << "# equalities: " << polytope.hrep.equalities.size() << "\n";
  for (const auto& row : polytope.hrep.equalities) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << rational_str(row[i]);
    out << "\n";
  }
  out << "# facets: " << polytope.hrep.facets.size() << "\n";
  for (const auto& row : polytope.hrep.facets) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << rational_str(row[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace bellctx::io
