#include "bellctx/correlation.hpp"

#include <sstream>

namespace bellctx {

namespace {

std::vector<int> prefix_offsets(const std::vector<int>& counts) {
  std::vector<int> off(counts.size(), 0);
  for (std::size_t i = 1; i < counts.size(); ++i) off[i] = off[i - 1] + counts[i - 1];
  return off;
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i].kind << " at " << violations[i].where;
    if (!violations[i].detail.empty()) out << " (" << violations[i].detail << ")";
  }
  return out.str();
}

BellCorrelation::BellCorrelation(BellScenario scenario, std::vector<Rational> table)
    : scenario_(std::move(scenario)),
      off_A_(prefix_offsets(scenario_.outcomes_A)),
      off_B_(prefix_offsets(scenario_.outcomes_B)),
      table_(std::move(table)) {}

std::size_t BellCorrelation::index(int a, int b, int x, int y) const {
  return static_cast<std::size_t>(off_A_[x - 1] + a - 1) * scenario_.norm_B() +
         off_B_[y - 1] + b - 1;
}

ValidationReport BellCorrelation::validate_table(const BellScenario& scenario,
                                                 const std::vector<Rational>& table) {
  ValidationReport report;
  scenario.validate();
  const std::size_t expected =
      static_cast<std::size_t>(scenario.norm_A()) * scenario.norm_B();
  if (table.size() != expected) {
    report.violations.push_back({"MalformedTable", "table",
                                 "expected " + std::to_string(expected) + " cells, got " +
                                     std::to_string(table.size())});
    return report;
  }
  const BellCorrelation view(scenario, table);
  for (int x = 1; x <= scenario.inputs_X(); ++x) {
    for (int y = 1; y <= scenario.inputs_Y(); ++y) {
      Rational total(0);
      for (int a = 1; a <= scenario.outcomes_A[x - 1]; ++a) {
        for (int b = 1; b <= scenario.outcomes_B[y - 1]; ++b) {
          const Rational& v = view.at(a, b, x, y);
          if (v < 0)
            report.violations.push_back({"NegativeEntry",
                                         "(a,b,x,y)=(" + std::to_string(a) + "," + std::to_string(b) +
                                             "," + std::to_string(x) + "," + std::to_string(y) + ")",
                                         rational_str(v)});
          total += v;
        }
      }
      if (total != 1)
        report.violations.push_back({"NormalisationError",
                                     "(x,y)=(" + std::to_string(x) + "," + std::to_string(y) + ")",
                                     "sums to " + rational_str(total)});
    }
  }
  return report;
}

BellCorrelation BellCorrelation::from_table(BellScenario scenario, std::vector<Rational> table) {
  const ValidationReport report = validate_table(scenario, table);
  if (!report.ok()) {
    const bool shape = report.violations.front().kind == "MalformedTable";
    fail(shape ? errc::malformed_table : errc::normalisation, report.summary());
  }
  return BellCorrelation(std::move(scenario), std::move(table));
}

Marginals marginals(const BellCorrelation& c) {
  const BellScenario& s = c.scenario();
  Marginals m;
  m.p_A.resize(s.inputs_X());
  m.p_B.resize(s.inputs_Y());
  m.alice_well_defined = true;
  m.bob_well_defined = true;

  for (int x = 1; x <= s.inputs_X(); ++x) {
    m.p_A[x - 1].resize(s.outcomes_A[x - 1]);
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a) {
      Rational ref(0);
      for (int b = 1; b <= s.outcomes_B[0]; ++b) ref += c.at(a, b, x, 1);
      m.p_A[x - 1][a - 1] = ref;
      for (int y = 2; y <= s.inputs_Y(); ++y) {
        Rational other(0);
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) other += c.at(a, b, x, y);
        if (other != ref) m.alice_well_defined = false;
      }
    }
  }
  for (int y = 1; y <= s.inputs_Y(); ++y) {
    m.p_B[y - 1].resize(s.outcomes_B[y - 1]);
    for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
      Rational ref(0);
      for (int a = 1; a <= s.outcomes_A[0]; ++a) ref += c.at(a, b, 1, y);
      m.p_B[y - 1][b - 1] = ref;
      for (int x = 2; x <= s.inputs_X(); ++x) {
        Rational other(0);
        for (int a = 1; a <= s.outcomes_A[x - 1]; ++a) other += c.at(a, b, x, y);
        if (other != ref) m.bob_well_defined = false;
      }
    }
  }
  return m;
}

NoSignallingVerdict check_no_signalling(const BellCorrelation& c) {
  const BellScenario& s = c.scenario();
  NoSignallingVerdict verdict;
  verdict.max_residual = Rational(0);

  for (int x = 1; x <= s.inputs_X(); ++x) {
    for (int a = 1; a <= s.outcomes_A[x - 1]; ++a) {
      Rational ref(0);
      for (int b = 1; b <= s.outcomes_B[0]; ++b) ref += c.at(a, b, x, 1);
      for (int y = 2; y <= s.inputs_Y(); ++y) {
        Rational other(0);
        for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) other += c.at(a, b, x, y);
        verdict.max_residual = std::max(verdict.max_residual, Rational(abs(other - ref)));
      }
    }
  }
  for (int y = 1; y <= s.inputs_Y(); ++y) {
    for (int b = 1; b <= s.outcomes_B[y - 1]; ++b) {
      Rational ref(0);
      for (int a = 1; a <= s.outcomes_A[0]; ++a) ref += c.at(a, b, 1, y);
      for (int x = 2; x <= s.inputs_X(); ++x) {
        Rational other(0);
        for (int a = 1; a <= s.outcomes_A[x - 1]; ++a) other += c.at(a, b, x, y);
        verdict.max_residual = std::max(verdict.max_residual, Rational(abs(other - ref)));
      }
    }
  }
  verdict.no_signalling = verdict.max_residual == 0;
  return verdict;
}

}  // namespace bellctx
