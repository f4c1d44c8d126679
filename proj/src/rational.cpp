#include "bellctx/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace bellctx {

const char* errc_name(errc code) {
  switch (code) {
    case errc::parse: return "ParseError";
    case errc::io: return "IoError";
    case errc::malformed_table: return "MalformedTable";
    case errc::normalisation: return "NormalisationError";
    case errc::unknown_label: return "UnknownLabel";
    case errc::degenerate_scenario: return "DegenerateScenario";
    case errc::signalling_input: return "SignallingInput";
    case errc::index_too_small: return "IndexTooSmall";
    case errc::not_ns_form: return "NotNSForm";
    case errc::not_one_hypothetical: return "NotOneHypotheticalForm";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::fully_deterministic: return "FullyDeterministic";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_realisation: return "InvalidRealisation";
    case errc::rank_deficient: return "RankDeficientInput";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::internal: return "InternalError";
  }
  return "Error";
}

namespace {

bool parse_integer(std::string_view text, Int& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') pos = 1;
  if (pos == text.size()) return false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  out = Int(std::string(text));
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Int num, den(1);
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) fail(errc::parse, "not a rational: '" + std::string(text) + "'");
  } else {
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den))
      fail(errc::parse, "not a rational: '" + std::string(text) + "'");
    if (den == 0) fail(errc::parse, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);  // two-argument ctor canonicalises
}

std::string rational_str(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational nearest_rational(double value, const Int& max_den) {
  if (!std::isfinite(value)) fail(errc::parse, "cannot snap non-finite value");
  if (max_den < 1) fail(errc::parse, "snap denominator bound must be positive");
  // Exact dyadic representation of the double, then Stern-Brocot walk.
  const Rational target(value);
  if (denominator(target) <= max_den) return target;
  const bool negative = target < 0;
  Rational t = negative ? Rational(-target) : target;
  // Convergents of the continued fraction of t.
  Int p0(0), q0(1), p1(1), q1(0);
  Rational rest = t;
  Rational best(0);
  bool have_best = false;
  while (true) {
    const Int a = Int(numerator(rest) / denominator(rest));
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Largest semiconvergent still within the bound.
      const Int k = (max_den - q0) / q1;
      const Int ps = k * p1 + p0;
      const Int qs = k * q1 + q0;
      const Rational conv(p1, q1);
      const Rational semi(ps, qs);
      if (q1 <= max_den && (!have_best || abs(conv - t) <= abs(semi - t))) {
        best = conv;
      } else {
        best = semi;
      }
      have_best = true;
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const Rational frac = rest - a;
    if (frac == 0) { best = Rational(p1, q1); break; }
    rest = 1 / frac;
  }
  return negative ? Rational(-best) : best;
}

bool snap_rational(double value, const Int& max_den, double tol, Rational& out) {
  const Rational candidate = nearest_rational(value, max_den);
  const double err = std::fabs(to_double(candidate) - value);
  if (err > tol) return false;
  out = candidate;
  return true;
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

}  // namespace bellctx
