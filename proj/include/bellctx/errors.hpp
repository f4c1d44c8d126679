#pragma once

#include <stdexcept>
#include <string>

namespace bellctx {

enum class errc {
  parse,
  io,
  malformed_table,
  normalisation,
  unknown_label,
  degenerate_scenario,
  signalling_input,
  index_too_small,
  not_ns_form,
  not_one_hypothetical,
  shape_mismatch,
  fully_deterministic,
  dimension_mismatch,
  invalid_realisation,
  rank_deficient,
  budget_exceeded,
  internal,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bellctx
