#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

enum class errc {
  // spaces
  non_primitive_substitution,
  empty_sft,
  bad_odometer_ratios,
  unsupported_for_space,
  certification_failure,
  depth_exceeded,
  // full group
  not_a_partition,
  not_a_bijection,
  space_mismatch,
  non_integer_index,
  overlapping_slice,
  partition_depth_exceeded,
  partition_too_coarse,
  invalid_multisection,
  disjointness_failure,
  bad_c,
  budget_exceeded,
  // towers / bratteli
  trace_failure,
  bad_subsequence,
  incomposable_prefix,
  // thompson
  not_antichain,
  not_maximal,
  language_mismatch,
  word_too_short,
  range_vertex_mismatch,
  not_a_basis,
  // cli
  parse_error,
  validation_error,
  unsupported_payload,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }
  const char* name() const { return errc_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace cantor
