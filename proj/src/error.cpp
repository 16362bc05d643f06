#include "cantor/error.hpp"

namespace cantor {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_primitive_substitution: return "NonPrimitiveSubstitution";
    case errc::empty_sft: return "EmptySFT";
    case errc::bad_odometer_ratios: return "BadOdometerRatios";
    case errc::unsupported_for_space: return "UnsupportedForSpace";
    case errc::certification_failure: return "CertificationFailure";
    case errc::depth_exceeded: return "DepthExceeded";
    case errc::not_a_partition: return "NotAPartition";
    case errc::not_a_bijection: return "NotABijection";
    case errc::space_mismatch: return "SpaceMismatch";
    case errc::non_integer_index: return "NonIntegerIndex";
    case errc::overlapping_slice: return "OverlappingSlice";
    case errc::partition_depth_exceeded: return "PartitionDepthExceeded";
    case errc::partition_too_coarse: return "PartitionTooCoarse";
    case errc::invalid_multisection: return "InvalidMultisection";
    case errc::disjointness_failure: return "DisjointnessFailure";
    case errc::bad_c: return "BadC";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::trace_failure: return "TraceFailure";
    case errc::bad_subsequence: return "BadSubsequence";
    case errc::incomposable_prefix: return "IncomposablePrefix";
    case errc::not_antichain: return "NotAntichain";
    case errc::not_maximal: return "NotMaximal";
    case errc::language_mismatch: return "LanguageMismatch";
    case errc::word_too_short: return "WordTooShort";
    case errc::range_vertex_mismatch: return "RangeVertexMismatch";
    case errc::not_a_basis: return "NotABasis";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::unsupported_payload: return "UnsupportedPayload";
  }
  return "UnknownError";
}

}  // namespace cantor
