#pragma once

#include <boost/rational.hpp>
#include <utility>
#include <vector>

#include "cantor/space.hpp"

namespace cantor {

struct Tower {
  ClopenSet base;
  long long height = 1;
};

/// Partition of the space into towers base, phi(base), ..., phi^{h-1}(base).
struct KRPartition {
  SpacePtr space;
  std::vector<Tower> towers;

  ClopenSet atom(int tower, long long level) const;
  ClopenSet base_union() const;
  ClopenSet roof_union() const;
  long long min_height() const;
  long long max_height() const;
  /// All atoms in (tower, level) order.
  std::vector<ClopenSet> atoms() const;
  void validate() const;
};

/// Refining sequence of KR partitions whose bases shrink around x, with
/// strictly increasing minimal heights.
struct NestedKRSequence {
  SpacePtr space;
  PointOracle x;
  std::vector<KRPartition> levels;
  void validate() const;
};

/// Partition of A by the first-return time to A, as (piece, return time).
std::vector<std::pair<ClopenSet, long long>> first_return_partition(const SpacePtr& space,
                                                                    const ClopenSet& A);

KRPartition kr_from_base(const SpacePtr& space, const ClopenSet& A);

/// Splits tower bases until every atom lies in one part of P.
KRPartition refine_kr(const KRPartition& kr, const std::vector<ClopenSet>& P);

/// Builds `count` nested levels around x; every level additionally refines
/// `refine_by` when given (all bases still contain x).
NestedKRSequence nested_sequence(const SpacePtr& space, const PointOracle& x, int count,
                                 const std::vector<ClopenSet>* refine_by = nullptr);

using Rational = boost::rational<long long>;

/// Invariant measure of a clopen subset of an odometer.
Rational odometer_measure(const SpacePtr& space, const ClopenSet& A);

}  // namespace cantor
