#include "cantor/towers.hpp"

#include <algorithm>

namespace cantor {

namespace {
constexpr long long kReturnTimeBound = 1 << 14;
constexpr int kNestingIterBound = 64;
}  // namespace

ClopenSet KRPartition::atom(int tower, long long level) const {
  return towers[static_cast<size_t>(tower)].base.shifted(level);
}

ClopenSet KRPartition::base_union() const {
  ClopenSet u = ClopenSet::empty_set(space);
  for (auto& t : towers) u = u.unite(t.base);
  return u;
}

ClopenSet KRPartition::roof_union() const {
  ClopenSet u = ClopenSet::empty_set(space);
  for (auto& t : towers) u = u.unite(t.base.shifted(t.height - 1));
  return u;
}

long long KRPartition::min_height() const {
  long long m = towers.front().height;
  for (auto& t : towers) m = std::min(m, t.height);
  return m;
}

long long KRPartition::max_height() const {
  long long m = 0;
  for (auto& t : towers) m = std::max(m, t.height);
  return m;
}

std::vector<ClopenSet> KRPartition::atoms() const {
  std::vector<ClopenSet> out;
  for (auto& t : towers)
    for (long long k = 0; k < t.height; ++k) out.push_back(t.base.shifted(k));
  return out;
}

void KRPartition::validate() const {
  if (towers.empty()) fail(errc::not_a_partition, "no towers");
  ClopenSet acc = ClopenSet::empty_set(space);
  for (auto& t : towers) {
    if (t.height < 1) fail(errc::not_a_partition, "tower height below 1");
    if (t.base.is_empty()) fail(errc::not_a_partition, "empty tower base");
    for (long long k = 0; k < t.height; ++k) {
      ClopenSet a = t.base.shifted(k);
      if (!acc.disjoint_from(a)) fail(errc::not_a_partition, "tower atoms overlap");
      acc = acc.unite(a);
    }
  }
  if (!acc.is_full()) fail(errc::not_a_partition, "tower atoms do not cover the space");
}

void NestedKRSequence::validate() const {
  for (size_t n = 0; n < levels.size(); ++n) {
    levels[n].validate();
    if (!levels[n].base_union().contains_point(x)) fail(errc::trace_failure, "base misses the target point");
    if (n == 0) continue;
    if (!(levels[n].min_height() > levels[n - 1].min_height()))
      fail(errc::trace_failure, "minimal heights not strictly increasing");
    if (!levels[n].base_union().subset_of(levels[n - 1].base_union()))
      fail(errc::trace_failure, "bases not nested");
    // refinement: every atom sits inside one previous-level atom
    auto prev = levels[n - 1].atoms();
    for (auto& a : levels[n].atoms()) {
      bool inside = false;
      for (auto& p : prev) inside = inside || a.subset_of(p);
      if (!inside) fail(errc::trace_failure, "levels do not refine");
    }
  }
}

std::vector<std::pair<ClopenSet, long long>> first_return_partition(const SpacePtr& space,
                                                                    const ClopenSet& A) {
  if (!space->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "first-return analysis needs a minimal system");
  if (A.is_empty()) fail(errc::validation_error, "empty base");
  std::vector<std::pair<ClopenSet, long long>> pieces;
  ClopenSet remaining = A;
  for (long long n = 1; n <= kReturnTimeBound; ++n) {
    if (remaining.is_empty()) return pieces;
    ClopenSet hit = remaining.intersect(A.shifted(-n));
    if (!hit.is_empty()) {
      pieces.push_back({hit, n});
      remaining = remaining.difference(hit);
    }
  }
  fail(errc::depth_exceeded, "first-return times exceed the configured bound");
}

KRPartition kr_from_base(const SpacePtr& space, const ClopenSet& A) {
  KRPartition kr;
  kr.space = space;
  for (auto& [piece, n] : first_return_partition(space, A)) kr.towers.push_back({piece, n});
  kr.validate();
  return kr;
}

KRPartition refine_kr(const KRPartition& kr, const std::vector<ClopenSet>& P) {
  if (P.empty()) fail(errc::not_a_partition, "empty refining partition");
  ClopenSet acc = ClopenSet::empty_set(kr.space);
  for (auto& p : P) {
    if (!acc.disjoint_from(p)) fail(errc::not_a_partition, "refining atoms overlap");
    acc = acc.unite(p);
  }
  if (!acc.is_full()) fail(errc::not_a_partition, "refining atoms do not cover the space");

  KRPartition out;
  out.space = kr.space;
  for (auto& t : kr.towers) {
    std::vector<ClopenSet> parts{t.base};
    for (long long k = 0; k < t.height; ++k) {
      std::vector<ClopenSet> next;
      for (auto& part : parts)
        for (auto& p : P) {
          ClopenSet cut = part.intersect(p.shifted(-k));
          if (!cut.is_empty()) next.push_back(cut);
        }
      parts = std::move(next);
    }
    for (auto& part : parts) out.towers.push_back({part, t.height});
  }
  out.validate();
  return out;
}

NestedKRSequence nested_sequence(const SpacePtr& space, const PointOracle& x, int count,
                                 const std::vector<ClopenSet>* refine_by) {
  if (!space->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "nested towers need a minimal system");
  NestedKRSequence seq;
  seq.space = space;
  seq.x = x;
  long long last_min = 0;
  for (int step = 1; step <= kNestingIterBound && static_cast<int>(seq.levels.size()) < count; ++step) {
    ClopenSet base = space->is_subshift()
                         ? ClopenSet::cylinder(space, -step, x.read(-step, step))
                         : ClopenSet::residue_set(space, std::min(step, space->levels()),
                                                  {x.residue(std::min(step, space->levels()))});
    KRPartition kr = kr_from_base(space, base);
    if (refine_by) kr = refine_kr(kr, *refine_by);
    if (!seq.levels.empty()) kr = refine_kr(kr, seq.levels.back().atoms());
    if (kr.min_height() <= last_min) continue;  // property (H): skip until heights grow
    last_min = kr.min_height();
    seq.levels.push_back(std::move(kr));
  }
  if (static_cast<int>(seq.levels.size()) < count)
    fail(errc::depth_exceeded, "could not build the requested number of nested levels");
  return seq;
}

Rational odometer_measure(const SpacePtr& space, const ClopenSet& A) {
  if (space->is_subshift()) fail(errc::unsupported_for_space, "exact measures are odometer-only");
  return Rational(static_cast<long long>(A.residues().size()), space->level_order(A.level()));
}

}  // namespace cantor
