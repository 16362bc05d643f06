#pragma once

#include <random>

#include "cantor/fullgroup.hpp"

namespace cantor::testing {

inline SpacePtr dyadic(int levels = 6) {
  SpaceSpec s;
  s.kind = SpaceKind::odometer;
  s.ratios.assign(levels, 2);
  return make_space(s);
}

inline SpacePtr odo23(int pairs = 3) {
  SpaceSpec s;
  s.kind = SpaceKind::odometer;
  for (int i = 0; i < pairs; ++i) {
    s.ratios.push_back(2);
    s.ratios.push_back(3);
  }
  return make_space(s);
}

inline SpacePtr fibonacci() {
  SpaceSpec s;
  s.kind = SpaceKind::substitution;
  s.rules = {{'a', "ab"}, {'b', "a"}};
  return make_space(s);
}

/// Random odometer element from a random residue permutation at a level.
inline FullGroupElement random_odometer_element(const SpacePtr& sp, std::mt19937_64& rng,
                                                int level = 0) {
  if (level == 0) level = 1 + static_cast<int>(rng() % sp->levels());
  long long a = sp->level_order(level);
  std::vector<long long> perm(a);
  for (long long i = 0; i < a; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Atom> atoms;
  for (long long r = 0; r < a; ++r) {
    long long d = perm[r] - r;
    if (d > a / 2) d -= a;
    if (d < -a / 2) d += a;
    atoms.push_back({ClopenSet::residue_set(sp, level, {r}), d});
  }
  return FullGroupElement::make(sp, std::move(atoms));
}

/// Random subshift element: short product over a pool of involutions and
/// shift powers.
inline FullGroupElement random_subshift_element(const SpacePtr& sp, std::mt19937_64& rng,
                                                int length = 3) {
  static thread_local std::map<std::string, std::vector<FullGroupElement>> pools;
  auto& pool = pools[sp->id()];
  if (pool.empty()) {
    pool.push_back(FullGroupElement::shift_power(sp, 1));
    pool.push_back(FullGroupElement::shift_power(sp, -1));
    for (int w = 2; w <= 3; ++w)
      for (auto& word : sp->language(w)) {
        ClopenSet U = ClopenSet::cylinder(sp, 0, word);
        for (long long n : {1, 2}) {
          if (U.disjoint_from(U.shifted(n))) pool.push_back(involution_from_slice(U, n));
        }
      }
  }
  auto g = FullGroupElement::identity(sp);
  for (int i = 0; i < length; ++i) g = pool[rng() % pool.size()].compose(g);
  return g;
}

inline FullGroupElement random_element(const SpacePtr& sp, std::mt19937_64& rng) {
  return sp->is_subshift() ? random_subshift_element(sp, rng) : random_odometer_element(sp, rng);
}

/// Random clopen subset.
inline ClopenSet random_clopen(const SpacePtr& sp, std::mt19937_64& rng) {
  if (!sp->is_subshift()) {
    int level = 1 + static_cast<int>(rng() % sp->levels());
    long long a = sp->level_order(level);
    std::vector<long long> res;
    for (long long r = 0; r < a; ++r)
      if (rng() % 2) res.push_back(r);
    return ClopenSet::residue_set(sp, level, res);
  }
  int width = 1 + static_cast<int>(rng() % 4);
  long long lo = static_cast<long long>(rng() % 7) - 3;
  std::vector<std::string> words;
  for (auto& w : sp->language(width))
    if (rng() % 2) words.push_back(w);
  if (words.empty()) return ClopenSet::empty_set(sp);
  return ClopenSet::word_set(sp, lo, words);
}

}  // namespace cantor::testing
