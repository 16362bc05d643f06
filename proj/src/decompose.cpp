#include <algorithm>
#include <set>

#include "cantor/fullgroup.hpp"

namespace cantor {

namespace {

// cocycle value of g on each atom (tower, level); throws when not constant
std::vector<std::vector<long long>> atomwise_cocycle(const FullGroupElement& g,
                                                     const KRPartition& kr) {
  std::vector<std::vector<long long>> f(kr.towers.size());
  for (size_t i = 0; i < kr.towers.size(); ++i) {
    for (long long k = 0; k < kr.towers[i].height; ++k) {
      ClopenSet atom = kr.atom(static_cast<int>(i), k);
      long long value = 0;
      bool found = false;
      for (auto& a : g.atoms())
        if (atom.subset_of(a.set)) {
          value = a.power;
          found = true;
          break;
        }
      if (!found) fail(errc::partition_too_coarse, "cocycle not constant on a tower atom");
      f[i].push_back(value);
    }
  }
  return f;
}

}  // namespace

std::pair<FullGroupElement, FullGroupElement> decompose_perm_rotation(const FullGroupElement& g,
                                                                      const KRPartition& kr) {
  if (g.space()->id() != kr.space->id()) fail(errc::space_mismatch, "element and towers disagree");
  auto f = atomwise_cocycle(g, kr);
  long long hmin = kr.min_height();
  if (g.cocycle_bound() >= hmin)
    fail(errc::partition_too_coarse, "cocycle bound reaches the minimal tower height");

  // tower-preserving part: atoms crossing the roof (or base) are redirected
  // to the same level of their own tower instead of the entered one
  std::vector<Atom> p_atoms;
  for (size_t i = 0; i < kr.towers.size(); ++i) {
    long long h = kr.towers[i].height;
    std::set<long long> image_levels;
    for (long long k = 0; k < h; ++k) {
      long long fk = f[i][k];
      long long shift = fk;
      if (k + fk >= h) shift = fk - h;
      if (k + fk < 0) shift = fk + h;
      p_atoms.push_back({kr.atom(static_cast<int>(i), k), shift});
      image_levels.insert(k + shift);
    }
    if (*image_levels.begin() != 0 || *image_levels.rbegin() != h - 1 ||
        static_cast<long long>(image_levels.size()) != h)
      fail(errc::partition_too_coarse, "redirected levels do not permute a tower");
  }
  FullGroupElement p = FullGroupElement::make(kr.space, std::move(p_atoms));
  FullGroupElement r = p.inverse().compose(g);

  // the rotation, built independently: roof-crossing atoms follow the first
  // return to their top band (one full pass of the entered tower), base-
  // crossing atoms go back one full pass of the tower they came from
  std::vector<Atom> r_atoms;
  ClopenSet moved = ClopenSet::empty_set(kr.space);
  for (size_t i = 0; i < kr.towers.size(); ++i) {
    long long h = kr.towers[i].height;
    for (long long k = 0; k < h; ++k) {
      long long fk = f[i][k];
      ClopenSet atom = kr.atom(static_cast<int>(i), k);
      if (k + fk >= h) {
        for (size_t j = 0; j < kr.towers.size(); ++j) {
          ClopenSet piece = atom.intersect(kr.towers[j].base.shifted(k - h));
          if (piece.is_empty()) continue;
          r_atoms.push_back({piece, kr.towers[j].height});
          moved = moved.unite(piece);
        }
      } else if (k + fk < 0) {
        for (size_t j = 0; j < kr.towers.size(); ++j) {
          ClopenSet piece = atom.intersect(kr.towers[j].base.shifted(k + kr.towers[j].height));
          if (piece.is_empty()) continue;
          r_atoms.push_back({piece, -kr.towers[j].height});
          moved = moved.unite(piece);
        }
      }
    }
  }
  ClopenSet rest = moved.complement();
  if (!rest.is_empty()) r_atoms.push_back({rest, 0});
  FullGroupElement r_direct = FullGroupElement::make(kr.space, std::move(r_atoms));

  if (!r.equals(r_direct) || !p.compose(r).equals(g))
    fail(errc::partition_too_coarse, "decomposition failed re-verification");
  return {p, r};
}

LefQuotient lef_quotient(const std::vector<FullGroupElement>& F, int max_levels) {
  if (F.empty()) fail(errc::validation_error, "need at least one element");
  auto space = F[0].space();
  for (auto& g : F)
    if (g.space()->id() != space->id()) fail(errc::space_mismatch, "elements from different spaces");

  std::vector<FullGroupElement> pool{FullGroupElement::identity(space)};
  for (auto& g : F) pool.push_back(g);
  std::vector<FullGroupElement> products;
  std::set<std::string> product_keys;
  for (auto& a : pool)
    for (auto& b : pool) {
      auto ab = a.compose(b);
      if (product_keys.insert(ab.key()).second) products.push_back(ab);
    }

  // common refinement of the cocycle partitions of all products
  std::vector<ClopenSet> common{ClopenSet::full_set(space)};
  for (auto& g : products) {
    std::vector<ClopenSet> next;
    for (auto& cell : common)
      for (auto& a : g.atoms()) {
        ClopenSet cut = cell.intersect(a.set);
        if (!cut.is_empty()) next.push_back(cut);
      }
    common = std::move(next);
  }

  auto x = space->designated_point();
  for (int depth = 1; depth <= max_levels; ++depth) {
    NestedKRSequence seq;
    try {
      seq = nested_sequence(space, x, depth, &common);
    } catch (const error& e) {
      if (e.code() == errc::depth_exceeded) break;
      throw;
    }
    const KRPartition& kr = seq.levels.back();

    LefQuotient q;
    q.partition = kr;
    std::vector<std::pair<size_t, long long>> atom_ids;  // (tower, level) per flat index
    std::map<std::string, int> atom_index;
    {
      int idx = 0;
      for (size_t i = 0; i < kr.towers.size(); ++i)
        for (long long k = 0; k < kr.towers[i].height; ++k) {
          atom_ids.push_back({i, k});
          atom_index[kr.atom(static_cast<int>(i), k).key()] = idx++;
        }
      q.atom_count = idx;
    }

    bool ok = true;
    for (auto& g : products) {
      std::vector<std::vector<long long>> f;
      try {
        f = atomwise_cocycle(g, kr);
        auto [p, r] = decompose_perm_rotation(g, kr);
        (void)p;
        (void)r;
      } catch (const error& e) {
        if (e.code() == errc::partition_too_coarse) {
          ok = false;
          break;
        }
        throw;
      }
      std::vector<int> perm(atom_ids.size());
      for (size_t idx = 0; idx < atom_ids.size(); ++idx) {
        auto [i, k] = atom_ids[idx];
        long long h = kr.towers[i].height, fk = f[i][k];
        long long target = k + fk;
        if (target >= h) target -= h;
        if (target < 0) target += h;
        perm[idx] = atom_index.at(kr.atom(static_cast<int>(i), target).key());
      }
      q.images[g.key()] = std::move(perm);
    }
    if (!ok) continue;

    // injectivity on F, multiplicativity on F x F
    std::map<std::string, std::string> sig_by_key;
    for (auto& g : F) {
      q.f_keys.push_back(g.key());
      std::string sig;
      for (int v : q.images.at(g.key())) sig += std::to_string(v) + ",";
      sig_by_key[g.key()] = sig;
    }
    std::set<std::string> sigs;
    for (auto& [k, s] : sig_by_key) sigs.insert(s), (void)k;
    if (sigs.size() != sig_by_key.size()) ok = false;
    for (auto& a : F)
      for (auto& b : F) {
        auto& pa = q.images.at(a.key());
        auto& pb = q.images.at(b.key());
        auto& pab = q.images.at(a.compose(b).key());
        for (size_t idx = 0; idx < pa.size() && ok; ++idx)
          if (pab[idx] != pa[static_cast<size_t>(pb[idx])]) ok = false;
      }
    if (ok) return q;
  }
  fail(errc::partition_depth_exceeded, "no level certified the finite quotient");
}

}  // namespace cantor
