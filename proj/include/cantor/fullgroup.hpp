#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/space.hpp"
#include "cantor/towers.hpp"

namespace cantor {

struct Atom {
  ClopenSet set;
  long long power = 0;
};

/// Element of the topological full group: a clopen partition {X_i} with
/// integer cocycle values n_i such that {phi^{n_i}(X_i)} is again a
/// partition. Canonical form: one atom per cocycle value (the union of all
/// pieces sharing it), sorted by power.
class FullGroupElement {
 public:
  static FullGroupElement identity(SpacePtr space);
  static FullGroupElement shift_power(SpacePtr space, long long n);
  static FullGroupElement make(SpacePtr space, std::vector<Atom> atoms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  FullGroupElement compose(const FullGroupElement& h) const;  // this after h
  FullGroupElement inverse() const;
  FullGroupElement power(long long k) const;
  FullGroupElement conjugate(const FullGroupElement& by) const;  // by g by^-1

  bool is_identity() const;
  bool equals(const FullGroupElement& other) const;
  std::string key() const;

  long long cocycle_bound() const;
  /// Cocycle value on the atom containing p.
  long long cocycle_at(const PointOracle& p) const;
  std::pair<long long, PointOracle> evaluate(const PointOracle& p) const;

  ClopenSet support() const;
  std::optional<long long> order(long long bound) const;

 private:
  FullGroupElement() = default;
  void canonicalize();
  void validate() const;

  SpacePtr space_;
  std::vector<Atom> atoms_;
};

FullGroupElement commutator(const FullGroupElement& a, const FullGroupElement& b);

// ------------------------------------------------------------------- index

long long index_orbit(const FullGroupElement& g, const PointOracle& x);
long long index_measure(const FullGroupElement& g);
bool is_in_point_stabilizer(const FullGroupElement& g, const PointOracle& x);

// ----------------------------------------------------------- constructions

/// phi^n on U, phi^-n on phi^n(U), identity elsewhere; requires disjointness.
FullGroupElement involution_from_slice(const ClopenSet& U, long long n);

/// First-return map phi_A: phi^{t_A} on A, identity off A.
FullGroupElement induced_transformation(const SpacePtr& space, const ClopenSet& A);

/// Degree-d multisection stored by its diagonal domains D_i = phi^{p_i}(D_1)
/// (p_1 = 0); the slice M_{i,j} is phi^{p_j - p_i} restricted to D_i.
struct Multisection {
  SpacePtr space;
  std::vector<ClopenSet> domains;
  std::vector<long long> powers;
  int degree() const { return static_cast<int>(domains.size()); }
  void validate() const;
};

/// Element acting as M_{i,pi(i)} on D_i, identity off the domains; pi is
/// 0-based with pi[i] = image of i.
FullGroupElement cycle_from_multisection(const Multisection& m, const std::vector<int>& pi);

/// Lamplighter generators x = [tau_C^-1, phi^-2], y = [r^-1, phi^-2] with
/// r = phi_U phi phi_U phi^-1; requires U..phi^3(U) pairwise disjoint and
/// nonempty C inside U. Relations x^2 and [x, y^k x y^-k] verified up to K.
std::pair<FullGroupElement, FullGroupElement> lamplighter_generators(const SpacePtr& space,
                                                                    const ClopenSet& U,
                                                                    const ClopenSet& C,
                                                                    int relation_check_limit = 6);

/// phi_U plus the adjacent tower-level transpositions of a disjoint tower
/// U, phi(U), ..., phi^{n-1}(U).
std::vector<FullGroupElement> tower_wreath_generators(const SpacePtr& space, const ClopenSet& U,
                                                      long long n);

// ------------------------------------------------- decomposition and LEF

/// gamma = p * r with p preserving every tower of kr and r a product of
/// induced-transformation powers on the top/bottom bands (rotation number
/// at most 1). Requires the cocycle constant on kr atoms and bounded by the
/// minimal height.
std::pair<FullGroupElement, FullGroupElement> decompose_perm_rotation(const FullGroupElement& g,
                                                                      const KRPartition& kr);

/// Finite quotient data: each element of (F u {id})^2 mapped to the
/// permutation its tower-preserving part induces on the KR atoms.
struct LefQuotient {
  KRPartition partition;
  int atom_count = 0;
  /// element key -> permutation of atom indices
  std::map<std::string, std::vector<int>> images;
  std::vector<std::string> f_keys;  // keys of the elements of F
};

LefQuotient lef_quotient(const std::vector<FullGroupElement>& F, int max_levels = 12);

// --------------------------------------------------- growth and orbit maps

struct GrowthReport {
  int radius = 0;
  std::vector<long long> ball_sizes;  // sizes of balls of radius 0..radius
  std::vector<std::string> census;    // canonical keys, sorted
};

GrowthReport ball_growth(const std::vector<FullGroupElement>& gens, int radius,
                         long long element_cap = 2000000);

struct SchreierGraph {
  std::vector<long long> vertices;  // orbit offsets j, sorted
  struct Edge {
    long long from, to;
    int gen;
  };
  std::vector<Edge> edges;
};

SchreierGraph schreier_ball(const std::vector<FullGroupElement>& gens, const PointOracle& x,
                            int radius);

/// Restriction of the wobbling image iota_x(g): k -> f_g(phi^k x) + k.
std::map<long long, long long> wobbling_image(const FullGroupElement& g, const PointOracle& x,
                                              long long window);

}  // namespace cantor
