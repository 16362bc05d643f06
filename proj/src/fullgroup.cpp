#include "cantor/fullgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace cantor {

FullGroupElement FullGroupElement::identity(SpacePtr space) { return shift_power(std::move(space), 0); }

FullGroupElement FullGroupElement::shift_power(SpacePtr space, long long n) {
  FullGroupElement g;
  g.space_ = space;
  g.atoms_ = {{ClopenSet::full_set(space), n}};
  return g;
}

FullGroupElement FullGroupElement::make(SpacePtr space, std::vector<Atom> atoms) {
  if (atoms.empty()) fail(errc::not_a_partition, "element needs at least one atom");
  for (auto& a : atoms)
    if (a.set.space()->id() != space->id()) fail(errc::space_mismatch, "atom clopen from another space");
  // the given atoms must already partition the space (merging equal powers
  // below would otherwise hide overlaps)
  ClopenSet dom = ClopenSet::empty_set(space);
  for (auto& a : atoms) {
    if (!dom.disjoint_from(a.set)) fail(errc::not_a_partition, "atoms overlap");
    dom = dom.unite(a.set);
  }
  if (!dom.is_full()) fail(errc::not_a_partition, "atoms do not cover the space");
  FullGroupElement g;
  g.space_ = std::move(space);
  g.atoms_ = std::move(atoms);
  g.canonicalize();
  g.validate();
  return g;
}

void FullGroupElement::canonicalize() {
  std::map<long long, ClopenSet> merged;
  for (auto& a : atoms_) {
    if (a.set.is_empty()) continue;
    auto it = merged.find(a.power);
    if (it == merged.end())
      merged.emplace(a.power, a.set);
    else
      it->second = it->second.unite(a.set);
  }
  atoms_.clear();
  for (auto& [p, s] : merged) atoms_.push_back({s, p});
  if (atoms_.empty()) atoms_ = {{ClopenSet::full_set(space_), 0}};
}

void FullGroupElement::validate() const {
  ClopenSet dom = ClopenSet::empty_set(space_), img = ClopenSet::empty_set(space_);
  for (auto& a : atoms_) {
    if (!dom.disjoint_from(a.set)) fail(errc::not_a_partition, "atoms overlap");
    dom = dom.unite(a.set);
    ClopenSet moved = a.set.shifted(a.power);
    if (!img.disjoint_from(moved)) fail(errc::not_a_bijection, "atom images overlap");
    img = img.unite(moved);
  }
  if (!dom.is_full()) fail(errc::not_a_partition, "atoms do not cover the space");
  if (!img.is_full()) fail(errc::not_a_bijection, "atom images do not cover the space");
}

FullGroupElement FullGroupElement::compose(const FullGroupElement& h) const {
  if (space_->id() != h.space_->id()) fail(errc::space_mismatch, "elements from different spaces");
  FullGroupElement g;
  g.space_ = space_;
  for (auto& hy : h.atoms_)
    for (auto& gx : atoms_) {
      ClopenSet piece = hy.set.intersect(gx.set.shifted(-hy.power));
      if (!piece.is_empty()) g.atoms_.push_back({piece, hy.power + gx.power});
    }
  g.canonicalize();
  return g;
}

FullGroupElement FullGroupElement::inverse() const {
  FullGroupElement g;
  g.space_ = space_;
  for (auto& a : atoms_) g.atoms_.push_back({a.set.shifted(a.power), -a.power});
  g.canonicalize();
  return g;
}

FullGroupElement FullGroupElement::power(long long k) const {
  FullGroupElement acc = identity(space_);
  FullGroupElement step = k >= 0 ? *this : inverse();
  for (long long i = 0; i < std::llabs(k); ++i) acc = step.compose(acc);
  return acc;
}

FullGroupElement FullGroupElement::conjugate(const FullGroupElement& by) const {
  return by.compose(*this).compose(by.inverse());
}

FullGroupElement commutator(const FullGroupElement& a, const FullGroupElement& b) {
  return a.compose(b).compose(a.inverse()).compose(b.inverse());
}

bool FullGroupElement::is_identity() const {
  return atoms_.size() == 1 && atoms_[0].power == 0;
}

bool FullGroupElement::equals(const FullGroupElement& other) const { return key() == other.key(); }

std::string FullGroupElement::key() const {
  std::ostringstream os;
  os << space_->id();
  for (auto& a : atoms_) os << ";" << a.power << "@" << a.set.key();
  return os.str();
}

long long FullGroupElement::cocycle_bound() const {
  long long b = 0;
  for (auto& a : atoms_) b = std::max(b, std::llabs(a.power));
  return b;
}

long long FullGroupElement::cocycle_at(const PointOracle& p) const {
  for (auto& a : atoms_)
    if (a.set.contains_point(p)) return a.power;
  fail(errc::not_a_partition, "no atom contains the point");
}

std::pair<long long, PointOracle> FullGroupElement::evaluate(const PointOracle& p) const {
  long long n = cocycle_at(p);
  return {n, p.shifted(n)};
}

ClopenSet FullGroupElement::support() const {
  if (!space_->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "support needs an aperiodic minimal system");
  ClopenSet s = ClopenSet::empty_set(space_);
  for (auto& a : atoms_)
    if (a.power != 0) s = s.unite(a.set);
  return s;
}

std::optional<long long> FullGroupElement::order(long long bound) const {
  if (bound < 1) fail(errc::validation_error, "order bound must be positive");
  FullGroupElement acc = *this;
  for (long long k = 1; k <= bound; ++k) {
    if (acc.is_identity()) return k;
    acc = compose(acc);
  }
  return std::nullopt;
}

// ------------------------------------------------------------------- index

namespace {
std::pair<long long, long long> transfer_counts(const FullGroupElement& g, const PointOracle& x) {
  // only j in [-N, 0] can jump into the forward orbit (j + f >= 1 needs
  // f >= 1 - j, impossible for j < -N) and only j in [1, N] can jump out
  long long N = g.cocycle_bound();
  long long kappa = 0, lambda = 0;
  for (long long j = -N; j <= 0; ++j)
    if (j + g.cocycle_at(x.shifted(j)) >= 1) ++kappa;
  for (long long j = 1; j <= N; ++j)
    if (j + g.cocycle_at(x.shifted(j)) <= 0) ++lambda;
  return {kappa, lambda};
}
}  // namespace

long long index_orbit(const FullGroupElement& g, const PointOracle& x) {
  if (!g.space()->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "index needs an aperiodic minimal system");
  auto [kappa, lambda] = transfer_counts(g, x);
  return kappa - lambda;
}

long long index_measure(const FullGroupElement& g) {
  if (g.space()->is_subshift())
    fail(errc::unsupported_for_space, "the measure method needs an odometer");
  Rational sum(0);
  for (auto& a : g.atoms()) sum += Rational(a.power) * odometer_measure(g.space(), a.set);
  if (sum.denominator() != 1) fail(errc::non_integer_index, "cocycle integral is not an integer");
  return sum.numerator();
}

bool is_in_point_stabilizer(const FullGroupElement& g, const PointOracle& x) {
  if (!g.space()->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "stabilizer test needs an aperiodic minimal system");
  auto [kappa, lambda] = transfer_counts(g, x);
  return kappa == 0 && lambda == 0;
}

// ----------------------------------------------------------- constructions

FullGroupElement involution_from_slice(const ClopenSet& U, long long n) {
  auto space = U.space();
  if (U.is_empty() || n == 0) return FullGroupElement::identity(space);
  ClopenSet V = U.shifted(n);
  if (!U.disjoint_from(V)) fail(errc::overlapping_slice, "slice meets its image");
  std::vector<Atom> atoms{{U, n}, {V, -n}};
  ClopenSet rest = U.unite(V).complement();
  if (!rest.is_empty()) atoms.push_back({rest, 0});
  return FullGroupElement::make(space, std::move(atoms));
}

FullGroupElement induced_transformation(const SpacePtr& space, const ClopenSet& A) {
  std::vector<Atom> atoms;
  for (auto& [piece, t] : first_return_partition(space, A)) atoms.push_back({piece, t});
  ClopenSet rest = A.complement();
  if (!rest.is_empty()) atoms.push_back({rest, 0});
  return FullGroupElement::make(space, std::move(atoms));
}

void Multisection::validate() const {
  if (domains.empty() || domains.size() != powers.size())
    fail(errc::invalid_multisection, "need matching domains and powers");
  if (powers[0] != 0) fail(errc::invalid_multisection, "first slice power must be 0");
  for (size_t i = 0; i < domains.size(); ++i) {
    if (domains[i].is_empty()) fail(errc::invalid_multisection, "empty domain component");
    if (!domains[i].equals(domains[0].shifted(powers[i])))
      fail(errc::invalid_multisection, "domain is not the stated shift of the first one");
    for (size_t j = 0; j < i; ++j)
      if (!domains[i].disjoint_from(domains[j]))
        fail(errc::invalid_multisection, "domain components overlap");
  }
}

FullGroupElement cycle_from_multisection(const Multisection& m, const std::vector<int>& pi) {
  m.validate();
  int d = m.degree();
  if (static_cast<int>(pi.size()) != d) fail(errc::invalid_multisection, "permutation degree mismatch");
  std::vector<bool> hit(pi.size(), false);
  for (int v : pi) {
    if (v < 0 || v >= d || hit[v]) fail(errc::invalid_multisection, "not a permutation");
    hit[v] = true;
  }
  std::vector<Atom> atoms;
  ClopenSet dom = ClopenSet::empty_set(m.space);
  for (int i = 0; i < d; ++i) {
    atoms.push_back({m.domains[i], m.powers[pi[i]] - m.powers[i]});
    dom = dom.unite(m.domains[i]);
  }
  ClopenSet rest = dom.complement();
  if (!rest.is_empty()) atoms.push_back({rest, 0});
  return FullGroupElement::make(m.space, std::move(atoms));
}

std::pair<FullGroupElement, FullGroupElement> lamplighter_generators(const SpacePtr& space,
                                                                    const ClopenSet& U,
                                                                    const ClopenSet& C,
                                                                    int relation_check_limit) {
  if (U.is_empty()) fail(errc::disjointness_failure, "U is empty");
  for (long long i = 0; i < 4; ++i)
    for (long long j = i + 1; j < 4; ++j)
      if (!U.shifted(i).disjoint_from(U.shifted(j)))
        fail(errc::disjointness_failure, "U, phi(U), phi^2(U), phi^3(U) must be pairwise disjoint");
  if (C.is_empty() || !C.subset_of(U)) fail(errc::bad_c, "C must be a nonempty subset of U");

  auto phi = FullGroupElement::shift_power(space, 1);
  auto phiU = induced_transformation(space, U);
  auto r = phiU.compose(phi).compose(phiU).compose(phi.inverse());
  auto tau = involution_from_slice(C, 1);
  auto phi2inv = FullGroupElement::shift_power(space, -2);
  auto x = commutator(tau.inverse(), phi2inv);
  auto y = commutator(r.inverse(), phi2inv);

  if (!x.compose(x).is_identity()) fail(errc::certification_failure, "x is not an involution");
  for (int k = 1; k <= relation_check_limit; ++k) {
    auto conj = x.conjugate(y.power(k));
    if (!commutator(x, conj).is_identity())
      fail(errc::certification_failure, "lamp relations fail at distance " + std::to_string(k));
  }
  return {x, y};
}

std::vector<FullGroupElement> tower_wreath_generators(const SpacePtr& space, const ClopenSet& U,
                                                      long long n) {
  if (U.is_empty() || n < 1) fail(errc::disjointness_failure, "need a nonempty tower");
  for (long long i = 0; i < n; ++i)
    for (long long j = i + 1; j < n; ++j)
      if (!U.shifted(i).disjoint_from(U.shifted(j)))
        fail(errc::disjointness_failure, "tower levels overlap");
  std::vector<FullGroupElement> gens{induced_transformation(space, U)};
  for (long long k = 0; k + 1 < n; ++k) gens.push_back(involution_from_slice(U.shifted(k), 1));
  return gens;
}

// --------------------------------------------------- growth and orbit maps

GrowthReport ball_growth(const std::vector<FullGroupElement>& gens, int radius,
                         long long element_cap) {
  if (gens.empty()) fail(errc::validation_error, "need at least one generator");
  std::vector<FullGroupElement> sym;
  std::set<std::string> sym_keys;
  for (auto& g : gens)
    for (auto h : {g, g.inverse()})
      if (sym_keys.insert(h.key()).second) sym.push_back(h);

  GrowthReport rep;
  rep.radius = radius;
  std::map<std::string, FullGroupElement> seen;
  auto id = FullGroupElement::identity(gens[0].space());
  seen.emplace(id.key(), id);
  std::vector<FullGroupElement> frontier{id};
  rep.ball_sizes.push_back(1);
  for (int r = 1; r <= radius; ++r) {
    std::vector<FullGroupElement> next;
    for (auto& g : frontier)
      for (auto& s : sym) {
        auto h = s.compose(g);
        if (seen.emplace(h.key(), h).second) {
          next.push_back(h);
          if (static_cast<long long>(seen.size()) > element_cap)
            fail(errc::budget_exceeded, "ball enumeration exceeded the element cap");
        }
      }
    frontier = std::move(next);
    rep.ball_sizes.push_back(static_cast<long long>(seen.size()));
  }
  for (auto& [k, g] : seen) rep.census.push_back(k), (void)g;
  return rep;
}

SchreierGraph schreier_ball(const std::vector<FullGroupElement>& gens, const PointOracle& x,
                            int radius) {
  if (!x.space->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "orbit enumeration needs an aperiodic minimal system");
  SchreierGraph graph;
  std::set<long long> vertices{0};
  std::set<std::tuple<long long, long long, int>> edge_set;
  std::vector<long long> frontier{0};
  for (int r = 0; r < radius; ++r) {
    std::vector<long long> next;
    for (long long j : frontier)
      for (size_t s = 0; s < gens.size(); ++s) {
        long long to = j + gens[s].cocycle_at(x.shifted(j));
        edge_set.insert({j, to, static_cast<int>(s)});
        if (vertices.insert(to).second) next.push_back(to);
      }
    frontier = std::move(next);
  }
  graph.vertices.assign(vertices.begin(), vertices.end());
  for (auto& [from, to, s] : edge_set) graph.edges.push_back({from, to, s});
  return graph;
}

std::map<long long, long long> wobbling_image(const FullGroupElement& g, const PointOracle& x,
                                              long long window) {
  if (!g.space()->is_minimal_aperiodic())
    fail(errc::unsupported_for_space, "orbit maps need an aperiodic minimal system");
  std::map<long long, long long> out;
  for (long long k = -window; k <= window; ++k) out[k] = k + g.cocycle_at(x.shifted(k));
  return out;
}

}  // namespace cantor
