#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cantor/error.hpp"

namespace cantor {

class SpaceModel;
using SpacePtr = std::shared_ptr<const SpaceModel>;

enum class SpaceKind { odometer, substitution, sft };

/// Ordered finite alphabet. Symbols are single characters; the order of
/// `symbols` is the canonical order used everywhere for serialization.
struct Alphabet {
  std::string symbols;

  int size() const { return static_cast<int>(symbols.size()); }
  int index_of(char c) const;
  bool valid() const;
};

/// Declarative description of a symbolic Cantor space.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::odometer;

  // odometer: ratios r_1, r_2, ... (each >= 2); a_n = r_1 * ... * r_n
  std::vector<long long> ratios;

  // substitution: rule per symbol (must be primitive)
  Alphabet alphabet;
  std::map<char, std::string> rules;

  // sft: alphabet + finite forbidden word list
  std::vector<std::string> forbidden;

  void validate() const;
  /// Canonical serialization; doubles as the library-wide space identity key.
  std::string canonical_id() const;
};

struct EntropyReport {
  long long word_count = 0;  // rho(n)
  int n = 1;
  double approx = 0.0;  // log(word_count)/n, derived float
};

/// Deterministic coordinate oracle for a designated point (or a shift of it).
struct PointOracle {
  SpacePtr space;
  long long shift = 0;   // this oracle describes phi^shift(x0)
  std::string name;

  /// Subshift coordinates on [a, b] (inclusive), as a word.
  std::string read(long long a, long long b) const;
  /// Odometer residue at a level (1-based; level 0 means mod 1).
  long long residue(int level) const;

  PointOracle shifted(long long m) const;
};

/// Exact clopen subset of a space. Subshift spaces: a word-window set on an
/// integer interval. Odometer spaces: a residue set at a level. Always held
/// in canonical (minimal window / minimal level) form; canonical
/// serialization equality is set equality.
class ClopenSet {
 public:
  ClopenSet() = default;

  static ClopenSet empty_set(SpacePtr space);
  static ClopenSet full_set(SpacePtr space);
  /// Subshift: all x with x_[lo, lo+|w|-1] = w for some w in words.
  static ClopenSet word_set(SpacePtr space, long long lo, std::vector<std::string> words);
  static ClopenSet cylinder(SpacePtr space, long long pos, const std::string& word);
  /// Odometer: union of residue classes mod a_level.
  static ClopenSet residue_set(SpacePtr space, int level, std::vector<long long> residues);

  const SpacePtr& space() const { return space_; }

  ClopenSet unite(const ClopenSet& other) const;
  ClopenSet intersect(const ClopenSet& other) const;
  ClopenSet complement() const;
  ClopenSet difference(const ClopenSet& other) const;
  /// phi^m image. Subshifts: window moves from [a,b] to [a-m, b-m]
  /// (convention sigma(x)_i = x_{i+1}); odometers: residues shifted by +m.
  ClopenSet shifted(long long m) const;

  bool is_empty() const;
  bool is_full() const;
  bool equals(const ClopenSet& other) const;
  bool subset_of(const ClopenSet& other) const;
  bool disjoint_from(const ClopenSet& other) const;
  bool contains_point(const PointOracle& p) const;

  /// Total canonical key; defines library-wide ordering of clopens.
  std::string key() const;

  // representation accessors (canonical form)
  bool degenerate() const { return degenerate_; }  // empty or full
  long long lo() const { return lo_; }
  long long hi() const { return hi_; }
  const std::vector<std::string>& words() const { return words_; }
  int level() const { return level_; }
  const std::vector<long long>& residues() const { return residues_; }

  // representation lifted to a wider window / deeper level (non-canonical)
  ClopenSet lifted_to(long long lo, long long hi) const;        // subshift
  std::vector<long long> residues_at_level(int level) const;    // odometer

 private:
  friend class SpaceModel;
  void canonicalize();

  SpacePtr space_;
  // subshift representation
  bool degenerate_ = true;  // interval empty; words_ = {} (empty) or {""} (full)
  long long lo_ = 0, hi_ = -1;
  std::vector<std::string> words_;  // sorted, unique, admissible
  // odometer representation
  int level_ = 0;
  std::vector<long long> residues_;  // sorted, unique, in [0, a_level)
};

/// Immutable model of a symbolic Cantor space. Construct with `make_space`.
class SpaceModel : public std::enable_shared_from_this<SpaceModel> {
 public:
  explicit SpaceModel(SpaceSpec spec);

  SpaceKind kind() const { return spec_.kind; }
  const SpaceSpec& spec() const { return spec_; }
  const Alphabet& alphabet() const { return spec_.alphabet; }
  const std::string& id() const { return id_; }

  bool is_subshift() const { return spec_.kind != SpaceKind::odometer; }
  /// Odometer, or minimal aperiodic subshift (primitive substitution with
  /// an aperiodic fixed point). SFT spaces are never minimal here.
  bool is_minimal_aperiodic() const;

  /// Admissible words of length n, sorted; certified complete.
  const std::vector<std::string>& language(int n) const;
  bool word_admissible(const std::string& w) const;
  long long complexity(int n) const;
  EntropyReport entropy_estimate(int n) const;

  // odometer level data; a(0) = 1
  int levels() const;
  long long level_order(int level) const;

  PointOracle designated_point() const;
  /// Coordinate of the designated (unshifted) point.
  char point_symbol(long long i) const;

  // substitution metadata
  int seed_power() const { return seed_power_; }
  char seed_left() const { return seed_left_; }
  char seed_right() const { return seed_right_; }

  struct Limits {
    int max_language_length = 4096;
    long long max_language_size = 2000000;
    long long max_point_expansion = 8000000;
    int max_certification_iters = 96;
  };
  const Limits& limits() const { return limits_; }

 private:
  std::string apply_rules(const std::string& w, int times = 1) const;
  std::vector<std::string> compute_language(int n) const;
  void init_substitution();
  void init_sft();
  void ensure_point_window(long long a, long long b) const;

  SpaceSpec spec_;
  std::string id_;
  Limits limits_;

  // substitution: two-sided fixed point seed for sigma^seed_power_
  int seed_power_ = 1;
  char seed_left_ = 0, seed_right_ = 0;
  int primitivity_exponent_ = 1;

  // sft transfer graph: vertices = admissible words of length ctx_len_,
  // pruned to the bi-infinite core; edge u -> v on symbol v.back()
  int ctx_len_ = 1;
  std::vector<std::string> vertices_;
  std::vector<std::vector<int>> out_, in_;
  std::string periodic_word_;  // designated periodic point (repeats two-sidedly)

  mutable std::mutex mu_;
  mutable std::map<int, std::vector<std::string>> language_cache_;
  mutable std::string point_left_, point_right_;  // coords [-|L|,-1], [0,|R|-1]
  mutable std::optional<bool> minimal_aperiodic_;
};

SpacePtr make_space(const SpaceSpec& spec);

/// Exact set operation dispatch used by the CLI.
ClopenSet clopen_boolean(const std::string& op, const ClopenSet& a, const ClopenSet* b);

/// Index of the unique partition atom containing p; checks that exactly one
/// atom contains the point and that the atoms cover the space.
int locate(const PointOracle& p, const std::vector<ClopenSet>& partition);

}  // namespace cantor
