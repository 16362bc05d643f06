#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cantor/error.hpp"

namespace cantor {

/// Word in a path language, root symbol first. Free case: w[0] is a root
/// index in [0, r), later symbols in [0, n). Graph case: a composable list
/// of edge ids.
using Word = std::vector<int>;

bool length_lex_less(const Word& a, const Word& b);

struct PathLanguage {
  enum class Kind { free_monoid, graph };

  Kind kind = Kind::free_monoid;
  int n = 0, r = 0;                               // free case
  std::vector<std::pair<int, int>> graph_edges;   // graph case: (source, range)

  static PathLanguage free_monoid_lang(int n, int r);
  static PathLanguage graph_lang(std::vector<std::pair<int, int>> edges);
  static PathLanguage bouquet(int loops);  // one vertex, `loops` loop edges

  std::vector<Word> roots() const;
  std::vector<int> extensions(const Word& w) const;  // symbols that may follow w
  bool valid_word(const Word& w) const;
  int terminal_vertex(const Word& w) const;  // graph case only
  std::string key() const;
  bool same_as(const PathLanguage& other) const { return key() == other.key(); }
};

/// Checks that `basis` is an antichain whose iterated sibling-family
/// contraction reaches the root set.
void validate_basis(const PathLanguage& lang, const std::vector<Word>& basis);

struct CommonExpansion {
  std::vector<Word> basis;
  std::vector<int> from_first, from_second;  // index of the covering element
};

/// Coarsest common expansion of two bases: leafwise the deeper element wins.
CommonExpansion common_expansion(const PathLanguage& lang, const std::vector<Word>& B,
                                 const std::vector<Word>& C);

/// Prefix-exchange bijection given by parallel domain/range bases.
class ThompsonTable {
 public:
  static ThompsonTable make(PathLanguage lang, std::vector<Word> domain, std::vector<Word> range);
  static ThompsonTable make_raw(PathLanguage lang, std::vector<Word> domain,
                                std::vector<Word> range);  // validated, not contracted
  static ThompsonTable identity(PathLanguage lang);

  /// Contracts order-preserving sibling families until none remains; with an
  /// rng, each round applies a randomly chosen applicable contraction.
  ThompsonTable canonicalized(std::mt19937_64* rng = nullptr) const;

  ThompsonTable compose(const ThompsonTable& h) const;  // this after h
  ThompsonTable inverse() const;
  Word act_on_word(const Word& w) const;
  std::optional<long long> order(long long bound) const;

  bool is_identity() const;
  bool equals(const ThompsonTable& other) const;
  std::string table_key() const;

  const PathLanguage& language() const { return lang_; }
  const std::vector<Word>& domain() const { return domain_; }
  const std::vector<Word>& range() const { return range_; }

 private:
  ThompsonTable() = default;
  PathLanguage lang_;
  std::vector<Word> domain_, range_;  // parallel rows, sorted by domain word
};

/// Slice-decomposition element of an SFT groupoid full group: maps the
/// cylinder of upsilon_i onto the cylinder of omega_i.
ThompsonTable sft_element(const PathLanguage& graph,
                          const std::vector<std::pair<Word, Word>>& omega_upsilon);

}  // namespace cantor
