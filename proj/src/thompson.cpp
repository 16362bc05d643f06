#include "cantor/thompson.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace cantor {

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

bool is_prefix(const Word& a, const Word& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void sort_rows(std::vector<Word>& domain, std::vector<Word>& range) {
  std::vector<size_t> idx(domain.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return length_lex_less(domain[a], domain[b]); });
  std::vector<Word> d, r;
  for (size_t i : idx) d.push_back(domain[i]), r.push_back(range[i]);
  domain = std::move(d);
  range = std::move(r);
}

std::string word_str(const Word& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << w[i];
  return os.str();
}

}  // namespace

PathLanguage PathLanguage::free_monoid_lang(int n, int r) {
  if (n < 2 || r < 1) fail(errc::validation_error, "free language needs n >= 2, r >= 1");
  PathLanguage l;
  l.kind = Kind::free_monoid;
  l.n = n;
  l.r = r;
  return l;
}

PathLanguage PathLanguage::graph_lang(std::vector<std::pair<int, int>> edges) {
  if (edges.empty()) fail(errc::validation_error, "graph language needs edges");
  PathLanguage l;
  l.kind = Kind::graph;
  l.graph_edges = std::move(edges);
  for (auto& [s, t] : l.graph_edges)
    if (s < 0 || t < 0) fail(errc::validation_error, "negative vertex id");
  return l;
}

PathLanguage PathLanguage::bouquet(int loops) {
  std::vector<std::pair<int, int>> edges(static_cast<size_t>(loops), {0, 0});
  return graph_lang(std::move(edges));
}

std::vector<Word> PathLanguage::roots() const {
  std::vector<Word> out;
  int count = kind == Kind::free_monoid ? r : static_cast<int>(graph_edges.size());
  for (int i = 0; i < count; ++i) out.push_back({i});
  return out;
}

std::vector<int> PathLanguage::extensions(const Word& w) const {
  std::vector<int> out;
  if (kind == Kind::free_monoid) {
    for (int s = 0; s < n; ++s) out.push_back(s);
  } else {
    int v = terminal_vertex(w);
    for (size_t e = 0; e < graph_edges.size(); ++e)
      if (graph_edges[e].first == v) out.push_back(static_cast<int>(e));
  }
  return out;
}

bool PathLanguage::valid_word(const Word& w) const {
  if (w.empty()) return false;
  if (kind == Kind::free_monoid) {
    if (w[0] < 0 || w[0] >= r) return false;
    for (size_t i = 1; i < w.size(); ++i)
      if (w[i] < 0 || w[i] >= n) return false;
    return true;
  }
  for (int e : w)
    if (e < 0 || e >= static_cast<int>(graph_edges.size())) return false;
  for (size_t i = 1; i < w.size(); ++i)
    if (graph_edges[static_cast<size_t>(w[i])].first !=
        graph_edges[static_cast<size_t>(w[i - 1])].second)
      return false;
  return true;
}

int PathLanguage::terminal_vertex(const Word& w) const {
  if (kind != Kind::graph) fail(errc::validation_error, "terminal vertex of a free word");
  return graph_edges[static_cast<size_t>(w.back())].second;
}

std::string PathLanguage::key() const {
  std::ostringstream os;
  if (kind == Kind::free_monoid) {
    os << "free:" << n << ":" << r;
  } else {
    os << "graph:";
    for (size_t e = 0; e < graph_edges.size(); ++e)
      os << (e ? ";" : "") << graph_edges[e].first << ">" << graph_edges[e].second;
  }
  return os.str();
}

void validate_basis(const PathLanguage& lang, const std::vector<Word>& basis) {
  if (basis.empty()) fail(errc::not_maximal, "empty basis");
  for (auto& w : basis)
    if (!lang.valid_word(w)) fail(errc::not_antichain, "word not in the language: " + word_str(w));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      if (i != j && is_prefix(basis[i], basis[j]))
        fail(errc::not_antichain, word_str(basis[i]) + " is a prefix of " + word_str(basis[j]));

  std::set<Word> cur(basis.begin(), basis.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& w : cur) {
      if (w.size() < 2) continue;
      Word p(w.begin(), w.end() - 1);
      auto exts = lang.extensions(p);
      bool all = !exts.empty();
      for (int s : exts) {
        Word child = p;
        child.push_back(s);
        if (!cur.count(child)) {
          all = false;
          break;
        }
      }
      if (all) {
        for (int s : exts) {
          Word child = p;
          child.push_back(s);
          cur.erase(child);
        }
        cur.insert(p);
        changed = true;
        break;
      }
    }
  }
  auto roots = lang.roots();
  if (cur != std::set<Word>(roots.begin(), roots.end()))
    fail(errc::not_maximal, "contraction does not reach the root set");
}

CommonExpansion common_expansion(const PathLanguage& lang, const std::vector<Word>& B,
                                 const std::vector<Word>& C) {
  validate_basis(lang, B);
  validate_basis(lang, C);
  CommonExpansion out;
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < C.size(); ++j)
      if (is_prefix(C[j], B[i])) {
        out.basis.push_back(B[i]);
        out.from_first.push_back(static_cast<int>(i));
        out.from_second.push_back(static_cast<int>(j));
      }
  for (size_t j = 0; j < C.size(); ++j)
    for (size_t i = 0; i < B.size(); ++i)
      if (is_prefix(B[i], C[j]) && B[i] != C[j]) {
        out.basis.push_back(C[j]);
        out.from_first.push_back(static_cast<int>(i));
        out.from_second.push_back(static_cast<int>(j));
      }
  std::vector<size_t> idx(out.basis.size());
  for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return length_lex_less(out.basis[a], out.basis[b]); });
  CommonExpansion sorted;
  for (size_t k : idx) {
    sorted.basis.push_back(out.basis[k]);
    sorted.from_first.push_back(out.from_first[k]);
    sorted.from_second.push_back(out.from_second[k]);
  }
  return sorted;
}

ThompsonTable ThompsonTable::make_raw(PathLanguage lang, std::vector<Word> domain,
                                      std::vector<Word> range) {
  validate_basis(lang, domain);
  validate_basis(lang, range);
  if (domain.size() != range.size()) fail(errc::validation_error, "bases of different sizes");
  if (lang.kind == PathLanguage::Kind::graph)
    for (size_t i = 0; i < domain.size(); ++i)
      if (lang.terminal_vertex(domain[i]) != lang.terminal_vertex(range[i]))
        fail(errc::range_vertex_mismatch,
             word_str(domain[i]) + " and " + word_str(range[i]) + " end at different vertices");
  sort_rows(domain, range);
  ThompsonTable t;
  t.lang_ = std::move(lang);
  t.domain_ = std::move(domain);
  t.range_ = std::move(range);
  return t;
}

ThompsonTable ThompsonTable::make(PathLanguage lang, std::vector<Word> domain,
                                  std::vector<Word> range) {
  return make_raw(std::move(lang), std::move(domain), std::move(range)).canonicalized();
}

ThompsonTable ThompsonTable::identity(PathLanguage lang) {
  auto roots = lang.roots();
  return make_raw(std::move(lang), roots, roots);
}

ThompsonTable ThompsonTable::canonicalized(std::mt19937_64* rng) const {
  std::vector<Word> domain = domain_, range = range_;
  while (true) {
    // applicable contractions: (parent, image parent, rows of the family)
    struct Contraction {
      Word p, q;
      std::vector<size_t> rows;
    };
    std::vector<Contraction> found;
    std::set<Word> seen_parents;
    std::map<Word, size_t> row_of;
    for (size_t i = 0; i < domain.size(); ++i) row_of[domain[i]] = i;
    for (size_t i = 0; i < domain.size(); ++i) {
      if (domain[i].size() < 2) continue;
      Word p(domain[i].begin(), domain[i].end() - 1);
      if (!seen_parents.insert(p).second) continue;
      auto exts = lang_.extensions(p);
      if (exts.empty()) continue;
      Word q;
      std::vector<size_t> rows;
      bool ok = true;
      for (int s : exts) {
        Word child = p;
        child.push_back(s);
        auto it = row_of.find(child);
        if (it == row_of.end()) {
          ok = false;
          break;
        }
        const Word& img = range[it->second];
        if (img.size() < 2 || img.back() != s) {
          ok = false;
          break;
        }
        Word qc(img.begin(), img.end() - 1);
        if (rows.empty())
          q = qc;
        else if (q != qc) {
          ok = false;
          break;
        }
        rows.push_back(it->second);
      }
      if (ok) found.push_back({p, q, rows});
    }
    if (found.empty()) break;
    auto& c = rng ? found[(*rng)() % found.size()] : found.front();
    std::set<size_t> drop(c.rows.begin(), c.rows.end());
    std::vector<Word> d, r;
    for (size_t i = 0; i < domain.size(); ++i)
      if (!drop.count(i)) d.push_back(domain[i]), r.push_back(range[i]);
    d.push_back(c.p);
    r.push_back(c.q);
    domain = std::move(d);
    range = std::move(r);
  }
  sort_rows(domain, range);
  ThompsonTable t;
  t.lang_ = lang_;
  t.domain_ = std::move(domain);
  t.range_ = std::move(range);
  return t;
}

ThompsonTable ThompsonTable::compose(const ThompsonTable& h) const {
  if (!lang_.same_as(h.lang_)) fail(errc::language_mismatch, "tables over different languages");
  auto ce = common_expansion(lang_, h.range_, domain_);
  std::vector<Word> domain, range;
  for (size_t k = 0; k < ce.basis.size(); ++k) {
    const Word& e = ce.basis[k];
    const Word& hr = h.range_[static_cast<size_t>(ce.from_first[k])];
    const Word& gd = domain_[static_cast<size_t>(ce.from_second[k])];
    Word d = h.domain_[static_cast<size_t>(ce.from_first[k])];
    d.insert(d.end(), e.begin() + static_cast<long>(hr.size()), e.end());
    Word r = range_[static_cast<size_t>(ce.from_second[k])];
    r.insert(r.end(), e.begin() + static_cast<long>(gd.size()), e.end());
    domain.push_back(std::move(d));
    range.push_back(std::move(r));
  }
  return make(lang_, std::move(domain), std::move(range));
}

ThompsonTable ThompsonTable::inverse() const { return make(lang_, range_, domain_); }

Word ThompsonTable::act_on_word(const Word& w) const {
  for (size_t i = 0; i < domain_.size(); ++i)
    if (is_prefix(domain_[i], w)) {
      Word out = range_[i];
      out.insert(out.end(), w.begin() + static_cast<long>(domain_[i].size()), w.end());
      return out;
    }
  fail(errc::word_too_short, "no domain basis element is a prefix of " + word_str(w));
}

std::optional<long long> ThompsonTable::order(long long bound) const {
  auto g = canonicalized();
  for (long long k = 1; k <= bound; ++k) {
    if (g.is_identity()) return k;
    if (k < bound) g = compose(g);
  }
  return std::nullopt;
}

bool ThompsonTable::is_identity() const { return domain_ == range_; }

bool ThompsonTable::equals(const ThompsonTable& other) const {
  return table_key() == other.table_key();
}

std::string ThompsonTable::table_key() const {
  auto c = canonicalized();
  std::ostringstream os;
  os << lang_.key();
  for (size_t i = 0; i < c.domain_.size(); ++i)
    os << "|" << word_str(c.domain_[i]) << ">" << word_str(c.range_[i]);
  return os.str();
}

ThompsonTable sft_element(const PathLanguage& graph,
                          const std::vector<std::pair<Word, Word>>& omega_upsilon) {
  if (graph.kind != PathLanguage::Kind::graph)
    fail(errc::validation_error, "sft elements need a graph language");
  std::vector<Word> domain, range;
  for (auto& [omega, upsilon] : omega_upsilon) {
    domain.push_back(upsilon);
    range.push_back(omega);
  }
  try {
    return ThompsonTable::make(graph, std::move(domain), std::move(range));
  } catch (const error& e) {
    if (e.code() == errc::not_antichain || e.code() == errc::not_maximal)
      fail(errc::not_a_basis, e.what());
    throw;
  }
}

}  // namespace cantor
