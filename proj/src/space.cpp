#include "cantor/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace cantor {

int Alphabet::index_of(char c) const {
  auto pos = symbols.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

bool Alphabet::valid() const {
  if (symbols.size() < 2) return false;
  std::set<char> seen(symbols.begin(), symbols.end());
  return seen.size() == symbols.size();
}

void SpaceSpec::validate() const {
  switch (kind) {
    case SpaceKind::odometer: {
      if (ratios.empty()) fail(errc::bad_odometer_ratios, "need at least one ratio");
      long long prod = 1;
      for (long long r : ratios) {
        if (r < 2) fail(errc::bad_odometer_ratios, "ratios must be >= 2");
        if (prod > (1LL << 58) / r) fail(errc::bad_odometer_ratios, "level order overflow");
        prod *= r;
      }
      break;
    }
    case SpaceKind::substitution: {
      if (rules.size() < 2) fail(errc::non_primitive_substitution, "need at least two symbols");
      for (auto& [c, w] : rules) {
        if (w.empty()) fail(errc::non_primitive_substitution, "empty rule image");
        for (char d : w)
          if (!rules.count(d)) fail(errc::non_primitive_substitution, "rule image uses unknown symbol");
        (void)c;
      }
      break;
    }
    case SpaceKind::sft: {
      if (!alphabet.valid()) fail(errc::empty_sft, "alphabet needs >= 2 distinct symbols");
      for (auto& w : forbidden)
        for (char c : w)
          if (alphabet.index_of(c) < 0) fail(errc::empty_sft, "forbidden word uses unknown symbol");
      break;
    }
  }
}

std::string SpaceSpec::canonical_id() const {
  std::ostringstream os;
  switch (kind) {
    case SpaceKind::odometer: {
      os << "odometer:";
      for (size_t i = 0; i < ratios.size(); ++i) os << (i ? "," : "") << ratios[i];
      break;
    }
    case SpaceKind::substitution: {
      os << "substitution:";
      bool first = true;
      for (auto& [c, w] : rules) {
        os << (first ? "" : ";") << c << ">" << w;
        first = false;
      }
      break;
    }
    case SpaceKind::sft: {
      os << "sft:" << alphabet.symbols << ":";
      auto sorted = forbidden;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (size_t i = 0; i < sorted.size(); ++i) os << (i ? "," : "") << sorted[i];
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- SpaceModel

SpaceModel::SpaceModel(SpaceSpec spec) : spec_(std::move(spec)) {
  if (spec_.kind == SpaceKind::substitution) {
    std::string syms;
    for (auto& [c, w] : spec_.rules) syms.push_back(c), (void)w;
    spec_.alphabet.symbols = syms;
  }
  spec_.validate();
  id_ = spec_.canonical_id();
  if (spec_.kind == SpaceKind::substitution) init_substitution();
  if (spec_.kind == SpaceKind::sft) init_sft();
}

std::string SpaceModel::apply_rules(const std::string& w, int times) const {
  std::string cur = w;
  for (int t = 0; t < times; ++t) {
    std::string next;
    next.reserve(cur.size() * 2);
    for (char c : cur) next += spec_.rules.at(c);
    if (static_cast<long long>(next.size()) > limits_.max_point_expansion)
      fail(errc::depth_exceeded, "substitution image too long");
    cur = std::move(next);
  }
  return cur;
}

void SpaceModel::init_substitution() {
  int m = spec_.alphabet.size();
  // primitivity: some boolean power of the occurrence matrix is all-positive
  std::vector<std::vector<bool>> occ(m, std::vector<bool>(m, false)), pw;
  for (int i = 0; i < m; ++i)
    for (char c : spec_.rules.at(spec_.alphabet.symbols[i]))
      occ[i][spec_.alphabet.index_of(c)] = true;
  pw = occ;
  int bound = m * m + 1;
  primitivity_exponent_ = 0;
  for (int k = 1; k <= bound; ++k) {
    bool allpos = true;
    for (auto& row : pw)
      for (bool b : row) allpos = allpos && b;
    if (allpos) {
      primitivity_exponent_ = k;
      break;
    }
    std::vector<std::vector<bool>> nx(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (pw[i][j])
          for (int l = 0; l < m; ++l) nx[i][l] = nx[i][l] || occ[j][l];
    pw = std::move(nx);
  }
  if (primitivity_exponent_ == 0) fail(errc::non_primitive_substitution, "no power of the matrix is positive");

  // seed pair: sigma^t(l) ends with l, sigma^t(r) starts with r, word lr admissible
  for (int t = 1; t <= 4 * bound; ++t) {
    std::string heads, tails;
    for (char c : spec_.alphabet.symbols) {
      std::string img = apply_rules(std::string(1, c), t);
      heads.push_back(img.front());
      tails.push_back(img.back());
    }
    std::vector<char> rs, ls;
    for (int i = 0; i < m; ++i) {
      if (heads[i] == spec_.alphabet.symbols[i]) rs.push_back(spec_.alphabet.symbols[i]);
      if (tails[i] == spec_.alphabet.symbols[i]) ls.push_back(spec_.alphabet.symbols[i]);
    }
    if (rs.empty() || ls.empty()) continue;
    for (char l : ls)
      for (char r : rs) {
        std::string lr{l, r};
        if (word_admissible(lr)) {
          seed_power_ = t;
          seed_left_ = l;
          seed_right_ = r;
          return;
        }
      }
  }
  fail(errc::certification_failure, "no two-sided fixed-point seed found");
}

namespace {
bool has_forbidden_factor(const std::string& w, const std::vector<std::string>& forbidden) {
  for (auto& f : forbidden)
    if (!f.empty() && w.find(f) != std::string::npos) return true;
  return false;
}
}  // namespace

void SpaceModel::init_sft() {
  size_t maxf = 1;
  for (auto& f : spec_.forbidden) maxf = std::max(maxf, f.size());
  ctx_len_ = static_cast<int>(std::max<size_t>(1, maxf > 1 ? maxf - 1 : 1));

  // all context words without a forbidden factor
  std::vector<std::string> words{""};
  for (int i = 0; i < ctx_len_; ++i) {
    std::vector<std::string> next;
    for (auto& w : words)
      for (char c : spec_.alphabet.symbols) {
        std::string v = w + c;
        if (!has_forbidden_factor(v, spec_.forbidden)) next.push_back(v);
      }
    if (static_cast<long long>(next.size()) > limits_.max_language_size)
      fail(errc::budget_exceeded, "sft context enumeration too large");
    words = std::move(next);
  }

  std::vector<bool> alive(words.size(), true);
  auto edge_ok = [&](const std::string& u, const std::string& v) {
    if (ctx_len_ > 1 && u.substr(1) != v.substr(0, ctx_len_ - 1)) return false;
    return !has_forbidden_factor(u + v.back(), spec_.forbidden);
  };
  // prune to the bi-infinite core
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < words.size(); ++i) {
      if (!alive[i]) continue;
      bool has_out = false, has_in = false;
      for (size_t j = 0; j < words.size(); ++j) {
        if (!alive[j]) continue;
        has_out = has_out || edge_ok(words[i], words[j]);
        has_in = has_in || edge_ok(words[j], words[i]);
      }
      if (!has_out || !has_in) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  for (size_t i = 0; i < words.size(); ++i)
    if (alive[i]) vertices_.push_back(words[i]);
  if (vertices_.empty()) fail(errc::empty_sft, "no bi-infinite sequences avoid the forbidden words");
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = 0; j < vertices_.size(); ++j)
      if (edge_ok(vertices_[i], vertices_[j])) {
        out_[i].push_back(static_cast<int>(j));
        in_[j].push_back(static_cast<int>(i));
      }

  // designated periodic point: walk first out-edges until a vertex repeats
  std::vector<int> seen(vertices_.size(), -1);
  std::vector<int> walk;
  int v = 0;
  while (seen[v] < 0) {
    seen[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    v = out_[v][0];
  }
  for (size_t i = seen[v]; i < walk.size(); ++i) periodic_word_.push_back(vertices_[walk[i]][0]);
}

bool SpaceModel::is_minimal_aperiodic() const {
  if (spec_.kind == SpaceKind::odometer) return true;
  if (spec_.kind == SpaceKind::sft) return false;
  std::unique_lock lk(mu_);
  if (minimal_aperiodic_) return *minimal_aperiodic_;
  lk.unlock();
  // primitive substitution shifts are minimal; aperiodic iff the complexity
  // keeps growing (stabilization means a finite, hence periodic, system)
  bool ok = true;
  long long prev = complexity(1);
  for (int n = 2; n <= 64 && ok; ++n) {
    long long cur = complexity(n);
    if (cur <= prev || cur < n + 1) ok = false;
    prev = cur;
  }
  lk.lock();
  minimal_aperiodic_ = ok;
  return ok;
}

std::vector<std::string> SpaceModel::compute_language(int n) const {
  if (spec_.kind == SpaceKind::sft) {
    std::set<std::string> res;
    if (n < ctx_len_) {
      for (auto& v : vertices_)
        for (int i = 0; i + n <= static_cast<int>(v.size()); ++i) res.insert(v.substr(i, n));
    } else {
      // word = context window + letters along a walk
      std::vector<std::pair<int, std::string>> frontier;
      for (size_t i = 0; i < vertices_.size(); ++i) frontier.push_back({static_cast<int>(i), vertices_[i]});
      for (int step = ctx_len_; step < n; ++step) {
        std::vector<std::pair<int, std::string>> next;
        for (auto& [v, w] : frontier)
          for (int u : out_[v]) next.push_back({u, w + vertices_[u].back()});
        if (static_cast<long long>(next.size()) > limits_.max_language_size)
          fail(errc::budget_exceeded, "sft language enumeration too large");
        frontier = std::move(next);
      }
      for (auto& [v, w] : frontier) res.insert(w), (void)v;
    }
    return {res.begin(), res.end()};
  }

  // substitution: factors of iterated letter images, accepted when stable for
  // two consecutive iterations past the primitivity + letter-growth threshold
  int k0 = 0;
  {
    std::vector<long long> len(spec_.alphabet.size(), 1);
    while (k0 < limits_.max_certification_iters) {
      long long shortest = *std::min_element(len.begin(), len.end());
      if (shortest >= n) break;
      ++k0;
      std::vector<long long> nx(len.size(), 0);
      for (int i = 0; i < spec_.alphabet.size(); ++i)
        for (char c : spec_.rules.at(spec_.alphabet.symbols[i]))
          nx[i] += len[spec_.alphabet.index_of(c)];
      len = std::move(nx);
    }
  }
  int threshold = primitivity_exponent_ + k0;
  std::map<char, std::string> img;
  for (char c : spec_.alphabet.symbols) img[c] = std::string(1, c);
  std::set<std::string> prev, cur;
  for (int k = 1; k <= limits_.max_certification_iters; ++k) {
    for (auto& [c, w] : img) img[c] = apply_rules(w), (void)w;
    cur.clear();
    for (auto& [c, w] : img) {
      (void)c;
      for (int i = 0; i + n <= static_cast<int>(w.size()); ++i) cur.insert(w.substr(i, n));
    }
    if (k > threshold && !prev.empty() && cur == prev) return {cur.begin(), cur.end()};
    prev = cur;
  }
  fail(errc::certification_failure, "factor set did not stabilize");
}

const std::vector<std::string>& SpaceModel::language(int n) const {
  if (spec_.kind == SpaceKind::odometer)
    fail(errc::unsupported_for_space, "odometers have no word language; use residue levels");
  if (n < 1 || n > limits_.max_language_length) fail(errc::budget_exceeded, "language length out of range");
  std::lock_guard lk(mu_);
  auto it = language_cache_.find(n);
  if (it != language_cache_.end()) return it->second;
  return language_cache_.emplace(n, compute_language(n)).first->second;
}

bool SpaceModel::word_admissible(const std::string& w) const {
  if (w.empty()) return true;
  if (spec_.kind == SpaceKind::sft) {
    int n = static_cast<int>(w.size());
    if (has_forbidden_factor(w, spec_.forbidden)) return false;
    if (n < ctx_len_) {
      for (auto& v : vertices_)
        if (v.find(w) != std::string::npos) return true;
      return false;
    }
    // must spell a walk through core vertices
    auto vi = std::find(vertices_.begin(), vertices_.end(), w.substr(0, ctx_len_));
    if (vi == vertices_.end()) return false;
    int v = static_cast<int>(vi - vertices_.begin());
    for (int i = ctx_len_; i < n; ++i) {
      int nxt = -1;
      for (int u : out_[v])
        if (vertices_[u].back() == w[i]) nxt = u;
      if (nxt < 0) return false;
      v = nxt;
    }
    return true;
  }
  const auto& lang = language(static_cast<int>(w.size()));
  return std::binary_search(lang.begin(), lang.end(), w);
}

long long SpaceModel::complexity(int n) const {
  if (spec_.kind == SpaceKind::odometer) return level_order(std::min(n, levels()));
  return static_cast<long long>(language(n).size());
}

EntropyReport SpaceModel::entropy_estimate(int n) const {
  if (n < 1) fail(errc::validation_error, "n must be positive");
  EntropyReport rep;
  rep.n = n;
  rep.word_count = complexity(n);
  rep.approx = std::log(static_cast<double>(rep.word_count)) / n;
  return rep;
}

int SpaceModel::levels() const { return static_cast<int>(spec_.ratios.size()); }

long long SpaceModel::level_order(int level) const {
  if (spec_.kind != SpaceKind::odometer) fail(errc::unsupported_for_space, "not an odometer");
  if (level < 0 || level > levels()) fail(errc::depth_exceeded, "level beyond configured ratios");
  long long a = 1;
  for (int i = 0; i < level; ++i) a *= spec_.ratios[i];
  return a;
}

PointOracle SpaceModel::designated_point() const {
  PointOracle p;
  p.space = shared_from_this();
  p.shift = 0;
  switch (spec_.kind) {
    case SpaceKind::odometer: p.name = "all-zeros"; break;
    case SpaceKind::substitution:
      p.name = std::string("fixed-point:") + seed_left_ + "." + seed_right_;
      break;
    case SpaceKind::sft: p.name = "periodic:" + periodic_word_; break;
  }
  return p;
}

void SpaceModel::ensure_point_window(long long a, long long b) const {
  if (b - a > limits_.max_point_expansion) fail(errc::depth_exceeded, "window too wide");
  long long left_need = a < 0 ? -a : 0;
  long long right_need = b >= 0 ? b + 1 : 0;
  std::lock_guard lk(mu_);
  if (point_right_.empty()) {
    point_left_ = std::string(1, seed_left_);
    point_right_ = std::string(1, seed_right_);
  }
  while (static_cast<long long>(point_left_.size()) < left_need ||
         static_cast<long long>(point_right_.size()) < right_need) {
    point_left_ = apply_rules(point_left_, seed_power_);
    point_right_ = apply_rules(point_right_, seed_power_);
  }
}

char SpaceModel::point_symbol(long long i) const {
  switch (spec_.kind) {
    case SpaceKind::odometer: fail(errc::unsupported_for_space, "odometer points have no symbols");
    case SpaceKind::sft: {
      long long p = static_cast<long long>(periodic_word_.size());
      return periodic_word_[static_cast<size_t>(((i % p) + p) % p)];
    }
    case SpaceKind::substitution: {
      ensure_point_window(i, i);
      std::lock_guard lk(mu_);
      if (i >= 0) return point_right_[static_cast<size_t>(i)];
      return point_left_[point_left_.size() - static_cast<size_t>(-i)];
    }
  }
  fail(errc::validation_error, "unreachable");
}

SpacePtr make_space(const SpaceSpec& spec) { return std::make_shared<const SpaceModel>(spec); }

// --------------------------------------------------------------- PointOracle

std::string PointOracle::read(long long a, long long b) const {
  if (!space->is_subshift()) fail(errc::unsupported_for_space, "residue API applies to odometers");
  if (a > b) return "";
  std::string w;
  for (long long i = a; i <= b; ++i) w.push_back(space->point_symbol(i + shift));
  return w;
}

long long PointOracle::residue(int level) const {
  if (space->is_subshift()) fail(errc::unsupported_for_space, "word API applies to subshifts");
  long long a = space->level_order(level);
  return ((shift % a) + a) % a;
}

PointOracle PointOracle::shifted(long long m) const {
  PointOracle p = *this;
  p.shift += m;
  return p;
}

// ----------------------------------------------------------------- ClopenSet

ClopenSet ClopenSet::empty_set(SpacePtr space) {
  ClopenSet s;
  s.space_ = std::move(space);
  return s;
}

ClopenSet ClopenSet::full_set(SpacePtr space) {
  ClopenSet s;
  s.space_ = std::move(space);
  if (s.space_->is_subshift()) {
    s.words_ = {""};
  } else {
    s.residues_ = {0};
  }
  return s;
}

ClopenSet ClopenSet::word_set(SpacePtr space, long long lo, std::vector<std::string> words) {
  if (!space->is_subshift()) fail(errc::unsupported_for_space, "word sets need a subshift");
  ClopenSet s;
  s.space_ = std::move(space);
  if (words.empty()) return s;
  size_t len = words[0].size();
  for (auto& w : words)
    if (w.size() != len) fail(errc::validation_error, "word set with mixed lengths");
  if (len == 0) return full_set(s.space_);
  s.degenerate_ = false;
  s.lo_ = lo;
  s.hi_ = lo + static_cast<long long>(len) - 1;
  s.words_ = std::move(words);
  s.canonicalize();
  return s;
}

ClopenSet ClopenSet::cylinder(SpacePtr space, long long pos, const std::string& word) {
  return word_set(std::move(space), pos, {word});
}

ClopenSet ClopenSet::residue_set(SpacePtr space, int level, std::vector<long long> residues) {
  if (space->is_subshift()) fail(errc::unsupported_for_space, "residue sets need an odometer");
  long long a = space->level_order(level);
  ClopenSet s;
  s.space_ = std::move(space);
  s.level_ = level;
  for (long long& r : residues) r = ((r % a) + a) % a;
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  s.residues_ = std::move(residues);
  s.canonicalize();
  return s;
}

void ClopenSet::canonicalize() {
  if (!space_->is_subshift()) {
    // reduce the level while every lower-level residue class is all-in/all-out
    while (level_ > 0) {
      long long prev = space_->level_order(level_ - 1);
      long long ratio = space_->level_order(level_) / prev;
      std::map<long long, long long> fiber_count;
      for (long long r : residues_) ++fiber_count[r % prev];
      bool reducible = true;
      for (auto& [c, k] : fiber_count) reducible = reducible && k == ratio, (void)c;
      if (!reducible) break;
      std::vector<long long> down;
      for (auto& [c, k] : fiber_count) down.push_back(c), (void)k;
      residues_ = std::move(down);
      --level_;
    }
    if (level_ == 0 && residues_.empty()) residues_.clear();
    return;
  }

  if (degenerate_) return;
  const auto& sp = *space_;
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  {
    std::vector<std::string> kept;
    for (auto& w : words_)
      if (sp.word_admissible(w)) kept.push_back(w);
    words_ = std::move(kept);
  }
  for (;;) {
    if (words_.empty()) {
      degenerate_ = true;
      lo_ = 0;
      hi_ = -1;
      return;
    }
    int width = static_cast<int>(hi_ - lo_ + 1);
    const auto& lang = sp.language(width);
    if (words_.size() == lang.size()) {
      degenerate_ = true;
      words_ = {""};
      lo_ = 0;
      hi_ = -1;
      return;
    }
    // drop the last coordinate if membership does not depend on it
    std::set<std::string> prefixes, suffixes, wset(words_.begin(), words_.end());
    for (auto& w : words_) {
      prefixes.insert(w.substr(0, width - 1));
      suffixes.insert(w.substr(1));
    }
    bool right_free = true, left_free = true;
    for (auto& v : lang) {
      if (prefixes.count(v.substr(0, width - 1)) && !wset.count(v)) right_free = false;
      if (suffixes.count(v.substr(1)) && !wset.count(v)) left_free = false;
    }
    if (right_free) {
      words_.assign(prefixes.begin(), prefixes.end());
      --hi_;
      if (hi_ < lo_) {
        degenerate_ = true;
        words_ = {""};
        lo_ = 0;
        hi_ = -1;
        return;
      }
      continue;
    }
    if (left_free) {
      words_.assign(suffixes.begin(), suffixes.end());
      ++lo_;
      continue;
    }
    return;
  }
}

ClopenSet ClopenSet::lifted_to(long long lo, long long hi) const {
  ClopenSet s;
  s.space_ = space_;
  s.degenerate_ = false;
  s.lo_ = lo;
  s.hi_ = hi;
  int width = static_cast<int>(hi - lo + 1);
  const auto& lang = space_->language(width);
  if (degenerate_) {
    if (is_full()) s.words_ = lang;
    return s;
  }
  std::set<std::string> wset(words_.begin(), words_.end());
  size_t off = static_cast<size_t>(lo_ - lo), len = static_cast<size_t>(hi_ - lo_ + 1);
  for (auto& v : lang)
    if (wset.count(v.substr(off, len))) s.words_.push_back(v);
  return s;
}

std::vector<long long> ClopenSet::residues_at_level(int level) const {
  long long a = space_->level_order(level_), b = space_->level_order(level);
  std::vector<long long> out;
  for (long long r : residues_)
    for (long long k = r; k < b; k += a) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
void check_same_space(const ClopenSet& a, const ClopenSet& b) {
  if (a.space()->id() != b.space()->id()) fail(errc::space_mismatch, "clopens from different spaces");
}

ClopenSet combine(const ClopenSet& a, const ClopenSet& b, char op) {
  check_same_space(a, b);
  auto sp = a.space();
  if (!sp->is_subshift()) {
    int lvl = std::max(a.level(), b.level());
    auto lift = [&](const ClopenSet& s) {
      std::vector<long long> out;
      long long base = sp->level_order(s.level()), top = sp->level_order(lvl);
      for (long long r : s.residues())
        for (long long k = r; k < top; k += base) out.push_back(k);
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<long long> ra = lift(a), rb = lift(b);
    std::vector<long long> res;
    switch (op) {
      case 'u': std::set_union(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(res)); break;
      case 'i': std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(res)); break;
      case 'd': std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(res)); break;
    }
    return ClopenSet::residue_set(sp, lvl, std::move(res));
  }
  long long lo, hi;
  if (a.degenerate() && b.degenerate()) {
    lo = 0;
    hi = 0;
  } else if (a.degenerate()) {
    lo = b.lo();
    hi = b.hi();
  } else if (b.degenerate()) {
    lo = a.lo();
    hi = a.hi();
  } else {
    lo = std::min(a.lo(), b.lo());
    hi = std::max(a.hi(), b.hi());
  }
  ClopenSet la = a.lifted_to(lo, hi), lb = b.lifted_to(lo, hi);
  std::vector<std::string> res;
  switch (op) {
    case 'u': std::set_union(la.words().begin(), la.words().end(), lb.words().begin(), lb.words().end(), std::back_inserter(res)); break;
    case 'i': std::set_intersection(la.words().begin(), la.words().end(), lb.words().begin(), lb.words().end(), std::back_inserter(res)); break;
    case 'd': std::set_difference(la.words().begin(), la.words().end(), lb.words().begin(), lb.words().end(), std::back_inserter(res)); break;
  }
  if (res.empty()) return ClopenSet::empty_set(sp);
  return ClopenSet::word_set(sp, lo, std::move(res));
}
}  // namespace

ClopenSet ClopenSet::unite(const ClopenSet& other) const { return combine(*this, other, 'u'); }
ClopenSet ClopenSet::intersect(const ClopenSet& other) const { return combine(*this, other, 'i'); }
ClopenSet ClopenSet::difference(const ClopenSet& other) const { return combine(*this, other, 'd'); }

ClopenSet ClopenSet::complement() const { return combine(full_set(space_), *this, 'd'); }

ClopenSet ClopenSet::shifted(long long m) const {
  ClopenSet s = *this;
  if (!space_->is_subshift()) {
    for (long long& r : s.residues_) r = r + m;
    long long a = space_->level_order(level_);
    for (long long& r : s.residues_) r = ((r % a) + a) % a;
    std::sort(s.residues_.begin(), s.residues_.end());
    s.canonicalize();
    return s;
  }
  if (!s.degenerate_) {
    s.lo_ -= m;
    s.hi_ -= m;
  }
  return s;
}

bool ClopenSet::is_empty() const {
  if (space_->is_subshift()) return degenerate_ && words_.empty();
  return residues_.empty();
}

bool ClopenSet::is_full() const {
  if (space_->is_subshift()) return degenerate_ && words_.size() == 1;
  return level_ == 0 && residues_.size() == 1;
}

bool ClopenSet::equals(const ClopenSet& other) const {
  check_same_space(*this, other);
  return key() == other.key();
}

bool ClopenSet::subset_of(const ClopenSet& other) const { return difference(other).is_empty(); }

bool ClopenSet::disjoint_from(const ClopenSet& other) const { return intersect(other).is_empty(); }

bool ClopenSet::contains_point(const PointOracle& p) const {
  if (p.space->id() != space_->id()) fail(errc::space_mismatch, "point from a different space");
  if (!space_->is_subshift())
    return std::binary_search(residues_.begin(), residues_.end(), p.residue(level_));
  if (degenerate_) return is_full();
  std::string w = p.read(lo_, hi_);
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::string ClopenSet::key() const {
  std::ostringstream os;
  if (!space_->is_subshift()) {
    os << "L" << level_ << "{";
    for (size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
    os << "}";
  } else if (is_empty()) {
    os << "empty";
  } else if (is_full()) {
    os << "full";
  } else {
    os << "[" << lo_ << "," << hi_ << "]{";
    for (size_t i = 0; i < words_.size(); ++i) os << (i ? "," : "") << words_[i];
    os << "}";
  }
  return os.str();
}

ClopenSet clopen_boolean(const std::string& op, const ClopenSet& a, const ClopenSet* b) {
  if (op == "complement") return a.complement();
  if (!b) fail(errc::validation_error, op + " needs a second operand");
  if (op == "union") return a.unite(*b);
  if (op == "intersect") return a.intersect(*b);
  if (op == "difference") return a.difference(*b);
  fail(errc::validation_error, "unknown set operation: " + op);
}

int locate(const PointOracle& p, const std::vector<ClopenSet>& partition) {
  if (partition.empty()) fail(errc::not_a_partition, "empty partition");
  ClopenSet acc = ClopenSet::empty_set(partition[0].space());
  for (size_t i = 0; i < partition.size(); ++i) {
    if (!acc.disjoint_from(partition[i])) fail(errc::not_a_partition, "atoms overlap");
    acc = acc.unite(partition[i]);
  }
  if (!acc.is_full()) fail(errc::not_a_partition, "atoms do not cover the space");
  for (size_t i = 0; i < partition.size(); ++i)
    if (partition[i].contains_point(p)) return static_cast<int>(i);
  fail(errc::not_a_partition, "no atom contains the point");
}

}  // namespace cantor
