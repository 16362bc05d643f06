#include "cantor/io.hpp"

#include <fstream>
#include <sstream>

namespace cantor {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(errc::parse_error, what); }

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const Json::exception& e) {
    bad(std::string("field \"") + name + "\": " + e.what());
  }
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

SpaceSpec space_spec_from_json(const Json& j) {
  SpaceSpec spec;
  auto kind = field<std::string>(j, "kind");
  if (kind == "odometer") {
    spec.kind = SpaceKind::odometer;
    spec.ratios = field<std::vector<long long>>(j, "ratios");
  } else if (kind == "substitution") {
    spec.kind = SpaceKind::substitution;
    auto rules = field<std::map<std::string, std::string>>(j, "rules");
    for (auto& [sym, image] : rules) {
      if (sym.size() != 1) bad("substitution symbols must be single characters");
      spec.rules[sym[0]] = image;
    }
  } else if (kind == "sft") {
    spec.kind = SpaceKind::sft;
    for (auto& s : field<std::vector<std::string>>(j, "alphabet")) {
      if (s.size() != 1) bad("alphabet symbols must be single characters");
      spec.alphabet.symbols += s;
    }
    spec.forbidden = field<std::vector<std::string>>(j, "forbidden");
  } else {
    bad("unknown space kind: " + kind);
  }
  spec.validate();
  return spec;
}

Json space_spec_to_json(const SpaceSpec& spec) {
  Json j;
  switch (spec.kind) {
    case SpaceKind::odometer:
      j["kind"] = "odometer";
      j["ratios"] = spec.ratios;
      break;
    case SpaceKind::substitution: {
      j["kind"] = "substitution";
      Json rules = Json::object();
      for (auto& [c, image] : spec.rules) rules[std::string(1, c)] = image;
      j["rules"] = rules;
      break;
    }
    case SpaceKind::sft: {
      j["kind"] = "sft";
      Json alpha = Json::array();
      for (char c : spec.alphabet.symbols) alpha.push_back(std::string(1, c));
      j["alphabet"] = alpha;
      j["forbidden"] = spec.forbidden;
      break;
    }
  }
  return j;
}

ClopenSet clopen_from_json(const SpacePtr& space, const Json& j) {
  if (j.is_object() && j.contains("level")) {
    return ClopenSet::residue_set(space, field<int>(j, "level"),
                                  field<std::vector<long long>>(j, "residues"));
  }
  if (j.is_object() && j.contains("interval")) {
    auto iv = field<std::vector<long long>>(j, "interval");
    if (iv.size() != 2) bad("interval must be [lo, hi]");
    auto words = field<std::vector<std::string>>(j, "words");
    if (words.empty()) return ClopenSet::empty_set(space);
    if (words.size() == 1 && words[0].empty()) return ClopenSet::full_set(space);
    return ClopenSet::word_set(space, iv[0], words);
  }
  bad("clopen set needs \"level\" or \"interval\"");
}

Json clopen_to_json(const ClopenSet& s) {
  Json j;
  if (!s.space()->is_subshift()) {
    j["level"] = s.level();
    j["residues"] = s.residues();
  } else {
    j["interval"] = {s.lo(), s.hi()};
    j["words"] = s.words();
  }
  return j;
}

FullGroupElement element_from_json(const SpacePtr& space, const Json& j) {
  auto id = field<std::string>(j, "space");
  if (id != space->id()) fail(errc::space_mismatch, "element is for space " + id);
  std::vector<Atom> atoms;
  if (!j.contains("atoms") || !j.at("atoms").is_array()) bad("missing \"atoms\" array");
  for (auto& a : j.at("atoms"))
    atoms.push_back({clopen_from_json(space, field<Json>(a, "clopen")), field<long long>(a, "power")});
  return FullGroupElement::make(space, std::move(atoms));
}

Json element_to_json(const FullGroupElement& g) {
  Json j;
  j["space"] = g.space()->id();
  Json atoms = Json::array();
  for (auto& a : g.atoms()) atoms.push_back({{"clopen", clopen_to_json(a.set)}, {"power", a.power}});
  j["atoms"] = atoms;
  return j;
}

ThompsonTable table_from_json(const Json& j) {
  auto lj = field<Json>(j, "language");
  PathLanguage lang;
  auto kind = field<std::string>(lj, "kind");
  if (kind == "free") {
    lang = PathLanguage::free_monoid_lang(field<int>(lj, "n"), field<int>(lj, "r"));
  } else if (kind == "graph") {
    std::vector<std::pair<int, int>> edges;
    for (auto& e : field<std::vector<std::vector<int>>>(lj, "edges")) {
      if (e.size() != 2) bad("graph edges must be [source, range]");
      edges.emplace_back(e[0], e[1]);
    }
    lang = PathLanguage::graph_lang(std::move(edges));
  } else {
    bad("unknown language kind: " + kind);
  }
  return ThompsonTable::make(lang, field<std::vector<Word>>(j, "domain"),
                             field<std::vector<Word>>(j, "range"));
}

Json table_to_json(const ThompsonTable& t) {
  Json j;
  auto& lang = t.language();
  if (lang.kind == PathLanguage::Kind::free_monoid) {
    j["language"] = {{"kind", "free"}, {"n", lang.n}, {"r", lang.r}};
  } else {
    Json edges = Json::array();
    for (auto& [s, r] : lang.graph_edges) edges.push_back({s, r});
    j["language"] = {{"kind", "graph"}, {"edges", edges}};
  }
  j["domain"] = t.domain();
  j["range"] = t.range();
  return j;
}

Json kr_to_json(const KRPartition& kr) {
  Json towers = Json::array();
  for (auto& t : kr.towers)
    towers.push_back({{"base", clopen_to_json(t.base)}, {"height", t.height}});
  return Json{{"towers", towers}};
}

BratteliDiagram bratteli_from_json(const Json& j) {
  BratteliDiagram d;
  d.level_sizes = field<std::vector<int>>(j, "levels");
  d.from_nested = field<bool>(j, "from_nested");
  if (!j.contains("edges") || !j.at("edges").is_array()) bad("missing \"edges\" array");
  for (auto& layer : j.at("edges")) {
    std::vector<BratteliDiagram::Edge> es;
    for (auto& e : layer)
      es.push_back({field<int>(e, "source"), field<int>(e, "range"), field<int>(e, "order")});
    d.edges.push_back(std::move(es));
  }
  d.validate();
  return d;
}

Json bratteli_to_json(const BratteliDiagram& d) {
  Json j;
  j["levels"] = d.level_sizes;
  j["from_nested"] = d.from_nested;
  Json layers = Json::array();
  for (auto& layer : d.edges) {
    Json es = Json::array();
    for (auto& e : layer)
      es.push_back({{"source", e.source}, {"range", e.range}, {"order", e.order}});
    layers.push_back(es);
  }
  j["edges"] = layers;
  return j;
}

Json growth_to_json(const GrowthReport& r) {
  return Json{{"radius", r.radius}, {"ball_sizes", r.ball_sizes},
              {"census_size", static_cast<long long>(r.census.size())}};
}

Json schreier_to_json(const SchreierGraph& g) {
  Json edges = Json::array();
  for (auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"gen", e.gen}});
  return Json{{"vertices", g.vertices}, {"edges", edges}};
}

std::string bratteli_dot(const BratteliDiagram& d) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n";
  for (size_t n = 0; n < d.level_sizes.size(); ++n) {
    os << "  { rank=same;";
    for (int v = 0; v < d.level_sizes[n]; ++v) os << " v" << n << "_" << v << ";";
    os << " }\n";
  }
  for (size_t n = 0; n < d.edges.size(); ++n)
    for (auto& e : d.edges[n])
      os << "  v" << n << "_" << e.source << " -> v" << n + 1 << "_" << e.range << " [label=\"("
         << e.source << "," << e.order << ")\"];\n";
  os << "}\n";
  return os.str();
}

std::string schreier_dot(const SchreierGraph& g) {
  std::ostringstream os;
  os << "digraph schreier {\n";
  for (long long v : g.vertices) os << "  n" << (v < 0 ? "m" : "") << std::llabs(v) << " [label=\"" << v << "\"];\n";
  for (auto& e : g.edges)
    os << "  n" << (e.from < 0 ? "m" : "") << std::llabs(e.from) << " -> n"
       << (e.to < 0 ? "m" : "") << std::llabs(e.to) << " [label=\"g" << e.gen << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace cantor
