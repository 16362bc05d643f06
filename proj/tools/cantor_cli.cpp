#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

#include "cantor/io.hpp"

using namespace cantor;

namespace {

struct Opts {
  std::string space, element, table, out, format = "json", method = "orbit", level_list;
  std::vector<std::string> inputs;
  int n = 1, radius = 2, levels = 3;
  long long bound = 0;  // 0 = per-operation default
};

long long bound_or(const Opts& o, long long fallback) { return o.bound > 0 ? o.bound : fallback; }

void emit(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) fail(errc::parse_error, "cannot write " + o.out);
    f << text << "\n";
  }
}

void emit_json(const Opts& o, const Json& j) { emit(o, j.dump()); }

SpacePtr load_space(const Opts& o) {
  if (o.space.empty()) fail(errc::parse_error, "--space is required");
  return make_space(space_spec_from_json(load_json(o.space)));
}

FullGroupElement load_element(const SpacePtr& sp, const std::string& path) {
  return element_from_json(sp, load_json(path));
}

FullGroupElement load_flag_element(const Opts& o, const SpacePtr& sp) {
  if (o.element.empty()) fail(errc::parse_error, "--element is required");
  return load_element(sp, o.element);
}

std::vector<long long> parse_ints(const std::string& s, char sep) {
  std::vector<long long> out;
  std::string cur;
  for (char c : s + sep) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(std::stoll(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

Word parse_word(const std::string& s) {
  Word w;
  for (long long v : parse_ints(s, '.')) w.push_back(static_cast<int>(v));
  return w;
}

const std::string& positional(const Opts& o, size_t i, const char* what) {
  if (o.inputs.size() <= i) fail(errc::parse_error, std::string("missing input: ") + what);
  return o.inputs[i];
}

NestedKRSequence nested_for(const Opts& o, const SpacePtr& sp) {
  return nested_sequence(sp, sp->designated_point(), o.levels);
}

void run(const std::string& cmd, const Opts& o) {
  if (cmd == "complexity") {
    auto sp = load_space(o);
    emit_json(o, Json{{"complexity", sp->complexity(o.n)}});
  } else if (cmd == "entropy") {
    auto sp = load_space(o);
    auto er = sp->entropy_estimate(o.n);
    emit_json(o, Json{{"entropy", er.approx}, {"n", er.n}, {"word_count", er.word_count}});
  } else if (cmd == "compose") {
    auto sp = load_space(o);
    auto a = load_element(sp, positional(o, 0, "a.json"));
    auto b = load_element(sp, positional(o, 1, "b.json"));
    emit_json(o, element_to_json(a.compose(b)));
  } else if (cmd == "inverse") {
    auto sp = load_space(o);
    emit_json(o, element_to_json(load_flag_element(o, sp).inverse()));
  } else if (cmd == "index") {
    auto sp = load_space(o);
    auto g = load_flag_element(o, sp);
    long long v = o.method == "measure" ? index_measure(g)
                                        : index_orbit(g, sp->designated_point());
    emit_json(o, Json{{"index", v}});
  } else if (cmd == "order") {
    auto sp = load_space(o);
    auto k = load_flag_element(o, sp).order(bound_or(o, 256));
    emit_json(o, k ? Json{{"order", *k}}
                   : Json{{"order", "Unknown(>" + std::to_string(bound_or(o, 256)) + ")"}});
  } else if (cmd == "support") {
    auto sp = load_space(o);
    emit_json(o, clopen_to_json(load_flag_element(o, sp).support()));
  } else if (cmd == "evaluate") {
    auto sp = load_space(o);
    auto [f, p] = load_flag_element(o, sp).evaluate(sp->designated_point());
    emit_json(o, Json{{"cocycle", f}, {"shift", p.shift}});
  } else if (cmd == "lef") {
    auto sp = load_space(o);
    std::vector<FullGroupElement> F;
    for (auto& path : o.inputs) F.push_back(load_element(sp, path));
    auto q = lef_quotient(F, o.levels);
    Json images = Json::object();
    for (auto& [key, perm] : q.images) images[key] = perm;
    emit_json(o, Json{{"atom_count", q.atom_count}, {"f_keys", q.f_keys}, {"images", images}});
  } else if (cmd == "decompose") {
    auto sp = load_space(o);
    auto g = load_flag_element(o, sp);
    auto kr = nested_for(o, sp).levels.back();
    auto [p, r] = decompose_perm_rotation(g, kr);
    emit_json(o, Json{{"p", element_to_json(p)}, {"r", element_to_json(r)}});
  } else if (cmd == "growth") {
    auto sp = load_space(o);
    std::vector<FullGroupElement> gens;
    for (auto& path : o.inputs) gens.push_back(load_element(sp, path));
    emit_json(o, growth_to_json(ball_growth(gens, o.radius, bound_or(o, 2000000))));
  } else if (cmd == "schreier") {
    auto sp = load_space(o);
    std::vector<FullGroupElement> gens;
    for (auto& path : o.inputs) gens.push_back(load_element(sp, path));
    auto graph = schreier_ball(gens, sp->designated_point(), o.radius);
    if (o.format == "dot")
      emit(o, schreier_dot(graph));
    else
      emit_json(o, schreier_to_json(graph));
  } else if (cmd == "kr") {
    auto sp = load_space(o);
    Json levels = Json::array();
    for (auto& kr : nested_for(o, sp).levels) levels.push_back(kr_to_json(kr));
    emit_json(o, Json{{"levels", levels}});
  } else if (cmd == "bratteli") {
    auto sp = load_space(o);
    auto d = bratteli_from_nested(nested_for(o, sp));
    if (o.format == "dot")
      emit(o, bratteli_dot(d));
    else
      emit_json(o, bratteli_to_json(d));
  } else if (cmd == "vershik") {
    auto sp = load_space(o);
    auto d = bratteli_from_nested(nested_for(o, sp));
    PathPrefix p{parse_word(positional(o, 0, "path prefix (dot-separated edge ids)"))};
    auto res = vershik_step(d, p);
    const char* kind = res.kind == VershikResult::Kind::step ? "step"
                       : res.kind == VershikResult::Kind::wrap_to_minimal ? "wrap_to_minimal"
                                                                          : "needs_more_levels";
    emit_json(o, Json{{"kind", kind}, {"path", res.path.edges}});
  } else if (cmd == "telescope") {
    auto d = bratteli_from_json(load_json(positional(o, 0, "diagram.json")));
    std::vector<int> keep;
    for (long long v : parse_ints(o.level_list, ',')) keep.push_back(static_cast<int>(v));
    emit_json(o, bratteli_to_json(telescope(d, keep)));
  } else if (cmd == "thompson-canon") {
    emit_json(o, table_to_json(table_from_json(load_json(positional(o, 0, "table.json")))));
  } else if (cmd == "thompson-mul") {
    auto a = table_from_json(load_json(positional(o, 0, "a.json")));
    auto b = table_from_json(load_json(positional(o, 1, "b.json")));
    emit_json(o, table_to_json(a.compose(b)));
  } else if (cmd == "thompson-inv") {
    emit_json(o, table_to_json(table_from_json(load_json(positional(o, 0, "table.json"))).inverse()));
  } else if (cmd == "thompson-act") {
    auto t = table_from_json(load_json(positional(o, 0, "table.json")));
    emit_json(o, Json{{"word", t.act_on_word(parse_word(positional(o, 1, "word")))}});
  } else if (cmd == "thompson-order") {
    auto t = table_from_json(load_json(positional(o, 0, "table.json")));
    auto k = t.order(bound_or(o, 256));
    emit_json(o, k ? Json{{"order", *k}}
                   : Json{{"order", "Unknown(>" + std::to_string(bound_or(o, 256)) + ")"}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in topological full groups of Cantor minimal systems"};
  app.require_subcommand(1);
  Opts o;
  std::vector<std::string> names{"complexity", "entropy", "compose", "inverse", "index", "order",
                                 "support", "evaluate", "lef", "decompose", "growth", "schreier",
                                 "kr", "bratteli", "vershik", "telescope", "thompson-canon",
                                 "thompson-mul", "thompson-inv", "thompson-act", "thompson-order"};
  for (auto& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--space", o.space, "space spec file");
    sub->add_option("--element", o.element, "element file");
    sub->add_option("--table", o.table, "table file");
    sub->add_option("--n", o.n, "word length");
    sub->add_option("--radius", o.radius, "ball radius");
    if (name == "telescope")
      sub->add_option("--levels", o.level_list, "comma-separated levels to keep");
    else
      sub->add_option("--levels", o.levels, "nesting depth");
    sub->add_option("--bound", o.bound, "iteration bound");
    sub->add_option("--method", o.method, "index method")
        ->check(CLI::IsMember({"orbit", "measure"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("inputs", o.inputs, "positional input files / words");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    run(app.get_subcommands().front()->get_name(), o);
    return 0;
  } catch (const error& e) {
    std::cerr << Json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
    errc c = e.code();
    bool budget = c == errc::budget_exceeded || c == errc::depth_exceeded ||
                  c == errc::partition_depth_exceeded;
    return budget ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
