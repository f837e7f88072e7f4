// selfsim: compile similarity triples to tree automorphisms and run the
// verification / falsification workflows on them.
//
// Exit codes: 0 success (check: everything passes; falsify: no certificate),
// 1 invalid input or a structural failure, 2 a kernel witness (check) or a
// certified core obstruction (falsify) was found.

#include <CLI11.hpp>

#include <selfsim/catalog.hpp>
#include <selfsim/io.hpp>
#include <selfsim/lab.hpp>
#include <selfsim/tree.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace selfsim;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A triple argument is a catalog name or a config-file path; existing files
// win so catalog names never shadow local files.
SimilarityTriple load_triple(const std::string& arg, std::string& title) {
  if (std::filesystem::exists(arg)) {
    title = std::filesystem::path(arg).filename().string();
    return read_triple_config(read_file(arg));
  }
  CatalogEntry e = catalog_entry(arg);
  title = e.name;
  return std::move(e.triple);
}

// Element syntax: "e", a wreath literal ("base{ ... } top(...)"), or a
// dotted word over the triple's named generators with optional integer
// exponents ("t", "b^-1.t^2").
WreathElement parse_element(const SimilarityTriple& t, const std::string& s) {
  const GroupDescriptor& desc = group_of(t);
  if (s == "e") return wreath_identity(desc);
  if (s.rfind("base", 0) == 0) return parse_wreath(desc, s);

  WreathElement acc = wreath_identity(desc);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (tok.empty()) throw std::runtime_error("empty factor in element word '" + s + "'");
    std::string name = tok;
    Int exp = 1;
    if (size_t caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      exp = parse_int(tok.substr(caret + 1));
    }
    const WreathElement* gen = nullptr;
    for (const auto& g : t.generators)
      if (g.name == name) gen = &g.element;
    if (!gen)
      throw std::runtime_error("unknown generator '" + name + "' in element word '" + s + "'");
    acc = multiply(acc, power(*gen, exp));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return acc;
}

std::vector<int> parse_word(const std::string& s, int m) {
  std::vector<int> w;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::runtime_error("vertex letter '" + tok + "' is not an integer");
    }
    if (v < 1 || v > m)
      throw std::runtime_error("vertex letter " + std::to_string(v) + " is out of range 1.." +
                               std::to_string(m));
    w.push_back(v);
  }
  return w;
}

std::string word_line(const std::vector<int>& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(w[i]);
  }
  return out;
}

int run_catalog_list() {
  for (const auto& name : catalog_names()) {
    if (name == "zwrz-pair-generic(m)") {
      std::cout << name << ": Z wr Z, index m -- the zwrz-pair-2 construction "
                   "for any top index m >= 2\n";
      continue;
    }
    CatalogEntry e = catalog_entry(name);
    const GroupDescriptor& g = group_of(e.triple);
    std::cout << name << ": " << to_literal(g.base) << " wr " << to_literal(g.top) << ", index "
              << int_str(subgroup_index(e.triple.h)) << " -- " << e.note << "\n";
  }
  return 0;
}

int run_catalog_show(const std::string& name) {
  CatalogEntry e = catalog_entry(name);
  std::cout << write_triple_config(e.triple);
  return 0;
}

int run_compile(const std::string& arg, const std::string& element, int depth,
                const std::string& dot_path, long long cap) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  Compiler c(t);
  NodePtr node = c.compile(parse_element(t, element));
  std::cout << portrait_text(node, depth) << "\n";
  if (!dot_path.empty()) {
    ClosureResult cl = state_closure({node}, cap);
    if (!cl.closed) {
      std::cerr << "error: state closure exceeded the cap of " << cap
                << " states; no automaton graph written\n";
      return 1;
    }
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + dot_path + "'");
    out << dot_export(cl);
    std::cout << "wrote " << dot_path << " (" << cl.states.size() << " states)\n";
  }
  return 0;
}

int run_act(const std::string& arg, const std::string& element, const std::string& word) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  Compiler c(t);
  NodePtr node = c.compile(parse_element(t, element));
  std::vector<int> w = parse_word(word, c.degree());
  std::cout << word_line(act(node, w)) << "\n";
  return 0;
}

int run_check(const std::string& arg, int radius, int depth, long long cap, int samples,
              std::uint64_t seed) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  std::cout << "triple: " << title << "\n";

  TripleReport vr = validate_triple(t, ValidateOptions{samples, seed});
  std::cout << "validation:\n";
  for (const auto& c : vr.checks) {
    std::cout << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }

  Compiler c(t);
  std::vector<NodePtr> gens = c.generator_nodes();
  const bool transitive = level1_transitive(gens);
  std::cout << "level-1 transitive: " << (transitive ? "yes" : "no") << "\n";

  ClosureResult cl = state_closure(gens, cap);
  if (cl.closed)
    std::cout << "state closure: closed, " << cl.states.size() << " states\n";
  else
    std::cout << "state closure: overflow past cap " << cap << "\n";

  std::vector<KernelWitness> ws = kernel_search(c, c.generator_elements(), radius, depth);
  if (ws.empty()) {
    std::cout << "kernel search (radius " << radius << ", depth " << depth
              << "): no witness\n";
  } else {
    std::cout << "kernel search (radius " << radius << ", depth " << depth << "): "
              << ws.size() << " witnesses\n";
    for (const auto& w : ws)
      std::cout << "  " << word_to_string(t.generators, w.word) << " = " << to_literal(w.element)
                << " acts trivially to depth " << w.depth_checked << "\n";
  }

  if (!ws.empty()) return 2;
  return (vr.all_pass() && transitive && cl.closed) ? 0 : 1;
}

int run_falsify(const std::string& arg, int window, int depth, int samples,
                std::uint64_t seed) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  LabOptions opt;
  opt.window = window;
  opt.depth = depth;
  opt.samples = samples;
  opt.seed = seed;
  LabReport r = run_lab(t, opt, title);
  std::cout << lab_report_text(r);
  if (r.out_of_hypothesis) return 1;
  if (!r.certificate) return 0;
  if (!r.certificate->all_pass()) {
    std::cerr << "error: certificate transcript has failing checks\n";
    return 1;
  }
  return 2;
}

int run_orbits(const std::string& arg, int level) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  Compiler c(t);
  auto orbits = level_orbits(c.generator_nodes(), level);
  std::cout << "level " << level << ": " << orbits.size()
            << (orbits.size() == 1 ? " orbit\n" : " orbits\n");
  for (size_t i = 0; i < orbits.size(); ++i) {
    std::cout << "orbit " << i << " (size " << orbits[i].size() << "):";
    for (const auto& w : orbits[i]) std::cout << " " << vertex_str(w);
    std::cout << "\n";
  }
  return 0;
}

int run_stabilizer(const std::string& arg, int depth) {
  std::string title;
  SimilarityTriple t = load_triple(arg, title);
  Compiler c(t);
  StabilizerPair sp = stabilizer_pair(c, c.generator_elements(), depth);
  std::cout << "orbit of letter 1: size " << sp.orbit_size << "\n";
  for (const auto& [letter, word] : sp.orbit_reps)
    std::cout << "  letter " << letter << ": " << word_to_string(t.generators, word) << "\n";
  std::cout << "stabilizer generators (" << sp.gens.size() << "):\n";
  for (const auto& g : sp.gens)
    std::cout << "  " << word_to_string(t.generators, g.word) << " = " << to_literal(g.element)
              << ", f-image " << to_literal(g.f_image) << ", section match to depth " << depth
              << ": " << (g.verified ? "yes" : "NO") << "\n";
  std::cout << "all sections verified: " << (sp.all_verified() ? "yes" : "no") << "\n";
  return sp.all_verified() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state-closed tree representations of wreath products"};
  app.require_subcommand(1);

  std::string triple_arg, element, word, dot_path, show_name;
  int depth = 8, radius = 4, window = 10, level = 1, samples = 32;
  long long cap = 10000;
  std::uint64_t seed = 0;

  CLI::App* cat = app.add_subcommand("catalog", "list built-in triples or show one as a config");
  cat->require_subcommand(1);
  CLI::App* cat_list = cat->add_subcommand("list", "one line per entry");
  CLI::App* cat_show = cat->add_subcommand("show", "print a triple in config format");
  cat_show->add_option("name", show_name, "catalog name")->required();

  CLI::App* cmp = app.add_subcommand("compile", "compile an element and print its portrait");
  cmp->add_option("triple", triple_arg, "catalog name or config file")->required();
  cmp->add_option("--element,-e", element, "element literal or generator word")->required();
  cmp->add_option("--depth,-d", depth, "portrait depth");
  cmp->add_option("--dot", dot_path, "write the state automaton as DOT to this path");
  cmp->add_option("--cap,-c", cap, "state cap for the DOT closure");

  CLI::App* actc = app.add_subcommand("act", "apply an element to a vertex word");
  actc->add_option("triple", triple_arg)->required();
  actc->add_option("--element,-e", element)->required();
  actc->add_option("--word,-w", word, "vertex word, letters space-separated")->required();

  CLI::App* chk = app.add_subcommand("check", "validate, closure, transitivity, kernel search");
  chk->add_option("triple", triple_arg)->required();
  chk->add_option("--radius,-r", radius, "kernel search word radius");
  chk->add_option("--depth,-d", depth, "triviality depth for kernel candidates");
  chk->add_option("--cap,-c", cap, "state closure cap");
  chk->add_option("--samples,-s", samples, "validation sample count");
  chk->add_option("--seed", seed, "sampling seed");

  CLI::App* fal = app.add_subcommand("falsify", "run the core-obstruction lab");
  fal->add_option("triple", triple_arg)->required();
  fal->add_option("--window,-w", window, "shift window for the power checks");
  fal->add_option("--depth,-d", depth, "portrait depth for the witness cross-check");
  fal->add_option("--samples,-s", samples, "sample count");
  fal->add_option("--seed", seed, "sampling seed");

  CLI::App* orb = app.add_subcommand("orbits", "orbits of the generators on a tree level");
  orb->add_option("triple", triple_arg)->required();
  orb->add_option("--level,-l", level, "tree level");

  CLI::App* stb = app.add_subcommand("stabilizer", "Schreier data for the letter-1 stabilizer");
  stb->add_option("triple", triple_arg)->required();
  stb->add_option("--depth,-d", depth, "section verification depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cat_list->parsed()) return run_catalog_list();
    if (cat_show->parsed()) return run_catalog_show(show_name);
    if (cmp->parsed()) return run_compile(triple_arg, element, depth, dot_path, cap);
    if (actc->parsed()) return run_act(triple_arg, element, word);
    if (chk->parsed()) return run_check(triple_arg, radius, depth, cap, samples, seed);
    if (fal->parsed()) return run_falsify(triple_arg, window, depth, samples, seed);
    if (orb->parsed()) return run_orbits(triple_arg, level);
    if (stb->parsed()) return run_stabilizer(triple_arg, depth);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
