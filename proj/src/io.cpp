#include <selfsim/io.hpp>

#include <map>
#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

struct Cursor {
  const std::string& s;
  size_t at = 0;

  void skip_ws() {
    while (at < s.size() && (s[at] == ' ' || s[at] == '\t')) ++at;
  }
  bool done() {
    skip_ws();
    return at >= s.size();
  }
  char peek() {
    skip_ws();
    if (at >= s.size()) throw std::runtime_error("unexpected end of '" + s + "'");
    return s[at];
  }
  void expect(char c) {
    if (peek() != c)
      throw std::runtime_error(std::string("expected '") + c + "' at position " +
                               std::to_string(at) + " of '" + s + "'");
    ++at;
  }
  bool eat(char c) {
    if (done() || s[at] != c) return false;
    ++at;
    return true;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(at, w.size(), w) == 0) {
      at += w.size();
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    size_t start = at;
    if (at < s.size() && (s[at] == '-' || s[at] == '+')) ++at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (at == start || (at == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw std::runtime_error("expected an integer at position " + std::to_string(start) +
                               " of '" + s + "'");
    return parse_int(s.substr(start, at - start));
  }
};

std::vector<Int> parse_int_tuple(Cursor& c, char open, char close) {
  std::vector<Int> v;
  c.expect(open);
  if (c.peek() == close) {
    ++c.at;
    return v;
  }
  while (true) {
    v.push_back(c.integer());
    if (c.eat(',')) continue;
    c.expect(close);
    return v;
  }
}

AbelianElement parse_abelian_at(const AbelianDescriptor& d, Cursor& c) {
  if (d.is_omega()) {
    AbelianElement e(d);
    c.expect('{');
    if (c.peek() == '}') {
      ++c.at;
      return e;
    }
    while (true) {
      Int copy = c.integer();
      c.expect('.');
      Int inner = c.integer();
      c.expect(':');
      Int val = c.integer();
      if (copy < 0) throw std::runtime_error("copy index must be >= 0 in '" + c.s + "'");
      e.add_at(Coord{static_cast<std::int64_t>(copy), static_cast<int>(inner)}, val);
      if (c.eat(',')) continue;
      c.expect('}');
      return e;
    }
  }
  std::vector<Int> v = parse_int_tuple(c, '[', ']');
  return AbelianElement::from_dense(d, v);
}

XElement parse_x_at(const AbelianDescriptor& top, Cursor& c) {
  return x_reduce(top, parse_int_tuple(c, '(', ')'));
}

WreathElement parse_wreath_at(const GroupDescriptor& g, Cursor& c) {
  if (!c.eat_word("base")) throw std::runtime_error("wreath literal must start with 'base'");
  c.expect('{');
  BaseMap base;
  if (c.peek() != '}') {
    while (true) {
      XElement pos = parse_x_at(g.top, c);
      c.expect(':');
      AbelianElement val = parse_abelian_at(g.base, c);
      auto it = base.find(pos);
      if (it == base.end())
        base.emplace(std::move(pos), std::move(val));
      else
        it->second = add(it->second, val);
      if (c.eat(',')) continue;
      break;
    }
  }
  c.expect('}');
  if (!c.eat_word("top")) throw std::runtime_error("wreath literal needs a 'top' part");
  XElement top = parse_x_at(g.top, c);
  return make_wreath(g, std::move(base), std::move(top));
}

void expect_done(Cursor& c) {
  if (!c.done())
    throw std::runtime_error("trailing characters at position " + std::to_string(c.at) + " of '" +
                             c.s + "'");
}

}  // namespace

std::string to_literal(const AbelianDescriptor& d) {
  if (d.is_omega()) return "omega(" + to_literal(d.inner()) + ")";
  if (d.is_trivial()) return "trivial";
  std::string out;
  for (size_t i = 0; i < d.factors().size(); ++i) {
    if (i) out += " x ";
    const Int& m = d.factors()[i].modulus;
    out += m == 0 ? "Z" : "Z/" + int_str(m);
  }
  return out;
}

std::string to_literal(const AbelianElement& a) {
  if (a.descriptor().is_omega()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [coord, v] : a.coords()) {
      if (!first) out += ", ";
      first = false;
      out += std::to_string(coord.copy) + "." + std::to_string(coord.inner) + ":" + int_str(v);
    }
    return out + "}";
  }
  std::string out = "[";
  std::vector<Int> dense = to_dense(a);
  for (size_t i = 0; i < dense.size(); ++i) {
    if (i) out += ",";
    out += int_str(dense[i]);
  }
  return out + "]";
}

std::string x_literal(const XElement& x) {
  std::string out = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += int_str(x[i]);
  }
  return out + ")";
}

std::string to_literal(const WreathElement& e) {
  std::string out = "base{";
  bool first = true;
  for (const auto& [pos, val] : e.base) {
    out += first ? " " : ", ";
    first = false;
    out += x_literal(pos) + ":" + to_literal(val);
  }
  if (!first) out += " ";
  out += "} top" + x_literal(e.top);
  return out;
}

std::string rows_literal(const Matrix& m) {
  if (m.empty()) return "[]";
  std::string out = "[";
  for (size_t r = 0; r < m.size(); ++r) {
    if (r) out += ",";
    out += "[";
    for (size_t j = 0; j < m[r].size(); ++j) {
      if (j) out += ",";
      out += int_str(m[r][j]);
    }
    out += "]";
  }
  return out + "]";
}

AbelianDescriptor parse_descriptor(const std::string& s) {
  Cursor c{s};
  if (c.eat_word("trivial")) {
    expect_done(c);
    return AbelianDescriptor::trivial();
  }
  if (c.eat_word("omega")) {
    c.expect('(');
    size_t depth = 1;
    size_t start = c.at;
    while (c.at < s.size() && depth > 0) {
      if (s[c.at] == '(') ++depth;
      if (s[c.at] == ')') --depth;
      ++c.at;
    }
    if (depth != 0) throw std::runtime_error("unbalanced parentheses in '" + s + "'");
    AbelianDescriptor inner = parse_descriptor(s.substr(start, c.at - 1 - start));
    expect_done(c);
    return AbelianDescriptor::omega(std::move(inner));
  }
  std::vector<Int> moduli;
  while (true) {
    if (!c.eat_word("Z")) throw std::runtime_error("expected a cyclic factor in '" + s + "'");
    if (c.eat('/')) {
      Int m = c.integer();
      if (m < 2) throw std::runtime_error("finite factor modulus must be >= 2 in '" + s + "'");
      moduli.push_back(std::move(m));
    } else {
      moduli.push_back(0);
    }
    if (c.eat_word("x")) continue;
    break;
  }
  expect_done(c);
  return AbelianDescriptor::fg(std::move(moduli));
}

AbelianElement parse_abelian(const AbelianDescriptor& d, const std::string& s) {
  Cursor c{s};
  AbelianElement e = parse_abelian_at(d, c);
  expect_done(c);
  return e;
}

XElement parse_x(const AbelianDescriptor& top, const std::string& s) {
  Cursor c{s};
  XElement x = parse_x_at(top, c);
  expect_done(c);
  return x;
}

WreathElement parse_wreath(const GroupDescriptor& g, const std::string& s) {
  Cursor c{s};
  WreathElement e = parse_wreath_at(g, c);
  expect_done(c);
  return e;
}

Matrix parse_rows(const std::string& s) {
  Cursor c{s};
  Matrix m;
  c.expect('[');
  if (c.peek() == ']') {
    ++c.at;
    expect_done(c);
    return m;
  }
  while (true) {
    m.push_back(parse_int_tuple(c, '[', ']'));
    if (c.eat(',')) continue;
    c.expect(']');
    break;
  }
  expect_done(c);
  return m;
}

namespace {

struct ConfigLine {
  std::string section;
  std::string key;    // key with any index suffix split off
  int idx = -1;       // -1 when the key has no index
  std::string value;
};

std::vector<ConfigLine> parse_config_lines(const std::string& text) {
  std::vector<ConfigLine> out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string body = line.substr(a, b - a + 1);
    if (body[0] == '#') continue;
    if (body.front() == '[' && body.back() == ']') {
      section = body.substr(1, body.size() - 2);
      continue;
    }
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + " has no '='");
    std::string key = body.substr(0, eq);
    size_t ke = key.find_last_not_of(" \t");
    key = key.substr(0, ke + 1);
    std::string value = body.substr(eq + 1);
    size_t vs = value.find_first_not_of(" \t");
    value = vs == std::string::npos ? "" : value.substr(vs);
    if (section.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + " outside any section");
    ConfigLine cl{section, key, -1, value};
    size_t sp = key.find(' ');
    if (sp != std::string::npos) {
      std::string tail = key.substr(sp + 1);
      bool numeric = !tail.empty();
      for (char ch : tail)
        if (!std::isdigit(static_cast<unsigned char>(ch))) numeric = false;
      if (numeric) {
        cl.key = key.substr(0, sp);
        cl.idx = std::stoi(tail);
      }
    }
    out.push_back(std::move(cl));
  }
  return out;
}

const std::string* find_one(const std::vector<ConfigLine>& ls, const std::string& section,
                            const std::string& key, int idx = -1) {
  const std::string* found = nullptr;
  for (const auto& l : ls)
    if (l.section == section && l.key == key && l.idx == idx) {
      if (found) throw std::runtime_error("duplicate config key '" + key + "' in [" + section + "]");
      found = &l.value;
    }
  return found;
}

const std::string& need_one(const std::vector<ConfigLine>& ls, const std::string& section,
                            const std::string& key, int idx = -1) {
  const std::string* v = find_one(ls, section, key, idx);
  if (!v) {
    std::string name = key + (idx >= 0 ? " " + std::to_string(idx) : "");
    throw std::runtime_error("config is missing '" + name + "' in [" + section + "]");
  }
  return *v;
}

std::vector<std::string> indexed_values(const std::vector<ConfigLine>& ls,
                                        const std::string& section, const std::string& key) {
  std::map<int, std::string> by_idx;
  for (const auto& l : ls)
    if (l.section == section && l.key == key) {
      if (l.idx < 0)
        throw std::runtime_error("config key '" + key + "' in [" + section + "] needs an index");
      if (!by_idx.emplace(l.idx, l.value).second)
        throw std::runtime_error("duplicate index for '" + key + "' in [" + section + "]");
    }
  std::vector<std::string> out;
  for (const auto& [i, v] : by_idx) {
    if (i != static_cast<int>(out.size()))
      throw std::runtime_error("indices for '" + key + "' in [" + section +
                               "] must be 0,1,... without gaps");
    out.push_back(v);
  }
  return out;
}

AbelianHom hom_from_rows(const AbelianDescriptor& ambient, const Matrix& basis,
                         const AbelianDescriptor& codomain,
                         const std::vector<std::string>& image_literals) {
  SubgroupLattice dom = SubgroupLattice::from_basis(ambient, basis);
  if (image_literals.size() != dom.hnf_rows().size())
    throw std::runtime_error("endomorphism config: need one image per reduced domain generator (" +
                             std::to_string(dom.hnf_rows().size()) + ")");
  std::vector<AbelianElement> images;
  for (const auto& lit : image_literals) images.push_back(parse_abelian(codomain, lit));
  return make_hom(std::move(dom), codomain, std::move(images));
}

}  // namespace

std::string write_triple_config(const SimilarityTriple& t) {
  const GroupDescriptor& gd = t.h.group;
  std::ostringstream os;
  os << "[group]\n";
  os << "base = " << to_literal(gd.base) << "\n";
  os << "top = " << to_literal(gd.top) << "\n\n";

  os << "[subgroup]\n";
  os << "y = " << rows_literal(t.h.y.basis()) << "\n";
  for (size_t c = 0; c < t.h.coset_constraints.size(); ++c)
    os << "congruence " << c << " = " << rows_literal(t.h.coset_constraints[c].lattice.basis())
       << "\n";
  os << "\n[transversal]\n";
  for (const auto& x : t.transversal) os << "element = " << to_literal(x) << "\n";

  os << "\n[endomorphism]\n";
  if (const auto* me = std::get_if<ModuleEndo>(&t.f)) {
    os << "kind = module\n";
    for (size_t i = 0; i < me->on_y.images.size(); ++i) {
      XElement img = to_dense(me->on_y.images[i]);
      os << "y_image " << i << " = " << x_literal(img) << "\n";
    }
    for (size_t i = 0; i < me->gens.size(); ++i) {
      os << "gen " << i << " = " << to_literal(me->gens[i].gen) << "\n";
      os << "image " << i << " = " << to_literal(me->gens[i].image) << "\n";
    }
  } else {
    const auto& pair = std::get<OmegaPairEndo>(t.f).pair;
    os << "kind = fold-swap\n";
    os << "inner = " << to_literal(pair.group) << "\n";
    os << "m = " << rows_literal(pair.m.basis()) << "\n";
    for (size_t i = 0; i < pair.phi.images.size(); ++i)
      os << "phi " << i << " = " << to_literal(pair.phi.images[i]) << "\n";
  }

  if (!t.generators.empty()) {
    os << "\n[generators]\n";
    for (const auto& g : t.generators) os << g.name << " = " << to_literal(g.element) << "\n";
  }
  return os.str();
}

SimilarityTriple read_triple_config(const std::string& text) {
  auto ls = parse_config_lines(text);

  AbelianDescriptor base = parse_descriptor(need_one(ls, "group", "base"));
  AbelianDescriptor top = parse_descriptor(need_one(ls, "group", "top"));
  GroupDescriptor gd = make_group(base, top);

  SubgroupLattice y = SubgroupLattice::from_basis(gd.top, parse_rows(need_one(ls, "subgroup", "y")));
  const AbelianDescriptor& camb = gd.base.is_omega() ? gd.base.inner() : gd.base;
  std::vector<BaseConstraint> cs;
  for (const auto& rows : indexed_values(ls, "subgroup", "congruence"))
    cs.push_back(BaseConstraint{SubgroupLattice::from_basis(camb, parse_rows(rows))});
  WreathSubgroupSpec spec = make_subgroup_spec(gd, std::move(y), std::move(cs));

  std::vector<WreathElement> reps;
  for (const auto& l : ls)
    if (l.section == "transversal" && l.key == "element") reps.push_back(parse_wreath(gd, l.value));
  if (reps.empty()) reps = default_transversal(spec);

  const std::string& kind = need_one(ls, "endomorphism", "kind");
  VirtualEndo endo = ModuleEndo{};
  if (kind == "module") {
    std::vector<std::string> y_imgs = indexed_values(ls, "endomorphism", "y_image");
    // y images are top-group coordinate tuples
    std::vector<AbelianElement> images;
    SubgroupLattice dom = spec.y;
    if (y_imgs.size() != dom.hnf_rows().size())
      throw std::runtime_error("endomorphism config: need one y_image per reduced Y generator (" +
                               std::to_string(dom.hnf_rows().size()) + ")");
    for (const auto& lit : y_imgs)
      images.push_back(AbelianElement::from_dense(gd.top, parse_x(gd.top, lit)));
    AbelianHom on_y = make_hom(std::move(dom), gd.top, std::move(images));
    std::vector<std::string> gens = indexed_values(ls, "endomorphism", "gen");
    std::vector<std::string> imgs = indexed_values(ls, "endomorphism", "image");
    if (gens.size() != imgs.size())
      throw std::runtime_error("endomorphism config: gen/image counts differ");
    ModuleEndo me{std::move(on_y), {}};
    for (size_t i = 0; i < gens.size(); ++i)
      me.gens.push_back(ModuleGenerator{parse_wreath(gd, gens[i]), parse_wreath(gd, imgs[i])});
    endo = std::move(me);
  } else if (kind == "fold-swap") {
    AbelianDescriptor inner = parse_descriptor(need_one(ls, "endomorphism", "inner"));
    Matrix mrows = parse_rows(need_one(ls, "endomorphism", "m"));
    AbelianHom phi = hom_from_rows(inner, mrows, inner, indexed_values(ls, "endomorphism", "phi"));
    AbelianPair pair =
        make_abelian_pair(inner, SubgroupLattice::from_basis(inner, mrows), std::move(phi));
    endo = OmegaPairEndo{std::move(pair)};
  } else {
    throw std::runtime_error("unknown endomorphism kind '" + kind + "'");
  }

  std::vector<NamedGenerator> gens;
  for (const auto& l : ls)
    if (l.section == "generators") gens.push_back(NamedGenerator{l.key, parse_wreath(gd, l.value)});

  return SimilarityTriple{std::move(spec), std::move(reps), std::move(endo), std::move(gens)};
}

bool triple_equal(const SimilarityTriple& a, const SimilarityTriple& b) {
  if (a.h.group != b.h.group) return false;
  if (!a.h.y.same_lattice(b.h.y)) return false;
  if (a.h.coset_constraints.size() != b.h.coset_constraints.size()) return false;
  for (size_t i = 0; i < a.h.coset_constraints.size(); ++i)
    if (!a.h.coset_constraints[i].lattice.same_lattice(b.h.coset_constraints[i].lattice))
      return false;
  if (a.transversal != b.transversal) return false;
  if (a.f.index() != b.f.index()) return false;
  if (const auto* ma = std::get_if<ModuleEndo>(&a.f)) {
    const auto& mb = std::get<ModuleEndo>(b.f);
    if (!ma->on_y.domain.same_lattice(mb.on_y.domain) || ma->on_y.images != mb.on_y.images)
      return false;
    if (ma->gens.size() != mb.gens.size()) return false;
    for (size_t i = 0; i < ma->gens.size(); ++i)
      if (ma->gens[i].gen != mb.gens[i].gen || ma->gens[i].image != mb.gens[i].image) return false;
  } else {
    const auto& pa = std::get<OmegaPairEndo>(a.f).pair;
    const auto& pb = std::get<OmegaPairEndo>(b.f).pair;
    if (pa.group != pb.group || !pa.m.same_lattice(pb.m) || pa.phi.images != pb.phi.images)
      return false;
  }
  if (a.generators.size() != b.generators.size()) return false;
  for (size_t i = 0; i < a.generators.size(); ++i)
    if (a.generators[i].name != b.generators[i].name ||
        a.generators[i].element != b.generators[i].element)
      return false;
  return true;
}

}  // namespace selfsim
