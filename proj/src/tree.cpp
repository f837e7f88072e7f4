#include <selfsim/tree.hpp>

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace selfsim {

namespace {

std::uint64_t next_uid() {
  static std::uint64_t n = 0;
  return ++n;
}

void check_letter(int letter, int m) {
  if (letter < 1 || letter > m)
    throw std::runtime_error("letter " + std::to_string(letter) + " is outside 1.." +
                             std::to_string(m));
}

}  // namespace

Permutation::Permutation(int m) {
  if (m < 0) throw std::runtime_error("permutation degree must be >= 0");
  img_.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) img_[static_cast<size_t>(i)] = i;
}

Permutation Permutation::from_images(std::vector<int> images) {
  Permutation p;
  const int m = static_cast<int>(images.size());
  std::vector<bool> hit(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > m || hit[static_cast<size_t>(v - 1)])
      throw std::runtime_error("permutation images are not a bijection of 1.." +
                               std::to_string(m));
    hit[static_cast<size_t>(v - 1)] = true;
  }
  p.img_.resize(images.size());
  for (size_t i = 0; i < images.size(); ++i) p.img_[i] = images[i] - 1;
  return p;
}

int Permutation::image(int letter) const {
  check_letter(letter, degree());
  return img_[static_cast<size_t>(letter - 1)] + 1;
}

int Permutation::preimage(int letter) const {
  check_letter(letter, degree());
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] == letter - 1) return static_cast<int>(i) + 1;
  throw std::runtime_error("permutation preimage lookup failed");
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) p.img_[static_cast<size_t>(img_[i])] = static_cast<int>(i);
  return p;
}

Permutation Permutation::then(const Permutation& o) const {
  if (degree() != o.degree()) throw std::runtime_error("alphabet mismatch");
  Permutation p;
  p.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) p.img_[i] = o.img_[static_cast<size_t>(img_[i])];
  return p;
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<bool> seen(img_.size(), false);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<size_t>(i)] || img_[static_cast<size_t>(i)] == i) continue;
    seen[static_cast<size_t>(i)] = true;
    out += "(" + std::to_string(i + 1);
    int j = img_[static_cast<size_t>(i)];
    while (j != i) {
      seen[static_cast<size_t>(j)] = true;
      out += " " + std::to_string(j + 1);
      j = img_[static_cast<size_t>(j)];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

namespace {

class IdentityNode : public AutNode, public std::enable_shared_from_this<IdentityNode> {
 public:
  explicit IdentityNode(int m) : root_(m), key_("e") {}
  const Permutation& root() const override { return root_; }
  NodePtr section(int letter) const override {
    check_letter(letter, degree());
    return shared_from_this();
  }
  const std::string& key() const override { return key_; }

 private:
  Permutation root_;
  std::string key_;
};

class ExplicitNode : public AutNode {
 public:
  ExplicitNode(ExplicitPtr autom, int state)
      : autom_(std::move(autom)),
        state_(state),
        key_("x:" + std::to_string(autom_->uid()) + ":" + autom_->state(state).name),
        secs_(static_cast<size_t>(autom_->degree())) {}
  const Permutation& root() const override { return autom_->perm(state_); }
  NodePtr section(int letter) const override {
    check_letter(letter, degree());
    NodePtr& slot = secs_[static_cast<size_t>(letter - 1)];
    if (!slot) slot = explicit_node(autom_, autom_->state(state_).children[static_cast<size_t>(letter - 1)]);
    return slot;
  }
  const std::string& key() const override { return key_; }

 private:
  ExplicitPtr autom_;
  int state_;
  std::string key_;
  mutable std::vector<NodePtr> secs_;
};

class ComposeNode : public AutNode {
 public:
  ComposeNode(NodePtr a, NodePtr b)
      : a_(std::move(a)),
        b_(std::move(b)),
        root_(a_->root().then(b_->root())),
        key_("(" + a_->key() + "." + b_->key() + ")"),
        secs_(static_cast<size_t>(root_.degree())) {}
  const Permutation& root() const override { return root_; }
  NodePtr section(int letter) const override {
    check_letter(letter, degree());
    NodePtr& slot = secs_[static_cast<size_t>(letter - 1)];
    if (!slot) slot = compose(a_->section(letter), b_->section(a_->root().image(letter)));
    return slot;
  }
  const std::string& key() const override { return key_; }

 private:
  NodePtr a_, b_;
  Permutation root_;
  std::string key_;
  mutable std::vector<NodePtr> secs_;
};

class InvertNode : public AutNode {
 public:
  explicit InvertNode(NodePtr a)
      : a_(std::move(a)),
        root_(a_->root().inverse()),
        key_("(" + a_->key() + ")^-"),
        secs_(static_cast<size_t>(root_.degree())) {}
  const Permutation& root() const override { return root_; }
  NodePtr section(int letter) const override {
    check_letter(letter, degree());
    NodePtr& slot = secs_[static_cast<size_t>(letter - 1)];
    if (!slot) slot = invert(a_->section(root_.image(letter)));
    return slot;
  }
  const std::string& key() const override { return key_; }
  const NodePtr& inner() const { return a_; }

 private:
  NodePtr a_;
  Permutation root_;
  std::string key_;
  mutable std::vector<NodePtr> secs_;
};

bool is_identity_node(const NodePtr& a) { return a->key() == "e"; }

}  // namespace

NodePtr identity_node(int m) {
  static std::map<int, NodePtr> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m < 1) throw std::runtime_error("alphabet needs at least one letter");
  NodePtr n = std::make_shared<IdentityNode>(m);
  cache.emplace(m, n);
  return n;
}

NodePtr compose(NodePtr a, NodePtr b) {
  if (!a || !b) throw std::runtime_error("compose on a null automorphism");
  if (a->degree() != b->degree()) throw std::runtime_error("alphabet mismatch");
  if (is_identity_node(a)) return b;
  if (is_identity_node(b)) return a;
  return std::make_shared<ComposeNode>(std::move(a), std::move(b));
}

NodePtr invert(NodePtr a) {
  if (!a) throw std::runtime_error("invert on a null automorphism");
  if (is_identity_node(a)) return a;
  if (const auto* inv = dynamic_cast<const InvertNode*>(a.get())) return inv->inner();
  return std::make_shared<InvertNode>(std::move(a));
}

NodePtr word_node(int m, const std::vector<NodePtr>& gens, const std::vector<int>& word) {
  NodePtr out = identity_node(m);
  for (int s : word) {
    size_t k = static_cast<size_t>(s > 0 ? s : -s) - 1;
    if (s == 0 || k >= gens.size())
      throw std::runtime_error("word letter " + std::to_string(s) + " has no generator");
    out = compose(out, s > 0 ? gens[k] : invert(gens[k]));
  }
  return out;
}

ExplicitAutomaton::ExplicitAutomaton(std::vector<ExplicitState> states)
    : states_(std::move(states)), uid_(next_uid()) {
  if (states_.empty()) throw std::runtime_error("an automaton needs at least one state");
  const size_t m = states_[0].images.size();
  for (const auto& s : states_) {
    if (s.images.size() != m || s.children.size() != m)
      throw std::runtime_error("automaton state '" + s.name + "' has the wrong arity");
    perms_.push_back(Permutation::from_images(s.images));
    for (int c : s.children)
      if (c < 0 || c >= static_cast<int>(states_.size()))
        throw std::runtime_error("automaton state '" + s.name + "' points at a missing state");
  }
}

int ExplicitAutomaton::degree() const { return perms_[0].degree(); }

ExplicitPtr make_explicit_automaton(std::vector<ExplicitState> states) {
  return std::make_shared<ExplicitAutomaton>(std::move(states));
}

NodePtr explicit_node(ExplicitPtr autom, int state) {
  if (!autom) throw std::runtime_error("null automaton");
  if (state < 0 || state >= autom->size()) throw std::runtime_error("automaton state out of range");
  return std::make_shared<ExplicitNode>(std::move(autom), state);
}

struct CompilerState : std::enable_shared_from_this<CompilerState> {
  SimilarityTriple triple;
  int m = 0;
  std::uint64_t session = 0;
  NodePtr ident;
  std::vector<WreathElement> inv_x;
  std::map<std::string, NodePtr> memo;

  NodePtr compile(const WreathElement& g);
};

namespace {

class CompiledNode : public AutNode {
 public:
  CompiledNode(std::shared_ptr<CompilerState> st, WreathElement g, std::string key,
               Permutation root)
      : st_(std::move(st)),
        elem_(std::move(g)),
        key_(std::move(key)),
        root_(std::move(root)),
        secs_(static_cast<size_t>(root_.degree())) {}
  const Permutation& root() const override { return root_; }
  NodePtr section(int letter) const override {
    check_letter(letter, degree());
    NodePtr& slot = secs_[static_cast<size_t>(letter - 1)];
    if (!slot) {
      const int j = root_.image(letter);
      WreathElement h = multiply(multiply(st_->triple.transversal[static_cast<size_t>(letter - 1)], elem_),
                                 st_->inv_x[static_cast<size_t>(j - 1)]);
      slot = st_->compile(apply_f(st_->triple, h));
    }
    return slot;
  }
  const std::string& key() const override { return key_; }
  const WreathElement& element() const { return elem_; }

 private:
  std::shared_ptr<CompilerState> st_;
  WreathElement elem_;
  std::string key_;
  Permutation root_;
  mutable std::vector<NodePtr> secs_;
};

}  // namespace

NodePtr CompilerState::compile(const WreathElement& g) {
  if (g.desc != triple.h.group) throw std::runtime_error("element is in a different wreath group");
  if (is_identity(g)) return ident;
  std::string lit = to_literal(g);
  auto it = memo.find(lit);
  if (it != memo.end()) return it->second;

  std::vector<int> images(static_cast<size_t>(m), 0);
  std::vector<bool> hit(static_cast<size_t>(m), false);
  for (int i = 0; i < m; ++i) {
    const int j = coset_index(triple, multiply(triple.transversal[static_cast<size_t>(i)], g));
    if (hit[static_cast<size_t>(j)])
      throw std::runtime_error("coset incoherence unfolding " + lit +
                               ": two letters land in coset " + std::to_string(j + 1) +
                               "; the triple is invalid");
    hit[static_cast<size_t>(j)] = true;
    images[static_cast<size_t>(i)] = j + 1;
  }
  NodePtr node = std::make_shared<CompiledNode>(shared_from_this(), g, lit,
                                                Permutation::from_images(std::move(images)));
  memo.emplace(std::move(lit), node);
  return node;
}

Compiler::Compiler(SimilarityTriple triple) : st_(std::make_shared<CompilerState>()) {
  st_->triple = std::move(triple);
  st_->m = static_cast<int>(st_->triple.transversal.size());
  if (st_->m < 1) throw std::runtime_error("the transversal is empty");
  st_->session = next_uid();
  st_->ident = identity_node(st_->m);
  for (const auto& x : st_->triple.transversal) st_->inv_x.push_back(inverse(x));
}

const SimilarityTriple& Compiler::triple() const { return st_->triple; }
int Compiler::degree() const { return st_->m; }
NodePtr Compiler::identity() const { return st_->ident; }
NodePtr Compiler::compile(const WreathElement& g) { return st_->compile(g); }

NodePtr Compiler::named(const std::string& name) {
  for (const auto& g : st_->triple.generators)
    if (g.name == name) return compile(g.element);
  std::string have;
  for (const auto& g : st_->triple.generators) have += (have.empty() ? "" : ", ") + g.name;
  throw std::runtime_error("no generator named '" + name + "' (have: " + have + ")");
}

std::vector<NodePtr> Compiler::generator_nodes() {
  std::vector<NodePtr> out;
  for (const auto& g : st_->triple.generators) out.push_back(compile(g.element));
  return out;
}

std::vector<WreathElement> Compiler::generator_elements() const {
  std::vector<WreathElement> out;
  for (const auto& g : st_->triple.generators) out.push_back(g.element);
  return out;
}

std::vector<int> act(const NodePtr& a, const std::vector<int>& w) {
  NodePtr cur = a;
  std::vector<int> out;
  out.reserve(w.size());
  for (size_t k = 0; k < w.size(); ++k) {
    out.push_back(cur->root().image(w[k]));
    if (k + 1 < w.size()) cur = cur->section(w[k]);
  }
  return out;
}

NodePtr section_at(const NodePtr& a, const std::vector<int>& v) {
  NodePtr cur = a;
  for (int letter : v) cur = cur->section(letter);
  return cur;
}

bool Portrait::operator==(const Portrait& o) const {
  return depth == o.depth && root == o.root && children == o.children;
}

Portrait portrait(const NodePtr& a, int depth) {
  if (depth < 0) throw std::runtime_error("portrait depth must be >= 0");
  Portrait p;
  p.depth = depth;
  if (depth == 0) {
    p.root = Permutation(a->degree());
    return p;
  }
  p.root = a->root();
  if (depth >= 2)
    for (int i = 1; i <= a->degree(); ++i) p.children.push_back(portrait(a->section(i), depth - 1));
  return p;
}

std::string portrait_text(const Portrait& p) {
  if (p.depth == 0) return "[]";
  std::string out = p.root.cycles();
  if (p.children.empty()) return out + "[]";
  out += "[ ";
  for (size_t i = 0; i < p.children.size(); ++i) {
    if (i) out += ", ";
    out += portrait_text(p.children[i]);
  }
  return out + " ]";
}

std::string portrait_text(const NodePtr& a, int depth) { return portrait_text(portrait(a, depth)); }

BisimResult bisim_equal(const NodePtr& a, const NodePtr& b, long long cap) {
  if (a->degree() != b->degree()) throw std::runtime_error("alphabet mismatch");
  const int m = a->degree();
  BisimResult res;
  std::deque<std::tuple<NodePtr, NodePtr, std::vector<int>>> q;
  std::set<std::pair<std::string, std::string>> visited;
  q.emplace_back(a, b, std::vector<int>{});
  visited.insert({a->key(), b->key()});
  while (!q.empty()) {
    if (res.pairs_explored >= cap) {
      res.status = BisimStatus::Unknown;
      return res;
    }
    auto [x, y, path] = std::move(q.front());
    q.pop_front();
    ++res.pairs_explored;
    if (x->key() == y->key()) continue;
    for (int i = 1; i <= m; ++i)
      if (x->root().image(i) != y->root().image(i)) {
        res.status = BisimStatus::DistinctAt;
        res.witness = path;
        res.witness.push_back(i);
        return res;
      }
    for (int i = 1; i <= m; ++i) {
      NodePtr xs = x->section(i);
      NodePtr ys = y->section(i);
      auto k = std::make_pair(xs->key(), ys->key());
      if (visited.insert(std::move(k)).second) {
        std::vector<int> p2 = path;
        p2.push_back(i);
        q.emplace_back(std::move(xs), std::move(ys), std::move(p2));
      }
    }
  }
  res.status = BisimStatus::Equal;
  return res;
}

std::optional<std::vector<int>> distinct_to_depth(const NodePtr& a, const NodePtr& b, int depth) {
  if (a->degree() != b->degree()) throw std::runtime_error("alphabet mismatch");
  const int m = a->degree();
  std::deque<std::tuple<NodePtr, NodePtr, std::vector<int>>> q;
  std::set<std::pair<std::string, std::string>> visited;
  q.emplace_back(a, b, std::vector<int>{});
  visited.insert({a->key(), b->key()});
  while (!q.empty()) {
    auto [x, y, path] = std::move(q.front());
    q.pop_front();
    if (x->key() == y->key()) continue;
    if (static_cast<int>(path.size()) >= depth) continue;
    for (int i = 1; i <= m; ++i)
      if (x->root().image(i) != y->root().image(i)) {
        std::vector<int> w = path;
        w.push_back(i);
        return w;
      }
    if (static_cast<int>(path.size()) + 1 >= depth) continue;
    for (int i = 1; i <= m; ++i) {
      NodePtr xs = x->section(i);
      NodePtr ys = y->section(i);
      auto k = std::make_pair(xs->key(), ys->key());
      if (visited.insert(std::move(k)).second) {
        std::vector<int> p2 = path;
        p2.push_back(i);
        q.emplace_back(std::move(xs), std::move(ys), std::move(p2));
      }
    }
  }
  return std::nullopt;
}

namespace {

bool trivial_rec(const NodePtr& a, int depth, std::map<std::string, int>& proven) {
  if (depth <= 0) return true;
  if (!a->root().is_identity()) return false;
  auto it = proven.find(a->key());
  if (it != proven.end() && it->second >= depth) return true;
  for (int i = 1; i <= a->degree(); ++i)
    if (!trivial_rec(a->section(i), depth - 1, proven)) return false;
  int& slot = proven[a->key()];
  if (slot < depth) slot = depth;
  return true;
}

}  // namespace

bool trivial_to_depth(const NodePtr& a, int depth) {
  std::map<std::string, int> proven;
  return trivial_rec(a, depth, proven);
}

ClosureResult state_closure(const std::vector<NodePtr>& gens, long long cap) {
  ClosureResult res;
  if (gens.empty()) {
    res.closed = true;
    return res;
  }
  const int m = gens[0]->degree();
  for (const auto& g : gens)
    if (g->degree() != m) throw std::runtime_error("alphabet mismatch");

  std::map<std::string, int> by_key;
  auto resolve = [&](const NodePtr& n) -> int {
    auto it = by_key.find(n->key());
    if (it != by_key.end()) return it->second;
    for (size_t s = 0; s < res.states.size(); ++s) {
      BisimResult b = bisim_equal(res.states[s], n, cap);
      if (b.status == BisimStatus::Equal) {
        by_key.emplace(n->key(), static_cast<int>(s));
        return static_cast<int>(s);
      }
    }
    res.states.push_back(n);
    by_key.emplace(n->key(), static_cast<int>(res.states.size()) - 1);
    return static_cast<int>(res.states.size()) - 1;
  };

  for (const auto& g : gens) {
    resolve(g);
    if (static_cast<long long>(res.states.size()) > cap) return res;
  }
  for (size_t s = 0; s < res.states.size(); ++s) {
    res.delta.emplace_back();
    for (int i = 1; i <= m; ++i) {
      const int tgt = resolve(res.states[s]->section(i));
      if (static_cast<long long>(res.states.size()) > cap) return res;
      res.delta[s].push_back(tgt);
    }
  }
  res.closed = true;
  return res;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<std::vector<int>>> level_orbits(const std::vector<NodePtr>& gens,
                                                        int level) {
  if (gens.empty()) throw std::runtime_error("orbit computation needs at least one automorphism");
  if (level < 0) throw std::runtime_error("level must be >= 0");
  const int m = gens[0]->degree();
  for (const auto& g : gens)
    if (g->degree() != m) throw std::runtime_error("alphabet mismatch");
  if (level == 0) return {{{}}};

  long long count = 1;
  for (int i = 0; i < level; ++i) {
    count *= m;
    if (count > 1000000) throw std::runtime_error("level has more than 10^6 vertices");
  }
  // big-endian index: first letter is the most significant digit, so index
  // order is lexicographic order
  auto to_word = [&](long long idx) {
    std::vector<int> w(static_cast<size_t>(level));
    for (int k = level - 1; k >= 0; --k) {
      w[static_cast<size_t>(k)] = static_cast<int>(idx % m) + 1;
      idx /= m;
    }
    return w;
  };
  auto to_index = [&](const std::vector<int>& w) {
    long long idx = 0;
    for (int letter : w) idx = idx * m + (letter - 1);
    return idx;
  };

  Dsu dsu(static_cast<size_t>(count));
  for (const auto& g : gens)
    for (long long v = 0; v < count; ++v) dsu.unite(static_cast<int>(v), static_cast<int>(to_index(act(g, to_word(v)))));

  std::map<int, std::vector<std::vector<int>>> orbits;  // keyed by root = smallest index
  for (long long v = 0; v < count; ++v) orbits[dsu.find(static_cast<int>(v))].push_back(to_word(v));
  std::vector<std::vector<std::vector<int>>> out;
  for (auto& [root, words] : orbits) out.push_back(std::move(words));
  return out;
}

bool level1_transitive(const std::vector<NodePtr>& gens) {
  return level_orbits(gens, 1).size() == 1;
}

WreathElement word_element(const GroupDescriptor& desc, const std::vector<WreathElement>& gens,
                           const std::vector<int>& word) {
  WreathElement out = wreath_identity(desc);
  for (int s : word) {
    size_t k = static_cast<size_t>(s > 0 ? s : -s) - 1;
    if (s == 0 || k >= gens.size())
      throw std::runtime_error("word letter " + std::to_string(s) + " has no generator");
    out = multiply(out, s > 0 ? gens[k] : inverse(gens[k]));
  }
  return out;
}

std::string word_to_string(const std::vector<NamedGenerator>& gens, const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    int s = word[i];
    size_t k = static_cast<size_t>(s > 0 ? s : -s) - 1;
    if (s == 0 || k >= gens.size())
      throw std::runtime_error("word letter " + std::to_string(s) + " has no generator");
    if (i) out += ".";
    out += gens[k].name;
    if (s < 0) out += "^-1";
  }
  return out;
}

std::string vertex_str(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::vector<KernelWitness> kernel_search(Compiler& c, const std::vector<WreathElement>& gens,
                                         int radius, int depth) {
  if (radius < 1 || depth < 1) throw std::runtime_error("kernel search needs radius and depth >= 1");
  const GroupDescriptor& gd = group_of(c.triple());

  std::vector<int> letters;
  std::vector<WreathElement> letter_elem;
  for (size_t k = 0; k < gens.size(); ++k) {
    letters.push_back(static_cast<int>(k) + 1);
    letter_elem.push_back(gens[k]);
    letters.push_back(-static_cast<int>(k) - 1);
    letter_elem.push_back(inverse(gens[k]));
  }

  struct Item {
    std::vector<int> word;
    WreathElement elem;
  };
  std::vector<Item> frontier{{std::vector<int>{}, wreath_identity(gd)}};
  std::set<WreathElement, bool (*)(const WreathElement&, const WreathElement&)> seen(wreath_less);
  std::vector<KernelWitness> out;

  for (int len = 1; len <= radius; ++len) {
    std::vector<Item> next;
    for (const auto& item : frontier) {
      for (size_t li = 0; li < letters.size(); ++li) {
        const int s = letters[li];
        if (!item.word.empty() && item.word.back() == -s) continue;  // free reduction
        Item n{item.word, multiply(item.elem, letter_elem[li])};
        n.word.push_back(s);
        if (!is_identity(n.elem) && seen.insert(n.elem).second &&
            trivial_to_depth(c.compile(n.elem), depth))
          out.push_back(KernelWitness{n.word, n.elem, depth});
        next.push_back(std::move(n));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

namespace {

std::vector<int> free_reduce(std::vector<int> w) {
  std::vector<int> out;
  for (int s : w) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

}  // namespace

StabilizerPair stabilizer_pair(Compiler& c, const std::vector<WreathElement>& gens,
                               int verify_depth) {
  const int m = c.degree();
  const GroupDescriptor& gd = group_of(c.triple());
  std::vector<NodePtr> nodes;
  for (const auto& g : gens) nodes.push_back(c.compile(g));

  // breadth-first orbit of letter 1; reps are words in the signed generators
  std::vector<bool> seen(static_cast<size_t>(m) + 1, false);
  std::vector<std::vector<int>> rep(static_cast<size_t>(m) + 1);
  StabilizerPair out;
  std::deque<int> q;
  seen[1] = true;
  out.orbit_reps.emplace_back(1, std::vector<int>{});
  q.push_back(1);
  while (!q.empty()) {
    const int i = q.front();
    q.pop_front();
    for (size_t k = 0; k < nodes.size(); ++k) {
      for (int sign : {+1, -1}) {
        const int j = sign > 0 ? nodes[k]->root().image(i) : nodes[k]->root().preimage(i);
        if (seen[static_cast<size_t>(j)]) continue;
        seen[static_cast<size_t>(j)] = true;
        rep[static_cast<size_t>(j)] = rep[static_cast<size_t>(i)];
        rep[static_cast<size_t>(j)].push_back(sign * (static_cast<int>(k) + 1));
        out.orbit_reps.emplace_back(j, rep[static_cast<size_t>(j)]);
        q.push_back(j);
      }
    }
  }
  out.orbit_size = static_cast<int>(out.orbit_reps.size());
  if (out.orbit_size != m && out.orbit_size != 1)
    throw std::runtime_error("stabilizer pair: the root action is not transitive on the letters");

  std::set<WreathElement, bool (*)(const WreathElement&, const WreathElement&)> dedupe(wreath_less);
  for (const auto& [i, ui] : out.orbit_reps) {
    for (size_t k = 0; k < gens.size(); ++k) {
      const int j = nodes[k]->root().image(i);
      std::vector<int> w = ui;
      w.push_back(static_cast<int>(k) + 1);
      for (auto it = rep[static_cast<size_t>(j)].rbegin(); it != rep[static_cast<size_t>(j)].rend(); ++it)
        w.push_back(-*it);
      w = free_reduce(std::move(w));
      WreathElement elem = word_element(gd, gens, w);
      if (is_identity(elem)) continue;
      if (!dedupe.insert(elem).second) continue;
      if (!in_H(c.triple().h, elem))
        throw std::runtime_error(
            "stabilizer pair: a Schreier element escaped the subgroup; the transversal data is "
            "inconsistent");
      WreathElement fi = apply_f(c.triple(), elem);
      NodePtr side = section_at(word_node(m, nodes, w), {1});
      const bool ok = !distinct_to_depth(c.compile(fi), side, verify_depth).has_value();
      out.gens.push_back(SchreierGen{std::move(w), std::move(elem), std::move(fi), ok});
    }
  }
  return out;
}

std::string dot_export(const ClosureResult& c) {
  if (!c.closed) throw std::runtime_error("dot export needs a closed state set");
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n";
  for (size_t s = 0; s < c.states.size(); ++s)
    os << "  s" << s << " [label=\"s" << s << ": " << c.states[s]->root().cycles() << "\"];\n";
  for (size_t s = 0; s < c.states.size(); ++s) {
    const int m = c.states[s]->degree();
    for (int i = 1; i <= m; ++i)
      os << "  s" << s << " -> s" << c.delta[s][static_cast<size_t>(i - 1)] << " [label=\"" << i
         << "|" << c.states[s]->root().image(i) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string dot_export(const ExplicitAutomaton& a) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n";
  for (int s = 0; s < a.size(); ++s)
    os << "  s" << s << " [label=\"" << a.state(s).name << ": " << a.perm(s).cycles() << "\"];\n";
  for (int s = 0; s < a.size(); ++s)
    for (int i = 1; i <= a.degree(); ++i)
      os << "  s" << s << " -> s" << a.state(s).children[static_cast<size_t>(i - 1)]
         << " [label=\"" << i << "|" << a.perm(s).image(i) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace selfsim
