#pragma once

// Lazy automorphisms of the m-ary rooted tree and the coset-recursion
// compiler that turns a similarity triple into one automorphism per group
// element. Letters are 1..m; vertex words are read root-first. Compiled
// states are shared through a per-compiler memo table keyed by the printed
// element form, so finite-state behaviour shows up as memo-table closure.
//
// Values are immutable once built; section caches fill in lazily. All of
// this is single-threaded.

#include <selfsim/io.hpp>
#include <selfsim/similarity.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace selfsim {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int m);  // identity on 1..m
  // images[i-1] is the image of letter i (1-based values)
  static Permutation from_images(std::vector<int> images);

  int degree() const { return static_cast<int>(img_.size()); }
  int image(int letter) const;     // 1..m -> 1..m
  int preimage(int letter) const;  // 1..m -> 1..m
  bool is_identity() const;
  Permutation inverse() const;
  Permutation then(const Permutation& o) const;  // apply *this first, then o

  // Cycle notation with fixed points dropped: "e", "(1 2)", "(1 2)(3 4)".
  std::string cycles() const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }

 private:
  std::vector<int> img_;  // 0-based internally
};

class AutNode;
using NodePtr = std::shared_ptr<const AutNode>;

class AutNode {
 public:
  virtual ~AutNode() = default;
  virtual const Permutation& root() const = 0;
  virtual NodePtr section(int letter) const = 0;  // letter in 1..m
  // Stable identity string; equal keys imply equal automorphisms.
  virtual const std::string& key() const = 0;
  int degree() const { return root().degree(); }
};

NodePtr identity_node(int m);

// compose(a, b) applies a first: act(compose(a, b), w) = act(b, act(a, w)).
// Composing with the identity returns the other node unchanged; inverting an
// inverse unwraps it.
NodePtr compose(NodePtr a, NodePtr b);
NodePtr invert(NodePtr a);

// Product node over signed 1-based generator indices (negative = inverse).
NodePtr word_node(int m, const std::vector<NodePtr>& gens, const std::vector<int>& word);

// Finite automaton given explicitly; independent of any triple, useful as a
// cross-check oracle.
struct ExplicitState {
  std::string name;
  std::vector<int> images;    // root permutation images, 1-based, length m
  std::vector<int> children;  // section state indices, length m
};

class ExplicitAutomaton {
 public:
  explicit ExplicitAutomaton(std::vector<ExplicitState> states);
  int size() const { return static_cast<int>(states_.size()); }
  int degree() const;
  const ExplicitState& state(int i) const { return states_.at(static_cast<size_t>(i)); }
  const Permutation& perm(int i) const { return perms_.at(static_cast<size_t>(i)); }
  std::uint64_t uid() const { return uid_; }

 private:
  std::vector<ExplicitState> states_;
  std::vector<Permutation> perms_;
  std::uint64_t uid_;
};

using ExplicitPtr = std::shared_ptr<const ExplicitAutomaton>;

ExplicitPtr make_explicit_automaton(std::vector<ExplicitState> states);
NodePtr explicit_node(ExplicitPtr autom, int state);

struct CompilerState;

// The coset recursion: letter i maps to j = coset index of x_i * g, and the
// section there is the compiled image of f(x_i * g * x_j^-1). A root image
// hit twice means the transversal or subgroup data is incoherent; that is a
// hard error, not a recoverable condition.
class Compiler {
 public:
  explicit Compiler(SimilarityTriple triple);

  const SimilarityTriple& triple() const;
  int degree() const;
  NodePtr identity() const;
  NodePtr compile(const WreathElement& g);
  // Compiled node for a named generator of the triple.
  NodePtr named(const std::string& name);
  // All named generators, compiled, in declaration order.
  std::vector<NodePtr> generator_nodes();
  std::vector<WreathElement> generator_elements() const;

 private:
  std::shared_ptr<CompilerState> st_;
};

// Image of a vertex word under the automorphism (right action, letter by
// letter: first letter through the root permutation, rest through the
// section at the original letter).
std::vector<int> act(const NodePtr& a, const std::vector<int>& w);

NodePtr section_at(const NodePtr& a, const std::vector<int>& v);

// Depth-d truncation. Depth 1 keeps the root permutation only; depth d
// attaches the m depth-(d-1) truncations. Depth 0 is the vacuous portrait.
// Two portraits of equal depth are equal iff the automorphisms agree on all
// words of that length.
struct Portrait {
  int depth = 0;
  Permutation root;
  std::vector<Portrait> children;

  bool operator==(const Portrait& o) const;
  bool operator!=(const Portrait& o) const { return !(*this == o); }
};

Portrait portrait(const NodePtr& a, int depth);

// "(1 2)[ e[], (1 2)[] ]" style: cycle notation, children in "[ ... ]"
// joined by ", ", leaves printed as "perm[]". Byte-stable.
std::string portrait_text(const Portrait& p);
std::string portrait_text(const NodePtr& a, int depth);

enum class BisimStatus { Equal, DistinctAt, Unknown };

struct BisimResult {
  BisimStatus status = BisimStatus::Unknown;
  std::vector<int> witness;  // vertex word when status is DistinctAt
  long long pairs_explored = 0;
};

// Breadth-first closure of section pairs with memoization on key pairs.
// Equal is a proof (the pair set closed); DistinctAt carries the first
// witness vertex in breadth-first order; Unknown means the cap on explored
// pairs ran out first.
BisimResult bisim_equal(const NodePtr& a, const NodePtr& b, long long cap = 10000);

// Exhaustive comparison on all words of length <= depth: first differing
// vertex in breadth-first order, or nullopt if the actions agree that far.
std::optional<std::vector<int>> distinct_to_depth(const NodePtr& a, const NodePtr& b, int depth);

// True iff the automorphism fixes every word of length <= depth.
bool trivial_to_depth(const NodePtr& a, int depth);

struct ClosureResult {
  bool closed = false;
  // Generators first, then sections in breadth-first discovery order,
  // canonicalized: a section that is bisimilar to a listed state is merged
  // into it (an Unknown bisimulation outcome keeps states separate).
  std::vector<NodePtr> states;
  // delta[s][i-1] = index of the state section(states[s], i) merged into.
  // Complete only when closed.
  std::vector<std::vector<int>> delta;
};

// Closed iff the canonical state count stays <= cap.
ClosureResult state_closure(const std::vector<NodePtr>& gens, long long cap = 10000);

// Orbits of the level-l vertices under the group the nodes generate.
// Each orbit lists its words lexicographically; orbits are ordered by their
// smallest word.
std::vector<std::vector<std::vector<int>>> level_orbits(const std::vector<NodePtr>& gens,
                                                        int level);
bool level1_transitive(const std::vector<NodePtr>& gens);

struct KernelWitness {
  std::vector<int> word;  // signed 1-based indices into the searched generators
  WreathElement element;
  int depth_checked = 0;
};

// Enumerates free-reduced words of length <= radius over the generators and
// their inverses (letter order g1, g1^-1, g2, g2^-1, ...), drops words whose
// product is the identity of G by exact arithmetic, keeps the first word per
// distinct element, and reports those whose compiled image acts trivially to
// the given depth. Deterministic order.
std::vector<KernelWitness> kernel_search(Compiler& c, const std::vector<WreathElement>& gens,
                                         int radius, int depth);

struct SchreierGen {
  std::vector<int> word;  // signed 1-based generator indices, freely reduced
  WreathElement element;
  WreathElement f_image;  // defines the section at vertex [1]
  bool verified = false;  // section of the word tree at [1] matches compile(f_image)
};

struct StabilizerPair {
  int orbit_size = 0;  // index of the letter-1 stabilizer in the generated group
  // (letter, word reaching it from letter 1) in discovery order.
  std::vector<std::pair<int, std::vector<int>>> orbit_reps;
  std::vector<SchreierGen> gens;  // identity elements skipped, deduplicated
  bool all_verified() const {
    for (const auto& g : gens)
      if (!g.verified) return false;
    return true;
  }
};

// Schreier generators of the stabilizer of letter 1 under the root action.
// If no generator moves letter 1 the stabilizer is the whole group and the
// generators pass through unchanged; otherwise the root action must be
// transitive and anything in between is an error. Each Schreier generator
// lies in H; its f-image is recompiled and checked against the section of
// the word tree at vertex [1] to verify_depth.
StabilizerPair stabilizer_pair(Compiler& c, const std::vector<WreathElement>& gens,
                               int verify_depth = 8);

// Product of the signed generator word by exact arithmetic.
WreathElement word_element(const GroupDescriptor& desc, const std::vector<WreathElement>& gens,
                           const std::vector<int>& word);

// "b.t^-1.b" rendering of a signed word over named generators.
std::string word_to_string(const std::vector<NamedGenerator>& gens, const std::vector<int>& word);

std::string vertex_str(const std::vector<int>& v);  // "[2,1]"

// Graphviz digraph of a closed state set: nodes "sN" labeled with the state
// name and root cycles, one edge per letter labeled "i|j" (input|output).
std::string dot_export(const ClosureResult& c);
std::string dot_export(const ExplicitAutomaton& a);

}  // namespace selfsim
