#pragma once

// Similarity triples (G, H, f): a wreath product G = B wr X, a finite-index
// subgroup H cut out by a top-group sublattice Y and per-Y-coset congruences
// on sums of base values, and a homomorphism f : H -> G. Triples are the
// input to the tree compiler: cosets of H become the m children of the root
// and f produces the sections.

#include <selfsim/lattice.hpp>
#include <selfsim/wreath.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace selfsim {

// Constraint on the sum of base values over one Y-coset of positions.
// For f.g. B the lattice lives in B itself; for an omega-power B it lives in
// the coordinate group and constrains the copy-0 component of the sum,
// leaving every other copy free. Either way the coset's index contribution
// is the lattice index.
struct BaseConstraint {
  SubgroupLattice lattice;
};

struct WreathSubgroupSpec {
  GroupDescriptor group;
  SubgroupLattice y;                            // finite-index subgroup of the top group
  std::vector<BaseConstraint> coset_constraints;  // one per Y-residue, in transversal(y) order
  std::vector<XElement> coset_positions;          // canonical Y-residues, transversal(y) order
};

WreathSubgroupSpec make_subgroup_spec(GroupDescriptor group, SubgroupLattice y,
                                      std::vector<BaseConstraint> coset_constraints);
// Constraint-free spec: H = (full base) x| Y.
WreathSubgroupSpec subgroup_from_y(const GroupDescriptor& group, SubgroupLattice y);

bool in_H(const WreathSubgroupSpec& spec, const WreathElement& g);
Int subgroup_index(const WreathSubgroupSpec& spec);

// f on H = A0 x| Y determined by a module structure on A0: the base part is
// a Y-span of the given generators, f(gen_j shifted by y) = image_j shifted
// by on_y(y), and the top part maps through on_y. Evaluation solves for the
// generator decomposition inside a bounded shift window (support hull padded
// by the generator diameter); base parts needing shifts outside that window
// are reported as errors rather than searched for.
struct ModuleGenerator {
  WreathElement gen;    // top-trivial element of G; its base map is the module generator
  WreathElement image;  // arbitrary element of G
};

struct ModuleEndo {
  AbelianHom on_y;  // domain: Y inside the top group; codomain: the top group
  std::vector<ModuleGenerator> gens;
};

// f on H = {(a, 0)} <= (L^omega) wr C2 from an abelian pair (L, M, phi):
// position 0 folds copy 0 through phi onto copy 1 and shifts the tail down,
// position 1 swaps copies 0 and 1.
struct AbelianPair {
  AbelianDescriptor group;  // L, finitely generated
  SubgroupLattice m;        // finite-index M <= L
  AbelianHom phi;           // M -> L
  bool simple_claimed = false;  // metadata only; never asserted, only evidenced
};

AbelianPair make_abelian_pair(AbelianDescriptor group, SubgroupLattice m, AbelianHom phi,
                              bool simple_claimed = false);

struct OmegaPairEndo {
  AbelianPair pair;
};

using VirtualEndo = std::variant<ModuleEndo, OmegaPairEndo>;

struct NamedGenerator {
  std::string name;
  WreathElement element;
};

struct SimilarityTriple {
  WreathSubgroupSpec h;
  std::vector<WreathElement> transversal;  // one rep per coset of H, order fixes letters 1..m
  VirtualEndo f;
  std::vector<NamedGenerator> generators;  // named generating set used for tree work
};

const GroupDescriptor& group_of(const SimilarityTriple& t);

// Coset index of g (0-based): the unique j with g * transversal[j]^-1 in H.
int coset_index(const SimilarityTriple& t, const WreathElement& g);

// f applied to an element of H. Throws with a diagnostic if g is outside H
// or its base part is outside the generator span's solve window.
WreathElement apply_f(const SimilarityTriple& t, const WreathElement& g);

// Canonical coset representatives: base-congruence residues vary slowest
// (cosets in Y-transversal order, each residue placed at the coset's
// canonical position), top-group residues fastest.
std::vector<WreathElement> default_transversal(const WreathSubgroupSpec& spec);

struct AxiomCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TripleReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct ValidateOptions {
  int samples = 32;
  std::uint64_t seed = 0;
};

TripleReport validate_triple(const SimilarityTriple& t, const ValidateOptions& opt = {});

// The omega construction: from an abelian pair (L, M, phi) of index m0,
// build the triple on (L^omega) wr C2 with H = {(a, 0) : copy-0 component of
// a(0) in M}, index 2*m0, and the fold/swap endomorphism. Generators:
// first-copy and second-copy basis deltas at position 0, the top swap, and
// the diagonal (both positions) first-copy delta.
SimilarityTriple build_omega_c2(const AbelianPair& pair);

// A plain abelian pair as a degenerate triple: trivial base, top X = L,
// H = (trivial) x| M, f = phi on the top.
SimilarityTriple lift_abelian_pair(const AbelianPair& pair);

}  // namespace selfsim
