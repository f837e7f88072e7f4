#pragma once

// Finite-index subgroups of f.g. abelian groups via row-style Hermite normal
// form. Torsion factors are handled by adjoining the relation rows n_i * e_i
// before reduction, so membership, index, residues and transversals all read
// off one reduced matrix.

#include <selfsim/abelian.hpp>

#include <optional>
#include <vector>

namespace selfsim {

using Row = std::vector<Int>;
using Matrix = std::vector<Row>;

struct HnfResult {
  Matrix h;                    // nonzero rows; pivot columns strictly increase
  std::vector<int> pivot_col;  // one per row of h
  Matrix u;                    // transform: first h.size() rows express h over
                               // the input rows; remaining rows are syzygies
};

// Row HNF with unimodular row operations. Pivots are positive; entries above
// a pivot are reduced into [0, pivot).
HnfResult hnf(Matrix rows, int cols);

class SubgroupLattice {
 public:
  SubgroupLattice() = default;

  static SubgroupLattice from_basis(AbelianDescriptor ambient, Matrix basis);
  static SubgroupLattice full(const AbelianDescriptor& ambient);

  const AbelianDescriptor& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const Matrix& hnf_rows() const { return hnf_.h; }
  const std::vector<int>& pivots() const { return hnf_.pivot_col; }

  bool finite_index() const { return index_.has_value(); }
  const Int& index() const;

  bool contains(const AbelianElement& a) const;
  bool contains_row(const Row& v) const;

  // Canonical residue: entry at each pivot column reduced into [0, pivot).
  // Requires finite index, where residues are exactly the lexicographic box.
  Row residue(const AbelianElement& a) const;
  Row residue_row(Row v) const;

  // Coefficients over the reduced rows, or nothing if a is not a member.
  std::optional<std::vector<Int>> solve_hnf(const Row& v) const;
  // Coefficients over the original basis rows (relation-row contributions
  // dropped; they represent the identity).
  std::optional<std::vector<Int>> solve_basis(const AbelianElement& a) const;

  // Integer combinations of (basis rows + relation rows) equal to zero,
  // restricted to the basis-row coefficients.
  Matrix basis_syzygies() const;

  bool same_lattice(const SubgroupLattice& o) const;
  bool operator==(const SubgroupLattice& o) const {
    return ambient_ == o.ambient_ && hnf_.h == o.hnf_.h;
  }

  AbelianElement element_from_row(const Row& v) const;
  Row row_from_element(const AbelianElement& a) const;

 private:
  AbelianDescriptor ambient_;
  Matrix basis_;
  HnfResult hnf_;
  std::optional<Int> index_;
  int cols_ = 0;
  size_t basis_rows_ = 0;
};

// Free-function forms of the common operations.
SubgroupLattice hnf_reduce(const Matrix& basis, const AbelianDescriptor& ambient);
bool member(const SubgroupLattice& l, const AbelianElement& a);
// Deterministic coset representatives: lexicographic residue box, identity first.
std::vector<AbelianElement> transversal(const SubgroupLattice& l);

// Homomorphism from a finite- or infinite-index subgroup into another abelian
// group, given by images of the reduced generator rows. Construction rejects
// images that violate generator orders.
struct AbelianHom {
  SubgroupLattice domain;
  AbelianDescriptor codomain;
  std::vector<AbelianElement> images;  // one per hnf row of domain
};

AbelianHom make_hom(SubgroupLattice domain, AbelianDescriptor codomain,
                    std::vector<AbelianElement> images_per_hnf_row);
AbelianElement apply_hom(const AbelianHom& h, const AbelianElement& a);

// Order of an ambient element (0 = infinite).
Int element_order(const AbelianDescriptor& ambient, const Row& v);

// Solve sum_i c_i * rows[i] == target (mod moduli per column, 0 = no modulus).
std::optional<std::vector<Int>> solve_congruence(const Matrix& rows, const Row& target,
                                                 const Row& moduli);
// Coefficient vectors (over rows) of all relations modulo the column moduli.
Matrix congruence_kernel(const Matrix& rows, const Row& moduli);

// Shift map on the first copy of an omega element: copy 0 goes through phi
// (its copy-0 part must lie in phi's domain) and is folded onto copy 1, all
// later copies move down one.
AbelianElement omega_phi1(const AbelianHom& phi, const AbelianElement& a);

}  // namespace selfsim
