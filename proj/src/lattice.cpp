#include <selfsim/lattice.hpp>

#include <stdexcept>

namespace selfsim {

namespace {

Int iabs(const Int& v) { return v < 0 ? Int(-v) : v; }

// row -= q * other
void row_axpy(Row& row, const Int& q, const Row& other) {
  for (size_t j = 0; j < row.size(); ++j) row[j] -= q * other[j];
}

void row_negate(Row& row) {
  for (auto& v : row) v = -v;
}

Row moduli_of(const AbelianDescriptor& g) {
  Row m;
  for (const auto& f : g.factors()) m.push_back(f.modulus);
  return m;
}

Matrix with_modulus_rows(Matrix rows, const Row& moduli) {
  const size_t cols = moduli.size();
  for (size_t j = 0; j < cols; ++j) {
    if (moduli[j] == 0) continue;
    Row rel(cols, 0);
    rel[j] = moduli[j];
    rows.push_back(std::move(rel));
  }
  return rows;
}

// Back-substitution against HNF rows. Returns coefficients over h, or nothing
// if v is not an integer combination. v is consumed.
std::optional<std::vector<Int>> reduce_exact(Row v, const Matrix& h,
                                             const std::vector<int>& pivot_col) {
  std::vector<Int> c(h.size(), 0);
  for (size_t r = 0; r < h.size(); ++r) {
    const int p = pivot_col[r];
    if (v[static_cast<size_t>(p)] % h[r][static_cast<size_t>(p)] != 0) return std::nullopt;
    Int q = v[static_cast<size_t>(p)] / h[r][static_cast<size_t>(p)];
    if (q != 0) row_axpy(v, q, h[r]);
    c[r] = std::move(q);
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return c;
}

}  // namespace

HnfResult hnf(Matrix rows, int cols) {
  const size_t n = rows.size();
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != cols)
      throw std::runtime_error("hnf: row width does not match column count");

  Matrix u(n, Row(n, 0));
  for (size_t i = 0; i < n; ++i) u[i][i] = 1;

  size_t r = 0;
  std::vector<int> piv;
  for (int c = 0; c < cols && r < n; ++c) {
    const auto cc = static_cast<size_t>(c);
    bool have_pivot = false;
    while (!have_pivot) {
      size_t best = n;
      int nonzero = 0;
      for (size_t i = r; i < n; ++i) {
        if (rows[i][cc] == 0) continue;
        ++nonzero;
        if (best == n || iabs(rows[i][cc]) < iabs(rows[best][cc])) best = i;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        std::swap(rows[best], rows[r]);
        std::swap(u[best], u[r]);
        have_pivot = true;
        break;
      }
      for (size_t i = r; i < n; ++i) {
        if (i == best || rows[i][cc] == 0) continue;
        Int q = rows[i][cc] / rows[best][cc];  // truncated: keeps |remainder| < |pivot|
        row_axpy(rows[i], q, rows[best]);
        row_axpy(u[i], q, u[best]);
      }
    }
    if (!have_pivot) continue;
    if (rows[r][cc] < 0) {
      row_negate(rows[r]);
      row_negate(u[r]);
    }
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(rows[i][cc], rows[r][cc]);
      if (q != 0) {
        row_axpy(rows[i], q, rows[r]);
        row_axpy(u[i], q, u[r]);
      }
    }
    piv.push_back(c);
    ++r;
  }

  HnfResult out;
  out.h.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
  out.pivot_col = std::move(piv);
  out.u = std::move(u);
  return out;
}

SubgroupLattice SubgroupLattice::from_basis(AbelianDescriptor ambient, Matrix basis) {
  if (ambient.is_omega())
    throw std::runtime_error("subgroup lattice needs a finitely generated ambient group");
  SubgroupLattice s;
  s.cols_ = static_cast<int>(ambient.factors().size());
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != s.cols_)
      throw std::runtime_error("subgroup basis row width does not match the group");
  s.basis_rows_ = basis.size();
  s.basis_ = basis;
  Matrix work = with_modulus_rows(std::move(basis), moduli_of(ambient));
  s.hnf_ = hnf(std::move(work), s.cols_);
  s.ambient_ = std::move(ambient);
  if (static_cast<int>(s.hnf_.pivot_col.size()) == s.cols_) {
    Int idx = 1;
    for (size_t r = 0; r < s.hnf_.h.size(); ++r)
      idx *= s.hnf_.h[r][static_cast<size_t>(s.hnf_.pivot_col[r])];
    s.index_ = std::move(idx);
  }
  return s;
}

SubgroupLattice SubgroupLattice::full(const AbelianDescriptor& ambient) {
  const size_t n = ambient.factors().size();
  Matrix id(n, Row(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return from_basis(ambient, std::move(id));
}

const Int& SubgroupLattice::index() const {
  if (!index_) throw std::runtime_error("subgroup has infinite index");
  return *index_;
}

Row SubgroupLattice::row_from_element(const AbelianElement& a) const {
  if (a.descriptor() != ambient_)
    throw std::runtime_error("element does not live in the lattice's ambient group");
  Row v(static_cast<size_t>(cols_), 0);
  for (const auto& [coord, val] : a.coords()) v[static_cast<size_t>(coord.inner)] = val;
  return v;
}

AbelianElement SubgroupLattice::element_from_row(const Row& v) const {
  return AbelianElement::from_dense(ambient_, v);
}

bool SubgroupLattice::contains_row(const Row& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::runtime_error("row width does not match the group");
  return reduce_exact(v, hnf_.h, hnf_.pivot_col).has_value();
}

bool SubgroupLattice::contains(const AbelianElement& a) const {
  return contains_row(row_from_element(a));
}

Row SubgroupLattice::residue_row(Row v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::runtime_error("row width does not match the group");
  for (size_t r = 0; r < hnf_.h.size(); ++r) {
    const auto p = static_cast<size_t>(hnf_.pivot_col[r]);
    Int q = floor_div(v[p], hnf_.h[r][p]);
    if (q != 0) row_axpy(v, q, hnf_.h[r]);
  }
  return v;
}

Row SubgroupLattice::residue(const AbelianElement& a) const {
  if (!index_) throw std::runtime_error("canonical residues need a finite-index subgroup");
  return residue_row(row_from_element(a));
}

std::optional<std::vector<Int>> SubgroupLattice::solve_hnf(const Row& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::runtime_error("row width does not match the group");
  return reduce_exact(v, hnf_.h, hnf_.pivot_col);
}

std::optional<std::vector<Int>> SubgroupLattice::solve_basis(const AbelianElement& a) const {
  auto c = solve_hnf(row_from_element(a));
  if (!c) return std::nullopt;
  std::vector<Int> out(basis_rows_, 0);
  for (size_t r = 0; r < c->size(); ++r) {
    if ((*c)[r] == 0) continue;
    for (size_t j = 0; j < basis_rows_; ++j) out[j] += (*c)[r] * hnf_.u[r][j];
  }
  return out;
}

Matrix SubgroupLattice::basis_syzygies() const {
  Matrix out;
  for (size_t i = hnf_.h.size(); i < hnf_.u.size(); ++i) {
    Row s(hnf_.u[i].begin(), hnf_.u[i].begin() + static_cast<std::ptrdiff_t>(basis_rows_));
    bool all_zero = true;
    for (const auto& x : s)
      if (x != 0) {
        all_zero = false;
        break;
      }
    if (!all_zero) out.push_back(std::move(s));
  }
  return out;
}

bool SubgroupLattice::same_lattice(const SubgroupLattice& o) const {
  return ambient_ == o.ambient_ && hnf_.h == o.hnf_.h;
}

SubgroupLattice hnf_reduce(const Matrix& basis, const AbelianDescriptor& ambient) {
  return SubgroupLattice::from_basis(ambient, basis);
}

bool member(const SubgroupLattice& l, const AbelianElement& a) { return l.contains(a); }

std::vector<AbelianElement> transversal(const SubgroupLattice& l) {
  if (!l.finite_index()) throw std::runtime_error("transversal needs a finite-index subgroup");
  const auto& h = l.hnf_rows();
  const auto& piv = l.pivots();
  const int cols = static_cast<int>(l.ambient().factors().size());
  std::vector<AbelianElement> out;
  Row digits(h.size(), 0);
  while (true) {
    Row v(static_cast<size_t>(cols), 0);
    for (size_t r = 0; r < h.size(); ++r) v[static_cast<size_t>(piv[r])] = digits[r];
    out.push_back(l.element_from_row(v));
    // lexicographic successor: last coordinate varies fastest
    size_t r = h.size();
    while (r > 0) {
      --r;
      digits[r] += 1;
      if (digits[r] < h[r][static_cast<size_t>(piv[r])]) break;
      digits[r] = 0;
      if (r == 0) return out;
    }
    if (h.empty()) return out;  // trivial ambient group: single residue
  }
}

Int element_order(const AbelianDescriptor& ambient, const Row& v) {
  const auto& fs = ambient.factors();
  if (v.size() != fs.size()) throw std::runtime_error("row width does not match the group");
  Int ord = 1;
  for (size_t j = 0; j < fs.size(); ++j) {
    const Int& m = fs[j].modulus;
    if (m == 0) {
      if (v[j] != 0) return 0;
      continue;
    }
    Int rj = mod_floor(v[j], m);
    if (rj == 0) continue;
    Int oj = m / gcd_int(m, rj);
    ord = ord / gcd_int(ord, oj) * oj;
  }
  return ord;
}

AbelianHom make_hom(SubgroupLattice domain, AbelianDescriptor codomain,
                    std::vector<AbelianElement> images_per_hnf_row) {
  if (images_per_hnf_row.size() != domain.hnf_rows().size())
    throw std::runtime_error("hom needs exactly one image per reduced generator");
  for (const auto& img : images_per_hnf_row)
    if (img.descriptor() != codomain)
      throw std::runtime_error("hom image lies outside the declared codomain");
  // every relation among the generators must map to zero
  Matrix ker = congruence_kernel(domain.hnf_rows(), moduli_of(domain.ambient()));
  for (const auto& k : ker) {
    AbelianElement acc(codomain);
    for (size_t r = 0; r < k.size(); ++r)
      if (k[r] != 0) acc = add(acc, scale(images_per_hnf_row[r], k[r]));
    if (!acc.is_zero())
      throw std::runtime_error("hom images are inconsistent with generator orders");
  }
  return AbelianHom{std::move(domain), std::move(codomain), std::move(images_per_hnf_row)};
}

AbelianElement apply_hom(const AbelianHom& h, const AbelianElement& a) {
  auto c = h.domain.solve_hnf(h.domain.row_from_element(a));
  if (!c) throw std::runtime_error("apply_hom: element is outside the domain subgroup");
  AbelianElement out(h.codomain);
  for (size_t r = 0; r < c->size(); ++r)
    if ((*c)[r] != 0) out = add(out, scale(h.images[r], (*c)[r]));
  return out;
}

std::optional<std::vector<Int>> solve_congruence(const Matrix& rows, const Row& target,
                                                 const Row& moduli) {
  const int cols = static_cast<int>(target.size());
  if (moduli.size() != target.size())
    throw std::runtime_error("solve_congruence: moduli width does not match target");
  for (const auto& row : rows)
    if (row.size() != target.size())
      throw std::runtime_error("solve_congruence: row width does not match target");
  HnfResult res = hnf(with_modulus_rows(rows, moduli), cols);
  auto c = reduce_exact(target, res.h, res.pivot_col);
  if (!c) return std::nullopt;
  std::vector<Int> out(rows.size(), 0);
  for (size_t r = 0; r < c->size(); ++r) {
    if ((*c)[r] == 0) continue;
    for (size_t j = 0; j < rows.size(); ++j) out[j] += (*c)[r] * res.u[r][j];
  }
  return out;
}

Matrix congruence_kernel(const Matrix& rows, const Row& moduli) {
  const int cols = static_cast<int>(moduli.size());
  for (const auto& row : rows)
    if (row.size() != moduli.size())
      throw std::runtime_error("congruence_kernel: row width does not match moduli");
  HnfResult res = hnf(with_modulus_rows(rows, moduli), cols);
  Matrix out;
  for (size_t i = res.h.size(); i < res.u.size(); ++i) {
    Row s(res.u[i].begin(), res.u[i].begin() + static_cast<std::ptrdiff_t>(rows.size()));
    bool all_zero = true;
    for (const auto& x : s)
      if (x != 0) {
        all_zero = false;
        break;
      }
    if (!all_zero) out.push_back(std::move(s));
  }
  return out;
}

AbelianElement omega_phi1(const AbelianHom& phi, const AbelianElement& a) {
  const AbelianDescriptor& d = a.descriptor();
  if (!d.is_omega()) throw std::runtime_error("omega_phi1 acts on omega-power elements");
  if (d.inner() != phi.domain.ambient() || d.inner() != phi.codomain)
    throw std::runtime_error("omega_phi1: hom must map the coordinate group to itself");
  AbelianElement img = apply_hom(phi, omega_copy(a, 0));
  AbelianElement out(d);
  for (const auto& [coord, val] : a.coords()) {
    if (coord.copy == 0) continue;
    out.add_at(Coord{coord.copy - 1, coord.inner}, val);
  }
  for (const auto& [coord, val] : img.coords()) out.add_at(Coord{0, coord.inner}, val);
  return out;
}

}  // namespace selfsim
