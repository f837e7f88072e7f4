#include "doctest.h"

#include <selfsim/lattice.hpp>
#include <selfsim/sampling.hpp>

using namespace selfsim;

namespace {

const AbelianDescriptor Z = AbelianDescriptor::free_of_rank(1);
const AbelianDescriptor Z2 = AbelianDescriptor::free_of_rank(2);

AbelianElement dense(const AbelianDescriptor& d, std::vector<Int> v) {
  return AbelianElement::from_dense(d, v);
}

}  // namespace

TEST_CASE("hnf of 2Z in Z: index 2") {
  auto l = hnf_reduce({{Int(2)}}, Z);
  CHECK(l.finite_index());
  CHECK(l.index() == 2);
  CHECK(l.hnf_rows() == Matrix{{Int(2)}});
  CHECK(member(l, dense(Z, {Int(4)})));
  CHECK_FALSE(member(l, dense(Z, {Int(3)})));
  auto t = transversal(l);
  REQUIRE(t.size() == 2);
  CHECK(t[0].is_zero());
  CHECK(to_dense(t[1]) == std::vector<Int>{Int(1)});
}

TEST_CASE("hnf of diag(2,3) in Z^2: index 6") {
  auto l = hnf_reduce({{Int(2), Int(0)}, {Int(0), Int(3)}}, Z2);
  CHECK(l.index() == 6);
  CHECK_FALSE(member(l, dense(Z2, {Int(1), Int(1)})));
  CHECK(member(l, dense(Z2, {Int(2), Int(-3)})));
  auto t = transversal(l);
  REQUIRE(t.size() == 6);
  // lexicographic residue box, last coordinate fastest, identity first
  Matrix want = {{Int(0), Int(0)}, {Int(0), Int(1)}, {Int(0), Int(2)},
                 {Int(1), Int(0)}, {Int(1), Int(1)}, {Int(1), Int(2)}};
  for (size_t i = 0; i < 6; ++i) CHECK(to_dense(t[i]) == want[i]);
}

TEST_CASE("empty basis in Z has infinite index") {
  auto l = hnf_reduce({}, Z);
  CHECK_FALSE(l.finite_index());
  CHECK_THROWS(l.index());
  CHECK(member(l, dense(Z, {Int(0)})));
  CHECK_FALSE(member(l, dense(Z, {Int(1)})));
  CHECK_THROWS(transversal(l));
}

TEST_CASE("full lattice transversal is the identity alone") {
  auto l = SubgroupLattice::full(Z);
  CHECK(l.index() == 1);
  auto t = transversal(l);
  REQUIRE(t.size() == 1);
  CHECK(t[0].is_zero());
}

TEST_CASE("hnf row reduction collapses redundant generators") {
  // rows 4 and 6 generate 2Z
  auto l = hnf_reduce({{Int(4)}, {Int(6)}}, Z);
  CHECK(l.hnf_rows() == Matrix{{Int(2)}});
  CHECK(l.index() == 2);

  // pivots increase and above-pivot entries are reduced into [0, pivot)
  auto l2 = hnf_reduce({{Int(2), Int(1)}, {Int(0), Int(2)}}, Z2);
  CHECK(l2.index() == 4);
  CHECK(l2.hnf_rows() == Matrix{{Int(2), Int(1)}, {Int(0), Int(2)}});
}

TEST_CASE("hnf shape properties on random bases") {
  Sampler s(21);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + (trial % 3);
    int nrows = trial % 4;  // 0..3 rows
    Matrix rows;
    for (int r = 0; r < nrows; ++r) {
      Row row;
      for (int c = 0; c < d; ++c) row.push_back(Int(s.pick(-6, 6)));
      rows.push_back(row);
    }
    auto res = hnf(rows, d);
    // pivot columns strictly increase, pivots positive, entries above reduced
    for (size_t r = 0; r < res.h.size(); ++r) {
      int pc = res.pivot_col[r];
      if (r > 0) CHECK(pc > res.pivot_col[r - 1]);
      CHECK(res.h[r][static_cast<size_t>(pc)] > 0);
      for (size_t rr = 0; rr < r; ++rr) {
        CHECK(res.h[rr][static_cast<size_t>(pc)] >= 0);
        CHECK(res.h[rr][static_cast<size_t>(pc)] < res.h[r][static_cast<size_t>(pc)]);
      }
      for (int c = 0; c < pc; ++c) CHECK(res.h[r][static_cast<size_t>(c)] == 0);
    }
    // every input row is a member of the lattice spanned by the hnf rows
    auto lat = hnf_reduce(rows, AbelianDescriptor::free_of_rank(d));
    for (const auto& row : rows) CHECK(lat.contains_row(row));
  }
}

TEST_CASE("membership and residue agree") {
  auto l = hnf_reduce({{Int(2), Int(1)}, {Int(0), Int(3)}}, Z2);
  Sampler s(22);
  for (int i = 0; i < 100; ++i) {
    auto a = s.base_value(Z2);
    auto r = l.residue(a);
    bool zero_res = true;
    for (const auto& x : r) zero_res = zero_res && x == 0;
    CHECK(zero_res == member(l, a));
    // a minus its residue is always a member
    auto diff = sub(a, l.element_from_row(r));
    CHECK(member(l, diff));
  }
}

TEST_CASE("lattices in torsion ambient groups") {
  auto z2z2 = AbelianDescriptor::fg({Int(2), Int(2)});
  auto l = hnf_reduce({{Int(1), Int(0)}}, z2z2);
  CHECK(l.index() == 2);
  CHECK(member(l, dense(z2z2, {Int(1), Int(0)})));
  CHECK_FALSE(member(l, dense(z2z2, {Int(0), Int(1)})));
  auto t = transversal(l);
  REQUIRE(t.size() == 2);
  CHECK(t[0].is_zero());
  CHECK(to_dense(t[1]) == std::vector<Int>{Int(0), Int(1)});

  // relation rows make the full lattice index 1 even with an empty basis
  auto full_t = hnf_reduce({}, AbelianDescriptor::fg({Int(3)}));
  CHECK(full_t.index() == 3);

  // mixed ambient Z/2 + Z: finite index needs a pivot on the free column
  auto mixed = AbelianDescriptor::fg({Int(2), Int(0)});
  auto lm = hnf_reduce({{Int(0), Int(5)}}, mixed);
  CHECK(lm.index() == 10);
  CHECK(member(lm, dense(mixed, {Int(0), Int(5)})));
  CHECK_FALSE(member(lm, dense(mixed, {Int(1), Int(5)})));
}

TEST_CASE("solve_basis expresses members over the original rows") {
  auto l = hnf_reduce({{Int(2)}}, Z);
  auto c = l.solve_basis(dense(Z, {Int(6)}));
  REQUIRE(c.has_value());
  CHECK(*c == std::vector<Int>{Int(3)});
  CHECK_FALSE(l.solve_basis(dense(Z, {Int(5)})).has_value());

  auto l2 = hnf_reduce({{Int(2), Int(0)}, {Int(0), Int(3)}}, Z2);
  auto c2 = l2.solve_basis(dense(Z2, {Int(4), Int(-3)}));
  REQUIRE(c2.has_value());
  // reconstruct: coefficients over the basis rows reproduce the element
  AbelianElement acc(Z2);
  for (size_t i = 0; i < c2->size(); ++i)
    acc = add(acc, scale(l2.element_from_row(l2.basis()[i]), (*c2)[i]));
  CHECK(acc == dense(Z2, {Int(4), Int(-3)}));
}

TEST_CASE("make_hom rejects order violations and apply_hom is additive") {
  // halving map on 2Z: 2 -> 1
  auto dom = hnf_reduce({{Int(2)}}, Z);
  auto halve = make_hom(dom, Z, {dense(Z, {Int(1)})});
  CHECK(to_dense(apply_hom(halve, dense(Z, {Int(6)})))[0] == 3);
  CHECK(apply_hom(halve, dense(Z, {Int(0)})).is_zero());
  CHECK_THROWS(apply_hom(halve, dense(Z, {Int(5)})));  // not in the domain

  Sampler s(23);
  for (int i = 0; i < 50; ++i) {
    Int a = Int(2) * s.pick(-40, 40);
    Int b = Int(2) * s.pick(-40, 40);
    auto fa = apply_hom(halve, dense(Z, {a}));
    auto fb = apply_hom(halve, dense(Z, {b}));
    CHECK(apply_hom(halve, dense(Z, {a + b})) == add(fa, fb));
  }

  // Z -> Z/2 with generator of infinite order mapping to order-2 image is fine
  auto zz2 = make_hom(SubgroupLattice::full(Z), AbelianDescriptor::fg({Int(2)}),
                      {dense(AbelianDescriptor::fg({Int(2)}), {Int(1)})});
  CHECK(to_dense(apply_hom(zz2, dense(Z, {Int(3)})))[0] == 1);

  // Z/2 -> Z sending the generator to 1 violates the order constraint
  auto z2 = AbelianDescriptor::fg({Int(2)});
  CHECK_THROWS(make_hom(SubgroupLattice::full(z2), Z, {dense(Z, {Int(1)})}));
}

TEST_CASE("element_order") {
  auto d = AbelianDescriptor::fg({Int(2), Int(0)});
  CHECK(element_order(d, {Int(1), Int(0)}) == 2);
  CHECK(element_order(d, {Int(0), Int(1)}) == 0);
  CHECK(element_order(d, {Int(0), Int(0)}) == 1);
  auto z6 = AbelianDescriptor::fg({Int(6)});
  CHECK(element_order(z6, {Int(2)}) == 3);
  CHECK(element_order(z6, {Int(5)}) == 6);
}

TEST_CASE("solve_congruence and congruence_kernel") {
  // c * 2 == 6 over Z
  auto c = solve_congruence({{Int(2)}}, {Int(6)}, {Int(0)});
  REQUIRE(c.has_value());
  CHECK((*c)[0] * 2 == 6);
  CHECK_FALSE(solve_congruence({{Int(2)}}, {Int(5)}, {Int(0)}).has_value());

  // c * 2 == 0 mod 4 has kernel generated by c = 2
  auto k = congruence_kernel({{Int(2)}}, {Int(4)});
  auto klat = hnf_reduce(k, Z);
  CHECK(klat.index() == 2);

  // c1 * 2 + c2 * 3 == 1 over Z
  auto c2 = solve_congruence({{Int(2)}, {Int(3)}}, {Int(1)}, {Int(0)});
  REQUIRE(c2.has_value());
  CHECK((*c2)[0] * 2 + (*c2)[1] * 3 == 1);

  // kernel solutions really solve the zero congruence
  auto k2 = congruence_kernel({{Int(2), Int(0)}, {Int(3), Int(3)}}, {Int(6), Int(0)});
  for (const auto& row : k2) {
    Int col0 = row[0] * 2 + row[1] * 3;
    Int col1 = row[1] * 3;
    CHECK(mod_floor(col0, Int(6)) == 0);
    CHECK(col1 == 0);
  }
}

TEST_CASE("omega_phi1 folds copy 0 through phi and shifts the tail down") {
  auto dom = hnf_reduce({{Int(2)}}, Z);
  auto halve = make_hom(dom, Z, {dense(Z, {Int(1)})});
  auto w = AbelianDescriptor::omega(Z);

  // (2, 5, 7, 0, ...) -> (6, 7, 0, ...)
  AbelianElement a(w);
  a.set(Coord{0, 0}, Int(2));
  a.set(Coord{1, 0}, Int(5));
  a.set(Coord{2, 0}, Int(7));
  auto r = omega_phi1(halve, a);
  CHECK(r.get(Coord{0, 0}) == 6);
  CHECK(r.get(Coord{1, 0}) == 7);
  CHECK(r.get(Coord{2, 0}) == 0);
  CHECK(r.coords().size() == 2);

  // copy 0 outside the domain is rejected
  AbelianElement bad(w);
  bad.set(Coord{0, 0}, Int(3));
  CHECK_THROWS(omega_phi1(halve, bad));

  // additive on sampled pairs with even copy-0 entries
  Sampler s(24);
  for (int i = 0; i < 40; ++i) {
    AbelianElement x(w), y(w);
    for (int c = 0; c < 3; ++c) {
      x.set(Coord{c, 0}, Int(2) * s.pick(-5, 5));
      y.set(Coord{c, 0}, Int(2) * s.pick(-5, 5));
    }
    CHECK(omega_phi1(halve, add(x, y)) == add(omega_phi1(halve, x), omega_phi1(halve, y)));
  }
}
