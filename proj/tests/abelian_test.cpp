#include "doctest.h"

#include <selfsim/abelian.hpp>
#include <selfsim/sampling.hpp>

using namespace selfsim;

namespace {

Int pow2(int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= 2;
  return r;
}

}  // namespace

TEST_CASE("descriptor construction and validation") {
  auto z = AbelianDescriptor::free_of_rank(1);
  CHECK(z.is_fg());
  CHECK(z.rank() == 1);
  CHECK(z.factors()[0].modulus == 0);

  auto z2z2 = AbelianDescriptor::fg({Int(2), Int(2)});
  CHECK(z2z2.rank() == 2);

  CHECK(AbelianDescriptor::trivial().is_trivial());
  CHECK_THROWS(AbelianDescriptor::fg({Int(-1)}));
  CHECK_THROWS(AbelianDescriptor::omega(AbelianDescriptor::trivial()));

  auto w = AbelianDescriptor::omega(z);
  CHECK(w.is_omega());
  CHECK(w.inner() == z);
  CHECK_THROWS(AbelianDescriptor::omega(w));
  CHECK_THROWS(w.factors());
  CHECK_THROWS(w.rank());

  CHECK(z == AbelianDescriptor::fg({Int(0)}));
  CHECK(z != z2z2);
  CHECK(w != z);
  CHECK(w == AbelianDescriptor::omega(AbelianDescriptor::free_of_rank(1)));
}

TEST_CASE("unbounded integer coordinates: 2^64 + 2^64 = 2^65") {
  auto z = AbelianDescriptor::free_of_rank(1);
  auto a = AbelianElement::from_dense(z, {pow2(64)});
  auto s = add(a, a);
  CHECK(to_dense(s)[0] == pow2(65));
  CHECK(int_str(to_dense(s)[0]) == "36893488147419103232");
}

TEST_CASE("torsion arithmetic in Z/2 + Z/2") {
  auto d = AbelianDescriptor::fg({Int(2), Int(2)});
  auto a = AbelianElement::from_dense(d, {Int(1), Int(1)});
  auto b = AbelianElement::from_dense(d, {Int(1), Int(0)});
  auto s = add(a, b);
  CHECK(to_dense(s) == std::vector<Int>{Int(0), Int(1)});
  // every element is its own negative
  CHECK(neg(a) == a);
  CHECK(add(a, a).is_zero());
}

TEST_CASE("reduction drops zero coordinates") {
  auto d = AbelianDescriptor::fg({Int(3), Int(0)});
  AbelianElement e(d);
  e.set(Coord{0, 0}, Int(6));  // 6 mod 3 = 0, must vanish
  CHECK(e.is_zero());
  e.set(Coord{0, 1}, Int(5));
  e.add_at(Coord{0, 1}, Int(-5));
  CHECK(e.is_zero());
  e.set(Coord{0, 0}, Int(-1));  // floor reduction: -1 mod 3 = 2
  CHECK(e.get(Coord{0, 0}) == 2);
}

TEST_CASE("dense conversion errors") {
  auto d = AbelianDescriptor::fg({Int(0), Int(0)});
  CHECK_THROWS(AbelianElement::from_dense(d, {Int(1)}));
  auto w = AbelianDescriptor::omega(d);
  CHECK_THROWS(AbelianElement::from_dense(w, {Int(1), Int(2)}));
  AbelianElement we(w);
  CHECK_THROWS(to_dense(we));
}

TEST_CASE("coordinate bounds checks") {
  auto d = AbelianDescriptor::fg({Int(0)});
  AbelianElement e(d);
  CHECK_THROWS(e.set(Coord{1, 0}, Int(1)));   // f.g. has only copy 0
  CHECK_THROWS(e.set(Coord{0, 1}, Int(1)));   // factor index out of range
  auto w = AbelianDescriptor::omega(d);
  AbelianElement we(w);
  we.set(Coord{7, 0}, Int(1));  // any nonnegative copy is fine
  CHECK(we.get(Coord{7, 0}) == 1);
  CHECK_THROWS(we.set(Coord{-1, 0}, Int(1)));
}

TEST_CASE("omega copy access and embedding") {
  auto z = AbelianDescriptor::free_of_rank(1);
  auto w = AbelianDescriptor::omega(z);
  AbelianElement a(w);
  a.set(Coord{0, 0}, Int(3));
  a.set(Coord{2, 0}, Int(-4));

  auto c0 = omega_copy(a, 0);
  CHECK(c0.descriptor() == z);
  CHECK(to_dense(c0) == std::vector<Int>{Int(3)});
  CHECK(omega_copy(a, 1).is_zero());
  CHECK(to_dense(omega_copy(a, 2)) == std::vector<Int>{Int(-4)});

  auto emb = omega_embed(w, 5, AbelianElement::from_dense(z, {Int(9)}));
  CHECK(emb.get(Coord{5, 0}) == 9);
  CHECK(emb.coords().size() == 1);

  omega_set_copy(a, 0, AbelianElement(z));
  CHECK(omega_copy(a, 0).is_zero());
  CHECK(to_dense(omega_copy(a, 2)) == std::vector<Int>{Int(-4)});
}

TEST_CASE("omega swap01 exchanges the first two copies only") {
  auto z = AbelianDescriptor::free_of_rank(1);
  auto w = AbelianDescriptor::omega(z);
  // (3, 4, 5, 0, ...) -> (4, 3, 5, 0, ...)
  AbelianElement a(w);
  a.set(Coord{0, 0}, Int(3));
  a.set(Coord{1, 0}, Int(4));
  a.set(Coord{2, 0}, Int(5));
  auto s = omega_swap01(a);
  CHECK(s.get(Coord{0, 0}) == 4);
  CHECK(s.get(Coord{1, 0}) == 3);
  CHECK(s.get(Coord{2, 0}) == 5);
  CHECK(omega_swap01(s) == a);
}

TEST_CASE("group laws on sampled elements") {
  std::vector<AbelianDescriptor> descs = {
      AbelianDescriptor::free_of_rank(1),
      AbelianDescriptor::free_of_rank(2),
      AbelianDescriptor::fg({Int(2), Int(6), Int(0)}),
      AbelianDescriptor::omega(AbelianDescriptor::free_of_rank(1)),
      AbelianDescriptor::omega(AbelianDescriptor::fg({Int(2)})),
  };
  Sampler s(11);
  for (const auto& d : descs) {
    AbelianElement zero(d);
    for (int i = 0; i < 50; ++i) {
      auto a = s.base_value(d);
      auto b = s.base_value(d);
      auto c = s.base_value(d);
      CHECK(add(add(a, b), c) == add(a, add(b, c)));
      CHECK(add(a, b) == add(b, a));
      CHECK(add(a, zero) == a);
      CHECK(add(a, neg(a)).is_zero());
      CHECK(sub(a, b) == add(a, neg(b)));
      CHECK(scale(a, Int(3)) == add(a, add(a, a)));
      CHECK(scale(a, Int(-2)) == neg(add(a, a)));
      CHECK(scale(a, Int(0)).is_zero());
    }
  }
}

TEST_CASE("element_less is a strict total order") {
  auto d = AbelianDescriptor::fg({Int(4), Int(0)});
  Sampler s(12);
  std::vector<AbelianElement> xs;
  for (int i = 0; i < 30; ++i) xs.push_back(s.base_value(d));
  for (const auto& a : xs) {
    CHECK_FALSE(element_less(a, a));
    for (const auto& b : xs) {
      int rel = (a == b) ? 1 : 0;
      rel += element_less(a, b) ? 1 : 0;
      rel += element_less(b, a) ? 1 : 0;
      CHECK(rel == 1);  // exactly one of ==, <, >
      for (const auto& c : xs) {
        if (element_less(a, b) && element_less(b, c)) CHECK(element_less(a, c));
      }
    }
  }
}
