#pragma once

// Finitely generated abelian groups given as ordered lists of cyclic factors
// (modulus 0 = infinite factor), plus countable direct sums ("omega") of one
// f.g. group. Elements are reduced finite-support coordinate maps, so equality
// is exactly map equality.

#include <selfsim/integers.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace selfsim {

struct CyclicFactor {
  Int modulus;  // 0 means Z, n > 0 means Z/n
  bool operator==(const CyclicFactor& o) const { return modulus == o.modulus; }
};

class AbelianDescriptor {
 public:
  AbelianDescriptor() = default;  // trivial group

  static AbelianDescriptor trivial() { return AbelianDescriptor(); }

  static AbelianDescriptor fg(std::vector<Int> moduli) {
    AbelianDescriptor d;
    for (auto& m : moduli) {
      if (m < 0) throw std::runtime_error("cyclic factor modulus must be >= 0");
      d.factors_.push_back(CyclicFactor{m});
    }
    return d;
  }

  static AbelianDescriptor free_of_rank(int d) {
    return fg(std::vector<Int>(static_cast<size_t>(d), Int(0)));
  }

  static AbelianDescriptor omega(AbelianDescriptor inner) {
    if (inner.is_omega())
      throw std::runtime_error("omega descriptor requires an f.g. inner group");
    if (inner.is_trivial())
      throw std::runtime_error("omega of the trivial group is trivial; use trivial() instead");
    AbelianDescriptor d;
    d.omega_ = std::make_shared<const AbelianDescriptor>(std::move(inner));
    return d;
  }

  bool is_omega() const { return omega_ != nullptr; }
  bool is_trivial() const { return !is_omega() && factors_.empty(); }
  bool is_fg() const { return !is_omega(); }  // trivial counts as f.g. of rank 0

  const std::vector<CyclicFactor>& factors() const {
    if (is_omega()) throw std::runtime_error("omega descriptor has no flat factor list");
    return factors_;
  }

  const AbelianDescriptor& inner() const {
    if (!is_omega()) throw std::runtime_error("not an omega descriptor");
    return *omega_;
  }

  int rank() const { return static_cast<int>(factors().size()); }

  bool operator==(const AbelianDescriptor& o) const {
    if (is_omega() != o.is_omega()) return false;
    if (is_omega()) return inner() == o.inner();
    return factors_ == o.factors_;
  }
  bool operator!=(const AbelianDescriptor& o) const { return !(*this == o); }

 private:
  std::vector<CyclicFactor> factors_;
  std::shared_ptr<const AbelianDescriptor> omega_;
};

// Coordinate index. f.g. groups use copy == 0 and inner = factor index;
// omega groups use copy = copy index >= 0 and inner = factor index of the
// inner group.
struct Coord {
  std::int64_t copy = 0;
  int inner = 0;
};

inline bool operator<(const Coord& a, const Coord& b) {
  if (a.copy != b.copy) return a.copy < b.copy;
  return a.inner < b.inner;
}
inline bool operator==(const Coord& a, const Coord& b) {
  return a.copy == b.copy && a.inner == b.inner;
}

class AbelianElement {
 public:
  AbelianElement() = default;  // zero of the trivial group
  explicit AbelianElement(AbelianDescriptor desc) : desc_(std::move(desc)) {}

  static AbelianElement from_dense(const AbelianDescriptor& desc, const std::vector<Int>& v) {
    if (desc.is_omega()) throw std::runtime_error("dense coordinates need an f.g. descriptor");
    if (v.size() != desc.factors().size())
      throw std::runtime_error("dense coordinate count does not match descriptor");
    AbelianElement e(desc);
    for (size_t i = 0; i < v.size(); ++i) e.set(Coord{0, static_cast<int>(i)}, v[i]);
    return e;
  }

  const AbelianDescriptor& descriptor() const { return desc_; }

  const Int& modulus_at(const Coord& c) const {
    const AbelianDescriptor& g = desc_.is_omega() ? desc_.inner() : desc_;
    if (desc_.is_fg() && c.copy != 0)
      throw std::runtime_error("f.g. coordinate must have copy index 0");
    if (c.copy < 0 || c.inner < 0 || c.inner >= static_cast<int>(g.factors().size()))
      throw std::runtime_error("coordinate out of range for descriptor");
    return g.factors()[static_cast<size_t>(c.inner)].modulus;
  }

  void set(const Coord& c, Int v) {
    const Int& m = modulus_at(c);
    if (m > 0) v = mod_floor(v, m);
    if (v == 0)
      coords_.erase(c);
    else
      coords_[c] = std::move(v);
  }

  void add_at(const Coord& c, const Int& v) {
    Int cur = get(c);
    set(c, cur + v);
  }

  Int get(const Coord& c) const {
    auto it = coords_.find(c);
    return it == coords_.end() ? Int(0) : it->second;
  }

  const std::map<Coord, Int>& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  bool operator==(const AbelianElement& o) const {
    return desc_ == o.desc_ && coords_ == o.coords_;
  }
  bool operator!=(const AbelianElement& o) const { return !(*this == o); }

 private:
  AbelianDescriptor desc_;
  std::map<Coord, Int> coords_;
};

AbelianElement add(const AbelianElement& a, const AbelianElement& b);
AbelianElement neg(const AbelianElement& a);
AbelianElement sub(const AbelianElement& a, const AbelianElement& b);
AbelianElement scale(const AbelianElement& a, const Int& n);

// Dense coordinate vector of an f.g. element.
std::vector<Int> to_dense(const AbelianElement& a);

// One copy of an omega element as an element of the inner group, and the
// reverse embedding.
AbelianElement omega_copy(const AbelianElement& a, std::int64_t copy);
void omega_set_copy(AbelianElement& a, std::int64_t copy, const AbelianElement& inner_val);
AbelianElement omega_embed(const AbelianDescriptor& omega_desc, std::int64_t copy,
                           const AbelianElement& inner_val);

// Swap of the first two copies of an omega element.
AbelianElement omega_swap01(const AbelianElement& a);

// Total order usable as a map key ordering (descriptors assumed equal).
bool element_less(const AbelianElement& a, const AbelianElement& b);

}  // namespace selfsim
