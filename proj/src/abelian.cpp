#include <selfsim/abelian.hpp>

namespace selfsim {

AbelianElement add(const AbelianElement& a, const AbelianElement& b) {
  if (a.descriptor() != b.descriptor())
    throw std::runtime_error("add: descriptor mismatch");
  AbelianElement r = a;
  for (const auto& [c, v] : b.coords()) r.add_at(c, v);
  return r;
}

AbelianElement neg(const AbelianElement& a) {
  AbelianElement r(a.descriptor());
  for (const auto& [c, v] : a.coords()) r.set(c, -v);
  return r;
}

AbelianElement sub(const AbelianElement& a, const AbelianElement& b) {
  return add(a, neg(b));
}

AbelianElement scale(const AbelianElement& a, const Int& n) {
  AbelianElement r(a.descriptor());
  for (const auto& [c, v] : a.coords()) r.set(c, v * n);
  return r;
}

std::vector<Int> to_dense(const AbelianElement& a) {
  const auto& fs = a.descriptor().factors();
  std::vector<Int> out(fs.size(), Int(0));
  for (const auto& [c, v] : a.coords()) out[static_cast<size_t>(c.inner)] = v;
  return out;
}

AbelianElement omega_copy(const AbelianElement& a, std::int64_t copy) {
  const AbelianDescriptor& d = a.descriptor();
  if (!d.is_omega()) throw std::runtime_error("omega_copy: not an omega element");
  AbelianElement r(d.inner());
  for (const auto& [c, v] : a.coords())
    if (c.copy == copy) r.set(Coord{0, c.inner}, v);
  return r;
}

void omega_set_copy(AbelianElement& a, std::int64_t copy, const AbelianElement& inner_val) {
  const AbelianDescriptor& d = a.descriptor();
  if (!d.is_omega()) throw std::runtime_error("omega_set_copy: not an omega element");
  if (inner_val.descriptor() != d.inner())
    throw std::runtime_error("omega_set_copy: inner descriptor mismatch");
  std::vector<Coord> stale;
  for (const auto& [c, v] : a.coords())
    if (c.copy == copy) stale.push_back(c);
  for (const auto& c : stale) a.set(c, 0);
  for (const auto& [c, v] : inner_val.coords()) a.set(Coord{copy, c.inner}, v);
}

AbelianElement omega_embed(const AbelianDescriptor& omega_desc, std::int64_t copy,
                           const AbelianElement& inner_val) {
  AbelianElement r(omega_desc);
  omega_set_copy(r, copy, inner_val);
  return r;
}

AbelianElement omega_swap01(const AbelianElement& a) {
  AbelianElement r = a;
  AbelianElement c0 = omega_copy(a, 0);
  AbelianElement c1 = omega_copy(a, 1);
  omega_set_copy(r, 0, c1);
  omega_set_copy(r, 1, c0);
  return r;
}

bool element_less(const AbelianElement& a, const AbelianElement& b) {
  auto ia = a.coords().begin(), ib = b.coords().begin();
  for (; ia != a.coords().end() && ib != b.coords().end(); ++ia, ++ib) {
    if (ia->first < ib->first) return true;
    if (ib->first < ia->first) return false;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.coords().end() && ib != b.coords().end();
}

}  // namespace selfsim
