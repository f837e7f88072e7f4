#include <selfsim/wreath.hpp>

#include <stdexcept>

namespace selfsim {

XElement x_reduce(const AbelianDescriptor& top, XElement v) {
  const auto& fs = top.factors();
  if (v.size() != fs.size())
    throw std::runtime_error("top coordinate count does not match the top group");
  for (size_t i = 0; i < v.size(); ++i)
    if (fs[i].modulus > 0) v[i] = mod_floor(v[i], fs[i].modulus);
  return v;
}

XElement x_add(const AbelianDescriptor& top, const XElement& a, const XElement& b) {
  if (a.size() != b.size()) throw std::runtime_error("top coordinate counts differ");
  XElement out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return x_reduce(top, std::move(out));
}

XElement x_neg(const AbelianDescriptor& top, const XElement& a) {
  XElement out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return x_reduce(top, std::move(out));
}

XElement x_sub(const AbelianDescriptor& top, const XElement& a, const XElement& b) {
  return x_add(top, a, x_neg(top, b));
}

XElement x_zero(const AbelianDescriptor& top) {
  return XElement(top.factors().size(), Int(0));
}

GroupDescriptor make_group(AbelianDescriptor base, AbelianDescriptor top) {
  if (top.is_omega()) throw std::runtime_error("top group must be finitely generated");
  return GroupDescriptor{std::move(base), std::move(top)};
}

WreathElement make_wreath(const GroupDescriptor& desc, BaseMap base, XElement top) {
  BaseMap cleaned;
  for (auto& [pos, val] : base) {
    if (val.descriptor() != desc.base)
      throw std::runtime_error("base value does not live in the base group");
    if (val.is_zero()) continue;
    cleaned.emplace(x_reduce(desc.top, pos), std::move(val));
  }
  return WreathElement{desc, std::move(cleaned), x_reduce(desc.top, std::move(top))};
}

WreathElement wreath_identity(const GroupDescriptor& desc) {
  return WreathElement{desc, {}, x_zero(desc.top)};
}

WreathElement base_delta(const GroupDescriptor& desc, const XElement& pos,
                         const AbelianElement& value) {
  BaseMap b;
  b.emplace(pos, value);
  return make_wreath(desc, std::move(b), x_zero(desc.top));
}

WreathElement top_only(const GroupDescriptor& desc, const XElement& top) {
  return make_wreath(desc, {}, top);
}

bool is_identity(const WreathElement& e) {
  if (!e.base.empty()) return false;
  for (const auto& v : e.top)
    if (v != 0) return false;
  return true;
}

BaseMap base_shift(const GroupDescriptor& desc, const BaseMap& b, const XElement& x) {
  BaseMap out;
  for (const auto& [pos, val] : b) out.emplace(x_add(desc.top, pos, x), val);
  return out;
}

WreathElement multiply(const WreathElement& a, const WreathElement& b) {
  if (a.desc != b.desc) throw std::runtime_error("multiply: mismatched wreath groups");
  BaseMap out = a.base;
  for (const auto& [pos, val] : b.base) {
    XElement p = x_add(a.desc.top, pos, a.top);
    auto it = out.find(p);
    if (it == out.end()) {
      out.emplace(std::move(p), val);
    } else {
      it->second = add(it->second, val);
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return WreathElement{a.desc, std::move(out), x_add(a.desc.top, a.top, b.top)};
}

WreathElement inverse(const WreathElement& a) {
  XElement nt = x_neg(a.desc.top, a.top);
  BaseMap out;
  for (const auto& [pos, val] : a.base) out.emplace(x_add(a.desc.top, pos, nt), neg(val));
  return WreathElement{a.desc, std::move(out), std::move(nt)};
}

WreathElement conjugate(const WreathElement& g, const WreathElement& by) {
  return multiply(multiply(by, g), inverse(by));
}

WreathElement power(const WreathElement& g, const Int& n) {
  if (n < 0) return inverse(power(g, Int(-n)));
  WreathElement acc = wreath_identity(g.desc);
  WreathElement sq = g;
  Int k = n;
  while (k > 0) {
    if (k % 2 != 0) acc = multiply(acc, sq);
    k /= 2;
    if (k > 0) sq = multiply(sq, sq);
  }
  return acc;
}

bool normal_closure_power_member(const WreathElement& g, const Int& m) {
  if (m == 0) throw std::runtime_error("power subgroup needs m != 0");
  for (const auto& v : g.top)
    if (v != 0) return false;
  const AbelianDescriptor& inner = g.desc.base.is_omega() ? g.desc.base.inner() : g.desc.base;
  for (const auto& [pos, val] : g.base) {
    for (const auto& [coord, v] : val.coords()) {
      const Int& n = inner.factors()[static_cast<size_t>(coord.inner)].modulus;
      Int d = n == 0 ? (m < 0 ? Int(-m) : m) : gcd_int(m, n);
      if (v % d != 0) return false;
    }
  }
  return true;
}

bool wreath_less(const WreathElement& a, const WreathElement& b) {
  if (a.top != b.top) return a.top < b.top;
  auto ia = a.base.begin();
  auto ib = b.base.begin();
  for (; ia != a.base.end() && ib != b.base.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return element_less(ia->second, ib->second);
  }
  return ia == a.base.end() && ib != b.base.end();
}

std::vector<XElement> support(const WreathElement& e) {
  std::vector<XElement> out;
  for (const auto& [pos, val] : e.base) out.push_back(pos);
  return out;
}

}  // namespace selfsim
