#include <selfsim/sampling.hpp>

namespace selfsim {

Int Sampler::pick(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return Int(d(rng_));
}

AbelianElement Sampler::base_value(const AbelianDescriptor& b) {
  AbelianElement e(b);
  if (b.is_omega()) {
    const int inner_rank = static_cast<int>(b.inner().factors().size());
    const long entries = static_cast<long>(pick(0, 3));
    for (long i = 0; i < entries; ++i) {
      Coord c{static_cast<std::int64_t>(pick(0, 3)), static_cast<int>(pick(0, inner_rank - 1))};
      e.add_at(c, pick(-4, 4));
    }
    return e;
  }
  for (int j = 0; j < static_cast<int>(b.factors().size()); ++j)
    e.add_at(Coord{0, j}, pick(-4, 4));
  return e;
}

XElement Sampler::position(const AbelianDescriptor& top) {
  const auto& fs = top.factors();
  XElement v(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].modulus == 0)
      v[i] = pick(-3, 3);
    else
      v[i] = mod_floor(pick(0, 100), fs[i].modulus);
  }
  return v;
}

WreathElement Sampler::group_element(const GroupDescriptor& g) {
  BaseMap base;
  if (!g.base.is_trivial()) {
    const long entries = static_cast<long>(pick(0, 3));
    for (long i = 0; i < entries; ++i) {
      XElement p = position(g.top);
      AbelianElement v = base_value(g.base);
      auto it = base.find(p);
      if (it == base.end())
        base.emplace(std::move(p), std::move(v));
      else
        it->second = add(it->second, v);
    }
  }
  return make_wreath(g, std::move(base), position(g.top));
}

WreathElement Sampler::subgroup_element(const WreathSubgroupSpec& spec) {
  const GroupDescriptor& g = spec.group;
  // top: random integer combination of the Y generators
  Row top_row(g.top.factors().size(), 0);
  for (const auto& h : spec.y.hnf_rows()) {
    Int c = pick(-2, 2);
    for (size_t j = 0; j < top_row.size(); ++j) top_row[j] += c * h[j];
  }
  WreathElement e = group_element(g);
  e = make_wreath(g, std::move(e.base), std::move(top_row));

  // correct each coset sum into its constraint lattice
  for (size_t c = 0; c < spec.coset_positions.size(); ++c) {
    const XElement& cpos = spec.coset_positions[c];
    AbelianElement sum(g.base);
    for (const auto& [pos, val] : e.base)
      if (spec.y.residue_row(pos) == cpos) sum = add(sum, val);
    const SubgroupLattice& lat = spec.coset_constraints[c].lattice;
    AbelianElement correction(g.base);
    if (g.base.is_omega()) {
      Row r = lat.residue(omega_copy(sum, 0));
      correction = omega_embed(g.base, 0, lat.element_from_row(r));
    } else if (!g.base.is_trivial()) {
      Row r = lat.residue(sum);
      correction = AbelianElement::from_dense(g.base, r);
    }
    if (!correction.is_zero()) {
      auto it = e.base.find(cpos);
      if (it == e.base.end()) {
        e.base.emplace(cpos, neg(correction));
      } else {
        it->second = sub(it->second, correction);
        if (it->second.is_zero()) e.base.erase(it);
      }
    }
  }
  return e;
}

}  // namespace selfsim
