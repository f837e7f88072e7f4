#include <selfsim/sampling.hpp>
#include <selfsim/similarity.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

const AbelianDescriptor& constraint_ambient(const GroupDescriptor& g) {
  return g.base.is_omega() ? g.base.inner() : g.base;
}

}  // namespace

WreathSubgroupSpec make_subgroup_spec(GroupDescriptor group, SubgroupLattice y,
                                      std::vector<BaseConstraint> coset_constraints) {
  if (y.ambient() != group.top)
    throw std::runtime_error("subgroup spec: Y must live in the top group");
  if (!y.finite_index()) throw std::runtime_error("subgroup spec: Y must have finite index");
  std::vector<XElement> positions;
  for (const auto& r : transversal(y)) positions.push_back(to_dense(r));
  if (coset_constraints.size() != positions.size())
    throw std::runtime_error("subgroup spec: need exactly one constraint per Y-coset");
  const AbelianDescriptor& amb = constraint_ambient(group);
  for (const auto& c : coset_constraints) {
    if (c.lattice.ambient() != amb)
      throw std::runtime_error("subgroup spec: constraint lattice is in the wrong group");
    if (!c.lattice.finite_index())
      throw std::runtime_error("subgroup spec: constraint must have finite index");
  }
  return WreathSubgroupSpec{std::move(group), std::move(y), std::move(coset_constraints),
                            std::move(positions)};
}

WreathSubgroupSpec subgroup_from_y(const GroupDescriptor& group, SubgroupLattice y) {
  std::vector<BaseConstraint> cs;
  const Int m = y.index();
  for (Int i = 0; i < m; ++i) cs.push_back(BaseConstraint{SubgroupLattice::full(constraint_ambient(group))});
  return make_subgroup_spec(group, std::move(y), std::move(cs));
}

bool in_H(const WreathSubgroupSpec& spec, const WreathElement& g) {
  if (g.desc != spec.group) throw std::runtime_error("element is in a different wreath group");
  if (!spec.y.contains_row(g.top)) return false;
  if (g.base.empty()) return true;
  std::vector<AbelianElement> sums(spec.coset_positions.size(), AbelianElement(spec.group.base));
  for (const auto& [pos, val] : g.base) {
    Row res = spec.y.residue_row(pos);
    auto it = std::find(spec.coset_positions.begin(), spec.coset_positions.end(), res);
    if (it == spec.coset_positions.end())
      throw std::runtime_error("position escaped the Y-residue table");
    sums[static_cast<size_t>(it - spec.coset_positions.begin())] =
        add(sums[static_cast<size_t>(it - spec.coset_positions.begin())], val);
  }
  for (size_t c = 0; c < sums.size(); ++c) {
    if (sums[c].is_zero()) continue;
    const SubgroupLattice& lat = spec.coset_constraints[c].lattice;
    if (spec.group.base.is_omega()) {
      if (!lat.contains(omega_copy(sums[c], 0))) return false;
    } else {
      if (!lat.contains(sums[c])) return false;
    }
  }
  return true;
}

Int subgroup_index(const WreathSubgroupSpec& spec) {
  Int m = spec.y.index();
  for (const auto& c : spec.coset_constraints) m *= c.lattice.index();
  return m;
}

const GroupDescriptor& group_of(const SimilarityTriple& t) { return t.h.group; }

int coset_index(const SimilarityTriple& t, const WreathElement& g) {
  for (size_t j = 0; j < t.transversal.size(); ++j)
    if (in_H(t.h, multiply(g, inverse(t.transversal[j])))) return static_cast<int>(j);
  throw std::runtime_error("element lies in no coset of the listed transversal");
}

namespace {

// Decompose the base part over shifted module generators and push everything
// through the endomorphism. Shifts are searched inside the support hull of
// the base part padded by the generator support hull, intersected with Y.
WreathElement eval_module(const ModuleEndo& me, const WreathSubgroupSpec& spec,
                          const WreathElement& g) {
  const GroupDescriptor& gd = spec.group;
  XElement new_top = to_dense(apply_hom(me.on_y, AbelianElement::from_dense(gd.top, g.top)));

  if (g.base.empty()) return top_only(gd, new_top);
  if (me.gens.empty())
    throw std::runtime_error("nonzero base part but the endomorphism has no module generators");
  if (gd.base.is_omega())
    throw std::runtime_error("module generators need a finitely generated base group");

  const auto& top_factors = gd.top.factors();
  const size_t xr = top_factors.size();

  // per-coordinate shift bounds on free coordinates
  std::vector<Int> lo(xr), hi(xr);
  bool first = true;
  for (const auto& [pos, val] : g.base) {
    for (size_t i = 0; i < xr; ++i) {
      if (first || pos[i] < lo[i]) lo[i] = pos[i];
      if (first || pos[i] > hi[i]) hi[i] = pos[i];
    }
    first = false;
  }
  std::vector<Int> glo(xr, 0), ghi(xr, 0);
  bool gfirst = true;
  for (const auto& mg : me.gens) {
    if (mg.gen.base.empty())
      throw std::runtime_error("module generator with empty base part");
    for (const auto& [pos, val] : mg.gen.base) {
      for (size_t i = 0; i < xr; ++i) {
        if (gfirst || pos[i] < glo[i]) glo[i] = pos[i];
        if (gfirst || pos[i] > ghi[i]) ghi[i] = pos[i];
      }
      gfirst = false;
    }
  }

  // candidate shifts: box [lo-ghi, hi-glo] on free coordinates, full range on
  // torsion coordinates, intersected with Y
  std::vector<Int> klo(xr), khi(xr);
  Int volume = 1;
  for (size_t i = 0; i < xr; ++i) {
    if (top_factors[i].modulus == 0) {
      klo[i] = lo[i] - ghi[i];
      khi[i] = hi[i] - glo[i];
    } else {
      klo[i] = 0;
      khi[i] = top_factors[i].modulus - 1;
    }
    volume *= khi[i] - klo[i] + 1;
    if (volume > 200000) throw std::runtime_error("module solve window is too large");
  }
  std::vector<XElement> shifts;
  XElement cur = klo;
  while (true) {
    if (spec.y.contains_row(cur)) shifts.push_back(cur);
    size_t i = xr;
    bool done = xr == 0;
    while (i > 0) {
      --i;
      cur[i] += 1;
      if (cur[i] <= khi[i]) break;
      cur[i] = klo[i];
      if (i == 0) done = true;
    }
    if (done) break;
  }
  if (shifts.empty())
    throw std::runtime_error("no Y-shift reaches the base part's support window");

  // columns: every touched position gets one block of base-group coordinates
  const size_t blk = gd.base.factors().size();
  std::map<XElement, size_t> col_of;
  auto touch = [&](const XElement& p) {
    if (!col_of.count(p)) col_of.emplace(p, 0);
  };
  for (const auto& [pos, val] : g.base) touch(pos);
  for (const auto& k : shifts)
    for (const auto& mg : me.gens)
      for (const auto& [pos, val] : mg.gen.base) touch(x_add(gd.top, pos, k));
  size_t next = 0;
  for (auto& [pos, idx] : col_of) idx = (next++) * blk;
  const size_t cols = next * blk;

  Matrix rows;
  std::vector<std::pair<size_t, XElement>> row_tag;  // (generator index, shift)
  for (size_t j = 0; j < me.gens.size(); ++j) {
    for (const auto& k : shifts) {
      Row r(cols, 0);
      for (const auto& [pos, val] : me.gens[j].gen.base) {
        const size_t at = col_of.at(x_add(gd.top, pos, k));
        std::vector<Int> dense = to_dense(val);
        for (size_t i = 0; i < blk; ++i) r[at + i] += dense[i];
      }
      rows.push_back(std::move(r));
      row_tag.emplace_back(j, k);
    }
  }
  Row target(cols, 0);
  for (const auto& [pos, val] : g.base) {
    const size_t at = col_of.at(pos);
    std::vector<Int> dense = to_dense(val);
    for (size_t i = 0; i < blk; ++i) target[at + i] = dense[i];
  }
  Row moduli(cols);
  for (size_t c = 0; c < next; ++c)
    for (size_t i = 0; i < blk; ++i) moduli[c * blk + i] = gd.base.factors()[i].modulus;

  auto coeffs = solve_congruence(rows, target, moduli);
  if (!coeffs)
    throw std::runtime_error(
        "base part is outside the span of the module generators (within the solve window)");

  WreathElement acc = wreath_identity(gd);
  for (size_t r = 0; r < rows.size(); ++r) {
    if ((*coeffs)[r] == 0) continue;
    const auto& [j, k] = row_tag[r];
    XElement w = to_dense(apply_hom(me.on_y, AbelianElement::from_dense(gd.top, k)));
    WreathElement shifted = conjugate(me.gens[j].image, top_only(gd, w));
    acc = multiply(acc, power(shifted, (*coeffs)[r]));
  }
  return multiply(acc, top_only(gd, new_top));
}

WreathElement eval_omega_pair(const OmegaPairEndo& oe, const WreathSubgroupSpec& spec,
                              const WreathElement& g) {
  const GroupDescriptor& gd = spec.group;
  for (const auto& v : g.top)
    if (v != 0) throw std::runtime_error("fold/swap endomorphism needs a trivial top part");
  const XElement p0{Int(0)};
  const XElement p1{Int(1)};
  AbelianElement a0(gd.base), a1(gd.base);
  for (const auto& [pos, val] : g.base) {
    if (pos == p0)
      a0 = val;
    else if (pos == p1)
      a1 = val;
    else
      throw std::runtime_error("fold/swap endomorphism expects positions 0 and 1 only");
  }
  BaseMap out;
  out.emplace(p0, omega_phi1(oe.pair.phi, a0));
  out.emplace(p1, omega_swap01(a1));
  return make_wreath(gd, std::move(out), x_zero(gd.top));
}

}  // namespace

WreathElement apply_f(const SimilarityTriple& t, const WreathElement& g) {
  if (!in_H(t.h, g)) throw std::runtime_error("apply_f: element is not in H");
  if (const auto* me = std::get_if<ModuleEndo>(&t.f)) return eval_module(*me, t.h, g);
  return eval_omega_pair(std::get<OmegaPairEndo>(t.f), t.h, g);
}

std::vector<WreathElement> default_transversal(const WreathSubgroupSpec& spec) {
  const GroupDescriptor& gd = spec.group;
  // residue lists per coset, identity residue first
  std::vector<std::vector<AbelianElement>> residues;
  for (const auto& c : spec.coset_constraints) residues.push_back(transversal(c.lattice));

  std::vector<WreathElement> out;
  std::vector<size_t> digit(residues.size(), 0);
  while (true) {
    BaseMap base;
    for (size_t c = 0; c < residues.size(); ++c) {
      const AbelianElement& r = residues[c][digit[c]];
      if (r.is_zero()) continue;
      AbelianElement v =
          gd.base.is_omega() ? omega_embed(gd.base, 0, r) : r;
      base.emplace(spec.coset_positions[c], std::move(v));
    }
    for (const auto& y : spec.coset_positions)
      out.push_back(make_wreath(gd, base, y));
    // next residue combination, last coset fastest
    size_t c = residues.size();
    bool done = residues.empty();
    while (c > 0) {
      --c;
      if (++digit[c] < residues[c].size()) break;
      digit[c] = 0;
      if (c == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

TripleReport validate_triple(const SimilarityTriple& t, const ValidateOptions& opt) {
  TripleReport rep;
  auto push = [&rep](std::string name, bool pass, std::string detail) {
    rep.checks.push_back(AxiomCheck{std::move(name), pass, std::move(detail)});
  };

  Int m = 0;
  try {
    m = subgroup_index(t.h);
    push("subgroup-index-finite", true, "index " + int_str(m));
  } catch (const std::exception& e) {
    push("subgroup-index-finite", false, e.what());
    return rep;
  }

  const size_t msz = t.transversal.size();
  push("transversal-size", Int(msz) == m,
       "listed " + std::to_string(msz) + ", expected " + int_str(m));

  push("transversal-first-identity", !t.transversal.empty() && is_identity(t.transversal[0]),
       "normalized triples list the identity representative first");

  {
    bool ok = true;
    std::string detail = "all representatives in distinct cosets";
    for (size_t i = 0; i < msz && ok; ++i)
      for (size_t j = i + 1; j < msz && ok; ++j)
        if (in_H(t.h, multiply(t.transversal[i], inverse(t.transversal[j])))) {
          ok = false;
          detail = "representatives " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                   " fall in the same coset";
        }
    push("transversal-distinct", ok, detail);
  }

  Sampler s(opt.seed);
  {
    bool ok = true;
    std::string detail = "closed under product and inverse on samples";
    for (int i = 0; i < opt.samples && ok; ++i) {
      WreathElement h1 = s.subgroup_element(t.h);
      WreathElement h2 = s.subgroup_element(t.h);
      if (!in_H(t.h, h1) || !in_H(t.h, h2)) {
        ok = false;
        detail = "sampler produced a non-member";
        break;
      }
      if (!in_H(t.h, multiply(h1, h2)) || !in_H(t.h, inverse(h1))) {
        ok = false;
        detail = "subgroup not closed on a sampled pair";
      }
    }
    push("subgroup-closed", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "f evaluated on all samples";
    for (int i = 0; i < opt.samples && ok; ++i) {
      WreathElement h1 = s.subgroup_element(t.h);
      try {
        (void)apply_f(t, h1);
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    push("endomorphism-total", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "f(g*h) = f(g)*f(h) and f(g^-1) = f(g)^-1 on samples";
    for (int i = 0; i < opt.samples && ok; ++i) {
      WreathElement h1 = s.subgroup_element(t.h);
      WreathElement h2 = s.subgroup_element(t.h);
      try {
        if (apply_f(t, multiply(h1, h2)) != multiply(apply_f(t, h1), apply_f(t, h2)) ||
            apply_f(t, inverse(h1)) != inverse(apply_f(t, h1))) {
          ok = false;
          detail = "f broke the homomorphism law on a sample";
        }
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    push("endomorphism-multiplicative", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "every sampled element lies in exactly one coset";
    for (int i = 0; i < opt.samples && ok; ++i) {
      WreathElement g = s.group_element(t.h.group);
      int count = 0;
      for (const auto& x : t.transversal)
        if (in_H(t.h, multiply(g, inverse(x)))) ++count;
      if (count != 1) {
        ok = false;
        detail = "a sampled element lies in " + std::to_string(count) + " listed cosets";
      }
    }
    push("coset-cover", ok, detail);
  }

  return rep;
}

AbelianPair make_abelian_pair(AbelianDescriptor group, SubgroupLattice m, AbelianHom phi,
                              bool simple_claimed) {
  if (group.is_omega() || group.is_trivial())
    throw std::runtime_error("abelian pair needs a nontrivial f.g. group");
  if (m.ambient() != group) throw std::runtime_error("abelian pair: M must live in the group");
  if (!m.finite_index()) throw std::runtime_error("abelian pair: M must have finite index");
  if (!phi.domain.same_lattice(m))
    throw std::runtime_error("abelian pair: the map's domain must be M");
  if (phi.codomain != group)
    throw std::runtime_error("abelian pair: the map must land in the group");
  return AbelianPair{std::move(group), std::move(m), std::move(phi), simple_claimed};
}

SimilarityTriple build_omega_c2(const AbelianPair& pair) {
  const AbelianDescriptor& l = pair.group;
  GroupDescriptor gd = make_group(AbelianDescriptor::omega(l), AbelianDescriptor::fg({Int(2)}));
  SubgroupLattice y = SubgroupLattice::from_basis(gd.top, Matrix{});
  std::vector<BaseConstraint> cs;
  cs.push_back(BaseConstraint{pair.m});
  cs.push_back(BaseConstraint{SubgroupLattice::full(l)});
  WreathSubgroupSpec spec = make_subgroup_spec(gd, std::move(y), std::move(cs));
  std::vector<WreathElement> reps = default_transversal(spec);

  std::vector<NamedGenerator> gens;
  const XElement p0{Int(0)};
  const XElement p1{Int(1)};
  const int lr = static_cast<int>(l.factors().size());
  auto nm = [lr](const char* stem, int j) {
    return lr > 1 ? std::string(stem) + std::to_string(j) : std::string(stem);
  };
  for (int j = 0; j < lr; ++j) {
    AbelianElement d0(gd.base), d1(gd.base);
    d0.set(Coord{0, j}, 1);
    d1.set(Coord{1, j}, 1);
    gens.push_back(NamedGenerator{nm("a", j), base_delta(gd, p0, d0)});
    gens.push_back(NamedGenerator{nm("b", j), base_delta(gd, p0, d1)});
  }
  gens.push_back(NamedGenerator{"sigma", top_only(gd, XElement{Int(1)})});
  {
    AbelianElement d0(gd.base);
    d0.set(Coord{0, 0}, 1);
    BaseMap diag;
    diag.emplace(p0, d0);
    diag.emplace(p1, d0);
    gens.push_back(NamedGenerator{"d", make_wreath(gd, std::move(diag), x_zero(gd.top))});
  }

  return SimilarityTriple{std::move(spec), std::move(reps), OmegaPairEndo{pair}, std::move(gens)};
}

SimilarityTriple lift_abelian_pair(const AbelianPair& pair) {
  GroupDescriptor gd = make_group(AbelianDescriptor::trivial(), pair.group);
  WreathSubgroupSpec spec = subgroup_from_y(gd, pair.m);
  std::vector<WreathElement> reps = default_transversal(spec);
  std::vector<NamedGenerator> gens;
  const int xr = static_cast<int>(pair.group.factors().size());
  for (int j = 0; j < xr; ++j) {
    XElement v(static_cast<size_t>(xr), Int(0));
    v[static_cast<size_t>(j)] = 1;
    std::string name = xr > 1 ? "t" + std::to_string(j) : "t";
    gens.push_back(NamedGenerator{std::move(name), top_only(gd, v)});
  }
  return SimilarityTriple{std::move(spec), std::move(reps), ModuleEndo{pair.phi, {}},
                          std::move(gens)};
}

}  // namespace selfsim
