#include <selfsim/catalog.hpp>

#include <stdexcept>

namespace selfsim {

namespace {

AbelianPair halving_pair() {
  AbelianDescriptor z = AbelianDescriptor::fg({0});
  SubgroupLattice m2 = SubgroupLattice::from_basis(z, {{2}});
  AbelianHom phi = make_hom(m2, z, {AbelianElement::from_dense(z, {1})});
  return make_abelian_pair(z, std::move(m2), std::move(phi), true);
}

CatalogEntry make_adding_machine() {
  CatalogEntry e;
  e.name = "adding-machine";
  e.note = "index-2 pair on Z (halving); its lift compiles to the binary odometer";
  AbelianPair p = halving_pair();
  e.triple = lift_abelian_pair(p);
  e.pair = std::move(p);
  return e;
}

CatalogEntry make_lamplighter() {
  CatalogEntry e;
  e.name = "lamplighter";
  e.note = "Z/2 wr Z with the even-lamp-sum subgroup; two-state lamp automaton";
  AbelianDescriptor z2 = AbelianDescriptor::fg({2});
  AbelianDescriptor z = AbelianDescriptor::fg({0});
  GroupDescriptor gd = make_group(z2, z);

  // H: any translation, lamp sum even. Index 2.
  std::vector<BaseConstraint> cs{BaseConstraint{SubgroupLattice::from_basis(z2, {})}};
  WreathSubgroupSpec h = make_subgroup_spec(gd, SubgroupLattice::full(z), std::move(cs));

  AbelianElement one(z2);
  one.set(Coord{0, 0}, 1);
  WreathElement b = base_delta(gd, XElement{Int(0)}, one);
  WreathElement t = top_only(gd, XElement{Int(1)});
  BaseMap dm;
  dm.emplace(XElement{Int(0)}, one);
  dm.emplace(XElement{Int(1)}, one);
  WreathElement dgen = make_wreath(gd, std::move(dm), x_zero(z));

  AbelianHom on_y = make_hom(SubgroupLattice::full(z), z, {AbelianElement::from_dense(z, {1})});
  ModuleEndo f{std::move(on_y), {ModuleGenerator{dgen, b}}};

  std::vector<WreathElement> reps = default_transversal(h);
  e.triple = SimilarityTriple{std::move(h), std::move(reps), std::move(f),
                              {NamedGenerator{"b", b}, NamedGenerator{"t", t}}};
  return e;
}

CatalogEntry make_zwrz(int mm, const std::string& name) {
  CatalogEntry e;
  e.name = name;
  e.note = "Z wr Z with H = A<t^" + std::to_string(mm) +
           "> (full base, top multiples of " + std::to_string(mm) +
           "); the shifted base generators map to the identity, so the kernel is nontrivial by design";
  AbelianDescriptor z = AbelianDescriptor::fg({0});
  GroupDescriptor gd = make_group(z, z);

  SubgroupLattice y = SubgroupLattice::from_basis(z, {{mm}});
  std::vector<BaseConstraint> cs;
  for (int i = 0; i < mm; ++i) cs.push_back(BaseConstraint{SubgroupLattice::full(z)});
  WreathSubgroupSpec h = make_subgroup_spec(gd, std::move(y), std::move(cs));

  AbelianElement one(z);
  one.set(Coord{0, 0}, 1);
  WreathElement b = base_delta(gd, XElement{Int(0)}, one);
  WreathElement t = top_only(gd, XElement{Int(1)});

  // f: t^m -> t; delta at 0 -> itself; deltas at 1..m-1 -> identity
  AbelianHom on_y = make_hom(h.y, z, {AbelianElement::from_dense(z, {1})});
  std::vector<ModuleGenerator> gens{ModuleGenerator{b, b}};
  for (int i = 1; i < mm; ++i)
    gens.push_back(ModuleGenerator{base_delta(gd, XElement{Int(i)}, one), wreath_identity(gd)});
  ModuleEndo f{std::move(on_y), std::move(gens)};

  std::vector<WreathElement> reps = default_transversal(h);
  e.triple = SimilarityTriple{std::move(h), std::move(reps), std::move(f),
                              {NamedGenerator{"b", b}, NamedGenerator{"t", t}}};
  return e;
}

CatalogEntry make_thm2_z() {
  CatalogEntry e;
  e.name = "thm2-Z";
  e.note = "(Z^omega) wr C2 from the halving pair; degree 4, fold/swap recursion";
  e.triple = build_omega_c2(halving_pair());
  return e;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"adding-machine", "lamplighter", "thm2-Z", "zwrz-pair-2", "zwrz-pair-generic(m)"};
}

CatalogEntry catalog_entry(const std::string& name) {
  if (name == "adding-machine") return make_adding_machine();
  if (name == "lamplighter") return make_lamplighter();
  if (name == "thm2-Z") return make_thm2_z();
  if (name == "zwrz-pair-2") return make_zwrz(2, name);
  const std::string stem = "zwrz-pair-generic(";
  if (name.rfind(stem, 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(stem.size(), name.size() - stem.size() - 1);
    int mm = 0;
    try {
      size_t used = 0;
      mm = std::stoi(arg, &used);
      if (used != arg.size()) mm = 0;
    } catch (const std::exception&) {
      mm = 0;
    }
    if (mm < 2) throw std::runtime_error("zwrz-pair-generic needs an integer index >= 2, e.g. zwrz-pair-generic(4)");
    return make_zwrz(mm, name);
  }
  std::string have;
  for (const auto& n : catalog_names()) have += (have.empty() ? "" : ", ") + n;
  throw std::runtime_error("unknown catalog name '" + name + "' (have: " + have + ")");
}

}  // namespace selfsim
