#include "doctest.h"

#include <selfsim/catalog.hpp>
#include <selfsim/io.hpp>
#include <selfsim/lab.hpp>
#include <selfsim/tree.hpp>

#include <set>

using namespace selfsim;

namespace {

const AbelianDescriptor Z = AbelianDescriptor::free_of_rank(1);
const AbelianDescriptor Z2 = AbelianDescriptor::free_of_rank(2);

XElement xe(std::vector<Int> v) { return v; }

WreathElement named(const SimilarityTriple& t, const std::string& n) {
  for (const auto& g : t.generators)
    if (g.name == n) return g.element;
  throw std::runtime_error("no generator named " + n);
}

// zwrz-like triple whose module generator maps onto the top group: the
// zero-top part of H does not stay in the base closure, so the power
// dichotomy fails on any sample with a surviving generator coefficient
SimilarityTriple dichotomy_breaker() {
  auto g = make_group(Z, Z);
  auto y = hnf_reduce({{Int(2)}}, Z);
  std::vector<BaseConstraint> cons = {{SubgroupLattice::full(Z)}, {SubgroupLattice::full(Z)}};
  auto spec = make_subgroup_spec(g, y, cons);

  auto one = AbelianElement::from_dense(Z, {Int(1)});
  ModuleEndo f;
  f.on_y = make_hom(y, Z, {one});
  f.gens.push_back({base_delta(g, {Int(0)}, one), top_only(g, {Int(1)})});
  f.gens.push_back({base_delta(g, {Int(1)}, one), wreath_identity(g)});

  SimilarityTriple t;
  t.h = spec;
  t.transversal = default_transversal(spec);
  t.f = f;
  t.generators = {{"b", base_delta(g, {Int(0)}, one)}, {"t", top_only(g, {Int(1)})}};
  return t;
}

}  // namespace

TEST_CASE("find_disjoint_shift prefers the smallest nonnegative shift") {
  // 3 is the first k with k*1 + {0} outside {0,1,2}
  CHECK(find_disjoint_shift(Z, xe({Int(1)}), {xe({Int(0)})},
                            {xe({Int(0)}), xe({Int(1)}), xe({Int(2)})}) == 3);
  // empty avoid set: k = 0 works immediately
  CHECK(find_disjoint_shift(Z, xe({Int(1)}), {xe({Int(0)})}, {}) == 0);
  CHECK(find_disjoint_shift(Z, xe({Int(1)}), {}, {xe({Int(0)})}) == 0);
  // a dense forbidden range pushes k past it
  CHECK(find_disjoint_shift(Z, xe({Int(1)}), {xe({Int(0)}), xe({Int(1)})},
                            {xe({Int(0)}), xe({Int(1)}), xe({Int(2)}), xe({Int(3)}),
                             xe({Int(4)}), xe({Int(5)}), xe({Int(6)}), xe({Int(7)}),
                             xe({Int(8)}), xe({Int(9)}), xe({Int(10)})}) == 11);
  // stepping by 2 clears the obstacles sooner
  CHECK(find_disjoint_shift(Z, xe({Int(2)}), {xe({Int(0)})},
                            {xe({Int(0)}), xe({Int(1)}), xe({Int(2)}), xe({Int(3)})}) == 2);

  // rank 2
  CHECK(find_disjoint_shift(Z2, xe({Int(1), Int(0)}), {xe({Int(0), Int(0)})},
                            {xe({Int(5), Int(5)})}) == 0);
  CHECK(find_disjoint_shift(Z2, xe({Int(0), Int(1)}),
                            {xe({Int(0), Int(0)}), xe({Int(1), Int(2)})},
                            {xe({Int(0), Int(0)}), xe({Int(1), Int(3)})}) == 2);

  // shifted copies must actually be disjoint
  auto z = xe({Int(1)});
  std::vector<XElement> zs = {xe({Int(0)}), xe({Int(4)})};
  std::vector<XElement> xs = {xe({Int(2)}), xe({Int(6)}), xe({Int(3)})};
  Int k = find_disjoint_shift(Z, z, zs, xs);
  for (const auto& s : zs) {
    XElement shifted = {k * z[0] + s[0]};
    for (const auto& t : xs) CHECK(shifted != t);
  }
}

TEST_CASE("find_disjoint_shift rejects bad inputs") {
  CHECK_THROWS(find_disjoint_shift(Z, xe({Int(0)}), {}, {}));  // trivial z
  CHECK_THROWS(find_disjoint_shift(Z, xe({Int(1), Int(0)}), {}, {}));  // wrong rank
  CHECK_THROWS(find_disjoint_shift(Z, xe({Int(1)}), {xe({Int(0), Int(0)})}, {}));
  CHECK_THROWS(find_disjoint_shift(AbelianDescriptor::fg({Int(2)}), xe({Int(1)}), {}, {}));
  CHECK_THROWS(
      find_disjoint_shift(AbelianDescriptor::omega(Z), xe({Int(1)}), {}, {}));
}

TEST_CASE("top power image check") {
  auto zwrz = catalog_entry("zwrz-pair-2").triple;
  auto r = top_power_check(zwrz, {Int(1)});
  CHECK(r.pass);
  CHECK(r.x == XElement{Int(1)});
  CHECK(r.note == "f(x^2) = base{} top(1)");

  auto r2 = top_power_check(zwrz, {Int(-3)});
  CHECK(r2.pass);  // f((t^-3)^2) = t^-3

  auto lamp = catalog_entry("lamplighter").triple;
  CHECK(top_power_check(lamp, {Int(1)}).pass);

  CHECK_THROWS(top_power_check(zwrz, {Int(0)}));

  // torsion top: x^4 is already the identity, so f kills it: the red flag path
  auto thm2 = catalog_entry("thm2-Z").triple;
  auto r3 = top_power_check(thm2, {Int(1)});
  CHECK_FALSE(r3.pass);
  CHECK(r3.note.find("red flag") != std::string::npos);
}

TEST_CASE("power invariance over a bounded window") {
  auto zwrz = catalog_entry("zwrz-pair-2").triple;
  auto r = power_invariance_check(zwrz, 10);
  CHECK(r.pass);
  CHECK(r.window == 10);
  CHECK(r.exhaustive);  // Y-residue positions 0 and 1 sit inside the window
  CHECK(r.entries.size() == 21);  // one base factor, shifts -10..10
  for (const auto& e : r.entries) {
    CHECK(e.factor == 0);
    CHECK(e.pass);
  }

  // a smaller window checks a subset of the same entries
  auto r5 = power_invariance_check(zwrz, 5);
  CHECK(r5.pass);
  CHECK(r5.entries.size() == 11);
  std::set<std::string> big;
  for (const auto& e : r.entries) big.insert(x_literal(e.shift));
  for (const auto& e : r5.entries) CHECK(big.count(x_literal(e.shift)) == 1);

  // window 0 misses the Y-residue position 1: not exhaustive
  auto r0 = power_invariance_check(zwrz, 0);
  CHECK(r0.pass);
  CHECK_FALSE(r0.exhaustive);
  CHECK(r0.entries.size() == 1);

  // Z/2 base: squares collapse to the identity and the check passes trivially
  auto lamp = catalog_entry("lamplighter").triple;
  auto rl = power_invariance_check(lamp, 6);
  CHECK(rl.pass);
  CHECK(rl.exhaustive);
  CHECK(rl.entries.size() == 13);

  // trivial base: nothing to check
  auto add = catalog_entry("adding-machine").triple;
  auto ra = power_invariance_check(add, 10);
  CHECK(ra.pass);
  CHECK(ra.exhaustive);
  CHECK(ra.entries.empty());

  CHECK_THROWS(power_invariance_check(zwrz, -1));
  CHECK_THROWS(power_invariance_check(catalog_entry("thm2-Z").triple, 4));
}

TEST_CASE("power dichotomy branches") {
  auto zwrz = catalog_entry("zwrz-pair-2").triple;
  auto d = dichotomy_check(zwrz, 16, 0);
  CHECK(d.branch == DichotomyReport::Branch::MapsIntoBase);
  CHECK_FALSE(d.m_b_zero);
  CHECK(d.samples_checked == 16);
  CHECK(d.l_intersection.size() == 16);
  for (const auto& e : d.l_intersection) CHECK(e.top == XElement{Int(0)});

  auto lamp = catalog_entry("lamplighter").triple;
  auto dl = dichotomy_check(lamp, 16, 0);
  CHECK(dl.branch == DichotomyReport::Branch::BaseKilled);
  CHECK(dl.m_b_zero);

  auto add = dichotomy_check(catalog_entry("adding-machine").triple, 8, 0);
  CHECK(add.branch == DichotomyReport::Branch::BaseKilled);  // trivial base

  // zero samples with m*B != 0 cannot conclude anything
  auto none = dichotomy_check(zwrz, 0, 0);
  CHECK(none.branch == DichotomyReport::Branch::Inconclusive);

  // both branches failing is a triple-validity error
  CHECK_THROWS_WITH_AS(dichotomy_check(dichotomy_breaker(), 64, 0),
                       doctest::Contains("violates the power dichotomy"), std::runtime_error);
}

TEST_CASE("core certificate for the doomed pair") {
  auto zwrz = catalog_entry("zwrz-pair-2").triple;
  auto out = core_witness(zwrz, 10, 10, 8, 0);
  REQUIRE(out.certificate.has_value());
  CHECK(out.explanation.empty());
  const auto& cert = *out.certificate;
  CHECK(cert.subgroup_desc == "A^2");
  CHECK(cert.depth == 10);
  CHECK(to_literal(cert.witness) == "base{ (0):[2] } top(0)");
  CHECK(cert.witness == power(named(zwrz, "b"), Int(2)));
  REQUIRE(cert.generator_sample.size() == 3);
  CHECK(cert.generator_sample[0] == cert.witness);
  CHECK(to_literal(cert.generator_sample[1]) == "base{ (1):[2] } top(0)");
  CHECK(to_literal(cert.generator_sample[2]) == "base{ (-1):[2] } top(0)");
  CHECK(cert.all_pass());

  // transcript order: nontriviality, memberships, normality, f-invariance, portrait
  REQUIRE(cert.checks.size() >= 6);
  CHECK(cert.checks[0].what == "nontriviality");
  CHECK(cert.checks[1].what == "H-membership");
  CHECK(cert.checks[1].input.find("coset_index 0") != std::string::npos);
  int seen_portrait = 0;
  for (const auto& c : cert.checks)
    if (c.what == "portrait") ++seen_portrait;
  CHECK(seen_portrait == 1);
  CHECK(cert.checks.back().what == "portrait");

  // the witness element really is in the representation kernel
  Compiler c(zwrz);
  CHECK(trivial_to_depth(c.compile(cert.witness), 10));

  // kernel search at the witness word length finds the same element
  auto ws = kernel_search(c, c.generator_elements(), 2, 10);
  bool found = false;
  for (const auto& w : ws)
    if (w.element == cert.witness) found = true;
  CHECK(found);
}

TEST_CASE("core certificate for the generic family scales with the index") {
  auto t = catalog_entry("zwrz-pair-generic(4)").triple;
  auto out = core_witness(t, 10, 10, 8, 0);
  REQUIRE(out.certificate.has_value());
  CHECK(out.certificate->subgroup_desc == "A^4");
  CHECK(to_literal(out.certificate->witness) == "base{ (0):[4] } top(0)");
  CHECK(out.certificate->all_pass());

  Compiler c(t);
  auto ws = kernel_search(c, c.generator_elements(), 4, 10);
  bool found = false;
  for (const auto& w : ws)
    if (w.element == out.certificate->witness) found = true;
  CHECK(found);
}

TEST_CASE("torsion base escapes the obstruction") {
  auto lamp = catalog_entry("lamplighter").triple;
  auto out = core_witness(lamp, 10, 10, 8, 0);
  CHECK_FALSE(out.certificate.has_value());
  CHECK(out.explanation.find("torsion exponent 2 branch") != std::string::npos);
  CHECK(out.explanation.find("A^2 is trivial") != std::string::npos);
}

TEST_CASE("shapes outside the hypothesis are refused") {
  auto thm2 = catalog_entry("thm2-Z").triple;
  CHECK_THROWS_WITH_AS(core_witness(thm2, 10, 8, 8, 0),
                       doctest::Contains("X has torsion"), std::runtime_error);

  auto r = run_lab(thm2, {10, 8, 8, 0}, "thm2-Z");
  CHECK(r.out_of_hypothesis);
  CHECK(r.hypothesis_note.find("X has torsion") != std::string::npos);
  CHECK_FALSE(r.certificate.has_value());
  CHECK_FALSE(r.dichotomy.has_value());
  auto text = lab_report_text(r);
  CHECK(text.find("hypothesis: out") != std::string::npos);
}

TEST_CASE("full lab run on the doomed pair") {
  auto zwrz = catalog_entry("zwrz-pair-2").triple;
  LabOptions opt;
  opt.samples = 8;
  auto r = run_lab(zwrz, opt, "zwrz-pair-2");
  CHECK_FALSE(r.out_of_hypothesis);
  REQUIRE(r.dichotomy.has_value());
  CHECK(r.dichotomy->branch == DichotomyReport::Branch::MapsIntoBase);
  CHECK_FALSE(r.top_powers.empty());
  for (const auto& p : r.top_powers) CHECK(p.pass);
  REQUIRE(r.invariance.has_value());
  CHECK(r.invariance->pass);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->all_pass());

  auto text = lab_report_text(r);
  CHECK(text.find("== falsification lab: zwrz-pair-2 ==") == 0);
  CHECK(text.find("hypothesis: ok (B wr X, X torsion-free)") != std::string::npos);
  CHECK(text.find("-- power dichotomy --") != std::string::npos);
  CHECK(text.find("branch: maps-into-base") != std::string::npos);
  CHECK(text.find("-- top power images --") != std::string::npos);
  CHECK(text.find("-- power invariance, window 10 --") != std::string::npos);
  CHECK(text.find("exhaustive: yes") != std::string::npos);
  CHECK(text.find("-- core certificate --") != std::string::npos);
  CHECK(text.find("subgroup: A^2") != std::string::npos);
  CHECK(text.find("witness: base{ (0):[2] } top(0)") != std::string::npos);
  CHECK(text.find("all checks pass: yes") != std::string::npos);

  // deterministic: the same options give the same transcript
  auto again = lab_report_text(run_lab(zwrz, opt, "zwrz-pair-2"));
  CHECK(again == text);
}

TEST_CASE("lab run on the torsion-base machine reports the escape") {
  auto lamp = catalog_entry("lamplighter").triple;
  LabOptions opt;
  opt.samples = 8;
  auto r = run_lab(lamp, opt, "lamplighter");
  CHECK_FALSE(r.out_of_hypothesis);
  CHECK_FALSE(r.certificate.has_value());
  CHECK(r.explanation.find("torsion exponent 2 branch") != std::string::npos);
  auto text = lab_report_text(r);
  CHECK(text.find("branch: base-killed") != std::string::npos);
  CHECK(text.find("none: no core certificate") != std::string::npos);
}
