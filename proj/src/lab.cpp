#include <selfsim/lab.hpp>

#include <selfsim/io.hpp>
#include <selfsim/sampling.hpp>
#include <selfsim/tree.hpp>

#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

bool x_is_zero(const XElement& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

void require_torsion_free(const AbelianDescriptor& top, const char* who) {
  if (top.is_omega())
    throw std::runtime_error(std::string(who) + ": out of hypothesis: X has torsion-free f.g. shape required, got an omega power");
  for (const auto& f : top.factors())
    if (f.modulus != 0)
      throw std::runtime_error(std::string(who) + ": out of hypothesis: X has torsion (factor Z/" + int_str(f.modulus) + ")");
}

// m*B = 0 exactly: every cyclic factor killed by m.
bool m_kills_base(const AbelianDescriptor& base, const Int& m) {
  const AbelianDescriptor& flat = base.is_omega() ? base.inner() : base;
  if (flat.is_trivial()) return true;
  for (const auto& f : flat.factors()) {
    if (f.modulus == 0) return false;
    if (m % f.modulus != 0) return false;
  }
  return true;
}

Int base_exponent(const AbelianDescriptor& base) {
  const AbelianDescriptor& flat = base.is_omega() ? base.inner() : base;
  Int e = 1;
  for (const auto& f : flat.factors()) {
    if (f.modulus == 0) return 0;  // infinite exponent
    e = e / gcd_int(e, f.modulus) * f.modulus;
  }
  return e;
}

AbelianElement factor_unit(const AbelianDescriptor& base, int j) {
  AbelianElement u(base);
  u.set(Coord{0, j}, 1);
  return u;
}

// Odometer over [-w, w]^rank, last coordinate fastest. rank 0 gives the
// single empty shift.
std::vector<XElement> shift_box(int rank, int w) {
  std::vector<XElement> out;
  XElement cur(static_cast<size_t>(rank), Int(-w));
  while (true) {
    out.push_back(cur);
    int i = rank - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == w) {
      cur[static_cast<size_t>(i)] = -w;
      --i;
    }
    if (i < 0) break;
    cur[static_cast<size_t>(i)] += 1;
  }
  return out;
}

}  // namespace

Int find_disjoint_shift(const AbelianDescriptor& x, const XElement& z,
                        const std::vector<XElement>& zs, const std::vector<XElement>& xs) {
  require_torsion_free(x, "find_disjoint_shift");
  const size_t rank = static_cast<size_t>(x.rank());
  if (z.size() != rank) throw std::runtime_error("find_disjoint_shift: z has the wrong rank");
  for (const auto& v : zs)
    if (v.size() != rank) throw std::runtime_error("find_disjoint_shift: zs entry has the wrong rank");
  for (const auto& v : xs)
    if (v.size() != rank) throw std::runtime_error("find_disjoint_shift: xs entry has the wrong rank");
  if (x_is_zero(z)) throw std::runtime_error("find_disjoint_shift: z must be nontrivial");

  auto meets = [&](const Int& k) {
    XElement shifted(rank);
    for (const auto& s : zs) {
      for (size_t i = 0; i < rank; ++i) shifted[i] = k * z[i] + s[i];
      for (const auto& t : xs)
        if (shifted == t) return true;
    }
    return false;
  };

  // Each (s, t) pair forbids at most one k, so some small k >= 0 works;
  // negatives are a fallback that the torsion-free hypothesis never needs.
  const long cap = 1000000;
  for (long k = 0; k <= cap; ++k)
    if (!meets(Int(k))) return Int(k);
  for (long k = 1; k <= cap; ++k)
    if (!meets(Int(-k))) return Int(-k);
  throw std::runtime_error("find_disjoint_shift: no shift within the iteration cap");
}

TopPowerCheck top_power_check(const SimilarityTriple& t, const XElement& x) {
  const GroupDescriptor& desc = group_of(t);
  XElement xr = x_reduce(desc.top, x);
  if (x_is_zero(xr)) throw std::runtime_error("top_power_check: x must be nontrivial");
  const Int m = subgroup_index(t.h);
  WreathElement xm = power(top_only(desc, xr), m);
  if (!in_H(t.h, xm))
    throw std::runtime_error("top_power_check: x^" + int_str(m) + " = " + to_literal(xm) +
                             " is outside H");
  WreathElement img = apply_f(t, xm);
  TopPowerCheck out;
  out.x = xr;
  out.pass = !is_identity(img);
  if (out.pass) {
    out.note = "f(x^" + int_str(m) + ") = " + to_literal(img);
  } else {
    out.note = "f kills x^" + int_str(m) +
               "; every power a^-" + int_str(m) + " * (a shifted by x^" + int_str(m) + ")^" +
               int_str(m) + " of a base difference then lies in ker f: red flag";
  }
  return out;
}

PowerInvarianceReport power_invariance_check(const SimilarityTriple& t, int window) {
  const GroupDescriptor& desc = group_of(t);
  require_torsion_free(desc.top, "power_invariance_check");
  if (desc.base.is_omega())
    throw std::runtime_error(
        "power_invariance_check: the window check needs a finitely generated base");
  if (window < 0) throw std::runtime_error("power_invariance_check: window must be >= 0");

  PowerInvarianceReport rep;
  rep.window = window;
  const Int m = subgroup_index(t.h);
  const std::vector<XElement> shifts = shift_box(desc.top.rank(), window);

  for (int j = 0; j < desc.base.rank(); ++j) {
    const AbelianElement u = factor_unit(desc.base, j);
    for (const auto& sh : shifts) {
      WreathElement pm = power(base_delta(desc, sh, u), m);
      if (!in_H(t.h, pm)) continue;
      PowerInvarianceEntry e;
      e.factor = j;
      e.shift = sh;
      e.pass = normal_closure_power_member(apply_f(t, pm), m);
      rep.pass = rep.pass && e.pass;
      rep.entries.push_back(std::move(e));
    }
  }

  // Images of m-th powers repeat under translation by Y, so covering one
  // position per Y-residue makes the bounded check exhaustive.
  rep.exhaustive = true;
  for (const auto& pos : t.h.coset_positions)
    for (const auto& c : pos)
      if (c > window || c < -window) rep.exhaustive = false;
  return rep;
}

DichotomyReport dichotomy_check(const SimilarityTriple& t, int samples, std::uint64_t seed) {
  const GroupDescriptor& desc = group_of(t);
  const Int m = subgroup_index(t.h);

  DichotomyReport rep;
  rep.m_b_zero = m_kills_base(desc.base, m);
  rep.samples_checked = samples;

  const XElement ztop = x_zero(desc.top);
  Sampler s(seed);
  bool all_into = true;
  for (int i = 0; i < samples; ++i) {
    WreathElement g = s.subgroup_element(t.h);
    WreathElement a0 = make_wreath(desc, g.base, ztop);
    if (!in_H(t.h, a0))
      throw std::runtime_error(
          "dichotomy_check: dropping the top part left H; the congruence data is inconsistent");
    WreathElement img = apply_f(t, a0);
    if (img.top == ztop) {
      rep.l_intersection.push_back(std::move(img));
    } else {
      all_into = false;
      if (!rep.m_b_zero)
        throw std::runtime_error("triple violates the power dichotomy: m*B != 0 yet f(" +
                                 to_literal(a0) + ") = " + to_literal(img) +
                                 " leaves the base closure");
    }
  }

  if (rep.m_b_zero)
    rep.branch = DichotomyReport::Branch::BaseKilled;
  else if (samples > 0 && all_into)
    rep.branch = DichotomyReport::Branch::MapsIntoBase;
  else
    rep.branch = DichotomyReport::Branch::Inconclusive;
  return rep;
}

CoreOutcome core_witness(const SimilarityTriple& t, int window, int depth, int samples,
                         std::uint64_t seed) {
  const GroupDescriptor& desc = group_of(t);
  require_torsion_free(desc.top, "core_witness");
  if (desc.base.is_omega())
    throw std::runtime_error(
        "core_witness: out of hypothesis: the base is an omega power; the window checks need a "
        "finitely generated base");

  const Int m = subgroup_index(t.h);
  CoreOutcome out;

  if (m_kills_base(desc.base, m)) {
    const Int e = base_exponent(desc.base);
    out.explanation = "no core certificate: " + int_str(m) +
                      "*B = 0 (torsion exponent " + int_str(e) +
                      " branch); A^" + int_str(m) +
                      " is trivial, so the power-subgroup obstruction is vacuous";
    return out;
  }

  std::vector<int> live;
  for (int j = 0; j < desc.base.rank(); ++j) {
    const Int& mod = desc.base.factors()[static_cast<size_t>(j)].modulus;
    if (mod == 0 || m % mod != 0) live.push_back(j);
  }
  // m_kills_base was false, so live is nonempty.

  CoreCertificate cert;
  cert.subgroup_desc = "A^" + int_str(m);
  cert.depth = depth;

  const XElement ztop = x_zero(desc.top);
  cert.witness = power(base_delta(desc, ztop, factor_unit(desc.base, live.front())), m);
  for (int j : live)
    cert.generator_sample.push_back(power(base_delta(desc, ztop, factor_unit(desc.base, j)), m));
  if (desc.top.rank() > 0) {
    XElement e1 = ztop;
    e1[0] = 1;
    XElement e1n = ztop;
    e1n[0] = -1;
    const AbelianElement u0 = factor_unit(desc.base, live.front());
    cert.generator_sample.push_back(power(base_delta(desc, e1, u0), m));
    cert.generator_sample.push_back(power(base_delta(desc, e1n, u0), m));
  }

  cert.checks.push_back(
      {"nontriviality", to_literal(cert.witness), !is_identity(cert.witness)});

  {
    const int ci = coset_index(t, cert.witness);
    cert.checks.push_back({"H-membership",
                           to_literal(cert.witness) + ", coset_index " + std::to_string(ci),
                           in_H(t.h, cert.witness)});
  }
  for (const auto& g : cert.generator_sample)
    cert.checks.push_back({"H-membership", to_literal(g), in_H(t.h, g)});

  Sampler s(seed);
  for (int i = 0; i < samples; ++i) {
    WreathElement by = s.group_element(desc);
    cert.checks.push_back({"normality", "conjugator " + to_literal(by),
                           normal_closure_power_member(conjugate(cert.witness, by), m)});
  }
  for (const auto& g : cert.generator_sample) {
    WreathElement by = s.group_element(desc);
    cert.checks.push_back({"normality",
                           to_literal(g) + " by " + to_literal(by),
                           normal_closure_power_member(conjugate(g, by), m)});
  }

  {
    PowerInvarianceReport inv = power_invariance_check(t, window);
    cert.checks.push_back({"f-invariance window",
                           "window " + std::to_string(window) + ", " +
                               std::to_string(inv.entries.size()) + " power images, " +
                               (inv.exhaustive ? "exhaustive" : "bounded"),
                           inv.pass});
    WreathElement fw = apply_f(t, cert.witness);
    cert.checks.push_back({"f-invariance witness",
                           "f(" + to_literal(cert.witness) + ") = " + to_literal(fw),
                           normal_closure_power_member(fw, m)});
  }

  {
    Compiler c(t);
    cert.checks.push_back({"portrait", "depth " + std::to_string(depth),
                           trivial_to_depth(c.compile(cert.witness), depth)});
  }

  out.certificate = std::move(cert);
  return out;
}

LabReport run_lab(const SimilarityTriple& t, const LabOptions& opt, std::string title) {
  LabReport r;
  r.title = std::move(title);

  const GroupDescriptor& desc = group_of(t);
  if (desc.top.is_omega()) {
    r.out_of_hypothesis = true;
    r.hypothesis_note = "X is an omega power; the obstruction needs a f.g. torsion-free X";
    return r;
  }
  for (const auto& f : desc.top.factors()) {
    if (f.modulus != 0) {
      r.out_of_hypothesis = true;
      r.hypothesis_note = "X has torsion (factor Z/" + int_str(f.modulus) +
                          "); the power-subgroup obstruction needs a torsion-free X";
      return r;
    }
  }
  if (desc.base.is_omega()) {
    r.out_of_hypothesis = true;
    r.hypothesis_note =
        "the base is an omega power; the bounded window checks need a finitely generated base";
    return r;
  }

  r.dichotomy = dichotomy_check(t, opt.samples, opt.seed);

  const XElement ztop = x_zero(desc.top);
  std::vector<XElement> xs;
  for (int i = 0; i < desc.top.rank(); ++i) {
    XElement e = ztop;
    e[static_cast<size_t>(i)] = 1;
    xs.push_back(std::move(e));
  }
  Sampler s(opt.seed);
  const int extra = opt.samples < 4 ? opt.samples : 4;
  for (int i = 0; i < extra; ++i) {
    XElement x = s.position(desc.top);
    if (x_is_zero(x)) continue;
    bool seen = false;
    for (const auto& prev : xs)
      if (prev == x) seen = true;
    if (!seen) xs.push_back(std::move(x));
  }
  for (const auto& x : xs) r.top_powers.push_back(top_power_check(t, x));

  r.invariance = power_invariance_check(t, opt.window);

  CoreOutcome co = core_witness(t, opt.window, opt.depth, opt.samples, opt.seed);
  r.certificate = std::move(co.certificate);
  r.explanation = std::move(co.explanation);
  return r;
}

std::string lab_report_text(const LabReport& r) {
  std::ostringstream os;
  if (r.title.empty())
    os << "== falsification lab ==\n";
  else
    os << "== falsification lab: " << r.title << " ==\n";

  if (r.out_of_hypothesis) {
    os << "hypothesis: out (" << r.hypothesis_note << ")\n";
    return os.str();
  }
  os << "hypothesis: ok (B wr X, X torsion-free)\n";

  if (r.dichotomy) {
    const DichotomyReport& d = *r.dichotomy;
    os << "-- power dichotomy --\n";
    os << "m*B = 0: " << (d.m_b_zero ? "yes" : "no") << "\n";
    os << "branch: ";
    switch (d.branch) {
      case DichotomyReport::Branch::BaseKilled: os << "base-killed"; break;
      case DichotomyReport::Branch::MapsIntoBase: os << "maps-into-base"; break;
      case DichotomyReport::Branch::Inconclusive: os << "inconclusive"; break;
    }
    os << "\n";
    os << "samples checked: " << d.samples_checked << "\n";
    for (size_t i = 0; i < d.l_intersection.size(); ++i)
      os << "l_intersection[" << i << "] = " << to_literal(d.l_intersection[i]) << "\n";
  }

  if (!r.top_powers.empty()) {
    os << "-- top power images --\n";
    for (const auto& p : r.top_powers)
      os << "x " << x_literal(p.x) << ": " << (p.pass ? "pass" : "FAIL") << "  " << p.note
         << "\n";
  }

  if (r.invariance) {
    const PowerInvarianceReport& v = *r.invariance;
    os << "-- power invariance, window " << v.window << " --\n";
    os << "pass: " << (v.pass ? "yes" : "no") << "\n";
    os << "exhaustive: " << (v.exhaustive ? "yes" : "no") << "\n";
    for (const auto& e : v.entries)
      os << "factor " << e.factor << " shift " << x_literal(e.shift) << ": "
         << (e.pass ? "pass" : "FAIL") << "\n";
  }

  os << "-- core certificate --\n";
  if (r.certificate) {
    const CoreCertificate& c = *r.certificate;
    os << "subgroup: " << c.subgroup_desc << "\n";
    os << "witness: " << to_literal(c.witness) << "\n";
    os << "portrait depth: " << c.depth << "\n";
    for (size_t i = 0; i < c.generator_sample.size(); ++i)
      os << "generator_sample[" << i << "] = " << to_literal(c.generator_sample[i]) << "\n";
    for (const auto& e : c.checks)
      os << "check " << e.what << " [" << e.input << "]: " << (e.pass ? "pass" : "FAIL") << "\n";
    os << "all checks pass: " << (c.all_pass() ? "yes" : "no") << "\n";
  } else {
    os << "none: " << r.explanation << "\n";
  }
  return os.str();
}

}  // namespace selfsim
