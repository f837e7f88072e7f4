#pragma once

// Falsification toolkit for candidate triples on B wr X with X torsion-free:
// bounded, transcripted forms of the checks that decide whether the m-th
// power subgroup A^m of the base closure is a nontrivial f-invariant normal
// subgroup (a core certificate), or whether the torsion escape applies
// (m*B = 0). Everything is desk-scale and exact; windows and sample counts
// are recorded in the output.

#include <selfsim/similarity.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace selfsim {

// Smallest k in the order 0, 1, 2, ... (negatives only as a fallback) with
// (k*z + zs) disjoint from xs. X must be torsion-free and z nontrivial;
// termination is guaranteed because each xs - zs difference forbids finitely
// many k.
Int find_disjoint_shift(const AbelianDescriptor& x, const XElement& z,
                        const std::vector<XElement>& zs, const std::vector<XElement>& xs);

// f(x^m) for a nontrivial top element x: a trivial image is a red flag
// (powers of base differences would fall into ker f). Throws when x^m is
// outside H.
struct TopPowerCheck {
  XElement x;
  bool pass = false;
  std::string note;
};
TopPowerCheck top_power_check(const SimilarityTriple& t, const XElement& x);

// (A^m)^f <= A^m on a finite window: every base factor delta, shifted by
// each x in [-window, window]^rank(X), raised to the m-th power, must map
// into the m-th power subgroup whenever it lies in H. When the window
// covers every Y-residue position the images repeat by translation and the
// check is marked exhaustive.
struct PowerInvarianceEntry {
  int factor = 0;
  XElement shift;
  bool pass = false;
};
struct PowerInvarianceReport {
  bool pass = true;
  int window = 0;
  bool exhaustive = false;
  std::vector<PowerInvarianceEntry> entries;
};
PowerInvarianceReport power_invariance_check(const SimilarityTriple& t, int window);

// The dichotomy behind the certificate: either m*B = 0 (read off the
// descriptor) or the zero-top part of H maps into the base closure under f
// (sampled). A sampled violation of both branches is a triple-validity
// error. l_intersection collects sampled f-images that land in the base.
struct DichotomyReport {
  enum class Branch { BaseKilled, MapsIntoBase, Inconclusive };
  Branch branch = Branch::Inconclusive;
  bool m_b_zero = false;
  int samples_checked = 0;
  std::vector<WreathElement> l_intersection;
};
DichotomyReport dichotomy_check(const SimilarityTriple& t, int samples, std::uint64_t seed);

struct TranscriptEntry {
  std::string what;
  std::string input;
  bool pass = false;
};

struct CoreCertificate {
  std::string subgroup_desc;  // "A^2", "A^4", ...
  std::vector<WreathElement> generator_sample;
  WreathElement witness;
  int depth = 0;  // compiled witness verified trivial to this depth
  std::vector<TranscriptEntry> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct CoreOutcome {
  std::optional<CoreCertificate> certificate;
  std::string explanation;  // set when no certificate
};

// Decision: if m*B != 0 the certificate for A^m is assembled (nontriviality
// witness m*delta_0, membership/normality/f-invariance samples, and the
// compiled witness checked trivial to depth); if m*B = 0 the obstruction is
// vacuous and the explanation names the torsion branch. Throws on shapes
// outside the B wr X, X torsion-free hypothesis.
CoreOutcome core_witness(const SimilarityTriple& t, int window, int depth, int samples,
                         std::uint64_t seed);

struct LabOptions {
  int window = 10;
  int depth = 8;
  int samples = 32;
  std::uint64_t seed = 0;
};

struct LabReport {
  std::string title;
  bool out_of_hypothesis = false;
  std::string hypothesis_note;
  std::optional<DichotomyReport> dichotomy;
  std::vector<TopPowerCheck> top_powers;
  std::optional<PowerInvarianceReport> invariance;
  std::optional<CoreCertificate> certificate;
  std::string explanation;  // set when in hypothesis and no certificate
};

LabReport run_lab(const SimilarityTriple& t, const LabOptions& opt = {}, std::string title = "");

// Byte-stable structured text, one section per check, one line per sample.
std::string lab_report_text(const LabReport& r);

}  // namespace selfsim
