#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hfsurgery/knot_complex.hpp"
#include "hfsurgery/u_module.hpp"

namespace hfs {

struct SurgerySlope {
  long p = 1;  // nonzero
  long q = 1;  // positive, coprime to p

  SurgerySlope() = default;
  SurgerySlope(long p_, long q_);
  static SurgerySlope parse(const std::string& text);  // "p/q" or "p"
  std::string str() const;
  SurgerySlope negated() const { return SurgerySlope(-p, q); }
  bool operator==(const SurgerySlope& o) const { return p == o.p && q == o.q; }
};

// Default U-truncation: generous enough that every torsion phenomenon of the
// A^+ complexes fits inside the window; a_plus_homology then verifies the
// choice by recomputing at N+1.
long default_truncation(const KnotComplex& k);

// H(A^+_s) as tower + torsion, gradings inherited from the full complex.
// Computed on the N-truncation and checked against N+1; a mismatch throws
// InternalError rather than silently returning truncated garbage.
UModule a_plus_homology(const KnotComplex& k, long s, std::optional<long> trunc = {});

struct VsHs {
  long genus = 0;
  std::map<long, long> v;  // computed on |s| <= genus + 1
  std::map<long, long> h;
};

VsHs vs_hs(const KnotComplex& k);

// V_s / H_s for arbitrary s, extending the computed window by V_s = 0 for
// s >= g, V_s = -s for s <= -g, H_s = V_{-s}.
long v_at(const VsHs& t, long s);
long h_at(const VsHs& t, long s);

// d-invariant of p/q surgery on the unknot in the surgery-formula labeling,
// by the standard lens-space recursion
//   d(p, q, i) = -1/4 + (2i+1-p-q)^2/(4pq) - d(q, p mod q, i mod q),
// with d(1, q, 0) = 0.
Rational lens_d(long p, long q, long i);

Rational d_invariant(const KnotComplex& k, const SurgerySlope& slope, long i);

// Same, with the V/H table precomputed (surger uses this across its
// per-Spin^c loop).
Rational d_invariant(const VsHs& table, const SurgerySlope& slope, long i);

// HF^+ of p/q surgery via the large surgery identification (requires
// trunc >= 2 genus - 1 and |s| <= trunc/2); inherited absolute gradings.
UModule large_surgery(const KnotComplex& k, long trunc, long s);

// One tower-bottom per A-column of the truncated cone, in the cone's
// relative grading lift; used by grading diagnostics and tests.
struct ConeColumn {
  long t;            // column index
  long s;            // floor((i + p t)/q)
  Rational tower_bottom;
};

// Kernel of the induced truncated-cone map on homology, as a relatively
// graded U-module. The window [s, s'] defaults to the quasi-isomorphism
// bounds widened by one column on each side; window_margin adds more.
UModule mapping_cone(const KnotComplex& k, const SurgerySlope& slope, long spin_c,
                     std::optional<long> trunc = {}, long window_margin = 0,
                     std::vector<ConeColumn>* diagnostics = nullptr);

UModule anchor_gradings(const UModule& relative, const Rational& d);

struct SpincSummand {
  std::optional<UModule> module;  // absent for negative slopes
  Rational d;
  long hf_hat_dim = 1;
};

struct SurgeryResult {
  SurgerySlope slope;
  std::vector<SpincSummand> spin_c;  // indexed by i in 0..|p|-1
  bool plus_graded = false;          // full HF^+ available (p > 0)

  long total_hf_hat_dim() const;
};

// For p > 0: absolutely graded HF^+ with d-invariants and HF-hat dimensions
// per Spin^c summand. For p < 0: d-invariants (negated mirror values) and
// dimensions only. p = 0 is unsupported.
SurgeryResult surger(const KnotComplex& k, const SurgerySlope& slope);

}  // namespace hfs
