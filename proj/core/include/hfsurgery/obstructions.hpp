#pragma once

#include <map>
#include <string>
#include <vector>

#include "hfsurgery/laurent.hpp"
#include "hfsurgery/surgery.hpp"

namespace hfs {

struct KnotRecord;

// dim HF-hat(S^3_{p/q}(K)) = q r0_hat + |p - q nu_hat| for all slopes.
struct DimensionProfile {
  long r0_hat = 0;
  long nu_hat = 0;
  bool operator==(const DimensionProfile& o) const {
    return r0_hat == o.r0_hat && nu_hat == o.nu_hat;
  }
};

long surgery_dim(const DimensionProfile& profile, const SurgerySlope& slope);

// Extracts (r0_hat, nu_hat) from a slope sweep when a full complex is
// available, verifying the affine model across the whole sweep and against
// the sum over s of (dim H(A-hat_s) - 1); falls back to the stored profile
// otherwise. The sweep endpoints bracket |nu_hat| <= 2 genus + 1.
DimensionProfile r0_nu_hat(const KnotRecord& record);

enum class LSpaceClass { LSpaceKnot, AlmostLSpaceKnot, Neither, Unknot };

std::string to_string(LSpaceClass c);

LSpaceClass classify_lspace(const KnotRecord& record);

struct ItoVerdict {
  enum class Kind { Unconstrained, IncompatiblePair, UniqueSlope };
  Kind kind = Kind::Unconstrained;
  Rational slope;  // set for UniqueSlope

  bool operator==(const ItoVerdict& o) const { return kind == o.kind && slope == o.slope; }
};

// Finite-type surgery obstruction: equal a4 and v3 give no constraint;
// exactly one equal difference rules out every slope; both different pin
// the slope to r = -5 (a4(K) - a4(K')) / (4 (v3(K) - v3(K'))).
ItoVerdict ito_slope(const Rational& a4_a, const Rational& a4_b, const Rational& v3_a,
                     const Rational& v3_b);

// Constraints a genus-g companion knot must satisfy for S^3_r to match the
// standard positive-surgery profile: divisibility of r, the d and delta
// values, the Alexander polynomial f_g, and the 9-dimensional HFK shape.
struct CandidateConstraints {
  long g = 0;
  long r = 0;
  bool admissible = false;
  long d = 0;      // valid when admissible
  long delta = 0;  // d + 2 - g
  LaurentPolynomial alexander;
  std::map<std::pair<long, long>, long> hfk_shape;  // (a, m) -> dim, when admissible
};

CandidateConstraints candidate_constraints(long g, long r);

struct ObstructionTest {
  enum class Outcome { Pass, Fire, Skipped };
  std::string name;
  Outcome outcome = Outcome::Skipped;
  std::string witness;
};

struct ObstructionReport {
  SurgerySlope slope;
  std::vector<ObstructionTest> tests;  // dimension, d-invariant, casson, ito

  bool fires() const;
};

// Refutation engine: a firing test certifies S^3_r(A) and S^3_r(B) are not
// orientation-preserving homeomorphic. Tests without the data they need are
// reported as skipped; no test ever claims a positive identification.
ObstructionReport obstruct_pair(const KnotRecord& a, const KnotRecord& b, const SurgerySlope& r);

}  // namespace hfs
