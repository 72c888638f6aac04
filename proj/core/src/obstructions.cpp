#include "hfsurgery/obstructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "hfsurgery/catalog.hpp"
#include "hfsurgery/classical.hpp"
#include "hfsurgery/errors.hpp"

namespace hfs {

long surgery_dim(const DimensionProfile& profile, const SurgerySlope& slope) {
  return slope.q * profile.r0_hat + std::labs(slope.p - slope.q * profile.nu_hat);
}

std::string to_string(LSpaceClass c) {
  switch (c) {
    case LSpaceClass::LSpaceKnot: return "L-space knot";
    case LSpaceClass::AlmostLSpaceKnot: return "almost L-space knot";
    case LSpaceClass::Neither: return "neither";
    case LSpaceClass::Unknot: return "unknot";
  }
  return "?";
}

namespace {

long hf_hat_total(const KnotComplex& k, const SurgerySlope& slope) {
  return surger(k, slope).total_hf_hat_dim();
}

// fitting slopes; the outer pair brackets any |nu_hat| <= 2 genus + 1
std::vector<SurgerySlope> sweep_slopes(long genus) {
  long outer = 2 * genus + 3;
  std::vector<SurgerySlope> s = {{1, 1}, {-1, 1}, {2, 1},  {-2, 1},  {3, 1},
                                 {-3, 1}, {1, 2}, {-1, 2}, {3, 2},  {-3, 2}};
  s.emplace_back(outer, 1);
  s.emplace_back(-outer, 1);
  return s;
}

DimensionProfile profile_from_complex(const KnotComplex& k) {
  long outer = 2 * k.genus() + 3;
  long dim_pos = hf_hat_total(k, {outer, 1});
  long dim_neg = hf_hat_total(k, {-outer, 1});
  // dim(+outer) = r0 + outer - nu, dim(-outer) = r0 + outer + nu
  if ((dim_neg - dim_pos) % 2 != 0 || (dim_pos + dim_neg) % 2 != 0)
    throw InternalError("dimension sweep has the wrong parity");
  DimensionProfile p;
  p.nu_hat = (dim_neg - dim_pos) / 2;
  p.r0_hat = (dim_pos + dim_neg) / 2 - outer;
  for (const auto& slope : sweep_slopes(k.genus())) {
    long got = hf_hat_total(k, slope);
    if (got != surgery_dim(p, slope))
      throw InternalError("dimension sweep is inconsistent with the affine model at slope " +
                          slope.str());
  }
  return p;
}

long a_hat_excess(const KnotComplex& k) {
  long g = k.genus();
  long total = 0;
  for (long s = -g; s <= g; ++s) {
    auto model = subquotient(k, RegionSpec::a_hat(s));
    total += homology(model.cc).total_dim() - 1;
  }
  return total;
}

}  // namespace

DimensionProfile r0_nu_hat(const KnotRecord& record) {
  if (!record.complex) {
    if (record.stored_profile) return *record.stored_profile;
    throw UnsupportedError("no complex and no stored profile for " + record.name);
  }
  DimensionProfile p = profile_from_complex(*record.complex);
  // cross-check against the A-hat dimension sum, on whichever side has the
  // larger one-sided growth (nu_hat >= 0 for that side)
  long excess = (p.nu_hat >= 0) ? a_hat_excess(*record.complex) : a_hat_excess(record.complex->mirror());
  long expected = (p.nu_hat >= 0) ? (p.r0_hat - p.nu_hat) : (p.r0_hat + p.nu_hat);
  if (excess != expected)
    throw InternalError("A-hat dimension sum disagrees with the extracted profile for " + record.name);
  if (record.stored_profile && !(p == *record.stored_profile))
    throw InternalError("stored profile disagrees with the computed one for " + record.name);
  return p;
}

LSpaceClass classify_lspace(const KnotRecord& record) {
  DimensionProfile p = r0_nu_hat(record);
  if (p.r0_hat == p.nu_hat && p.nu_hat >= 1) return LSpaceClass::LSpaceKnot;
  if (p.r0_hat - p.nu_hat == 2) return LSpaceClass::AlmostLSpaceKnot;
  if (p.r0_hat == 0 && p.nu_hat == 0 && record.genus == 0) return LSpaceClass::Unknot;
  return LSpaceClass::Neither;
}

ItoVerdict ito_slope(const Rational& a4_a, const Rational& a4_b, const Rational& v3_a,
                     const Rational& v3_b) {
  bool a4_equal = (a4_a == a4_b);
  bool v3_equal = (v3_a == v3_b);
  if (a4_equal && v3_equal) return {ItoVerdict::Kind::Unconstrained, Rational(0)};
  if (a4_equal != v3_equal) return {ItoVerdict::Kind::IncompatiblePair, Rational(0)};
  return {ItoVerdict::Kind::UniqueSlope, Rational(-5) * (a4_a - a4_b) / (Rational(4) * (v3_a - v3_b))};
}

CandidateConstraints candidate_constraints(long g, long r) {
  if (g < 2 || r < 1) throw UnsupportedError("candidate_constraints needs g >= 2 and r >= 1");
  CandidateConstraints c;
  c.g = g;
  c.r = r;
  c.alexander = f_family(g);
  bool divides_2g2 = ((2 * g - 2) % r == 0);
  bool even_rule = (g % 2 != 0) || ((g - 1) % r == 0);
  c.admissible = divides_2g2 && even_rule;
  if (!c.admissible) return c;

  if ((g - 1) % r == 0) {
    c.d = -(g - 1) * ((g - 1) / r - 1);
  } else {
    Rational d = -Rational((2 * g - 2 - r) * (2 * g - 2 - r)) / (4 * r);
    c.d = to_long(d);  // integrality is forced when r | 2g-2 but not g-1
  }
  c.delta = c.d + 2 - g;

  auto put = [&c](long a, long m, long n) { c.hfk_shape[{a, m}] += n; };
  put(g, c.d + 2, 1);
  put(g - 1, c.d + 1, 2);
  put(0, 0, 1);
  put(1 - g, c.d + 3 - 2 * g, 2);
  put(-g, c.d + 2 - 2 * g, 1);
  if (g == 2) {
    put(0, c.d, 2);
  } else {
    put(g - 2, c.d, 1);
    put(2 - g, c.d + 4 - 2 * g, 1);
  }
  return c;
}

bool ObstructionReport::fires() const {
  for (const auto& t : tests)
    if (t.outcome == ObstructionTest::Outcome::Fire) return true;
  return false;
}

namespace {

std::optional<DimensionProfile> try_profile(const KnotRecord& r) {
  if (!r.complex && !r.stored_profile) return std::nullopt;
  return r0_nu_hat(r);
}

std::vector<Rational> d_multiset(const KnotRecord& r, const SurgerySlope& slope) {
  SurgeryResult res = surger(*r.complex, slope);
  std::vector<Rational> d;
  for (const auto& s : res.spin_c) d.push_back(s.d);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<Rational> four_v3_candidates(const KnotRecord& r) {
  std::vector<Rational> out;
  if (!r.four_v3) return out;
  out.push_back(*r.four_v3);
  if (r.four_v3_mirror_ambiguous && *r.four_v3 != 0) out.push_back(-*r.four_v3);
  return out;
}

}  // namespace

ObstructionReport obstruct_pair(const KnotRecord& a, const KnotRecord& b, const SurgerySlope& r) {
  using Outcome = ObstructionTest::Outcome;
  ObstructionReport rep;
  rep.slope = r;

  // 1. total dimension of HF-hat
  {
    ObstructionTest t{"dimension", Outcome::Skipped, ""};
    auto pa = try_profile(a), pb = try_profile(b);
    if (pa && pb) {
      long da = surgery_dim(*pa, r), db = surgery_dim(*pb, r);
      t.outcome = (da == db) ? Outcome::Pass : Outcome::Fire;
      t.witness = "dim HF-hat " + std::to_string(da) + " vs " + std::to_string(db);
    } else {
      t.witness = "profile unavailable";
    }
    rep.tests.push_back(std::move(t));
  }

  // 2. d-invariants per Spin^c structure, compared as multisets
  {
    ObstructionTest t{"d-invariant", Outcome::Skipped, ""};
    if (a.complex && b.complex) {
      auto da = d_multiset(a, r), db = d_multiset(b, r);
      t.outcome = (da == db) ? Outcome::Pass : Outcome::Fire;
      std::ostringstream os;
      os << "{";
      for (size_t i = 0; i < da.size(); ++i) os << (i ? "," : "") << to_string(da[i]);
      os << "} vs {";
      for (size_t i = 0; i < db.size(); ++i) os << (i ? "," : "") << to_string(db[i]);
      os << "}";
      t.witness = os.str();
    } else {
      t.witness = "full complex unavailable";
    }
    rep.tests.push_back(std::move(t));
  }

  // 3. Casson / Casson-Walker via the surgery formula: the lens-space terms
  // cancel in the comparison, so this reduces to delta''(1).
  {
    ObstructionTest t{"casson", Outcome::Skipped, ""};
    CassonValue ca = casson_surgery(a.alexander, r);
    CassonValue cb = casson_surgery(b.alexander, r);
    t.outcome = (ca.value == cb.value) ? Outcome::Pass : Outcome::Fire;
    t.witness = (ca.absolute ? "lambda " : "lambda difference term ") + to_string(ca.value) + " vs " +
                to_string(cb.value);
    rep.tests.push_back(std::move(t));
  }

  // 4. finite-type slope obstruction; mirror-ambiguous v3 values fire only
  // if every sign choice is obstructed
  {
    ObstructionTest t{"ito", Outcome::Skipped, ""};
    auto va = four_v3_candidates(a), vb = four_v3_candidates(b);
    if (!va.empty() && !vb.empty()) {
      Rational a4a = a_coefficients(conway_from_alexander(a.alexander)).a4;
      Rational a4b = a_coefficients(conway_from_alexander(b.alexander)).a4;
      Rational slope_value = Rational(r.p) / Rational(r.q);
      bool any_allows = false;
      std::ostringstream os;
      for (const auto& x : va)
        for (const auto& y : vb) {
          ItoVerdict v = ito_slope(a4a, a4b, x / 4, y / 4);
          bool allows = (v.kind == ItoVerdict::Kind::Unconstrained) ||
                        (v.kind == ItoVerdict::Kind::UniqueSlope && v.slope == slope_value);
          any_allows = any_allows || allows;
          if (os.tellp() > 0) os << "; ";
          os << "4v3 " << to_string(x) << " vs " << to_string(y) << ": "
             << (v.kind == ItoVerdict::Kind::Unconstrained     ? "unconstrained"
                 : v.kind == ItoVerdict::Kind::IncompatiblePair ? "incompatible"
                                                                : "slope " + to_string(v.slope));
        }
      t.outcome = any_allows ? Outcome::Pass : Outcome::Fire;
      t.witness = os.str();
    } else {
      t.witness = "4v3 unavailable";
    }
    rep.tests.push_back(std::move(t));
  }

  return rep;
}

}  // namespace hfs
