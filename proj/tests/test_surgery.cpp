#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "hfsurgery/catalog.hpp"
#include "hfsurgery/errors.hpp"
#include "hfsurgery/surgery.hpp"

using namespace hfs;

namespace {

KnotComplex bundled(const std::string& name) { return *get_record(name).complex; }

std::vector<std::string> full_complex_names() {
  return {"unknot", "T2_3", "T-2_3", "4_1", "5_2", "m5_2"};
}

// independent route to the lens-space d-invariants: iterate the Euclidean
// chain and accumulate the closed-form terms with alternating signs
Rational lens_d_oracle(long p, long q, long i) {
  Rational total(0);
  long sign = 1;
  while (p != 1) {
    Rational term =
        Rational((2 * i + 1 - p - q) * (2 * i + 1 - p - q)) / Rational(4 * p * q) - Rational(1, 4);
    total += sign * term;
    long np = q, nq = p % q, ni = i % q;
    p = np;
    q = nq;
    i = ni;
    sign = -sign;
  }
  return total;
}

}  // namespace

TEST_CASE("slope parsing") {
  CHECK(SurgerySlope::parse("3/2").p == 3);
  CHECK(SurgerySlope::parse("3/2").q == 2);
  CHECK(SurgerySlope::parse("-7").str() == "-7");
  CHECK(SurgerySlope::parse("2/4").str() == "1/2");
  CHECK(SurgerySlope::parse("1/-2").str() == "-1/2");
  CHECK_THROWS_AS(SurgerySlope::parse("x"), ParseError);
  CHECK_THROWS_AS(SurgerySlope::parse("1/0"), ParseError);
  CHECK_THROWS_AS(SurgerySlope::parse("0"), UnsupportedError);
}

TEST_CASE("lens space d-invariants") {
  CHECK(lens_d(1, 1, 0) == 0);
  CHECK(lens_d(1, 5, 0) == 0);
  CHECK(lens_d(2, 1, 0) == Rational(1, 4));
  CHECK(lens_d(2, 1, 1) == Rational(-1, 4));
  CHECK_THROWS_AS(lens_d(4, 2, 0), UnsupportedError);

  // closed form for integer surgeries: ((2i - p)^2 - p) / 4p
  for (long p = 1; p <= 12; ++p)
    for (long i = 0; i < p; ++i)
      CHECK(lens_d(p, 1, i) == Rational((2 * i - p) * (2 * i - p) - p) / Rational(4 * p));

  // independent accumulation oracle, and conjugation symmetry: in the
  // rational surgery labeling conjugation pairs i with p + q - 1 - i,
  // which reduces to i <-> -i for integer slopes
  for (long p = 1; p <= 13; ++p)
    for (long q = 1; q <= 13; ++q) {
      if (gcd_long(p, q) != 1) continue;
      for (long i = 0; i < p; ++i) {
        CHECK(lens_d(p, q, i) == lens_d_oracle(p, q, i));
        CHECK(lens_d(p, q, i) == lens_d(p, q, (((p + q - 1 - i) % p) + p) % p));
      }
    }
}

TEST_CASE("A^+ homology of the bundled complexes") {
  // twist knot: T+_(0) + Q^2_(0)
  UModule a52 = a_plus_homology(bundled("5_2"), 0);
  CHECK(a52.tower_bottom == 0);
  REQUIRE(a52.torsion.size() == 2);
  CHECK(a52.torsion[0] == TorsionSummand{Rational(0), 1});
  CHECK(a52.torsion[1] == TorsionSummand{Rational(0), 1});

  // mirror: T+_(-2) + Q_(-2)
  UModule am = a_plus_homology(bundled("m5_2"), 0);
  CHECK(am.tower_bottom == -2);
  REQUIRE(am.torsion.size() == 1);
  CHECK(am.torsion[0] == TorsionSummand{Rational(-2), 1});

  // trefoils and figure eight
  UModule at = a_plus_homology(bundled("T2_3"), 0);
  CHECK(at.tower_bottom == -2);
  CHECK(at.torsion.empty());
  UModule atl = a_plus_homology(bundled("T-2_3"), 0);
  CHECK(atl.tower_bottom == 0);
  REQUIRE(atl.torsion.size() == 1);
  CHECK(atl.torsion[0] == TorsionSummand{Rational(0), 1});
  UModule a41 = a_plus_homology(bundled("4_1"), 0);
  CHECK(a41.tower_bottom == 0);
  REQUIRE(a41.torsion.size() == 1);
  CHECK(a41.torsion[0] == TorsionSummand{Rational(-1), 1});

  // s at or beyond the genus: pure tower
  for (const auto& name : full_complex_names()) {
    auto k = bundled(name);
    UModule top = a_plus_homology(k, k.genus());
    CHECK(top.torsion.empty());
    CHECK(top.tower_bottom == 0);  // V_{g} = 0 pins the inherited bottom at 0
  }
}

TEST_CASE("V_s and H_s") {
  auto t52 = vs_hs(bundled("5_2"));
  CHECK(t52.v.at(0) == 0);
  auto tm = vs_hs(bundled("m5_2"));
  CHECK(tm.v.at(0) == 1);
  auto tt = vs_hs(bundled("T2_3"));
  CHECK(tt.v.at(0) == 1);
  CHECK(tt.v.at(1) == 0);
  auto tu = vs_hs(bundled("unknot"));
  CHECK(tu.v.at(0) == 0);

  for (const auto& name : full_complex_names()) {
    auto k = bundled(name);
    auto t = vs_hs(k);
    long g = t.genus;
    for (long s = -g - 1; s <= g + 1; ++s) {
      long vs = v_at(t, s);
      CHECK(vs >= 0);
      if (s + 1 <= g + 1) {
        long vs1 = v_at(t, s + 1);
        CHECK(vs >= vs1);       // V nonincreasing
        CHECK(vs <= vs1 + 1);   // and drops by at most one
        CHECK(h_at(t, s) <= h_at(t, s + 1));
      }
      if (s >= g) CHECK(vs == 0);
      CHECK(v_at(t, -s) == vs + s);   // V_{-s} = V_s + s
      CHECK(h_at(t, -s) == vs);       // H_{-s} = V_s
    }
    // extension rules agree with the computed window where they overlap
    CHECK(v_at(t, g + 1) == 0);
    CHECK(v_at(t, -g - 1) == g + 1 + v_at(t, g + 1));
  }
}

TEST_CASE("large surgery identification") {
  CHECK(large_surgery(bundled("unknot"), 3, 1).torsion.empty());
  UModule m = large_surgery(bundled("m5_2"), 3, 1);
  CHECK(m.torsion.empty());  // V_1 region: pure tower
  UModule s52 = large_surgery(bundled("5_2"), 1, 0);
  CHECK(s52.torsion.size() == 2);
  CHECK_THROWS_AS(large_surgery(bundled("5_2"), 0, 0), UnsupportedError);
  CHECK_THROWS_AS(large_surgery(bundled("5_2"), 3, 2), UnsupportedError);
}

TEST_CASE("d-invariants of integral surgeries") {
  CHECK(d_invariant(bundled("5_2"), {1, 1}, 0) == 0);
  CHECK(d_invariant(bundled("m5_2"), {1, 1}, 0) == -2);
  CHECK(d_invariant(bundled("unknot"), {1, 1}, 0) == 0);
  CHECK(d_invariant(bundled("T2_3"), {1, 1}, 0) == -2);
  CHECK_THROWS_AS(d_invariant(bundled("5_2"), {-1, 1}, 0), UnsupportedError);
  // surgeries on the unknot are the lens spaces themselves
  auto u = bundled("unknot");
  for (const SurgerySlope& s : {SurgerySlope{3, 2}, SurgerySlope{5, 3}, SurgerySlope{4, 1}})
    for (long i = 0; i < s.p; ++i) CHECK(d_invariant(u, s, i) == lens_d(s.p, s.q, i));
}

TEST_CASE("d-invariants are conjugation-invariant") {
  // d(Y, conjugate spin-c) = d(Y, spin-c), with the rational-slope pairing
  for (const auto& name : {"5_2", "m5_2", "T2_3", "4_1"}) {
    auto k = bundled(name);
    for (const SurgerySlope& s : {SurgerySlope{3, 2}, SurgerySlope{5, 2}, SurgerySlope{4, 3}}) {
      for (long i = 0; i < s.p; ++i) {
        long conj = (((s.p + s.q - 1 - i) % s.p) + s.p) % s.p;
        CHECK(d_invariant(k, s, i) == d_invariant(k, s, conj));
      }
    }
  }
}

TEST_CASE("induced projection out of A^+_0(5_2)") {
  // (v_0)_* is onto with two-dimensional kernel in grading 0: the tower
  // bottom maps onto the bottom of H(B^+) and the two torsion classes die
  auto k = bundled("5_2");
  long n = default_truncation(k);
  auto a = subquotient(k, RegionSpec::a_plus(0), n);
  auto b = subquotient(k, RegionSpec::b_plus(), n);
  HomologyData ha(a.cc), hb(b.cc);
  SparseMatrix v_star = induced_map(v_map(k, 0, n, a, b), ha, hb);
  // grading-0 block
  std::vector<long> cols, rows;
  for (long j = 0; j < ha.dim(); ++j)
    if (ha.grading(j) == 0) cols.push_back(j);
  for (long r = 0; r < hb.dim(); ++r)
    if (hb.grading(r) == 0) rows.push_back(r);
  REQUIRE(cols.size() == 3);
  REQUIRE(rows.size() == 1);
  SparseMatrix block(hb.dim(), static_cast<long>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) block.col[j] = v_star.col[static_cast<size_t>(cols[j])];
  auto red = reduce(block);
  CHECK(red.rank == 1);
  CHECK(red.kernel.size() == 2);
}

TEST_CASE("anchoring") {
  UModule rel;
  rel.tower_bottom = Rational(0);
  rel.torsion = {{Rational(0), 1}};
  UModule abs = anchor_gradings(rel, Rational(0));
  CHECK(abs.absolute);
  CHECK(abs.tower_bottom == 0);
  UModule m = anchor_gradings(rel, Rational(-2));
  CHECK(m.tower_bottom == -2);
  CHECK(m.torsion[0].bottom == -2);
}

TEST_CASE("mapping cone equals large surgery at integral slopes") {
  for (const auto& name : {"5_2", "m5_2", "T2_3", "4_1"}) {
    auto k = bundled(name);
    long g = k.genus();
    for (long n = std::max(2 * g - 1, 1L); n <= 5; ++n)
      for (long s = -(n / 2); s <= n / 2; ++s) {
        UModule cone = mapping_cone(k, {n, 1}, ((s % n) + n) % n);
        UModule large = large_surgery(k, n, s);
        CHECK(cone.same_relative(large));
      }
  }
}

TEST_CASE("mapping cone: small-slope examples") {
  // 1/2 surgery on 5_2 in its single spin-c structure: T+ + Q^4
  UModule half = mapping_cone(bundled("5_2"), {1, 2}, 0);
  CHECK(half.torsion.size() == 4);
  for (const auto& t : half.torsion) {
    CHECK(t.length == 1);
    CHECK(t.bottom == half.tower_bottom);  // all classes at the tower bottom
  }
  // 1/2 on the right trefoil matches +1 on the mirror twist knot
  UModule brieskorn = mapping_cone(bundled("T2_3"), {1, 2}, 0);
  UModule m1 = mapping_cone(bundled("m5_2"), {1, 1}, 0);
  CHECK(brieskorn.same_relative(m1));

  CHECK_THROWS_AS(mapping_cone(bundled("5_2"), SurgerySlope(-1, 1), 0), UnsupportedError);
}

TEST_CASE("mapping cone is window- and truncation-independent") {
  for (const auto& name : {"5_2", "T-2_3"}) {
    auto k = bundled(name);
    for (const SurgerySlope& slope : {SurgerySlope{1, 1}, SurgerySlope{3, 2}, SurgerySlope{2, 3}}) {
      for (long i = 0; i < slope.p; ++i) {
        UModule base = mapping_cone(k, slope, i);
        UModule wide = mapping_cone(k, slope, i, {}, 2);
        CHECK(base.same_relative(wide));
        UModule deeper = mapping_cone(k, slope, i, default_truncation(k) + 1);
        CHECK(base.same_relative(deeper));
      }
    }
  }
}

TEST_CASE("tower gradings across the cone columns") {
  // d_{t+1} - d_t = 2 H_{s_t} - 2 V_{s_{t+1}} in the cone's relative lift
  for (const auto& name : full_complex_names()) {
    auto k = bundled(name);
    auto t = vs_hs(k);
    for (const SurgerySlope& slope : {SurgerySlope{1, 1}, SurgerySlope{3, 2}, SurgerySlope{1, 3}}) {
      for (long i = 0; i < slope.p; ++i) {
        std::vector<ConeColumn> cols;
        mapping_cone(k, slope, i, {}, 0, &cols);
        REQUIRE(cols.size() >= 2);
        for (size_t j = 0; j + 1 < cols.size(); ++j) {
          Rational lhs = cols[j + 1].tower_bottom - cols[j].tower_bottom;
          CHECK(lhs == Rational(2 * h_at(t, cols[j].s) - 2 * v_at(t, cols[j + 1].s)));
        }
      }
    }
  }
  // the specialization for knots with V_0 = 0: ascending by 2 floor(.) on the
  // nonnegative side, and symmetrically on the nonpositive side
  for (const auto& name : {"5_2", "T-2_3", "4_1", "unknot"}) {
    auto k = bundled(name);
    SurgerySlope slope{3, 2};
    for (long i = 0; i < slope.p; ++i) {
      std::vector<ConeColumn> cols;
      mapping_cone(k, slope, i, {}, 0, &cols);
      for (size_t j = 0; j + 1 < cols.size(); ++j) {
        if (cols[j].s >= 0)
          CHECK(cols[j + 1].tower_bottom == cols[j].tower_bottom + 2 * cols[j].s);
        if (cols[j + 1].s <= 0)
          CHECK(cols[j + 1].tower_bottom == cols[j].tower_bottom + 2 * cols[j + 1].s);
      }
    }
  }
}

TEST_CASE("kernel of v at the top alexander grading") {
  // torsion of HF^+(S^3_N(K), g-1) is U-annihilated with total dimension
  // dim HFK(K, g) - V_{g-1}, and the hat dimension relation follows
  for (const auto& name : {"T2_3", "T-2_3", "4_1", "5_2", "m5_2"}) {
    auto k = bundled(name);
    long g = k.genus();
    REQUIRE(g >= 1);
    long n = std::max(2 * g - 1, 1L);
    UModule m = large_surgery(k, n, g - 1);
    long hfk_top = 0;
    for (const auto& [am, d] : k.hfk_hat())
      if (am.first == g) hfk_top += d;
    long v_top = v_at(vs_hs(k), g - 1);
    long red = 0;
    for (const auto& t : m.torsion) {
      red += t.length;
      CHECK(t.length == 1);  // U kills the reduced part in this spin-c summand
    }
    CHECK(red == hfk_top - v_top);
    CHECK((m.hf_hat_dim() - 1) / 2 == hfk_top - v_top);
  }
}

TEST_CASE("surger: composite results") {
  auto res52 = surger(bundled("5_2"), {1, 1});
  REQUIRE(res52.spin_c.size() == 1);
  CHECK(res52.plus_graded);
  const UModule& m = *res52.spin_c[0].module;
  CHECK(m.absolute);
  CHECK(m.tower_bottom == 0);
  CHECK(m.torsion == std::vector<TorsionSummand>{{Rational(0), 1}, {Rational(0), 1}});
  CHECK(res52.spin_c[0].d == 0);
  CHECK(res52.spin_c[0].hf_hat_dim == 5);

  // three spin-c structures of +3 surgery on the unknot: all towers
  auto lens = surger(bundled("unknot"), {3, 1});
  REQUIRE(lens.spin_c.size() == 3);
  for (long i = 0; i < 3; ++i) {
    CHECK(lens.spin_c[static_cast<size_t>(i)].module->torsion.empty());
    CHECK(lens.spin_c[static_cast<size_t>(i)].d == lens_d(3, 1, i));
  }
  CHECK(lens.total_hf_hat_dim() == 3);

  // conjugation symmetry: spin-c structures i and p-i agree relatively
  for (const auto& name : {"5_2", "4_1"}) {
    auto res = surger(bundled(name), {5, 1});
    for (long i = 1; i < 5; ++i) {
      const UModule& a = *res.spin_c[static_cast<size_t>(i)].module;
      const UModule& b = *res.spin_c[static_cast<size_t>(5 - i)].module;
      CHECK(a.same_relative(b));
    }
  }
  // for rational slopes the pairing is i <-> p + q - 1 - i
  {
    SurgerySlope slope{5, 3};
    auto res = surger(bundled("5_2"), slope);
    for (long i = 0; i < slope.p; ++i) {
      long conj = ((slope.p + slope.q - 1 - i) % slope.p + slope.p) % slope.p;
      CHECK(res.spin_c[static_cast<size_t>(i)].module->same_relative(
          *res.spin_c[static_cast<size_t>(conj)].module));
      CHECK(res.spin_c[static_cast<size_t>(i)].d == res.spin_c[static_cast<size_t>(conj)].d);
    }
  }
}

TEST_CASE("surger: negative slopes give d and dimensions only") {
  auto res = surger(bundled("m5_2"), {-1, 1});
  REQUIRE(res.spin_c.size() == 1);
  CHECK_FALSE(res.plus_graded);
  CHECK_FALSE(res.spin_c[0].module.has_value());
  // -S^3_{-1}(m5_2) = S^3_1(5_2) has d = 0
  CHECK(res.spin_c[0].d == 0);
  CHECK(res.spin_c[0].hf_hat_dim == 5);

  // dim HF-hat(S^3_{p/q}(m5_2)) = 3q + |p - q| on both sides
  for (const SurgerySlope& s :
       {SurgerySlope{2, 3}, SurgerySlope{-2, 3}, SurgerySlope{-5, 1}, SurgerySlope{7, 2}}) {
    auto r = surger(bundled("m5_2"), s);
    CHECK(r.total_hf_hat_dim() == 3 * s.q + std::labs(s.p - s.q));
  }
}

TEST_CASE("extreme small slopes stay sound") {
  // the cone window gets wide here; the scaled default truncation plus the
  // built-in stabilization check must keep the answers exact
  auto res = surger(bundled("5_2"), {1, 9});
  REQUIRE(res.spin_c.size() == 1);
  CHECK(res.spin_c[0].module->torsion.size() == 18);
  CHECK(res.spin_c[0].d == 0);
  CHECK(res.total_hf_hat_dim() == 3 * 9 + 10);

  auto rm = surger(bundled("m5_2"), {2, 9});
  CHECK(rm.total_hf_hat_dim() == 3 * 9 + 7);
  CHECK(rm.spin_c[1].d == Rational(-9, 4));
}

TEST_CASE("very large slopes: every spin-c summand is an A^+ homology or a tower") {
  for (const auto& name : {"5_2", "4_1"}) {
    auto k = bundled(name);
    long g = k.genus();
    SurgerySlope slope{2 * g + 3, 2};  // p/q > 2g - 1
    auto res = surger(k, slope);
    std::vector<UModule> candidates;
    for (long s = -g; s <= g; ++s) candidates.push_back(a_plus_homology(k, s));
    for (const auto& sc : res.spin_c) {
      bool matched = sc.module->torsion.empty();  // tower case
      for (const auto& c : candidates) matched = matched || sc.module->same_relative(c);
      CHECK(matched);
    }
  }
}
