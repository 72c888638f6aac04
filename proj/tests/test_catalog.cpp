#include <doctest.h>

#include <fstream>

#include "hfsurgery/catalog.hpp"
#include "hfsurgery/classical.hpp"
#include "hfsurgery/complex_io.hpp"
#include "hfsurgery/errors.hpp"
#include "hfsurgery/surgery.hpp"

using namespace hfs;

namespace {
std::string data_path(const std::string& file) { return std::string(HFSURGERY_TEST_DATA_DIR) + "/" + file; }
}  // namespace

TEST_CASE("catalog names are sorted and resolvable") {
  auto names = catalog_names();
  for (size_t i = 1; i < names.size(); ++i) CHECK(names[i - 1] < names[i]);
  for (const auto& n : names) CHECK(get_record(n).name == n);
  CHECK(catalog_has("P-3,3,8"));
  CHECK(catalog_has("P-3,3,-7"));
  CHECK_FALSE(catalog_has("P-3,3,x"));
  CHECK_THROWS_AS(get_record("6_1"), UnsupportedError);
}

TEST_CASE("stored invariants") {
  auto r52 = get_record("5_2");
  CHECK(r52.four_v3 == Rational(-3));
  CHECK_FALSE(r52.four_v3_mirror_ambiguous);
  CHECK(get_record("m5_2").four_v3 == Rational(3));
  CHECK(get_record("4_1").four_v3 == Rational(0));

  auto r15 = get_record("15n43522");
  CHECK(r15.four_v3 == Rational(7));
  CHECK(r15.four_v3_mirror_ambiguous);
  CHECK(r15.stored_profile == DimensionProfile{4, 0});
  CHECK(r15.stored_v0 == 0);
  CHECK(r15.genus == 1);
  // every stored field carries provenance
  CHECK(!r15.notes.empty());

  auto p8 = get_record("P-3,3,8");
  CHECK(p8.genus == 2);
  CHECK(p8.alexander == f_family(2));
  CHECK(p8.four_v3 == Rational(-8));
  auto p9 = get_record("P-3,3,9");
  CHECK(p9.genus == 1);
  CHECK(p9.stored_profile == DimensionProfile{4, 0});
}

TEST_CASE("catalog self-consistency with the HFK table") {
  // nearly fibered rows of the table, grouped by Alexander polynomial
  for (const auto& name : {"15n43522", "Wh-T2_3_2"}) {
    auto r = get_record(name);
    auto d = r.hfk_dims();
    CHECK(d[{1, 0}] == 2);
    CHECK(d[{0, -1}] == 4);
    CHECK(d[{0, 0}] == 1);
    CHECK(d[{-1, -2}] == 2);
    LaurentPolynomial expect;
    expect.set_coeff(1, 2);
    expect.set_coeff(0, -3);
    expect.set_coeff(-1, 2);
    CHECK(r.alexander == expect);
  }
  auto wp = get_record("Wh+T2_3_2").hfk_dims();
  CHECK(wp[{1, -1}] == 2);
  CHECK(wp[{0, -2}] == 4);
  CHECK(wp[{0, 0}] == 1);
  CHECK(wp[{-1, -3}] == 2);

  // V_0 pattern across the catalog: (1, 0) for m5_2, (0, 1) for 5_2,
  // (0, 0) for the other nearly fibered knots
  CHECK(vs_hs(*get_record("5_2").complex).v.at(0) == 0);
  CHECK(vs_hs(*get_record("m5_2").complex).v.at(0) == 1);
  for (const auto& name : {"15n43522", "Wh-T2_3_2", "Wh+T2_3_2", "P-3,3,9"})
    CHECK(get_record(name).stored_v0 == 0);

  // alexander polynomials derived from complexes match the stored ones
  for (const auto& name : {"unknot", "T2_3", "T-2_3", "4_1", "5_2", "m5_2"}) {
    auto r = get_record(name);
    CHECK(r.alexander == alexander_polynomial(*r.complex));
    CHECK(r.genus == r.complex->genus());
  }
}

TEST_CASE("ingest: fixture round trip") {
  // the bundled 5_2 fixture file parses to the catalog complex
  auto rec = ingest(data_path("5_2.json"));
  CHECK(rec.name == "5_2");
  CHECK(rec.genus == 1);
  CHECK(serialize_complex(*rec.complex) == serialize_complex(*get_record("5_2").complex));
}

TEST_CASE("ingest: rejects a broken flip") {
  CHECK_THROWS_AS(ingest(data_path("broken_flip.json")), ValidationError);
}

TEST_CASE("ingest: cinquefoil staircase") {
  auto rec = ingest(data_path("T2_5.json"));
  CHECK(rec.genus == 2);
  LaurentPolynomial expect;
  expect.set_coeff(2, 1);
  expect.set_coeff(1, -1);
  expect.set_coeff(0, 1);
  expect.set_coeff(-1, -1);
  expect.set_coeff(-2, 1);
  CHECK(rec.alexander == expect);
  // it is an L-space knot: every A^+ homology is a bare tower, the profile
  // is (2g-1, 2g-1) = (3, 3), and large surgeries are lens-space-sized
  auto t = vs_hs(*rec.complex);
  CHECK(t.v.at(0) == 1);
  for (long s = -3; s <= 3; ++s) CHECK(a_plus_homology(*rec.complex, s).torsion.empty());
  auto profile = r0_nu_hat(rec);
  CHECK(profile.r0_hat == 3);
  CHECK(profile.nu_hat == 3);
  CHECK(classify_lspace(rec) == LSpaceClass::LSpaceKnot);
  CHECK(surger(*rec.complex, {3, 1}).total_hf_hat_dim() == 3);
  CHECK(surger(*rec.complex, {7, 2}).total_hf_hat_dim() == 7);
}

TEST_CASE("get_record honors an override directory") {
  auto rec = get_record("5_2", HFSURGERY_TEST_DATA_DIR);
  CHECK(rec.notes == std::vector<std::string>{"user-supplied complex"});
  auto normal = get_record("5_2", "");
  CHECK(normal.notes != rec.notes);
}
