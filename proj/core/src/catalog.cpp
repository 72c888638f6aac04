#include "hfsurgery/catalog.hpp"

#include <filesystem>

#include "hfsurgery/classical.hpp"
#include "hfsurgery/complex_io.hpp"
#include "hfsurgery/errors.hpp"

namespace hfs {

namespace {

KnotArrow arrow(const char* from, const char* to, long u, long coeff) {
  return {from, to, u, Rational(coeff)};
}

// Twist knot 5_2, sigma = 2: seven generators in Maslov gradings a + 1.
// Vertical arrows a->c2, b->c3, c1->e; horizontal arrows c1 -> U b,
// d -> U c2, e -> -U c3. The flip exchanges a<->d and b<->e.
KnotComplex complex_5_2() {
  KnotComplex k;
  k.name = "5_2";
  k.generators = {{"a", 1, 2}, {"b", 1, 2},  {"c1", 0, 1}, {"c2", 0, 1},
                  {"c3", 0, 1}, {"d", -1, 0}, {"e", -1, 0}};
  k.arrows = {arrow("a", "c2", 0, 1),  arrow("b", "c3", 0, 1), arrow("c1", "b", 1, 1),
              arrow("c1", "e", 0, 1),  arrow("d", "c2", 1, 1), arrow("e", "c3", 1, -1)};
  k.flip = {{"a", "d"}, {"b", "e"}, {"c1", "c1"}, {"c2", "c2"}, {"c3", "c3"}};
  k.finalize();
  return k;
}

// Mirror model written out explicitly (rather than as mirror(5_2)) so the
// two can be compared as independent data.
KnotComplex complex_m5_2() {
  KnotComplex k;
  k.name = "m5_2";
  k.generators = {{"a", 1, 0},   {"b", 1, 0},   {"c1", 0, -1}, {"c2", 0, -1},
                  {"c3", 0, -1}, {"d", -1, -2}, {"e", -1, -2}};
  k.arrows = {arrow("c2", "a", 1, 1),  arrow("c2", "d", 0, 1), arrow("c1", "b", 1, 1),
              arrow("c1", "e", 0, 1),  arrow("b", "c3", 0, 1), arrow("e", "c3", 1, -1)};
  k.flip = {{"a", "d"}, {"b", "e"}, {"c1", "c1"}, {"c2", "c2"}, {"c3", "c3"}};
  k.finalize();
  return k;
}

// Right-handed trefoil staircase: d(x0) = x(-1) + U x1.
KnotComplex complex_trefoil_right() {
  KnotComplex k;
  k.name = "T2_3";
  k.generators = {{"x1", 1, 0}, {"x0", 0, -1}, {"xm1", -1, -2}};
  k.arrows = {arrow("x0", "xm1", 0, 1), arrow("x0", "x1", 1, 1)};
  k.flip = {{"x1", "xm1"}, {"x0", "x0"}};
  k.finalize();
  return k;
}

KnotComplex complex_trefoil_left() {
  KnotComplex k;
  k.name = "T-2_3";
  k.generators = {{"y1", 1, 2}, {"y0", 0, 1}, {"ym1", -1, 0}};
  k.arrows = {arrow("y1", "y0", 0, 1), arrow("ym1", "y0", 1, 1)};
  k.flip = {{"y1", "ym1"}, {"y0", "y0"}};
  k.finalize();
  return k;
}

// Figure eight: square t -> x <- z <- y -> t plus a free generator w.
KnotComplex complex_figure_eight() {
  KnotComplex k;
  k.name = "4_1";
  k.generators = {{"t", 1, 1}, {"x", 0, 0}, {"y", 0, 0}, {"w", 0, 0}, {"z", -1, -1}};
  k.arrows = {arrow("t", "x", 0, 1), arrow("y", "z", 0, 1), arrow("y", "t", 1, 1),
              arrow("z", "x", 1, -1)};
  k.flip = {{"t", "z"}, {"x", "x"}, {"y", "y"}, {"w", "w"}};
  k.finalize();
  return k;
}

KnotComplex complex_unknot() {
  KnotComplex k;
  k.name = "unknot";
  k.generators = {{"u", 0, 0}};
  k.flip = {{"u", "u"}};
  k.finalize();
  return k;
}

LaurentPolynomial poly(std::initializer_list<std::pair<long, long>> terms) {
  LaurentPolynomial p;
  for (const auto& [e, c] : terms) p.set_coeff(e, Rational(c));
  return p;
}

void derive_from_complex(KnotRecord& r) {
  r.genus = r.complex->genus();
  r.alexander = alexander_polynomial(*r.complex);
}

KnotRecord full_record(KnotComplex k, std::vector<std::string> notes,
                       std::optional<LaurentPolynomial> jones = {}) {
  KnotRecord r;
  r.name = k.name;
  r.complex = std::move(k);
  derive_from_complex(r);
  r.notes = std::move(notes);
  if (jones) {
    r.jones = std::move(jones);
    r.four_v3 = v3_from_jones(*r.jones).four_v3;
    r.notes.push_back("Jones polynomial stored as input data; 4v3 derived from it");
  }
  return r;
}

// HFK of the genus-1 nearly fibered knots other than 5_2 and its mirror is
// known, but their full plane models have undetermined diagonal arrows, so
// these ship as partial records: HFK shape, profile (4, 0), V_0 = 0, and the
// finite-type data where a Jones polynomial is on record.
KnotRecord nearly_fibered_record(const std::string& name,
                                 std::map<std::pair<long, long>, long> hfk,
                                 const LaurentPolynomial& alexander, std::optional<Rational> four_v3,
                                 std::vector<std::string> notes) {
  KnotRecord r;
  r.name = name;
  r.genus = 1;
  r.alexander = alexander;
  r.hfk = std::move(hfk);
  r.four_v3 = four_v3;
  r.four_v3_mirror_ambiguous = four_v3.has_value();
  r.stored_profile = DimensionProfile{4, 0};
  r.stored_v0 = 0;
  r.notes = std::move(notes);
  r.notes.push_back("profile (4,0): 1-surgery and -1-surgery both have dim HF-hat = 5");
  r.notes.push_back("V_0 = 0: d of +1-surgery vanishes for these knots");
  return r;
}

std::optional<long> parse_pretzel(const std::string& name) {
  // names  P-3,3,<k>  for the pretzel family P(-3, 3, k)
  const std::string prefix = "P-3,3,";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  try {
    size_t used = 0;
    long k = std::stol(name.substr(prefix.size()), &used);
    if (used != name.size() - prefix.size()) return std::nullopt;
    return k;
  } catch (...) {
    return std::nullopt;
  }
}

KnotRecord pretzel_record(long k) {
  KnotRecord r;
  r.name = "P-3,3," + std::to_string(k);
  if (k % 2 == 0) {
    // genus 2, Alexander polynomial f_2, Jones polynomial in closed form
    long n = k / 2;
    r.genus = 2;
    r.alexander = f_family(2);
    r.jones = jones_pretzel(n);
    r.four_v3 = v3_from_jones(*r.jones).four_v3;
    r.notes = {"Alexander polynomial f_2 = t^2 - 2t + 3 - 2/t + 1/t^2 for the even pretzel family",
               "Jones polynomial from the skein-relation closed form q^{-2n} V_{P(-3,3,0)} + (1 - q^{-2n})"};
  } else {
    // genus-1 nearly fibered member
    r = nearly_fibered_record(r.name, {{{1, 1}, 2}, {{0, 0}, 5}, {{-1, -1}, 2}},
                              poly({{1, -2}, {0, 5}, {-1, -2}}), std::nullopt,
                              {"HFK from the classification of genus-1 knots with dim HFK(K,1) = 2"});
    r.name = "P-3,3," + std::to_string(k);
  }
  return r;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "15n43522", "4_1", "5_2", "T-2_3", "T2_3", "Wh+T2_3_2", "Wh-T2_3_2", "m5_2", "unknot",
  };
  return names;
}

bool catalog_has(const std::string& name) {
  if (parse_pretzel(name)) return true;
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

KnotRecord get_record(const std::string& name, const std::string& override_dir) {
  if (!override_dir.empty()) {
    std::filesystem::path p = std::filesystem::path(override_dir) / (name + ".json");
    if (std::filesystem::exists(p)) return ingest(p.string());
  }
  // Jones polynomials follow the convention in which this 5_2 (the one with
  // sigma = +2) has V = 1/q - 1/q^2 + 2/q^3 - 1/q^4 + 1/q^5 - 1/q^6, so
  // positive knots carry positive exponents and mirroring inverts q.
  if (name == "unknot") return full_record(complex_unknot(), {"trivial complex"}, poly({{0, 1}}));
  if (name == "T2_3")
    return full_record(complex_trefoil_right(), {"standard genus-1 staircase model"},
                       poly({{4, -1}, {3, 1}, {1, 1}}));
  if (name == "T-2_3")
    return full_record(complex_trefoil_left(), {"mirror staircase model"},
                       poly({{-4, -1}, {-3, 1}, {-1, 1}}));
  if (name == "4_1")
    return full_record(complex_figure_eight(), {"standard thin square-plus-dot model"},
                       poly({{2, 1}, {1, -1}, {0, 1}, {-1, -1}, {-2, 1}}));
  if (name == "5_2")
    return full_record(complex_5_2(), {"thin plane model for the twist knot 5_2 (sigma = 2)"},
                       poly({{-1, 1}, {-2, -1}, {-3, 2}, {-4, -1}, {-5, 1}, {-6, -1}}));
  if (name == "m5_2")
    return full_record(complex_m5_2(), {"thin plane model for the mirror twist knot (sigma = -2)"},
                       poly({{1, 1}, {2, -1}, {3, 2}, {4, -1}, {5, 1}, {6, -1}}));
  if (name == "15n43522")
    return nearly_fibered_record(
        "15n43522", {{{1, 0}, 2}, {{0, -1}, 4}, {{0, 0}, 1}, {{-1, -2}, 2}},
        poly({{1, 2}, {0, -3}, {-1, 2}}), Rational(7),
        {"HFK from the classification of genus-1 knots with dim HFK(K,1) = 2",
         "4 v3 = +-7, sign depending on the mirror; both signs are considered by the obstruction tests"});
  if (name == "Wh-T2_3_2")
    return nearly_fibered_record(
        "Wh-T2_3_2", {{{1, 0}, 2}, {{0, -1}, 4}, {{0, 0}, 1}, {{-1, -2}, 2}},
        poly({{1, 2}, {0, -3}, {-1, 2}}), Rational(1),
        {"negatively-clasped double of the trefoil",
         "4 v3 = +-1, sign depending on the mirror; both signs are considered by the obstruction tests"});
  if (name == "Wh+T2_3_2")
    return nearly_fibered_record("Wh+T2_3_2",
                                 {{{1, -1}, 2}, {{0, -2}, 4}, {{0, 0}, 1}, {{-1, -3}, 2}},
                                 poly({{1, -2}, {0, 5}, {-1, -2}}), std::nullopt,
                                 {"positively-clasped double of the trefoil"});
  if (auto k = parse_pretzel(name)) return pretzel_record(*k);
  throw UnsupportedError("unknown knot: " + name);
}

KnotRecord record_from_complex(KnotComplex k) {
  KnotRecord r;
  r.name = k.name;
  r.complex = std::move(k);
  derive_from_complex(r);
  r.notes = {"user-supplied complex"};
  return r;
}

KnotRecord ingest(const std::string& path) {
  KnotComplex k = load_complex_file(path);
  ValidationReport rep = k.validate();
  if (!rep.valid())
    throw ValidationError("complex file " + path + " failed validation:\n" + rep.str());
  k.finalize();
  return record_from_complex(std::move(k));
}

std::map<std::pair<long, long>, long> KnotRecord::hfk_dims() const {
  if (complex) return complex->hfk_hat();
  if (hfk) return *hfk;
  throw UnsupportedError("no HFK data stored for " + name);
}

}  // namespace hfs
