#include <doctest.h>

#include <algorithm>
#include <random>

#include "hfsurgery/chain_complex.hpp"
#include "hfsurgery/errors.hpp"
#include "hfsurgery/rational.hpp"
#include "hfsurgery/u_module.hpp"

using namespace hfs;

namespace {

SparseMatrix from_rows(long rows, long cols, std::initializer_list<std::initializer_list<long>> data) {
  SparseMatrix m(rows, cols);
  long r = 0;
  for (const auto& row : data) {
    long c = 0;
    for (long v : row) {
      if (v != 0) m.add_entry(r, c, Rational(v));
      ++c;
    }
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(to_string(rational_from_string("3/6")) == "1/2");
  CHECK(to_string(rational_from_string("-4/2")) == "-2");
  CHECK(to_string(rational_from_string("7")) == "7");
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string("a/b"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1.5"), ParseError);
  CHECK(floor_div(-3, 2) == -2);
  CHECK(floor_div(3, 2) == 1);
  CHECK(floor_div(-4, 2) == -2);
}

TEST_CASE("reduce: identity, zero, and the rank-one 2x2") {
  auto id = reduce(SparseMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.kernel.empty());

  auto zero = reduce(SparseMatrix(3, 3));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.size() == 3);

  // [[1,2],[2,4]]: second column is twice the first, so the kernel is
  // spanned by (-2, 1) and the rank is 1 (hand row-reduction)
  auto m = from_rows(2, 2, {{1, 2}, {2, 4}});
  auto r = reduce(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel.size() == 1);
  SparseVec expect{{0, Rational(-2)}, {1, Rational(1)}};
  CHECK(r.kernel[0] == expect);
}

TEST_CASE("reduce: kernel vectors are in the kernel, rank + nullity = cols") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    long rows = 1 + static_cast<long>(rng() % 6), cols = 1 + static_cast<long>(rng() % 6);
    SparseMatrix m(rows, cols);
    for (long c = 0; c < cols; ++c)
      for (long r = 0; r < rows; ++r)
        if (rng() % 3 == 0) m.add_entry(r, c, Rational(entry(rng)));
    auto red = reduce(m);
    CHECK(red.rank + static_cast<long>(red.kernel.size()) == cols);
    for (const auto& k : red.kernel) CHECK(m.apply(k).empty());
    CHECK(static_cast<long>(red.image.size()) == red.rank);
  }
}

namespace {

FiniteChainComplex two_step(long grading_top, std::initializer_list<std::pair<long, long>> arrows,
                            long top_count, long bottom_count) {
  FiniteChainComplex c;
  for (long i = 0; i < top_count; ++i) c.gens.push_back({"t" + std::to_string(i), Rational(grading_top)});
  for (long i = 0; i < bottom_count; ++i)
    c.gens.push_back({"b" + std::to_string(i), Rational(grading_top - 1)});
  c.d = SparseMatrix(c.dim(), c.dim());
  for (const auto& [from, to] : arrows) c.d.add_entry(top_count + to, from, Rational(1));
  return c;
}

}  // namespace

TEST_CASE("homology: basic computations") {
  FiniteChainComplex point;
  point.gens.push_back({"x", Rational(0)});
  point.d = SparseMatrix(1, 1);
  auto h = homology(point);
  CHECK(h.total_dim() == 1);
  CHECK(h.dim(Rational(0)) == 1);

  // x (grading 1) -> y (grading 0) kills everything
  auto pair = two_step(1, {{0, 0}}, 1, 1);
  CHECK(homology(pair).total_dim() == 0);
}

TEST_CASE("homology rejects a broken differential") {
  FiniteChainComplex c;
  c.gens = {{"a", Rational(2)}, {"b", Rational(1)}, {"c", Rational(0)}};
  c.d = SparseMatrix(3, 3);
  c.d.add_entry(1, 0, Rational(1));  // a -> b
  c.d.add_entry(2, 1, Rational(1));  // b -> c, so d^2(a) = c != 0
  CHECK_THROWS_AS(homology(c), ValidationError);

  FiniteChainComplex wrong_step;
  wrong_step.gens = {{"a", Rational(2)}, {"b", Rational(0)}};
  wrong_step.d = SparseMatrix(2, 2);
  wrong_step.d.add_entry(1, 0, Rational(1));
  CHECK_THROWS_AS(homology(wrong_step), ValidationError);
}

TEST_CASE("homology is independent of generator ordering") {
  // 5 generators, two cancelling pairs in mixed order
  FiniteChainComplex c;
  c.gens = {{"a", Rational(1)}, {"b", Rational(0)}, {"c", Rational(1)},
            {"d", Rational(0)}, {"e", Rational(0)}};
  c.d = SparseMatrix(5, 5);
  c.d.add_entry(1, 0, Rational(2));   // a -> 2b
  c.d.add_entry(3, 2, Rational(-1));  // c -> -d
  c.d.add_entry(1, 2, Rational(5));   // c -> 5b
  auto h1 = homology(c);

  std::vector<long> perm{4, 2, 0, 3, 1};
  FiniteChainComplex p;
  p.gens.resize(5);
  p.d = SparseMatrix(5, 5);
  std::vector<long> inv(5);
  for (long i = 0; i < 5; ++i) inv[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
  for (long i = 0; i < 5; ++i) p.gens[static_cast<size_t>(i)] = c.gens[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  for (long j = 0; j < 5; ++j)
    for (const auto& [i, v] : c.d.col[static_cast<size_t>(j)])
      p.d.add_entry(inv[static_cast<size_t>(i)], inv[static_cast<size_t>(j)], v);
  CHECK(homology(p) == h1);
}

TEST_CASE("euler characteristic of homology matches the chain groups") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    // random two-step complex: any matrix between adjacent gradings is a complex
    long top = 1 + static_cast<long>(rng() % 4), bot = 1 + static_cast<long>(rng() % 4);
    FiniteChainComplex c;
    for (long i = 0; i < top; ++i) c.gens.push_back({"t" + std::to_string(i), Rational(1)});
    for (long i = 0; i < bot; ++i) c.gens.push_back({"b" + std::to_string(i), Rational(0)});
    c.d = SparseMatrix(c.dim(), c.dim());
    for (long j = 0; j < top; ++j)
      for (long i = 0; i < bot; ++i)
        if (rng() % 2) c.d.add_entry(top + i, j, Rational(static_cast<long>(rng() % 5) - 2));
    auto h = homology(c);
    CHECK(h.dim(Rational(1)) - h.dim(Rational(0)) == top - bot);
  }
}

TEST_CASE("induced maps: identity, zero, composition") {
  auto c = two_step(1, {{0, 0}}, 2, 1);  // t0 -> b0, t1 free
  HomologyData h(c);
  CHECK(h.dim() == 1);  // [t1]

  ChainMap id{&c, &c, Rational(0), SparseMatrix::identity(c.dim())};
  auto m = induced_map(id, h, h);
  CHECK(m.get(0, 0) == 1);

  ChainMap zero{&c, &c, Rational(0), SparseMatrix(c.dim(), c.dim())};
  CHECK(induced_map(zero, h, h).is_zero());

  // composition: induced(f g) = induced(f) induced(g) on a small example
  ChainMap twice{&c, &c, Rational(0), SparseMatrix::identity(c.dim())};
  for (auto& col : twice.mat.col)
    for (auto& [r, v] : col) v *= 2;
  auto m2 = induced_map(twice, h, h);
  auto composed = induced_map(ChainMap{&c, &c, Rational(0), twice.mat.compose(twice.mat)}, h, h);
  CHECK(composed.equals(m2.compose(m2)));
}

TEST_CASE("induced_map rejects non-chain maps") {
  auto c = two_step(1, {{0, 0}}, 1, 1);
  HomologyData h(c);
  SparseMatrix bad(c.dim(), c.dim());
  bad.add_entry(1, 0, Rational(1));  // degree -1 "map" that is not a chain map here
  ChainMap f{&c, &c, Rational(0), bad};
  CHECK_THROWS_AS(induced_map(f, h, h), ValidationError);
}

TEST_CASE("jordan blocks of graded nilpotent operators") {
  // single chain of length 3 in gradings 4, 2, 0
  std::vector<Rational> g{Rational(4), Rational(2), Rational(0)};
  SparseMatrix n(3, 3);
  n.add_entry(1, 0, Rational(1));
  n.add_entry(2, 1, Rational(1));
  auto blocks = jordan_blocks(g, n);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].length == 3);
  CHECK(blocks[0].bottom == Rational(0));

  // chain of length 2 plus a loose generator in the same gradings
  std::vector<Rational> g2{Rational(2), Rational(0), Rational(0)};
  SparseMatrix n2(3, 3);
  n2.add_entry(1, 0, Rational(3));
  auto b2 = jordan_blocks(g2, n2);
  REQUIRE(b2.size() == 2);
  CHECK(b2[0].length == 2);
  CHECK(b2[0].bottom == Rational(0));
  CHECK(b2[1].length == 1);
  CHECK(b2[1].bottom == Rational(0));

  UModule um = u_module_from_operator(g2, n2, true);
  CHECK(um.tower_bottom == Rational(0));
  REQUIRE(um.torsion.size() == 1);
  CHECK(um.torsion[0].length == 1);
  CHECK(um.hf_hat_dim() == 3);
}

TEST_CASE("tower extraction refuses a tie for the longest chain") {
  std::vector<Rational> g{Rational(2), Rational(0), Rational(2), Rational(0)};
  SparseMatrix n(4, 4);
  n.add_entry(1, 0, Rational(1));
  n.add_entry(3, 2, Rational(1));
  CHECK_THROWS_AS(u_module_from_operator(g, n, false), InternalError);
}

TEST_CASE("u module anchoring and relative comparison") {
  UModule a;
  a.tower_bottom = Rational(0);
  a.torsion = {{Rational(0), 1}};
  UModule b = a.anchored(Rational(-2));
  CHECK(b.absolute);
  CHECK(b.tower_bottom == Rational(-2));
  CHECK(b.torsion[0].bottom == Rational(-2));
  CHECK(a.same_relative(b));
  UModule c = a;
  c.torsion = {{Rational(1), 1}};
  CHECK(!a.same_relative(c));
}
