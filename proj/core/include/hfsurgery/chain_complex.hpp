#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfsurgery/rational.hpp"

namespace hfs {

// index -> coefficient, zero entries never stored
using SparseVec = std::map<long, Rational>;

void vec_axpy(SparseVec& y, const Rational& a, const SparseVec& x);  // y += a*x
SparseVec vec_scale(const SparseVec& x, const Rational& a);

struct SparseMatrix {
  long rows = 0;
  long cols = 0;
  std::vector<SparseVec> col;  // col[j]: row -> coefficient

  SparseMatrix() = default;
  SparseMatrix(long r, long c) : rows(r), cols(c), col(static_cast<size_t>(c)) {}
  static SparseMatrix identity(long n);

  void add_entry(long r, long c, const Rational& v);
  Rational get(long r, long c) const;
  SparseVec apply(const SparseVec& v) const;          // M * v
  SparseMatrix compose(const SparseMatrix& o) const;  // this * o
  bool is_zero() const;
  bool equals(const SparseMatrix& o) const;
};

// Incremental column echelon form with a fixed pivot rule (topmost nonzero
// row). Columns are normalized to unit pivots but not mutually reduced, so
// reduction against the stored columns terminates in one top-down sweep.
// Each stored column carries a caller-supplied tag vector; reducing a vector
// accumulates the tags of the columns used, which is how kernel vectors and
// homology-class coordinates are read off.
class Echelon {
 public:
  // Reduces v (and its tag) against the stored columns. If a nonzero residual
  // remains it is stored as a new column and true is returned.
  bool add(SparseVec v, SparseVec tag = {});

  // Expresses v over the stored columns. Returns (residual, combination),
  // where combination accumulates coefficient * tag of each column used.
  std::pair<SparseVec, SparseVec> reduce(SparseVec v) const;

  bool contains(const SparseVec& v) const { return reduce(v).first.empty(); }
  long size() const { return static_cast<long>(cols_.size()); }
  const SparseVec& column(long k) const { return cols_[static_cast<size_t>(k)].v; }
  const SparseVec& tag(long k) const { return cols_[static_cast<size_t>(k)].tag; }

 private:
  struct Col {
    SparseVec v;
    SparseVec tag;
    long pivot;
  };
  std::vector<Col> cols_;
  std::map<long, long> pivot_to_col_;
};

struct ReduceResult {
  long rank = 0;
  std::vector<SparseVec> kernel;               // basis of ker, source coordinates
  std::vector<SparseVec> image;                // echelon basis of im, target coordinates
  std::vector<std::pair<long, long>> pivots;   // (pivot row, source column)
};

// Fraction-free-ordered Gaussian elimination over Q: columns are processed
// left to right with topmost-row pivoting, so the output is deterministic.
ReduceResult reduce(const SparseMatrix& m);

struct GradedVectorSpace {
  std::map<Rational, long> dims;  // no zero entries

  void add(const Rational& grading, long count);
  long dim(const Rational& grading) const;
  long total_dim() const;
  bool operator==(const GradedVectorSpace& o) const { return dims == o.dims; }
  GradedVectorSpace shifted(const Rational& delta) const;
  std::string str() const;  // e.g. "Q^2_(0) + Q_(3/2)"
};

struct Generator {
  std::string id;
  Rational grading;
};

// A finite chain complex over Q. The differential is a square matrix in the
// generator basis; every nonzero entry drops the grading by exactly 1 and
// the matrix squares to zero.
struct FiniteChainComplex {
  std::vector<Generator> gens;
  SparseMatrix d;

  long dim() const { return static_cast<long>(gens.size()); }
  // Throws ValidationError if d^2 != 0 or some entry has grading step != -1.
  void require_valid() const;
};

GradedVectorSpace homology(const FiniteChainComplex& c);

// Homology with an explicit cycle-representative basis, built per grading so
// all representatives are homogeneous. Supports expressing any cycle's class
// in that basis (used for induced maps and the U-action).
class HomologyData {
 public:
  explicit HomologyData(const FiniteChainComplex& c);

  long dim() const { return static_cast<long>(reps_.size()); }
  const SparseVec& rep(long k) const { return reps_[static_cast<size_t>(k)]; }
  const Rational& grading(long k) const { return gradings_[static_cast<size_t>(k)]; }
  GradedVectorSpace graded_dims() const;

  // Coordinates of [cycle] in the representative basis. Throws InternalError
  // if the input is not a cycle of the underlying complex.
  SparseVec class_coords(const SparseVec& cycle) const;

 private:
  const FiniteChainComplex* c_;
  std::vector<SparseVec> reps_;
  std::vector<Rational> gradings_;
  std::map<Rational, Echelon> span_by_grading_;  // [boundaries | reps], reps tagged
  std::map<Rational, std::vector<long>> gens_by_grading_;
};

// A grading-homogeneous chain map between two complexes.
struct ChainMap {
  const FiniteChainComplex* dom = nullptr;
  const FiniteChainComplex* cod = nullptr;
  Rational shift;     // grading(f(x)) = grading(x) + shift
  SparseMatrix mat;   // cod.dim x dom.dim

  // Checks homogeneity and f d = d f exactly; throws ValidationError if not.
  void require_chain_map() const;
};

// Matrix of the induced map on homology in the given representative bases.
SparseMatrix induced_map(const ChainMap& f, const HomologyData& dom_h, const HomologyData& cod_h);

}  // namespace hfs
