#include "hfsurgery/chain_complex.hpp"

#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

void vec_axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

SparseVec vec_scale(const SparseVec& x, const Rational& a) {
  SparseVec r;
  if (a == 0) return r;
  for (const auto& [i, v] : x) r.emplace_hint(r.end(), i, a * v);
  return r;
}

SparseMatrix SparseMatrix::identity(long n) {
  SparseMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.col[static_cast<size_t>(i)][i] = 1;
  return m;
}

void SparseMatrix::add_entry(long r, long c, const Rational& v) {
  auto& column = col[static_cast<size_t>(c)];
  auto it = column.find(r);
  if (it == column.end()) {
    if (v != 0) column.emplace(r, v);
  } else {
    it->second += v;
    if (it->second == 0) column.erase(it);
  }
}

Rational SparseMatrix::get(long r, long c) const {
  const auto& column = col[static_cast<size_t>(c)];
  auto it = column.find(r);
  return it == column.end() ? Rational(0) : it->second;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  SparseVec r;
  for (const auto& [j, c] : v) vec_axpy(r, c, col[static_cast<size_t>(j)]);
  return r;
}

SparseMatrix SparseMatrix::compose(const SparseMatrix& o) const {
  SparseMatrix r(rows, o.cols);
  for (long j = 0; j < o.cols; ++j) r.col[static_cast<size_t>(j)] = apply(o.col[static_cast<size_t>(j)]);
  return r;
}

bool SparseMatrix::is_zero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

bool SparseMatrix::equals(const SparseMatrix& o) const {
  return rows == o.rows && cols == o.cols && col == o.col;
}

bool Echelon::add(SparseVec v, SparseVec tag) {
  while (!v.empty()) {
    long r = v.begin()->first;
    auto it = pivot_to_col_.find(r);
    if (it == pivot_to_col_.end()) {
      Rational lead = v.begin()->second;
      Rational inv = 1 / lead;
      v = vec_scale(v, inv);
      tag = vec_scale(tag, inv);
      pivot_to_col_[r] = size();
      cols_.push_back({std::move(v), std::move(tag), r});
      return true;
    }
    const Col& c = cols_[static_cast<size_t>(it->second)];
    Rational coeff = v.begin()->second;
    vec_axpy(v, -coeff, c.v);
    vec_axpy(tag, -coeff, c.tag);
  }
  return false;
}

std::pair<SparseVec, SparseVec> Echelon::reduce(SparseVec v) const {
  SparseVec combo;
  SparseVec residual;
  while (!v.empty()) {
    long r = v.begin()->first;
    auto it = pivot_to_col_.find(r);
    if (it == pivot_to_col_.end()) {
      // this row can never be cleared: move it to the residual
      residual.emplace(r, v.begin()->second);
      v.erase(v.begin());
      continue;
    }
    const Col& c = cols_[static_cast<size_t>(it->second)];
    Rational coeff = v.begin()->second;
    vec_axpy(v, -coeff, c.v);
    vec_axpy(combo, coeff, c.tag);
  }
  return {std::move(residual), std::move(combo)};
}

ReduceResult reduce(const SparseMatrix& m) {
  ReduceResult out;
  Echelon ech;
  for (long j = 0; j < m.cols; ++j) {
    // combo = sum c_k tag_k with col_j - sum c_k col_k = residual, and the
    // tags are source-coordinate vectors, so an empty residual means
    // e_j - combo is a kernel vector.
    auto [residual, combo] = ech.reduce(m.col[static_cast<size_t>(j)]);
    if (residual.empty()) {
      SparseVec kernel_vec = vec_scale(combo, Rational(-1));
      auto it = kernel_vec.find(j);
      if (it == kernel_vec.end())
        kernel_vec.emplace(j, 1);
      else if ((it->second += 1) == 0)
        kernel_vec.erase(it);
      out.kernel.push_back(std::move(kernel_vec));
    } else {
      long pivot_row = residual.begin()->first;
      SparseVec tag;
      tag[j] = 1;
      ech.add(m.col[static_cast<size_t>(j)], tag);
      out.pivots.emplace_back(pivot_row, j);
    }
  }
  out.rank = ech.size();
  for (long k = 0; k < ech.size(); ++k) out.image.push_back(ech.column(k));
  return out;
}

void GradedVectorSpace::add(const Rational& grading, long count) {
  if (count == 0) return;
  auto it = dims.find(grading);
  if (it == dims.end()) {
    dims.emplace(grading, count);
  } else {
    it->second += count;
    if (it->second == 0) dims.erase(it);
  }
}

long GradedVectorSpace::dim(const Rational& grading) const {
  auto it = dims.find(grading);
  return it == dims.end() ? 0 : it->second;
}

long GradedVectorSpace::total_dim() const {
  long t = 0;
  for (const auto& [g, n] : dims) t += n;
  return t;
}

GradedVectorSpace GradedVectorSpace::shifted(const Rational& delta) const {
  GradedVectorSpace r;
  for (const auto& [g, n] : dims) r.dims.emplace(g + delta, n);
  return r;
}

std::string GradedVectorSpace::str() const {
  if (dims.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, n] : dims) {
    if (!first) os << " + ";
    first = false;
    os << "Q";
    if (n > 1) os << "^" << n;
    os << "_(" << to_string(g) << ")";
  }
  return os.str();
}

void FiniteChainComplex::require_valid() const {
  if (d.rows != dim() || d.cols != dim())
    throw ValidationError("differential has wrong shape");
  for (long j = 0; j < d.cols; ++j)
    for (const auto& [i, v] : d.col[static_cast<size_t>(j)]) {
      (void)v;
      if (gens[static_cast<size_t>(j)].grading - 1 != gens[static_cast<size_t>(i)].grading)
        throw ValidationError("differential entry does not drop grading by 1: " +
                              gens[static_cast<size_t>(j)].id + " -> " + gens[static_cast<size_t>(i)].id);
    }
  if (!d.compose(d).is_zero()) throw ValidationError("differential does not square to zero");
}

namespace {

std::map<Rational, std::vector<long>> group_by_grading(const FiniteChainComplex& c) {
  std::map<Rational, std::vector<long>> by;
  for (long i = 0; i < c.dim(); ++i) by[c.gens[static_cast<size_t>(i)].grading].push_back(i);
  return by;
}

// The block C_g -> C_{g-1} of the differential, in local coordinates.
SparseMatrix grading_block(const FiniteChainComplex& c, const std::vector<long>& src,
                           const std::map<long, long>& tgt_local) {
  SparseMatrix b(static_cast<long>(tgt_local.size()), static_cast<long>(src.size()));
  for (size_t j = 0; j < src.size(); ++j)
    for (const auto& [i, v] : c.d.col[static_cast<size_t>(src[j])]) {
      auto it = tgt_local.find(i);
      if (it == tgt_local.end()) throw InternalError("differential leaves grading block");
      b.col[j][it->second] = v;
    }
  return b;
}

}  // namespace

GradedVectorSpace homology(const FiniteChainComplex& c) {
  c.require_valid();
  GradedVectorSpace h;
  auto by = group_by_grading(c);
  for (const auto& [g, idx] : by) {
    std::map<long, long> below_local;
    auto it_below = by.find(g - 1);
    if (it_below != by.end())
      for (size_t k = 0; k < it_below->second.size(); ++k) below_local[it_below->second[k]] = static_cast<long>(k);
    auto r_out = reduce(grading_block(c, idx, below_local));
    long kernel_dim = static_cast<long>(r_out.kernel.size());

    long rank_in = 0;
    auto it_above = by.find(g + 1);
    if (it_above != by.end()) {
      std::map<long, long> here_local;
      for (size_t k = 0; k < idx.size(); ++k) here_local[idx[k]] = static_cast<long>(k);
      rank_in = reduce(grading_block(c, it_above->second, here_local)).rank;
    }
    h.add(g, kernel_dim - rank_in);
  }
  return h;
}

HomologyData::HomologyData(const FiniteChainComplex& c) : c_(&c) {
  c.require_valid();
  gens_by_grading_ = group_by_grading(c);
  for (const auto& [g, idx] : gens_by_grading_) {
    std::map<long, long> below_local;
    auto it_below = gens_by_grading_.find(g - 1);
    if (it_below != gens_by_grading_.end())
      for (size_t k = 0; k < it_below->second.size(); ++k)
        below_local[it_below->second[k]] = static_cast<long>(k);

    // cycles in grading g, in global coordinates
    auto red = reduce(grading_block(c, idx, below_local));
    std::vector<SparseVec> cycles;
    for (const auto& k : red.kernel) {
      SparseVec global;
      for (const auto& [local, v] : k) global[idx[static_cast<size_t>(local)]] = v;
      cycles.push_back(std::move(global));
    }

    // boundaries from grading g+1, in global coordinates
    Echelon& span = span_by_grading_[g];
    auto it_above = gens_by_grading_.find(g + 1);
    if (it_above != gens_by_grading_.end())
      for (long src : it_above->second) span.add(c.d.col[static_cast<size_t>(src)], {});

    for (auto& z : cycles) {
      SparseVec tag;
      tag[static_cast<long>(reps_.size())] = 1;
      if (span.add(z, tag)) {
        reps_.push_back(std::move(z));
        gradings_.push_back(g);
      }
    }
  }
}

GradedVectorSpace HomologyData::graded_dims() const {
  GradedVectorSpace g;
  for (const auto& grading : gradings_) g.add(grading, 1);
  return g;
}

SparseVec HomologyData::class_coords(const SparseVec& cycle) const {
  // split by grading; each homogeneous piece must be a cycle
  std::map<Rational, SparseVec> pieces;
  for (const auto& [i, v] : cycle) pieces[c_->gens[static_cast<size_t>(i)].grading][i] = v;
  SparseVec coords;
  for (const auto& [g, piece] : pieces) {
    auto it = span_by_grading_.find(g);
    if (it == span_by_grading_.end()) throw InternalError("class_coords: no cycles in this grading");
    auto [residual, combo] = it->second.reduce(piece);
    if (!residual.empty()) throw InternalError("class_coords: input is not a cycle");
    for (const auto& [k, v] : combo) {
      auto c = coords.find(k);
      if (c == coords.end())
        coords.emplace(k, v);
      else {
        c->second += v;
        if (c->second == 0) coords.erase(c);
      }
    }
  }
  return coords;
}

void ChainMap::require_chain_map() const {
  if (mat.cols != dom->dim() || mat.rows != cod->dim())
    throw ValidationError("chain map has wrong shape");
  for (long j = 0; j < mat.cols; ++j)
    for (const auto& [i, v] : mat.col[static_cast<size_t>(j)]) {
      (void)v;
      if (dom->gens[static_cast<size_t>(j)].grading + shift != cod->gens[static_cast<size_t>(i)].grading)
        throw ValidationError("chain map is not homogeneous of the stated shift");
    }
  if (!mat.compose(dom->d).equals(cod->d.compose(mat)))
    throw ValidationError("not a chain map: f d != d f");
}

SparseMatrix induced_map(const ChainMap& f, const HomologyData& dom_h, const HomologyData& cod_h) {
  f.require_chain_map();
  SparseMatrix out(cod_h.dim(), dom_h.dim());
  for (long k = 0; k < dom_h.dim(); ++k) {
    SparseVec image = f.mat.apply(dom_h.rep(k));
    out.col[static_cast<size_t>(k)] = cod_h.class_coords(image);
  }
  return out;
}

}  // namespace hfs
