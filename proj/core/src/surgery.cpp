#include "hfsurgery/surgery.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

SurgerySlope::SurgerySlope(long p_, long q_) {
  if (q_ < 0) {
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ == 0) throw ParseError("slope has zero denominator");
  if (p_ == 0) throw UnsupportedError("0-surgery is not supported");
  long g = gcd_long(p_, q_);
  p = p_ / g;
  q = q_ / g;
}

SurgerySlope SurgerySlope::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return SurgerySlope(std::stol(text), 1);
    return SurgerySlope(std::stol(text.substr(0, slash)), std::stol(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad slope: " + text);
  } catch (const std::out_of_range&) {
    throw ParseError("slope out of range: " + text);
  }
}

std::string SurgerySlope::str() const {
  if (q == 1) return std::to_string(p);
  return std::to_string(p) + "/" + std::to_string(q);
}

long default_truncation(const KnotComplex& k) {
  return 2 * k.genus() + k.maslov_span() + 4;
}

namespace {

// The finite window is a subcomplex of A^+_s (resp. B^+) whose quotient is
// supported in gradings >= 2N + min_x(maslov(x) - 2 top_n(x)), so homology
// classes strictly below that line are canonically classes of the full
// complex. Everything above it is discarded as window artifacts.
Rational trusted_bound(const KnotComplex& k, const RegionSpec& region, long n) {
  long delta_min = 0;
  bool first = true;
  for (long g = 0; g < k.gen_count(); ++g) {
    long top = (region.kind == RegionSpec::Kind::APlus)
                   ? std::max(0L, k.gen(g).alexander - region.s)
                   : 0L;
    long d = k.gen(g).maslov - 2 * top;
    if (first || d < delta_min) delta_min = d;
    first = false;
  }
  return Rational(2 * n + delta_min - 2);
}

// homology of a model together with its induced U operator, restricted to
// the trusted grading range
struct ModelHomology {
  ModelComplex model;
  std::unique_ptr<HomologyData> h;
  Rational guard;
  std::vector<long> trusted;        // rep indices with grading <= guard
  std::vector<long> trusted_index;  // rep index -> position in trusted, or -1
  std::vector<Rational> gradings;   // of the trusted classes
  SparseMatrix u_star;              // induced U on the trusted classes

  ModelHomology(ModelComplex m, const Rational& guard_) : model(std::move(m)), guard(guard_) {
    h = std::make_unique<HomologyData>(model.cc);
    trusted_index.assign(static_cast<size_t>(h->dim()), -1);
    for (long i = 0; i < h->dim(); ++i) {
      if (h->grading(i) <= guard) {
        trusted_index[static_cast<size_t>(i)] = static_cast<long>(trusted.size());
        trusted.push_back(i);
        gradings.push_back(h->grading(i));
      }
    }
    SparseMatrix full = induced_map(model.u_map(), *h, *h);
    u_star = SparseMatrix(dim(), dim());
    for (long j = 0; j < dim(); ++j)
      for (const auto& [r, c] : full.col[static_cast<size_t>(trusted[static_cast<size_t>(j)])]) {
        long tr = trusted_index[static_cast<size_t>(r)];
        if (tr < 0) throw InternalError("U leaves the trusted grading range");
        u_star.add_entry(tr, j, c);
      }
  }

  long dim() const { return static_cast<long>(trusted.size()); }
};

UModule a_plus_module_once(const KnotComplex& k, long s, long n) {
  RegionSpec region = RegionSpec::a_plus(s);
  ModelHomology mh(subquotient(k, region, n), trusted_bound(k, region, n));
  return u_module_from_operator(mh.gradings, mh.u_star, /*absolute=*/true);
}

struct TowerTop {
  long trusted_index;  // trusted-coordinate index of the top tower class
  Rational grading;
};

// The top of the truncated tower: the unique homology class at the maximal
// trusted grading. Deep enough in the window this grading is purely tower.
TowerTop tower_top(const ModelHomology& mh) {
  Rational best;
  bool have = false;
  long idx = -1, count = 0;
  for (long t = 0; t < mh.dim(); ++t) {
    const Rational& g = mh.gradings[static_cast<size_t>(t)];
    if (!have || g > best) {
      best = g;
      idx = t;
      count = 1;
      have = true;
    } else if (g == best) {
      ++count;
    }
  }
  if (!have) throw InternalError("tower_top: zero homology");
  if (count != 1) throw InternalError("tower_top: top grading not one-dimensional; raise truncation");
  return {idx, best};
}

// U-power by which a tower-to-tower map drops heights: apply the map to a
// tower class deep enough that its image stays in the codomain's trusted
// range, then compare heights above the two tower bottoms.
long tower_degree(const ModelHomology& dom, const UModule& dom_um, const ModelHomology& cod,
                  const UModule& cod_um, const SparseMatrix& star_full, const Rational& shift) {
  TowerTop top = tower_top(dom);
  // image grading is x.grading + shift and must stay within cod's range
  Rational safe = cod.guard - shift;
  if (dom.guard < safe) safe = dom.guard;
  SparseVec x;  // trusted coordinates in dom
  x[top.trusted_index] = 1;
  Rational grading = top.grading;
  while (grading > safe) {
    x = dom.u_star.apply(x);
    grading -= 2;
    if (x.empty()) throw InternalError("tower vanished before the safe grading; raise truncation");
  }
  // move to full rep coordinates and apply the induced map
  SparseVec x_full;
  for (const auto& [t, c] : x) x_full[dom.trusted[static_cast<size_t>(t)]] = c;
  SparseVec image = star_full.apply(x_full);
  if (image.empty()) throw InternalError("tower map vanished in the trusted range; raise truncation");
  Rational img_grading = grading + shift;
  for (const auto& [i, c] : image) {
    (void)c;
    if (cod.h->grading(i) != img_grading) throw InternalError("tower image is not homogeneous");
  }
  Rational drop = (grading - dom_um.tower_bottom) / 2 - (img_grading - cod_um.tower_bottom) / 2;
  long d = to_long(drop);
  if (d < 0) throw InternalError("negative tower degree");
  return d;
}

}  // namespace

UModule a_plus_homology(const KnotComplex& k, long s, std::optional<long> trunc) {
  if (!k.finalized()) throw InternalError("a_plus_homology requires a finalized complex");
  long n = trunc.value_or(default_truncation(k));
  UModule at_n = a_plus_module_once(k, s, n);
  UModule at_n1 = a_plus_module_once(k, s, n + 1);
  if (!(at_n == at_n1))
    throw InternalError("A^+ homology did not stabilize between truncations " + std::to_string(n) +
                        " and " + std::to_string(n + 1));
  return at_n;
}

VsHs vs_hs(const KnotComplex& k) {
  if (!k.finalized()) throw InternalError("vs_hs requires a finalized complex");
  long g = k.genus();
  long n = default_truncation(k);
  VsHs out;
  out.genus = g;
  ModelHomology b(subquotient(k, RegionSpec::b_plus(), n), trusted_bound(k, RegionSpec::b_plus(), n));
  UModule b_um = u_module_from_operator(b.gradings, b.u_star, true);
  if (!b_um.torsion.empty()) throw InternalError("B^+ homology has torsion");
  for (long s = -g - 1; s <= g + 1; ++s) {
    RegionSpec region = RegionSpec::a_plus(s);
    ModelHomology a(subquotient(k, region, n), trusted_bound(k, region, n));
    UModule a_um = u_module_from_operator(a.gradings, a.u_star, true);

    ChainMap v = v_map(k, s, n, a.model, b.model);
    out.v[s] = tower_degree(a, a_um, b, b_um, induced_map(v, *a.h, *b.h), v.shift);

    ChainMap h = h_map(k, s, n, a.model, b.model);
    out.h[s] = tower_degree(a, a_um, b, b_um, induced_map(h, *a.h, *b.h), h.shift);
  }
  return out;
}

long v_at(const VsHs& t, long s) {
  auto it = t.v.find(s);
  if (it != t.v.end()) return it->second;
  if (s >= t.genus) return 0;
  if (s <= -t.genus) return -s;
  throw InternalError("V_s not computed for s = " + std::to_string(s));
}

long h_at(const VsHs& t, long s) {
  auto it = t.h.find(s);
  if (it != t.h.end()) return it->second;
  return v_at(t, -s);
}

Rational lens_d(long p, long q, long i) {
  if (p == 1) return Rational(0);
  if (p < 1 || q < 1) throw UnsupportedError("lens_d requires positive p and q");
  if (gcd_long(p, q) != 1) throw UnsupportedError("lens_d requires coprime p and q");
  i = ((i % p) + p) % p;
  Rational num(2 * i + 1 - p - q);
  Rational term = num * num / (Rational(4) * p * q) - Rational(1, 4);
  return term - lens_d(q, p % q, i % q);
}

Rational d_invariant(const VsHs& table, const SurgerySlope& slope, long i) {
  if (slope.p <= 0) throw UnsupportedError("d_invariant needs a positive slope; use the mirror for p < 0");
  if (i < 0 || i >= slope.p) throw UnsupportedError("Spin^c label out of range");
  long vs = v_at(table, floor_div(i, slope.q));
  long hs = h_at(table, floor_div(i - slope.p, slope.q));
  return lens_d(slope.p, slope.q, i) - 2 * Rational(std::max(vs, hs));
}

Rational d_invariant(const KnotComplex& k, const SurgerySlope& slope, long i) {
  return d_invariant(vs_hs(k), slope, i);
}

UModule large_surgery(const KnotComplex& k, long trunc, long s) {
  long g = k.genus();
  if (trunc < 2 * g - 1) throw UnsupportedError("large surgery needs slope >= 2g-1");
  if (2 * std::labs(s) > trunc) throw UnsupportedError("|s| must be at most slope/2");
  return a_plus_homology(k, s);
}

UModule anchor_gradings(const UModule& relative, const Rational& d) { return relative.anchored(d); }

namespace {

struct ConeWindow {
  long lo, hi;
  std::map<long, Rational> delta_a;  // column grading offsets, degree -1 lift
  long spread;                       // (max delta - min delta) as an integer
};

ConeWindow cone_window(long genus, const SurgerySlope& slope, long i, long margin) {
  auto column_s = [&](long t) { return floor_div(i + slope.p * t, slope.q); };
  // window where neither v nor h is forced to be a quasi-isomorphism
  long lo = 0;
  while (column_s(lo) >= 1 - genus) --lo;
  ++lo;  // least t with floor >= 1-g
  long hi = 0;
  while (column_s(hi) <= genus - 1) ++hi;
  --hi;  // greatest t with floor <= g-1
  if (hi < lo) hi = lo;
  lo -= 1 + margin;
  hi += 1 + margin;

  ConeWindow w{lo, hi, {}, 0};
  w.delta_a[lo] = 0;
  Rational dmin(0), dmax(0);
  for (long t = lo; t < hi; ++t) {
    w.delta_a[t + 1] = w.delta_a[t] + 2 * column_s(t);
    if (w.delta_a[t + 1] < dmin) dmin = w.delta_a[t + 1];
    if (w.delta_a[t + 1] > dmax) dmax = w.delta_a[t + 1];
  }
  w.spread = to_long(dmax - dmin);
  return w;
}

// Per-call cache: the A/B models and the induced v/h matrices depend only on
// (s, n), so cone evaluations across Spin^c labels and stabilization depths
// share them. Local to one computation; no global state.
struct ConeCache {
  const KnotComplex* k;

  struct Column {
    std::unique_ptr<ModelHomology> a;
    SparseMatrix v_star, h_star;
  };
  std::map<long, std::unique_ptr<ModelHomology>> b_by_n;
  std::map<std::pair<long, long>, Column> col_by_sn;

  explicit ConeCache(const KnotComplex& kc) : k(&kc) {}

  ModelHomology& b(long n) {
    auto it = b_by_n.find(n);
    if (it == b_by_n.end()) {
      RegionSpec region = RegionSpec::b_plus();
      it = b_by_n
               .emplace(n, std::make_unique<ModelHomology>(subquotient(*k, region, n),
                                                           trusted_bound(*k, region, n)))
               .first;
    }
    return *it->second;
  }

  Column& column(long s, long n) {
    auto key = std::make_pair(s, n);
    auto it = col_by_sn.find(key);
    if (it == col_by_sn.end()) {
      RegionSpec region = RegionSpec::a_plus(s);
      Column col;
      col.a = std::make_unique<ModelHomology>(subquotient(*k, region, n), trusted_bound(*k, region, n));
      ModelHomology& bm = b(n);
      col.v_star = induced_map(v_map(*k, s, n, col.a->model, bm.model), *col.a->h, *bm.h);
      col.h_star = induced_map(h_map(*k, s, n, col.a->model, bm.model), *col.a->h, *bm.h);
      it = col_by_sn.emplace(key, std::move(col)).first;
    }
    return it->second;
  }
};

UModule cone_once(const KnotComplex& k, const SurgerySlope& slope, long spin_c, long n,
                  long window_margin, std::vector<ConeColumn>* diagnostics, ConeCache& cache);

UModule mapping_cone_cached(const KnotComplex& k, const SurgerySlope& slope, long spin_c,
                            std::optional<long> trunc, long window_margin,
                            std::vector<ConeColumn>* diagnostics, ConeCache& cache) {
  if (!k.finalized()) throw InternalError("mapping_cone requires a finalized complex");
  if (slope.p <= 0)
    throw UnsupportedError("mapping cone needs p > 0; compute on the mirror for negative slopes");
  if (trunc) return cone_once(k, slope, spin_c, *trunc, window_margin, diagnostics, cache);
  // default depth: the base bound plus half the column offset spread, so the
  // trusted range reaches below every column's torsion; then recompute one
  // step deeper and insist the answers agree
  ConeWindow w = cone_window(k.genus(), slope, spin_c, window_margin);
  long n = default_truncation(k) + (w.spread + 1) / 2;
  UModule at_n = cone_once(k, slope, spin_c, n, window_margin, diagnostics, cache);
  UModule at_n1 = cone_once(k, slope, spin_c, n + 1, window_margin, nullptr, cache);
  if (!at_n.same_relative(at_n1))
    throw InternalError("mapping cone did not stabilize between truncations " + std::to_string(n) +
                        " and " + std::to_string(n + 1));
  return at_n;
}

}  // namespace

UModule mapping_cone(const KnotComplex& k, const SurgerySlope& slope, long spin_c,
                     std::optional<long> trunc, long window_margin, std::vector<ConeColumn>* diagnostics) {
  ConeCache cache(k);
  return mapping_cone_cached(k, slope, spin_c, trunc, window_margin, diagnostics, cache);
}

namespace {

UModule cone_once(const KnotComplex& k, const SurgerySlope& slope, long spin_c, long n,
                  long window_margin, std::vector<ConeColumn>* diagnostics, ConeCache& cache) {
  long p = slope.p, q = slope.q, i = spin_c;
  long g = k.genus();

  auto column_s = [&](long t) { return floor_div(i + p * t, q); };

  ConeWindow window = cone_window(g, slope, i, window_margin);
  long lo = window.lo, hi = window.hi;

  ModelHomology& b = cache.b(n);
  auto a_at = [&](long t) -> ModelHomology& { return *cache.column(column_s(t), n).a; };

  // relative grading lift: column offsets chosen so the cone map has degree -1
  const std::map<long, Rational>& delta_a = window.delta_a;

  // kernel classes are only extracted below the least shifted guard, where
  // every column's homology agrees with the untruncated complex
  Rational trusted_cap = a_at(lo).guard + delta_a.at(lo);
  for (long t = lo; t <= hi; ++t) {
    Rational cap_a = a_at(t).guard + delta_a.at(t);
    if (cap_a < trusted_cap) trusted_cap = cap_a;
    if (t > lo) {
      Rational cap_b = b.guard + (delta_a.at(t) - 1) + 1;  // B column t sits one grading below A
      if (cap_b < trusted_cap) trusted_cap = cap_b;
    }
  }

  // global indexing of the trusted homology classes of the A columns
  std::vector<long> a_offset(static_cast<size_t>(hi - lo + 1));
  std::vector<long> b_offset(static_cast<size_t>(hi - lo + 1));  // B columns: lo+1 .. hi
  long a_total = 0, b_total = 0;
  for (long t = lo; t <= hi; ++t) {
    a_offset[static_cast<size_t>(t - lo)] = a_total;
    a_total += a_at(t).dim();
  }
  for (long t = lo + 1; t <= hi; ++t) {
    b_offset[static_cast<size_t>(t - lo)] = b_total;
    b_total += b.dim();
  }

  std::vector<Rational> a_grading(static_cast<size_t>(a_total));
  for (long t = lo; t <= hi; ++t) {
    const auto& mh = a_at(t);
    for (long r = 0; r < mh.dim(); ++r)
      a_grading[static_cast<size_t>(a_offset[static_cast<size_t>(t - lo)] + r)] =
          mh.gradings[static_cast<size_t>(r)] + delta_a.at(t);
  }

  // D_* on the trusted classes; entries out of the trusted B range can only
  // come from classes above trusted_cap, which are never used below
  SparseMatrix d_star(b_total, a_total);
  auto add_block = [&](const SparseMatrix& star_full, const ModelHomology& mh, long ca, long cb) {
    for (long j = 0; j < mh.dim(); ++j) {
      long full_j = mh.trusted[static_cast<size_t>(j)];
      for (const auto& [r, c] : star_full.col[static_cast<size_t>(full_j)]) {
        long tr = b.trusted_index[static_cast<size_t>(r)];
        if (tr < 0) {
          // image hit a window artifact; tolerated above the cap only
          if (a_grading[static_cast<size_t>(ca + j)] <= trusted_cap)
            throw InternalError("cone map left the trusted range below the cap");
          continue;
        }
        d_star.add_entry(cb + tr, ca + j, c);
      }
    }
  };
  for (long t = lo; t <= hi; ++t) {
    const auto& col = cache.column(column_s(t), n);
    long ca = a_offset[static_cast<size_t>(t - lo)];
    if (t > lo) add_block(col.v_star, *col.a, ca, b_offset[static_cast<size_t>(t - lo)]);
    if (t < hi) add_block(col.h_star, *col.a, ca, b_offset[static_cast<size_t>(t + 1 - lo)]);
  }

  // graded kernel of d_star below the cap: per-grading blocks keep the
  // kernel basis homogeneous and deterministic
  std::map<Rational, std::vector<long>> a_cols_by_grading;
  for (long j = 0; j < a_total; ++j)
    if (a_grading[static_cast<size_t>(j)] <= trusted_cap)
      a_cols_by_grading[a_grading[static_cast<size_t>(j)]].push_back(j);
  std::vector<SparseVec> kernel;
  std::vector<Rational> kernel_grading;
  for (const auto& [gamma, cols] : a_cols_by_grading) {
    SparseMatrix block(b_total, static_cast<long>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) block.col[j] = d_star.col[static_cast<size_t>(cols[j])];
    auto red = reduce(block);
    for (const auto& kv : red.kernel) {
      SparseVec global;
      for (const auto& [local, c] : kv) global[cols[static_cast<size_t>(local)]] = c;
      kernel.push_back(std::move(global));
      kernel_grading.push_back(gamma);
    }
  }

  // U restricted to the kernel
  SparseMatrix u_big(a_total, a_total);
  for (long t = lo; t <= hi; ++t) {
    const auto& mh = a_at(t);
    long ca = a_offset[static_cast<size_t>(t - lo)];
    for (long j = 0; j < mh.u_star.cols; ++j)
      for (const auto& [r, c] : mh.u_star.col[static_cast<size_t>(j)]) u_big.add_entry(ca + r, ca + j, c);
  }
  Echelon kernel_span;
  for (size_t j = 0; j < kernel.size(); ++j) {
    SparseVec tag;
    tag[static_cast<long>(j)] = 1;
    if (!kernel_span.add(kernel[j], tag)) throw InternalError("kernel basis is dependent");
  }
  SparseMatrix u_restricted(static_cast<long>(kernel.size()), static_cast<long>(kernel.size()));
  for (size_t j = 0; j < kernel.size(); ++j) {
    auto [residual, coords] = kernel_span.reduce(u_big.apply(kernel[j]));
    if (!residual.empty()) throw InternalError("U does not preserve ker(D)");
    u_restricted.col[j] = coords;
  }

  if (diagnostics) {
    diagnostics->clear();
    for (long t = lo; t <= hi; ++t) {
      const auto& mh = a_at(t);
      UModule um = u_module_from_operator(mh.gradings, mh.u_star, false);
      diagnostics->push_back({t, column_s(t), um.tower_bottom + delta_a.at(t)});
    }
  }

  return u_module_from_operator(kernel_grading, u_restricted, /*absolute=*/false);
}

}  // namespace

long SurgeryResult::total_hf_hat_dim() const {
  long t = 0;
  for (const auto& s : spin_c) t += s.hf_hat_dim;
  return t;
}

SurgeryResult surger(const KnotComplex& k, const SurgerySlope& slope) {
  if (!k.finalized()) throw InternalError("surger requires a finalized complex");
  SurgeryResult out;
  out.slope = slope;
  if (slope.p > 0) {
    out.plus_graded = true;
    VsHs table = vs_hs(k);
    ConeCache cache(k);
    for (long i = 0; i < slope.p; ++i) {
      UModule rel = mapping_cone_cached(k, slope, i, {}, 0, nullptr, cache);
      Rational d = d_invariant(table, slope, i);
      UModule abs = anchor_gradings(rel, d);
      out.spin_c.push_back({abs, d, abs.hf_hat_dim()});
    }
    return out;
  }
  // negative slope: d-invariants and dimensions through the mirror
  KnotComplex mirror = k.mirror();
  SurgerySlope positive(-slope.p, slope.q);
  VsHs table = vs_hs(mirror);
  ConeCache cache(mirror);
  out.plus_graded = false;
  for (long i = 0; i < positive.p; ++i) {
    UModule rel = mapping_cone_cached(mirror, positive, i, {}, 0, nullptr, cache);
    Rational d = -d_invariant(table, positive, i);
    out.spin_c.push_back({std::nullopt, d, rel.hf_hat_dim()});
  }
  return out;
}

}  // namespace hfs
