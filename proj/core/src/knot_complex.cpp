#include "hfsurgery/knot_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

bool ValidationReport::structural_error() const {
  for (const auto& i : issues)
    if (i.structural) return true;
  return false;
}

std::string ValidationReport::str() const {
  if (valid()) return "valid";
  std::ostringstream os;
  for (const auto& i : issues) os << (i.structural ? "error " : "invariant ") << i.code << ": " << i.detail << "\n";
  return os.str();
}

namespace {

struct ArrowKey {
  long from, to, u;
  bool operator<(const ArrowKey& o) const {
    if (from != o.from) return from < o.from;
    if (to != o.to) return to < o.to;
    return u < o.u;
  }
};

// arrow set keyed by (from, to, u_power) with accumulated coefficients
std::map<ArrowKey, Rational> arrow_table(const KnotComplex& k, const std::map<std::string, long>& index) {
  std::map<ArrowKey, Rational> t;
  for (const auto& a : k.arrows) {
    ArrowKey key{index.at(a.from), index.at(a.to), a.u_power};
    t[key] += a.coeff;
    if (t[key] == 0) t.erase(key);
  }
  return t;
}

// exact square root of a positive rational, if it exists
std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r <= 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace

// Solves for generator signs s with s(x)s(flip x) = 1 making the flip-conjugated
// differential match the stored one exactly. The constraints form a graph whose
// edges are either ratios s(y) = phi * s(x) (from matching arrow pairs) or
// inversions s(flip x) = 1/s(x); each component has a one-parameter solution
// space which is pinned by any non-tree constraint.
struct FlipSolver {
  const KnotComplex& k;
  const std::map<std::string, long>& index;
  const std::vector<long>& flip_idx;
  std::map<ArrowKey, Rational> table;

  std::vector<Rational> signs;   // s values (anchor-dependent during BFS)
  std::vector<int> exponent;     // s_i = anchor^{exponent_i} * signs_i, exponent in {+1,-1}
  std::vector<int> component;
  std::vector<std::string> failures;

  explicit FlipSolver(const KnotComplex& kc, const std::map<std::string, long>& idx,
                      const std::vector<long>& fidx)
      : k(kc), index(idx), flip_idx(fidx), table(arrow_table(kc, idx)) {}

  bool solve(std::vector<Rational>& out) {
    long n = k.gen_count();
    signs.assign(static_cast<size_t>(n), Rational(0));
    exponent.assign(static_cast<size_t>(n), 0);
    component.assign(static_cast<size_t>(n), -1);

    // neighbor edges: (other, phi, inverted): s_other = phi * s_x  or  phi / s_x
    struct Edge {
      long other;
      Rational phi;
      bool inverted;
    };
    std::vector<std::vector<Edge>> adj(static_cast<size_t>(n));
    for (const auto& [key, c] : table) {
      const auto& gf = k.gen(key.from);
      const auto& gt = k.gen(key.to);
      ArrowKey conj{flip_idx[static_cast<size_t>(key.from)], flip_idx[static_cast<size_t>(key.to)],
                    key.u + gf.alexander - gt.alexander};
      auto it = table.find(conj);
      if (it == table.end()) {
        failures.push_back("arrow " + gf.id + " -> " + gt.id +
                           " has no flip-conjugate arrow in the differential");
        continue;
      }
      // constraint: s(to)/s(from) = conj_coeff / coeff
      adj[static_cast<size_t>(key.from)].push_back({key.to, it->second / c, false});
      adj[static_cast<size_t>(key.to)].push_back({key.from, c / it->second, false});
    }
    for (long x = 0; x < n; ++x) {
      long fx = flip_idx[static_cast<size_t>(x)];
      adj[static_cast<size_t>(x)].push_back({fx, Rational(1), true});
    }
    if (!failures.empty()) return false;

    long comp_count = 0;
    for (long start = 0; start < n; ++start) {
      if (component[static_cast<size_t>(start)] >= 0) continue;
      long comp = comp_count++;
      std::optional<Rational> anchor_sq;  // required value of anchor^2
      std::vector<long> stack{start};
      component[static_cast<size_t>(start)] = comp;
      signs[static_cast<size_t>(start)] = 1;
      exponent[static_cast<size_t>(start)] = 1;
      std::vector<long> members;
      while (!stack.empty()) {
        long x = stack.back();
        stack.pop_back();
        members.push_back(x);
        Rational sx = signs[static_cast<size_t>(x)];
        int ex = exponent[static_cast<size_t>(x)];
        for (const auto& e : adj[static_cast<size_t>(x)]) {
          Rational sy;
          if (e.inverted)
            sy = e.phi / sx;
          else
            sy = e.phi * sx;
          int ey = e.inverted ? -ex : ex;
          long y = e.other;
          if (component[static_cast<size_t>(y)] < 0) {
            component[static_cast<size_t>(y)] = comp;
            signs[static_cast<size_t>(y)] = sy;
            exponent[static_cast<size_t>(y)] = ey;
            stack.push_back(y);
          } else {
            // consistency: anchor^ey_old * s_old == anchor^ey * sy
            int d = exponent[static_cast<size_t>(y)] - ey;
            Rational ratio = signs[static_cast<size_t>(y)] / sy;
            if (d == 0) {
              if (ratio != 1) {
                failures.push_back("flip sign constraints are inconsistent near " + k.gen(y).id);
                return false;
              }
            } else {
              // anchor^d = 1/ratio with d = +-2
              Rational needed = (d > 0) ? 1 / ratio : ratio;
              if (anchor_sq && *anchor_sq != needed) {
                failures.push_back("flip sign constraints are inconsistent near " + k.gen(y).id);
                return false;
              }
              anchor_sq = needed;
            }
          }
        }
      }
      Rational anchor(1);
      if (anchor_sq) {
        auto root = rational_sqrt(*anchor_sq);
        if (!root) {
          failures.push_back("flip sign system has no rational solution");
          return false;
        }
        anchor = *root;
      }
      for (long m : members) {
        Rational a = (exponent[static_cast<size_t>(m)] > 0) ? anchor : 1 / anchor;
        signs[static_cast<size_t>(m)] = a * signs[static_cast<size_t>(m)];
      }
    }

    // final verification of every constraint
    for (const auto& [key, c] : table) {
      const auto& gf = k.gen(key.from);
      const auto& gt = k.gen(key.to);
      ArrowKey conj{flip_idx[static_cast<size_t>(key.from)], flip_idx[static_cast<size_t>(key.to)],
                    key.u + gf.alexander - gt.alexander};
      auto it = table.find(conj);
      if (it == table.end() ||
          it->second != c * signs[static_cast<size_t>(key.to)] / signs[static_cast<size_t>(key.from)]) {
        failures.push_back("flip conjugation does not reproduce the arrow set at " + gf.id + " -> " + gt.id);
        return false;
      }
    }
    for (long x = 0; x < n; ++x) {
      long fx = flip_idx[static_cast<size_t>(x)];
      if (signs[static_cast<size_t>(x)] * signs[static_cast<size_t>(fx)] != 1) {
        failures.push_back("flip signs do not square to one at " + k.gen(x).id);
        return false;
      }
    }
    out = signs;
    return true;
  }
};

void KnotComplex::collect_structural(ValidationReport& rep) const {
  std::set<std::string> ids;
  for (const auto& g : generators) {
    if (!ids.insert(g.id).second)
      rep.issues.push_back({"duplicate-id", "generator id repeated: " + g.id, true});
    if (g.id.empty()) rep.issues.push_back({"empty-id", "generator with empty id", true});
  }
  for (const auto& a : arrows) {
    if (!ids.count(a.from)) rep.issues.push_back({"dangling-arrow", "unknown source: " + a.from, true});
    if (!ids.count(a.to)) rep.issues.push_back({"dangling-arrow", "unknown target: " + a.to, true});
    if (a.coeff == 0) rep.issues.push_back({"zero-coeff", "arrow " + a.from + " -> " + a.to, true});
    if (a.u_power < 0)
      rep.issues.push_back({"negative-u-power", "arrow " + a.from + " -> " + a.to, true});
  }
  std::map<std::string, std::string> fmap;
  for (const auto& [x, y] : flip) {
    if (!ids.count(x) || !ids.count(y)) {
      rep.issues.push_back({"dangling-flip", "flip pair [" + x + ", " + y + "]", true});
      continue;
    }
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
      auto it = fmap.find(a);
      if (it != fmap.end() && it->second != b)
        rep.issues.push_back({"flip-not-function", "generator appears in two flip pairs: " + a, true});
      fmap[a] = b;
      if (a == b) break;
    }
  }
  for (const auto& id : ids)
    if (!fmap.count(id)) rep.issues.push_back({"flip-incomplete", "no flip pair for: " + id, true});
}

ValidationReport KnotComplex::validate() const {
  ValidationReport rep;
  collect_structural(rep);
  if (rep.structural_error()) return rep;

  std::map<std::string, long> index;
  for (long i = 0; i < gen_count(); ++i) index[generators[static_cast<size_t>(i)].id] = i;
  std::vector<long> fidx(static_cast<size_t>(gen_count()), -1);
  for (const auto& [x, y] : flip) {
    fidx[static_cast<size_t>(index.at(x))] = index.at(y);
    fidx[static_cast<size_t>(index.at(y))] = index.at(x);
  }

  for (const auto& a : arrows) {
    const auto& gf = generators[static_cast<size_t>(index.at(a.from))];
    const auto& gt = generators[static_cast<size_t>(index.at(a.to))];
    if (a.u_power == 0 && gf.alexander == gt.alexander)
      rep.issues.push_back({"not-reduced", "arrow inside one lattice box: " + a.from + " -> " + a.to, false});
    if (gf.alexander < gt.alexander - a.u_power)
      rep.issues.push_back({"filtration", "arrow increases a filtration: " + a.from + " -> " + a.to, false});
    if (gf.maslov - 1 != gt.maslov - 2 * a.u_power)
      rep.issues.push_back(
          {"grading", "arrow does not drop the Maslov grading by 1: " + a.from + " -> " + a.to, false});
  }

  // d^2 = 0 after U-linear extension
  auto table = arrow_table(*this, index);
  std::map<ArrowKey, Rational> square;
  for (const auto& [k1, c1] : table)
    for (const auto& [k2, c2] : table) {
      if (k1.to != k2.from) continue;
      ArrowKey key{k1.from, k2.to, k1.u + k2.u};
      square[key] += c1 * c2;
      if (square[key] == 0) square.erase(key);
    }
  for (const auto& [key, c] : square) {
    (void)c;
    rep.issues.push_back({"d-squared",
                          "d^2 has a component " + gen(key.from).id + " -> U^" + std::to_string(key.u) +
                              " " + gen(key.to).id,
                          false});
    break;  // one witness is enough
  }

  // flip gradings and involution
  for (long x = 0; x < gen_count(); ++x) {
    long fx = fidx[static_cast<size_t>(x)];
    const auto& g = gen(x);
    const auto& h = gen(fx);
    if (h.alexander != -g.alexander)
      rep.issues.push_back({"flip-alexander", "alexander(flip " + g.id + ") != -alexander(" + g.id + ")", false});
    if (h.maslov != g.maslov - 2 * g.alexander)
      rep.issues.push_back({"flip-maslov", "maslov(flip " + g.id + ") != maslov(" + g.id + ") - 2a", false});
  }

  // HFK-hat symmetry, checkable independently of the flip pairing
  auto dims = hfk_hat();
  for (const auto& [am, d] : dims) {
    auto mirror_key = std::make_pair(-am.first, am.second - 2 * am.first);
    auto it = dims.find(mirror_key);
    if (it == dims.end() || it->second != d) {
      rep.issues.push_back({"hfk-symmetry", "dim HFK is not symmetric under (a,m) -> (-a, m-2a)", false});
      break;
    }
  }

  // strict conjugation symmetry of the differential
  if (std::none_of(rep.issues.begin(), rep.issues.end(),
                   [](const ValidationIssue& i) { return i.code == "d-squared" || i.code == "grading"; })) {
    FlipSolver solver(*this, index, fidx);
    std::vector<Rational> s;
    if (!solver.solve(s))
      for (const auto& f : solver.failures) rep.issues.push_back({"flip-symmetry", f, false});
  }
  return rep;
}

void KnotComplex::finalize() {
  ValidationReport rep = validate();
  if (!rep.valid()) throw ValidationError("complex '" + name + "' is invalid:\n" + rep.str());
  index_.clear();
  for (long i = 0; i < gen_count(); ++i) index_[generators[static_cast<size_t>(i)].id] = i;
  flip_idx_.assign(static_cast<size_t>(gen_count()), -1);
  for (const auto& [x, y] : flip) {
    flip_idx_[static_cast<size_t>(index_.at(x))] = index_.at(y);
    flip_idx_[static_cast<size_t>(index_.at(y))] = index_.at(x);
  }
  FlipSolver solver(*this, index_, flip_idx_);
  if (!solver.solve(flip_signs_)) throw InternalError("flip signs unsolvable after validation");
  finalized_ = true;
}

long KnotComplex::gen_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw InternalError("unknown generator id: " + id);
  return it->second;
}

long KnotComplex::flip_of(long k) const { return flip_idx_[static_cast<size_t>(k)]; }

const Rational& KnotComplex::flip_sign(long k) const { return flip_signs_[static_cast<size_t>(k)]; }

long KnotComplex::genus() const {
  long g = 0;
  for (const auto& gen : generators) g = std::max(g, gen.alexander);
  return g;
}

long KnotComplex::maslov_span() const {
  if (generators.empty()) return 0;
  long lo = generators[0].maslov, hi = generators[0].maslov;
  for (const auto& g : generators) {
    lo = std::min(lo, g.maslov);
    hi = std::max(hi, g.maslov);
  }
  return hi - lo;
}

std::map<std::pair<long, long>, long> KnotComplex::hfk_hat() const {
  std::map<std::pair<long, long>, long> dims;
  for (const auto& g : generators) dims[{g.alexander, g.maslov}]++;
  return dims;
}

KnotComplex KnotComplex::mirror() const {
  KnotComplex m;
  m.name = (name.rfind("mirror:", 0) == 0) ? name.substr(7) : "mirror:" + name;
  for (const auto& g : generators) m.generators.push_back({g.id, -g.alexander, -g.maslov});
  for (const auto& a : arrows) m.arrows.push_back({a.to, a.from, a.u_power, a.coeff});
  m.flip = flip;
  m.finalize();
  return m;
}

namespace {

// U-power window of generator a-grading `alex` inside the region; empty when
// lo > hi. The lattice position of U^n x is (i, j) = (-n, alex - n).
std::pair<long, long> region_window(const RegionSpec& r, long alex, std::optional<long> trunc) {
  switch (r.kind) {
    case RegionSpec::Kind::APlus: {
      long top = std::max(0L, alex - r.s);
      return {top - *trunc + 1, top};
    }
    case RegionSpec::Kind::BPlus:
      return {-*trunc + 1, 0};
    case RegionSpec::Kind::AHat: {
      long n = std::max(0L, alex - r.s);
      return {n, n};
    }
    case RegionSpec::Kind::BHat:
      return {0, 0};
    case RegionSpec::Kind::VerticalSlab:
      return (alex <= r.s) ? std::pair<long, long>{0, 0} : std::pair<long, long>{1, 0};
    case RegionSpec::Kind::Box:
      return (alex == r.j0 - r.i0) ? std::pair<long, long>{-r.i0, -r.i0} : std::pair<long, long>{1, 0};
  }
  throw InternalError("bad region kind");
}

std::string element_id(const KnotGenerator& g, long n) {
  if (n == 0) return g.id;
  return "U^" + std::to_string(n) + "." + g.id;
}

}  // namespace

long ModelComplex::find(long gen, long n) const {
  auto it = index.find({gen, n});
  return it == index.end() ? -1 : it->second;
}

ChainMap ModelComplex::u_map() const {
  SparseMatrix m(cc.dim(), cc.dim());
  for (long k = 0; k < cc.dim(); ++k) {
    auto [g, n] = elems[static_cast<size_t>(k)];
    long t = find(g, n + 1);
    if (t >= 0) m.col[static_cast<size_t>(k)][t] = 1;
  }
  return ChainMap{&cc, &cc, Rational(-2), std::move(m)};
}

ModelComplex subquotient(const KnotComplex& k, const RegionSpec& region, std::optional<long> trunc) {
  if (!k.finalized()) throw InternalError("subquotient requires a finalized complex");
  if (region.needs_truncation()) {
    if (!trunc) throw UnsupportedError("region is infinitely generated; a truncation bound is required");
    if (*trunc < 1) throw UnsupportedError("truncation bound must be >= 1");
  }
  ModelComplex m;
  for (long g = 0; g < k.gen_count(); ++g) {
    auto [lo, hi] = region_window(region, k.gen(g).alexander, trunc);
    for (long n = lo; n <= hi; ++n) {
      m.index[{g, n}] = static_cast<long>(m.elems.size());
      m.elems.emplace_back(g, n);
      m.cc.gens.push_back({element_id(k.gen(g), n), Rational(k.gen(g).maslov - 2 * n)});
    }
  }
  m.cc.d = SparseMatrix(m.cc.dim(), m.cc.dim());
  for (const auto& a : k.arrows) {
    long from = k.gen_index(a.from), to = k.gen_index(a.to);
    for (long idx = 0; idx < m.cc.dim(); ++idx) {
      auto [g, n] = m.elems[static_cast<size_t>(idx)];
      if (g != from) continue;
      long t = m.find(to, n + a.u_power);
      if (t >= 0) m.cc.d.add_entry(t, idx, a.coeff);
    }
  }
  m.cc.require_valid();
  return m;
}

ChainMap v_map(const KnotComplex& k, long s, long n, const ModelComplex& a, const ModelComplex& b) {
  (void)k;
  (void)s;
  (void)n;
  SparseMatrix mat(b.cc.dim(), a.cc.dim());
  for (long idx = 0; idx < a.cc.dim(); ++idx) {
    auto [g, up] = a.elems[static_cast<size_t>(idx)];
    if (up > 0) continue;  // i = -u < 0 projects to zero
    long t = b.find(g, up);
    if (t < 0) throw InternalError("v_map target missing; incompatible truncations");
    mat.col[static_cast<size_t>(idx)][t] = 1;
  }
  ChainMap f{&a.cc, &b.cc, Rational(0), std::move(mat)};
  f.require_chain_map();
  return f;
}

ChainMap h_map(const KnotComplex& k, long s, long n, const ModelComplex& a, const ModelComplex& b) {
  (void)n;
  SparseMatrix mat(b.cc.dim(), a.cc.dim());
  for (long idx = 0; idx < a.cc.dim(); ++idx) {
    auto [g, up] = a.elems[static_cast<size_t>(idx)];
    long alex = k.gen(g).alexander;
    if (alex - up < s) continue;  // j < s projects to zero
    long t = b.find(k.flip_of(g), up + s - alex);
    if (t < 0) throw InternalError("h_map target missing; incompatible truncations");
    mat.col[static_cast<size_t>(idx)][t] = k.flip_sign(g);
  }
  ChainMap f{&a.cc, &b.cc, Rational(-2 * s), std::move(mat)};
  f.require_chain_map();
  return f;
}

}  // namespace hfs
