#include "hfsurgery/u_module.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

UModule UModule::anchored(const Rational& d) const {
  UModule r = *this;
  Rational delta = d - tower_bottom;
  r.tower_bottom = d;
  for (auto& t : r.torsion) t.bottom += delta;
  r.absolute = true;
  return r;
}

UModule UModule::relative_normal_form() const {
  UModule r = anchored(Rational(0));
  r.absolute = false;
  return r;
}

bool UModule::same_relative(const UModule& o) const {
  return relative_normal_form().torsion == o.relative_normal_form().torsion;
}

bool UModule::operator==(const UModule& o) const {
  return absolute == o.absolute && tower_bottom == o.tower_bottom && torsion == o.torsion;
}

std::vector<Rational> UModule::ker_u_gradings() const {
  std::vector<Rational> g{tower_bottom};
  for (const auto& t : torsion) g.push_back(t.bottom);
  return g;
}

std::string UModule::str() const {
  std::ostringstream os;
  os << "T+_(" << to_string(tower_bottom) << ")";
  // aggregate equal summands
  std::map<std::pair<Rational, long>, long> counts;
  for (const auto& t : torsion) counts[{t.bottom, t.length}]++;
  for (const auto& [key, n] : counts) {
    os << " + ";
    if (key.second == 1) {
      os << "Q";
      if (n > 1) os << "^" << n;
    } else {
      os << "(Q[U]/U^" << key.second << ")";
      if (n > 1) os << "^" << n;
    }
    os << "_(" << to_string(key.first) << ")";
  }
  if (!absolute) os << " [relative]";
  return os.str();
}

namespace {

// Reduce candidates against the echelon span, keeping independent ones.
// All vectors are homogeneous; determinism comes from candidate order.
std::vector<SparseVec> extend_basis(Echelon& span, const std::vector<SparseVec>& candidates) {
  std::vector<SparseVec> picked;
  for (const auto& v : candidates)
    if (span.add(v)) picked.push_back(v);
  return picked;
}

}  // namespace

std::vector<JordanBlock> jordan_blocks(const std::vector<Rational>& gradings, const SparseMatrix& n) {
  long dim = static_cast<long>(gradings.size());
  if (n.rows != dim || n.cols != dim) throw InternalError("jordan_blocks: shape mismatch");
  if (dim == 0) return {};

  // powers of the operator until it vanishes
  std::vector<SparseMatrix> powers{SparseMatrix::identity(dim)};
  while (!powers.back().is_zero()) {
    powers.push_back(n.compose(powers.back()));
    if (static_cast<long>(powers.size()) > dim + 1) throw InternalError("operator is not nilpotent");
  }
  long index = static_cast<long>(powers.size()) - 1;  // N^index == 0, N^{index-1} != 0

  // kernel bases of N^j for j = 1..index, as global vectors
  std::vector<std::vector<SparseVec>> kernels(static_cast<size_t>(index) + 1);
  for (long j = 1; j <= index; ++j) {
    auto red = reduce(powers[static_cast<size_t>(j)]);
    kernels[static_cast<size_t>(j)] = red.kernel;
  }

  struct Chain {
    SparseVec head;
    Rational head_grading;
    long length;
  };
  std::vector<Chain> chains;

  // span of ker(N^{j-1}) plus the depth-(l-j) elements of longer chains
  for (long j = index; j >= 1; --j) {
    Echelon span;
    if (j >= 2)
      for (const auto& v : kernels[static_cast<size_t>(j - 1)]) span.add(v);
    for (const auto& c : chains) {
      SparseVec v = c.head;
      for (long step = 0; step < c.length - j; ++step) v = n.apply(v);
      span.add(v);
    }
    auto heads = extend_basis(span, kernels[static_cast<size_t>(j)]);
    for (auto& h : heads) {
      // kernel vectors are homogeneous because every power of N is graded and
      // reduce() works per column of a graded matrix; verify anyway
      Rational g = gradings[static_cast<size_t>(h.begin()->first)];
      for (const auto& [i, v] : h) {
        (void)v;
        if (gradings[static_cast<size_t>(i)] != g)
          throw InternalError("jordan_blocks: non-homogeneous kernel vector");
      }
      chains.push_back({std::move(h), g, j});
    }
  }

  long total = 0;
  for (const auto& c : chains) total += c.length;
  if (total != dim) throw InternalError("jordan_blocks: block lengths do not add up");

  std::vector<JordanBlock> blocks;
  for (const auto& c : chains)
    blocks.push_back({c.head_grading - 2 * (c.length - 1), c.length});
  std::sort(blocks.begin(), blocks.end(), [](const JordanBlock& a, const JordanBlock& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.bottom < b.bottom;
  });
  return blocks;
}

UModule u_module_from_operator(const std::vector<Rational>& gradings, const SparseMatrix& nilpotent,
                               bool absolute) {
  auto blocks = jordan_blocks(gradings, nilpotent);
  if (blocks.empty()) throw InternalError("no tower: module is zero");
  if (blocks.size() > 1 && blocks[1].length == blocks[0].length)
    throw InternalError("tower is not the unique longest U-chain; truncation bound too small");
  UModule m;
  m.absolute = absolute;
  m.tower_bottom = blocks[0].bottom;
  for (size_t k = 1; k < blocks.size(); ++k) m.torsion.push_back({blocks[k].bottom, blocks[k].length});
  std::sort(m.torsion.begin(), m.torsion.end());
  return m;
}

}  // namespace hfs
