#pragma once

#include <string>
#include <vector>

#include "hfsurgery/chain_complex.hpp"
#include "hfsurgery/rational.hpp"

namespace hfs {

struct TorsionSummand {
  Rational bottom;  // grading of the generator killed by U
  long length = 1;  // Q[U]/U^length

  bool operator==(const TorsionSummand& o) const { return bottom == o.bottom && length == o.length; }
  bool operator<(const TorsionSummand& o) const {
    if (bottom != o.bottom) return bottom < o.bottom;
    return length < o.length;
  }
};

// The graded Q[U]-module T^+_(tower_bottom) + sum of Q[U]/U^{l_i} based at
// the recorded bottom gradings. "absolute" distinguishes honestly anchored
// gradings from the relative lift produced by the mapping cone.
struct UModule {
  bool absolute = false;
  Rational tower_bottom;
  std::vector<TorsionSummand> torsion;  // kept sorted

  long torsion_count() const { return static_cast<long>(torsion.size()); }
  long hf_hat_dim() const { return 1 + 2 * torsion_count(); }

  UModule anchored(const Rational& d) const;       // shift so tower_bottom == d
  UModule relative_normal_form() const;            // shift so tower_bottom == 0
  bool same_relative(const UModule& o) const;
  bool operator==(const UModule& o) const;         // graded equality, including anchoring state

  // All gradings in which ker(U) lives: the tower bottom plus every torsion bottom.
  std::vector<Rational> ker_u_gradings() const;

  std::string str() const;  // e.g. "T+_(0) + Q^2_(0)" with lengths as Q[U]/U^n
};

struct JordanBlock {
  Rational bottom;  // grading of U^{length-1} * head
  long length = 1;
};

// Decomposes a grading-homogeneous nilpotent operator of degree -2 into
// Jordan blocks with homogeneous chain bases. Returns blocks sorted by
// (length descending, bottom).
std::vector<JordanBlock> jordan_blocks(const std::vector<Rational>& gradings, const SparseMatrix& nilpotent);

// Interprets the block structure as tower + torsion. The tower is the unique
// longest block; a tie means the truncation used to build the module was too
// small, which is reported as InternalError.
UModule u_module_from_operator(const std::vector<Rational>& gradings, const SparseMatrix& nilpotent,
                               bool absolute);

}  // namespace hfs
