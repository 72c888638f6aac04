#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hfsurgery/chain_complex.hpp"
#include "hfsurgery/rational.hpp"

namespace hfs {

struct KnotGenerator {
  std::string id;
  long alexander = 0;
  long maslov = 0;
};

// d(from) contains coeff * U^{u_power} * to. The generator x sits at lattice
// position (i,j) = (0, alexander(x)); U^n x sits at (-n, alexander(x) - n).
struct KnotArrow {
  std::string from;
  std::string to;
  long u_power = 0;
  Rational coeff;
};

struct ValidationIssue {
  std::string code;    // short machine-readable tag
  std::string detail;
  bool structural = false;  // malformed data rather than a failed invariant
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
  bool structural_error() const;
  std::string str() const;
};

// Finite model of the full knot Floer complex: generators of HFK-hat with
// exact rational arrows, plus the lattice-symmetry involution ("flip") that
// exchanges the two filtrations. The flip must be strict: conjugating the
// arrow set by it reproduces the arrow set exactly, up to a generator sign
// system which validation solves for (the canonical plane models need a -1
// on some fixed generators for the conjugated coefficients to match).
class KnotComplex {
 public:
  std::string name;
  std::vector<KnotGenerator> generators;
  std::vector<KnotArrow> arrows;
  std::vector<std::pair<std::string, std::string>> flip;  // unordered pairs, fixed points as [x,x]

  ValidationReport validate() const;

  // Runs validate(); throws ValidationError on any issue, otherwise caches
  // index maps and the flip sign system. Operations below require this.
  void finalize();
  bool finalized() const { return finalized_; }

  long gen_count() const { return static_cast<long>(generators.size()); }
  long gen_index(const std::string& id) const;
  const KnotGenerator& gen(long k) const { return generators[static_cast<size_t>(k)]; }
  long flip_of(long k) const;
  const Rational& flip_sign(long k) const;

  // max alexander grading with a generator (0 for the trivial complex)
  long genus() const;
  long maslov_span() const;

  // (alexander, maslov) -> dimension
  std::map<std::pair<long, long>, long> hfk_hat() const;

  // Dual complex: arrows reversed with u_powers and coefficients kept,
  // gradings negated, flip transported. Result is finalized.
  KnotComplex mirror() const;

 private:
  bool finalized_ = false;
  std::map<std::string, long> index_;
  std::vector<long> flip_idx_;
  std::vector<Rational> flip_signs_;

  void collect_structural(ValidationReport& rep) const;
  friend struct FlipSolver;
};

struct RegionSpec {
  enum class Kind { APlus, AHat, BPlus, BHat, VerticalSlab, Box };
  Kind kind = Kind::BPlus;
  long s = 0;        // APlus / AHat / VerticalSlab parameter
  long i0 = 0, j0 = 0;  // Box corner

  static RegionSpec a_plus(long s) { return {Kind::APlus, s, 0, 0}; }
  static RegionSpec a_hat(long s) { return {Kind::AHat, s, 0, 0}; }
  static RegionSpec b_plus() { return {Kind::BPlus, 0, 0, 0}; }
  static RegionSpec b_hat() { return {Kind::BHat, 0, 0, 0}; }
  static RegionSpec vertical_slab(long s) { return {Kind::VerticalSlab, s, 0, 0}; }
  static RegionSpec box(long i0, long j0) { return {Kind::Box, 0, i0, j0}; }

  bool needs_truncation() const { return kind == Kind::APlus || kind == Kind::BPlus; }
};

// A finite subquotient of CFK-infinity spanned by lattice elements U^n x.
// elems[k] = (generator index, U-power n); gradings are maslov(x) - 2n.
struct ModelComplex {
  FiniteChainComplex cc;
  std::vector<std::pair<long, long>> elems;
  std::map<std::pair<long, long>, long> index;

  long find(long gen, long n) const;  // -1 when the element is not in the model
  // U as a degree -2 chain map on the model (elements falling out map to 0)
  ChainMap u_map() const;
};

// Spanned by the U^n x inside the region; for the infinite "+" regions a
// truncation bound N >= 1 keeps the window max(...) < N. Arrows with either
// endpoint outside are dropped, which is the induced subquotient
// differential for all regions used here.
ModelComplex subquotient(const KnotComplex& k, const RegionSpec& region, std::optional<long> trunc = {});

// The projection A^+_s -> B^+ on the common truncation.
ChainMap v_map(const KnotComplex& k, long s, long n, const ModelComplex& a, const ModelComplex& b);

// Project to {j >= s}, multiply by U^s, then apply the flip; lands in B^+.
ChainMap h_map(const KnotComplex& k, long s, long n, const ModelComplex& a, const ModelComplex& b);

}  // namespace hfs
