#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hfsurgery/knot_complex.hpp"
#include "hfsurgery/laurent.hpp"
#include "hfsurgery/obstructions.hpp"

namespace hfs {

// A curated knot: a full complex where the plane model is determined, and
// stored invariants with provenance notes otherwise.
struct KnotRecord {
  std::string name;
  std::optional<KnotComplex> complex;
  long genus = 0;
  LaurentPolynomial alexander;
  std::optional<std::map<std::pair<long, long>, long>> hfk;  // (a, m) -> dim, when no complex
  std::optional<LaurentPolynomial> jones;
  std::optional<Rational> four_v3;
  bool four_v3_mirror_ambiguous = false;  // stored value determined only up to sign
  std::optional<DimensionProfile> stored_profile;
  std::optional<long> stored_v0;
  std::vector<std::string> notes;

  // HFK dimensions, from the complex when present, else the stored table.
  std::map<std::pair<long, long>, long> hfk_dims() const;
};

// Built-in names plus the P(-3,3,<k>) family pattern. A directory of complex
// files can override or extend the catalog: records are looked up there
// first (as <name>.json), which is what the HFSURGERY_CATALOG environment
// variable feeds in the command-line tool.
const std::vector<std::string>& catalog_names();

bool catalog_has(const std::string& name);

// Throws UnsupportedError for unknown names, ParseError/ValidationError for
// broken override files.
KnotRecord get_record(const std::string& name, const std::string& override_dir = "");

// Loads a complex file, validates it and derives genus and Alexander data.
KnotRecord ingest(const std::string& path);

KnotRecord record_from_complex(KnotComplex k);

}  // namespace hfs
