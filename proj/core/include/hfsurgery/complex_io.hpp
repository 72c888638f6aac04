#pragma once

#include <string>

#include "hfsurgery/knot_complex.hpp"

namespace hfs {

// Text format for knot complexes: a JSON object with fields
//   name        string
//   generators  [{"id": str, "alexander": int, "maslov": int}, ...]
//   arrows      [{"from": str, "to": str, "u_power": int, "coeff": "p/q"}, ...]
//   flip        [[str, str], ...]     (fixed points as [x, x])
// Parsing accepts any ordering; serialize_complex emits the canonical form
// (generators sorted by id, arrows by (from, to, u_power), flip pairs with
// the lexicographically smaller id first, sorted; 2-space indent). Parsing
// followed by serializing is byte-identical on canonical input.

// Throws ParseError (with line/column info) on malformed text. The result is
// not validated; callers decide whether to validate or finalize.
KnotComplex parse_complex(const std::string& text);

KnotComplex load_complex_file(const std::string& path);

std::string serialize_complex(const KnotComplex& k);

}  // namespace hfs
