#include "hfsurgery/complex_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hfsurgery/errors.hpp"

namespace hfs {

namespace {

using nlohmann::json;

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

long require_int(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + field + "'");
  return j[field].get<long>();
}

std::string require_str(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(std::string("missing or non-string field '") + field + "'");
  return j[field].get<std::string>();
}

std::string json_escape(const std::string& s) {
  return json(s).dump();  // includes surrounding quotes
}

}  // namespace

KnotComplex parse_complex(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");

  KnotComplex k;
  k.name = require_str(j, "name");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw ParseError("missing 'generators' array");
  for (const auto& g : j["generators"])
    k.generators.push_back({require_str(g, "id"), require_int(g, "alexander"), require_int(g, "maslov")});
  if (!j.contains("arrows") || !j["arrows"].is_array()) throw ParseError("missing 'arrows' array");
  for (const auto& a : j["arrows"])
    k.arrows.push_back(
        {require_str(a, "from"), require_str(a, "to"), require_int(a, "u_power"),
         rational_from_string(require_str(a, "coeff"))});
  if (!j.contains("flip") || !j["flip"].is_array()) throw ParseError("missing 'flip' array");
  for (const auto& p : j["flip"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw ParseError("flip entries must be pairs of ids");
    k.flip.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return k;
}

KnotComplex load_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_complex(buf.str());
}

std::string serialize_complex(const KnotComplex& k) {
  auto gens = k.generators;
  std::sort(gens.begin(), gens.end(),
            [](const KnotGenerator& a, const KnotGenerator& b) { return a.id < b.id; });
  auto arrows = k.arrows;
  std::sort(arrows.begin(), arrows.end(), [](const KnotArrow& a, const KnotArrow& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.u_power < b.u_power;
  });
  std::vector<std::pair<std::string, std::string>> flip;
  for (auto [x, y] : k.flip) {
    if (y < x) std::swap(x, y);
    flip.emplace_back(x, y);
  }
  std::sort(flip.begin(), flip.end());

  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << json_escape(k.name) << ",\n";
  os << "  \"generators\": [\n";
  for (size_t i = 0; i < gens.size(); ++i)
    os << "    {\"id\": " << json_escape(gens[i].id) << ", \"alexander\": " << gens[i].alexander
       << ", \"maslov\": " << gens[i].maslov << "}" << (i + 1 < gens.size() ? "," : "") << "\n";
  os << "  ],\n";
  os << "  \"arrows\": [\n";
  for (size_t i = 0; i < arrows.size(); ++i)
    os << "    {\"from\": " << json_escape(arrows[i].from) << ", \"to\": " << json_escape(arrows[i].to)
       << ", \"u_power\": " << arrows[i].u_power << ", \"coeff\": \"" << to_string(arrows[i].coeff)
       << "\"}" << (i + 1 < arrows.size() ? "," : "") << "\n";
  os << "  ],\n";
  os << "  \"flip\": [\n";
  for (size_t i = 0; i < flip.size(); ++i)
    os << "    [" << json_escape(flip[i].first) << ", " << json_escape(flip[i].second) << "]"
       << (i + 1 < flip.size() ? "," : "") << "\n";
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace hfs
