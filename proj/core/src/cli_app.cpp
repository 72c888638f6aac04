#include "hfsurgery/cli_app.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hfsurgery/catalog.hpp"
#include "hfsurgery/classical.hpp"
#include "hfsurgery/complex_io.hpp"
#include "hfsurgery/errors.hpp"
#include "hfsurgery/obstructions.hpp"
#include "hfsurgery/surgery.hpp"

namespace hfs {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "hfsurgery 0.1.0";
constexpr int kSchemaVersion = 1;

std::string catalog_override() {
  const char* env = std::getenv("HFSURGERY_CATALOG");
  return env ? env : "";
}

// A knot argument names either a bundled record or a complex file on disk.
KnotRecord resolve_knot(const std::string& arg) {
  if (std::filesystem::exists(arg) && std::filesystem::is_regular_file(arg)) return ingest(arg);
  return get_record(arg, catalog_override());
}

json poly_json(const LaurentPolynomial& p) {
  json a = json::array();
  for (const auto& [e, c] : p.coefficients()) a.push_back({e, to_string(c)});
  return a;
}

json module_json(const UModule& m) {
  json j;
  j["tower_bottom"] = to_string(m.tower_bottom);
  j["absolute"] = m.absolute;
  json t = json::array();
  for (const auto& s : m.torsion) t.push_back({{"bottom", to_string(s.bottom)}, {"length", s.length}});
  j["torsion"] = t;
  return j;
}

json document(const std::string& command, json inputs, json results, json provenance) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["tool"] = kToolVersion;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["results"] = std::move(results);
  doc["provenance"] = std::move(provenance);
  return doc;
}

json notes_json(const KnotRecord& r) {
  json p = json::array();
  for (const auto& n : r.notes) p.push_back(r.name + ": " + n);
  return p;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// ---- surgery ---------------------------------------------------------

void print_surgery_table(std::ostream& out, const KnotRecord& rec, const SurgeryResult& res) {
  out << "HF^+ of " << res.slope.str() << "-surgery on " << rec.name << "\n";
  for (size_t i = 0; i < res.spin_c.size(); ++i) {
    const auto& s = res.spin_c[i];
    out << "  spin-c " << i << ": ";
    if (s.module)
      out << s.module->str();
    else
      out << "(d and dimension only)";
    out << "  d = " << to_string(s.d) << "  dim HF-hat = " << s.hf_hat_dim << "\n";
  }
  out << "total dim HF-hat = " << res.total_hf_hat_dim() << "\n";
}

int cmd_surgery(const std::string& knot, const std::string& slope_text, bool table, std::ostream& out) {
  KnotRecord rec = resolve_knot(knot);
  SurgerySlope slope = SurgerySlope::parse(slope_text);
  if (!rec.complex)
    throw UnsupportedError("no full complex for " + rec.name + "; surgery needs one");
  SurgeryResult res = surger(*rec.complex, slope);
  if (table) {
    print_surgery_table(out, rec, res);
    return 0;
  }
  json spin = json::array();
  for (size_t i = 0; i < res.spin_c.size(); ++i) {
    const auto& s = res.spin_c[i];
    json e;
    e["i"] = i;
    if (s.module) e["module"] = module_json(*s.module);
    e["d"] = to_string(s.d);
    e["hf_hat_dim"] = s.hf_hat_dim;
    spin.push_back(std::move(e));
  }
  json results;
  results["plus_graded"] = res.plus_graded;
  results["spin_c"] = std::move(spin);
  results["total_hf_hat_dim"] = res.total_hf_hat_dim();
  emit(out, document("surgery", {{"knot", rec.name}, {"slope", slope.str()}}, std::move(results),
                     notes_json(rec)));
  return 0;
}

// ---- invariants ------------------------------------------------------

int cmd_invariants(const std::string& knot, bool table, std::ostream& out) {
  KnotRecord rec = resolve_knot(knot);
  json results;
  results["genus"] = rec.genus;
  if (rec.complex || rec.hfk) {
    json hfk = json::array();
    for (const auto& [am, d] : rec.hfk_dims())
      hfk.push_back({{"alexander", am.first}, {"maslov", am.second}, {"dim", d}});
    results["hfk"] = std::move(hfk);
  }
  results["alexander"] = poly_json(rec.alexander);
  LaurentPolynomial conway = conway_from_alexander(rec.alexander);
  results["conway"] = poly_json(conway);
  ConwayCoefficients ac = a_coefficients(conway);
  results["a2"] = to_string(ac.a2);
  results["a4"] = to_string(ac.a4);
  if (rec.jones) results["jones"] = poly_json(*rec.jones);
  if (rec.four_v3) {
    results["four_v3"] = to_string(*rec.four_v3);
    results["four_v3_mirror_ambiguous"] = rec.four_v3_mirror_ambiguous;
  }
  if (rec.stored_v0) results["v0"] = *rec.stored_v0;
  if (rec.complex) {
    VsHs t = vs_hs(*rec.complex);
    json v = json::object(), h = json::object();
    for (const auto& [s, val] : t.v) v[std::to_string(s)] = val;
    for (const auto& [s, val] : t.h) h[std::to_string(s)] = val;
    results["v_s"] = std::move(v);
    results["h_s"] = std::move(h);
  }
  bool have_profile = rec.complex.has_value() || rec.stored_profile.has_value();
  if (have_profile) {
    DimensionProfile p = r0_nu_hat(rec);
    results["profile"] = {{"r0_hat", p.r0_hat}, {"nu_hat", p.nu_hat}};
    results["class"] = to_string(classify_lspace(rec));
  }
  if (table) {
    out << "invariants of " << rec.name << "\n";
    out << "  genus " << rec.genus << "\n";
    out << "  alexander " << rec.alexander.str("t") << "\n";
    out << "  conway " << conway.str("z") << "  (a2 = " << to_string(ac.a2)
        << ", a4 = " << to_string(ac.a4) << ")\n";
    if (rec.jones) out << "  jones " << rec.jones->str("q") << "\n";
    if (rec.four_v3)
      out << "  4v3 = " << to_string(*rec.four_v3) << (rec.four_v3_mirror_ambiguous ? " (up to sign)" : "")
          << "\n";
    if (have_profile) {
      DimensionProfile p = r0_nu_hat(rec);
      out << "  profile (r0_hat, nu_hat) = (" << p.r0_hat << ", " << p.nu_hat << ")\n";
      out << "  class: " << to_string(classify_lspace(rec)) << "\n";
    }
    return 0;
  }
  emit(out, document("invariants", {{"knot", rec.name}}, std::move(results), notes_json(rec)));
  return 0;
}

// ---- obstruct --------------------------------------------------------

const std::vector<SurgerySlope>& obstruction_sweep() {
  static const std::vector<SurgerySlope> s = {{1, 1},  {-1, 1}, {2, 1},  {-2, 1}, {3, 1}, {-3, 1},
                                              {1, 2},  {-1, 2}, {3, 2},  {-3, 2}, {5, 1}, {7, 2}};
  return s;
}

json report_json(const ObstructionReport& rep) {
  json tests = json::array();
  for (const auto& t : rep.tests) {
    const char* o = t.outcome == ObstructionTest::Outcome::Pass    ? "pass"
                    : t.outcome == ObstructionTest::Outcome::Fire ? "fire"
                                                                  : "skipped";
    tests.push_back({{"name", t.name}, {"outcome", o}, {"witness", t.witness}});
  }
  return {{"slope", rep.slope.str()}, {"tests", std::move(tests)}, {"fires", rep.fires()}};
}

int cmd_obstruct(const std::string& a_name, const std::string& b_name, const std::string& slope_text,
                 bool table, std::ostream& out) {
  KnotRecord a = resolve_knot(a_name);
  KnotRecord b = resolve_knot(b_name);
  std::vector<SurgerySlope> slopes;
  if (slope_text == "sweep")
    slopes = obstruction_sweep();
  else
    slopes.push_back(SurgerySlope::parse(slope_text));
  json reports = json::array();
  for (const auto& s : slopes) reports.push_back(report_json(obstruct_pair(a, b, s)));
  if (table) {
    for (const auto& r : reports) {
      out << "slope " << r["slope"].get<std::string>() << (r["fires"].get<bool>() ? "  REFUTED" : "")
          << "\n";
      for (const auto& t : r["tests"])
        out << "  " << t["name"].get<std::string>() << ": " << t["outcome"].get<std::string>() << "  "
            << t["witness"].get<std::string>() << "\n";
    }
    return 0;
  }
  json prov = notes_json(a);
  for (const auto& n : notes_json(b)) prov.push_back(n);
  emit(out, document("obstruct",
                     {{"knot_a", a.name}, {"knot_b", b.name}, {"slope", slope_text}},
                     {{"reports", std::move(reports)}}, std::move(prov)));
  return 0;
}

// ---- catalog / validate ----------------------------------------------

int cmd_catalog(bool table, std::ostream& out) {
  json names = json::array();
  for (const auto& n : catalog_names()) names.push_back(n);
  json results;
  results["names"] = std::move(names);
  results["families"] = json::array({"P-3,3,<k>"});
  if (table) {
    for (const auto& n : catalog_names()) out << n << "\n";
    out << "P-3,3,<k>\n";
    return 0;
  }
  emit(out, document("catalog", json::object(), std::move(results), json::array()));
  return 0;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  KnotComplex k = parse_complex(buf.str());
  ValidationReport rep = k.validate();
  json issues = json::array();
  for (const auto& i : rep.issues)
    issues.push_back({{"code", i.code}, {"detail", i.detail}, {"structural", i.structural}});
  emit(out, document("validate", {{"file", path}},
                     {{"valid", rep.valid()}, {"issues", std::move(issues)}}, json::array()));
  return rep.valid() ? 0 : 3;
}

void print_usage(std::ostream& err) {
  err << "usage: hfsurgery <command> [args]\n"
      << "  surgery <knot> <p/q>          HF^+ of the surgery, per spin-c structure\n"
      << "  invariants <knot>             genus, polynomials, V_s/H_s, profile, class\n"
      << "  obstruct <A> <B> <p/q|sweep>  refutation tests for S^3_r(A) =~ S^3_r(B)\n"
      << "  catalog                       list bundled knots\n"
      << "  validate <file>               check a complex file\n"
      << "options: --table (human-readable output)\n"
      << "environment: HFSURGERY_CATALOG=<dir> overrides bundled records by <name>.json\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  bool table = false;
  for (const auto& a : raw_args) {
    if (a == "--table")
      table = true;
    else
      args.push_back(a);
  }
  try {
    if (args.empty()) {
      print_usage(err);
      return 2;
    }
    const std::string& cmd = args[0];
    if (cmd == "surgery" && args.size() == 3) return cmd_surgery(args[1], args[2], table, out);
    if (cmd == "invariants" && args.size() == 2) return cmd_invariants(args[1], table, out);
    if (cmd == "obstruct" && args.size() == 4)
      return cmd_obstruct(args[1], args[2], args[3], table, out);
    if (cmd == "catalog" && args.size() == 1) return cmd_catalog(table, out);
    if (cmd == "validate" && args.size() == 2) return cmd_validate(args[1], out);
    print_usage(err);
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hfs
