#include "mpde/problem.hpp"

#include "mpde/errors.hpp"
#include "mpde/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace mpde {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError("problem file: " + what); }

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return from_double(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      bad(where + ": " + e.what());
    }
  }
  bad(where + " must be a number or a rational string");
}

// number, rational string, or [re, im]
ExactComplex complex_field(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2) bad(where + " must be [re, im]");
    return {rational_field(v[0], where), rational_field(v[1], where)};
  }
  return ExactComplex(rational_field(v, where));
}

int int_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where + " must be an integer");
  return v.get<int>();
}

BiPoly table_field(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be a list of [j, i, coef]");
  BiPoly out;
  for (auto& row : v) {
    if (!row.is_array() || row.size() != 3) bad(where + " entries must be [j, i, coef]");
    int j = int_field(row[0], where), i = int_field(row[1], where);
    if (j < 0 || i < 0) bad(where + " exponents must be nonnegative");
    out = out + BiPoly::monomial(j, i, complex_field(row[2], where));
  }
  return out;
}

RhsSpec rhs_field(const json& v) {
  if (!v.is_object()) bad("rhs must be an object");
  for (auto& [k, _] : v.items())
    if (k != "kind" && k != "payload") bad("unknown key rhs." + k);
  if (!v.contains("kind") || !v.contains("payload")) bad("rhs needs kind and payload");
  RhsSpec spec;
  std::string kind = v["kind"].get<std::string>();
  const json& payload = v["payload"];
  if (kind == "coeffs") {
    spec.kind = RhsSpec::Kind::coeffs;
    if (!payload.is_array()) bad("coeffs payload must be a list of [j, i, re, im]");
    for (auto& row : payload) {
      if (!row.is_array() || (row.size() != 4 && row.size() != 3)) bad("coeffs entries must be [j, i, re, im]");
      ExactComplex c(rational_field(row[2], "coeffs re"), row.size() == 4 ? rational_field(row[3], "coeffs im") : Rational(0));
      int j = int_field(row[0], "coeffs j"), i = int_field(row[1], "coeffs i");
      if (j < 0 || i < 0) bad("coeffs indices must be nonnegative");
      spec.coeffs.push_back({j, i, c});
    }
  } else if (kind == "rational") {
    spec.kind = RhsSpec::Kind::rational;
    if (!payload.is_object()) bad("rational payload must be {\"num\": ..., \"den\": ...}");
    for (auto& [k, _] : payload.items())
      if (k != "num" && k != "den") bad("unknown key rhs.payload." + k);
    spec.num = payload.contains("num") ? table_field(payload["num"], "num") : BiPoly();
    spec.den = payload.contains("den") ? table_field(payload["den"], "den") : BiPoly::constant(ExactComplex(1));
    if (spec.den.coeff(0, 0).is_zero()) throw PreconditionError("rational right-hand side: den(0,0) must be nonzero");
  } else {
    bad("rhs.kind must be \"coeffs\" or \"rational\"");
  }
  return spec;
}

}  // namespace

ProblemFile parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem file is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) bad("top level must be an object");
  static const std::set<std::string> known{"operator",   "m1",         "m2",   "rhs",       "rhs_role", "rhs_gevrey",
                                           "truncation", "directions", "direction", "mode", "arithmetic"};
  for (auto& [k, _] : doc.items())
    if (!known.count(k)) bad("unknown key '" + k + "'");
  if (!doc.contains("operator")) bad("missing 'operator'");

  ProblemFile pf;
  try {
    pf.operator_text = doc["operator"].get<std::string>();
    pf.op = parse_operator(pf.operator_text);
    if (doc.contains("m1")) pf.m1_text = doc["m1"].get<std::string>();
    if (doc.contains("m2")) pf.m2_text = doc["m2"].get<std::string>();
    pf.m1 = parse_moment(pf.m1_text);
    pf.m2 = parse_moment(pf.m2_text);
    if (doc.contains("rhs"))
      pf.rhs = rhs_field(doc["rhs"]);
    else
      bad("missing 'rhs'");
    if (doc.contains("rhs_role")) {
      auto role = doc["rhs_role"].get<std::string>();
      if (role == "g")
        pf.role = RhsRole::g;
      else if (role == "f")
        pf.role = RhsRole::f;
      else
        bad("rhs_role must be \"g\" or \"f\"");
    }
    if (doc.contains("rhs_gevrey")) {
      const auto& g = doc["rhs_gevrey"];
      if (!g.is_array() || g.size() != 2) bad("rhs_gevrey must be [t1, t2]");
      pf.t1 = rational_field(g[0], "rhs_gevrey");
      pf.t2 = rational_field(g[1], "rhs_gevrey");
    }
    if (doc.contains("truncation")) {
      const auto& t = doc["truncation"];
      if (!t.is_array() || t.size() != 2) bad("truncation must be [N1, N2]");
      pf.n1 = int_field(t[0], "truncation");
      pf.n2 = int_field(t[1], "truncation");
      if (pf.n1 < 0 || pf.n2 < 0) bad("truncation must be nonnegative");
    }
    for (const char* key : {"directions", "direction"}) {
      if (!doc.contains(key)) continue;
      const auto& d = doc[key];
      pf.directions.clear();
      if (d.is_number())
        pf.directions.push_back(d.get<double>());
      else if (d.is_array() && !d.empty())
        for (auto& x : d) {
          if (!x.is_number()) bad("directions must be numbers");
          pf.directions.push_back(x.get<double>());
        }
      else
        bad("directions must be a nonempty list of numbers");
    }
    if (doc.contains("mode")) {
      auto mode = doc["mode"].get<std::string>();
      if (mode == "direct")
        pf.mode = SolveMode::direct;
      else if (mode == "pseudo")
        pf.mode = SolveMode::pseudo;
      else
        bad("mode must be \"direct\" or \"pseudo\"");
    }
    if (doc.contains("arithmetic")) {
      auto a = doc["arithmetic"].get<std::string>();
      if (a != "float" && a != "exact") bad("arithmetic must be \"float\" or \"exact\"");
      pf.exact = a == "exact";
    }
  } catch (const json::type_error& e) {
    bad(std::string("wrong field type: ") + e.what());
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

}  // namespace mpde
