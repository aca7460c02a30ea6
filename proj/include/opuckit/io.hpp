#pragma once

// JSON input/output for the command-line tools.  Complex numbers are always
// serialized as [re, im] pairs in decimal text; rational functions in their
// canonical form (monic denominator, trailing zeros trimmed).  Input parsing
// is strict: unknown fields are rejected so that archived inputs stay
// unambiguous.

#include <fstream>
#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "opuckit/opuckit.hpp"

namespace opuckit::io {

using json = nlohmann::ordered_json;

inline constexpr const char* input_format_name = "opuckit-input";
inline constexpr int input_format_version = 1;

[[noreturn]] inline void parse_fail(const std::string& what) { raise(errc::parse, what); }

inline void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) parse_fail(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) parse_fail(where + ": unknown field '" + key + "'");
}

// ---- complex / polynomial / rational ----

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail(where + ": complex numbers are [re, im] pairs");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

inline json poly_to_json(const Poly& p) {
  json arr = json::array();
  for (const Complex& c : p) arr.push_back(to_json(c));
  return arr;
}

inline Poly poly_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where + ": expected a non-empty coefficient array");
  Poly p;
  for (const json& c : j) p.push_back(complex_from_json(c, where));
  return p;
}

inline json rational_to_json(const RationalFn& f) {
  return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

inline RationalFn rational_from_json(const json& j, const std::string& where) {
  require_keys(j, where, {"num", "den"});
  if (!j.contains("num") || !j.contains("den")) parse_fail(where + ": rational needs 'num' and 'den'");
  return RationalFn(poly_from_json(j["num"], where + ".num"), poly_from_json(j["den"], where + ".den"));
}

inline json blaschke_to_json(const BlaschkeProduct& b) {
  json zeros = json::array();
  for (const RootCluster& a : b.zeros())
    zeros.push_back(json{{"zero", to_json(a.z)}, {"multiplicity", a.multiplicity}});
  return json{{"unimodular_constant", to_json(b.unimodular_constant())}, {"zeros", zeros}, {"degree", b.degree()}};
}

// ---- disk functions ----

inline json diskfn_to_json(const DiskFn& f) {
  switch (f.kind()) {
    case FnKind::constant:
      return json{{"constant", to_json(f.constant_value())}};
    case FnKind::rational:
      return json{{"rational", rational_to_json(f.rational_fn())}};
    case FnKind::taylor: {
      json arr = json::array();
      for (const Complex& c : f.taylor_coeffs()) arr.push_back(to_json(c));
      return json{{"taylor", arr}};
    }
  }
  raise(errc::internal, "bad kind");
}

inline DiskFn diskfn_from_json(const json& j, const std::string& where) {
  require_keys(j, where, {"constant", "rational", "taylor"});
  const int have = static_cast<int>(j.contains("constant")) + static_cast<int>(j.contains("rational")) +
                   static_cast<int>(j.contains("taylor"));
  if (have != 1) parse_fail(where + ": exactly one of 'constant', 'rational', 'taylor' expected");
  if (j.contains("constant")) return DiskFn::constant(complex_from_json(j["constant"], where + ".constant"));
  if (j.contains("rational")) return DiskFn::rational(rational_from_json(j["rational"], where + ".rational"));
  Series s;
  if (!j["taylor"].is_array() || j["taylor"].empty()) parse_fail(where + ".taylor: expected a coefficient array");
  for (const json& c : j["taylor"]) s.push_back(complex_from_json(c, where + ".taylor"));
  return DiskFn::taylor(std::move(s));
}

// ---- measures ----

inline json measure_to_json(const CircleMeasure& mu) {
  json dens = json::array();
  for (double w : mu.density()) dens.push_back(w);
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) atoms.push_back(json{{"index", a.index}, {"mass", a.mass}});
  return json{{"n", mu.grid().size()}, {"density", json{{"samples", dens}}}, {"atoms", atoms}};
}

inline CircleMeasure measure_from_json(const json& j, const std::string& where) {
  require_keys(j, where, {"n", "density", "atoms"});
  if (!j.contains("n") || !j["n"].is_number_integer()) parse_fail(where + ": integer grid size 'n' required");
  const int n = j["n"].get<int>();
  GridPtr grid = UnitGrid::make(n);
  if (!j.contains("density")) parse_fail(where + ": 'density' required");
  const json& d = j["density"];
  require_keys(d, where + ".density", {"samples", "constant", "rational_weight"});
  const int have = static_cast<int>(d.contains("samples")) + static_cast<int>(d.contains("constant")) +
                   static_cast<int>(d.contains("rational_weight"));
  if (have != 1) parse_fail(where + ".density: exactly one of 'samples', 'constant', 'rational_weight' expected");
  std::vector<double> w(static_cast<size_t>(n), 0.0);
  if (d.contains("samples")) {
    const json& arr = d["samples"];
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
      parse_fail(where + ".density.samples: expected exactly n real samples");
    for (int i = 0; i < n; ++i) {
      if (!arr[static_cast<size_t>(i)].is_number()) parse_fail(where + ".density.samples: reals expected");
      w[static_cast<size_t>(i)] = arr[static_cast<size_t>(i)].get<double>();
    }
  } else if (d.contains("constant")) {
    if (!d["constant"].is_number()) parse_fail(where + ".density.constant: real expected");
    std::fill(w.begin(), w.end(), d["constant"].get<double>());
  } else {
    const RationalFn r = rational_from_json(d["rational_weight"], where + ".density.rational_weight");
    for (int i = 0; i < n; ++i) {
      const Complex v = r(grid->point(i));
      if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)))
        parse_fail(where + ".density.rational_weight: boundary values are not real");
      w[static_cast<size_t>(i)] = v.real();
    }
  }
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) parse_fail(where + ".atoms: expected an array");
    for (const json& a : j["atoms"]) {
      require_keys(a, where + ".atoms[]", {"index", "mass"});
      if (!a.contains("index") || !a.contains("mass")) parse_fail(where + ".atoms[]: 'index' and 'mass' required");
      atoms.push_back(Atom{a["index"].get<int>(), a["mass"].get<double>()});
    }
  }
  return CircleMeasure(grid, std::move(w), std::move(atoms));
}

// ---- input document ----

struct InputDocument {
  std::optional<SchurFn> schur;
  std::optional<CaratheodoryFn> caratheodory;
  std::optional<json> measure_payload;  // parsed lazily (grid comes from the file)
};

inline InputDocument parse_input(const json& j) {
  require_keys(j, "input", {"format", "version", "schur", "caratheodory", "measure"});
  if (!j.contains("format") || j["format"] != input_format_name)
    parse_fail("input: missing or unexpected 'format' (want \"" + std::string(input_format_name) + "\")");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != input_format_version)
    parse_fail("input: missing or unsupported 'version'");
  const int have = static_cast<int>(j.contains("schur")) + static_cast<int>(j.contains("caratheodory")) +
                   static_cast<int>(j.contains("measure"));
  if (have != 1) parse_fail("input: exactly one of 'schur', 'caratheodory', 'measure' expected");
  InputDocument doc;
  if (j.contains("schur")) doc.schur = SchurFn(diskfn_from_json(j["schur"], "schur"));
  if (j.contains("caratheodory")) doc.caratheodory = CaratheodoryFn(diskfn_from_json(j["caratheodory"], "caratheodory"));
  if (j.contains("measure")) doc.measure_payload = j["measure"];
  return doc;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io, "cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  return j;
}

// ---- report pieces ----

inline json szegofn_to_json(const SzegoFn& d, int max_coeffs = 64) {
  json taylor = json::array();
  const int m = std::min<int>(max_coeffs, static_cast<int>(d.taylor().size()));
  for (int k = 0; k < m; ++k) taylor.push_back(to_json(d.taylor()[static_cast<size_t>(k)]));
  return json{{"d0", d.d0()}, {"taylor", taylor}};
}

inline json opuc_to_json(const OpucBasis& b) {
  json phi = json::array();
  for (const auto& row : b.coefficients()) {
    json r = json::array();
    for (const Complex& c : row) r.push_back(to_json(c));
    phi.push_back(r);
  }
  json gamma = json::array();
  for (const Complex& g : b.verblunsky()) gamma.push_back(to_json(g));
  return json{{"phi_coefficients", phi}, {"verblunsky", gamma}};
}

inline json basis_to_json(const CanonicalBasis& b) {
  json out = opuc_to_json(b.opuc());
  json psi = json::array();
  for (int k = 1; k <= b.K(); ++k) {
    json col = json::array();
    const GridFunction& f = b.psi(k);
    for (int j = 0; j < f.size(); ++j) col.push_back(to_json(f.value_at(j)));
    psi.push_back(col);
  }
  out["psi_samples"] = psi;
  json atoms = json::array();
  for (int idx : b.atom_set()) atoms.push_back(idx);
  out["atom_set"] = atoms;
  return out;
}

inline json intersection_to_json(const IntersectionReport& rep) {
  json out;
  out["levels"] = rep.sizes;
  out["min_principal_angle"] = rep.min_principal_angle;
  if (rep.h0_residuals)
    out["h0_residuals"] = json{{"onto_phi_star", rep.h0_residuals->first}, {"onto_psi", rep.h0_residuals->second}};
  out["verdict"] = verdict_name(rep.verdict);
  return out;
}

inline json verdict_to_json(const PcontVerdict& v) {
  json out;
  out["szego"] = json{{"holds", v.szego_d.szego.holds},
                      {"integral", v.szego_d.szego.integral},
                      {"refinement_stable", v.szego_d.szego.refinement_stable}};
  out["d_in_pi"] = tribool_name(v.szego_d.d_in_pi);
  if (v.szego_d.I1) {
    out["witness_I1"] = blaschke_to_json(*v.szego_d.I1);
    out["witness_I2"] = blaschke_to_json(*v.szego_d.I2);
    out["identity_error"] = v.szego_d.identity_error;
    out["rational_series_mismatch"] = v.szego_d.rational_series_mismatch;
  }
  out["basis_criterion"] = intersection_to_json(v.basis_criterion);
  if (v.witness) {
    out["h0"] = json{{"norm", v.witness->norm},
                     {"residual_onto_phi_star", v.witness->residual_phi_star},
                     {"residual_onto_psi", v.witness->residual_psi},
                     {"i1_had_origin_zero", v.witness->i1_had_origin_zero},
                     {"max_psi_star_overlap", v.witness->max_psi_star_overlap},
                     {"phi0_star_overlap", v.witness->phi0_star_overlap}};
  }
  out["routes"] = json{{"outer_function", tribool_name(v.route_outer)},
                       {"subspace", tribool_name(v.route_subspace)},
                       {"witness", tribool_name(v.route_witness)}};
  out["agreement"] = v.agreement;
  out["overall"] = v.overall;
  return out;
}

}  // namespace opuckit::io
