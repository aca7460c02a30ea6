// Command-line front end: parse an input record, run one pipeline stage, and
// emit a report (JSON by default, or a readable text rendering).
//
// Exit codes: 0 success; 2 parse error; 3 precondition violation;
// 4 numerical degeneracy; 5 numerics failure; 6 I/O failure; 7 internal fault.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "opuckit/io.hpp"

using namespace opuckit;
using opuckit::io::json;

namespace {

struct JobSpec {
  std::string command;
  std::string input_path;
  int grid_n = 2048;
  int trunc_n = 32;
  int psi_k = 32;
  double tol = 1e-6;
  std::string out_path;  // empty = stdout
  std::string format = "json";

  void validate() const {
    if (grid_n < 256 || grid_n > 16384 || !is_pow2(grid_n))
      raise(errc::precondition, "--grid must be a power of two in [256, 16384]");
    if (trunc_n < 1 || trunc_n > 256) raise(errc::precondition, "--trunc must lie in [1, 256]");
    if (psi_k < 1 || psi_k > 256) raise(errc::precondition, "--psi must lie in [1, 256]");
    if (!(tol > 0.0)) raise(errc::precondition, "--tol must be positive");
    if (format != "json" && format != "text") raise(errc::precondition, "--format must be json or text");
  }
};

int series_order_for(const JobSpec& spec) { return std::min(256, spec.grid_n / 2 - 1); }

/// Resolve the input to the full triple (Schur, Caratheodory, measure).
struct Triple {
  SchurFn schur;
  CaratheodoryFn caratheodory;
  CircleMeasure measure;
};

Triple resolve_triple(const io::InputDocument& doc, const JobSpec& spec) {
  const int order = series_order_for(spec);
  if (doc.schur) {
    CaratheodoryFn phi = schur_to_caratheodory(*doc.schur, order);
    CircleMeasure mu = caratheodory_to_measure(phi, UnitGrid::make(spec.grid_n));
    return Triple{*doc.schur, std::move(phi), std::move(mu)};
  }
  if (doc.caratheodory) {
    SchurFn theta = caratheodory_to_schur(*doc.caratheodory);
    CircleMeasure mu = caratheodory_to_measure(*doc.caratheodory, UnitGrid::make(spec.grid_n));
    return Triple{std::move(theta), *doc.caratheodory, std::move(mu)};
  }
  CircleMeasure mu = io::measure_from_json(*doc.measure_payload, "measure");
  CaratheodoryFn phi = measure_to_caratheodory(mu, std::min(256, mu.grid().size() / 2 - 1));
  SchurFn theta = caratheodory_to_schur(phi);
  return Triple{std::move(theta), std::move(phi), std::move(mu)};
}

json run_triple(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  json out;
  out["schur"] = io::diskfn_to_json(t.schur.fn());
  out["caratheodory"] = io::diskfn_to_json(t.caratheodory.fn());
  out["measure"] = io::measure_to_json(t.measure);
  out["boundary_identity_deviation"] = boundary_identity_check(t.schur, t.caratheodory, t.measure.grid_ptr());
  return out;
}

json run_szego(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  const SzegoReport rep = szego_condition(t.measure);
  json out;
  out["szego"] = json{{"integral", rep.integral}, {"holds", rep.holds}, {"refinement_stable", rep.refinement_stable}};
  if (rep.holds) out["szego_function"] = io::szegofn_to_json(szego_function(t.measure, series_order_for(spec)));
  return out;
}

json run_opuc(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  const MomentTable mom = moments(t.measure, spec.trunc_n + 1);
  return io::opuc_to_json(szego_recursion(mom, spec.trunc_n));
}

json run_basis(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  const CanonicalBasis basis = make_canonical_basis(t.measure, spec.trunc_n, spec.psi_k, series_order_for(spec));
  json out = io::basis_to_json(basis);
  out["gram_identity_deviation"] = identity_deviation(family_gram(canonical_family(basis), t.measure));
  return out;
}

json run_colligation(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  const CanonicalBasis basis = make_canonical_basis(t.measure, spec.trunc_n, spec.psi_k, series_order_for(spec));
  const Colligation col = build_colligation(t.measure, basis);
  json out;
  out["N"] = col.N();
  out["K"] = col.K();
  out["basis_order"] = "[phi_1..phi_N, psi_1..psi_K, phi_0]";
  json rows = json::array();
  for (int i = 0; i < col.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < col.dim(); ++j) row.push_back(io::to_json(col.full()(i, j)));
    rows.push_back(row);
  }
  out["matrix"] = rows;
  out["S"] = io::to_json(col.S());
  out["tau"] = col.tau();
  json probes = json::array();
  for (Complex zeta : {Complex{0.3, 0.0}, Complex{0.0, 0.5}, Complex{-0.4, 0.0}}) {
    probes.push_back(json{{"zeta", io::to_json(zeta)}, {"value", io::to_json(characteristic_function(col, zeta))}});
  }
  out["characteristic_probes"] = probes;
  const SimplicityReport rep = verify_simplicity_spans(col, basis, t.measure);
  out["simplicity"] = json{{"controllability_residuals", rep.controllability_residuals},
                           {"observability_residuals", rep.observability_residuals},
                           {"psi_shift_deviation", rep.psi_shift_deviation}};
  return out;
}

json run_pcont(const io::InputDocument& doc, const JobSpec& spec) {
  Triple t = resolve_triple(doc, spec);
  PcontOptions opts;
  opts.N = spec.trunc_n;
  opts.K = spec.psi_k;
  opts.M = series_order_for(spec);
  opts.residual_tol = spec.tol;
  const int top = std::min(spec.trunc_n, spec.psi_k);
  opts.levels.clear();
  for (int L : {8, 16, 32})
    if (L <= top) opts.levels.push_back(L);
  if (opts.levels.empty() || opts.levels.back() != top) opts.levels.push_back(top);
  return io::verdict_to_json(full_verdict(t.schur, t.measure, opts));
}

void render_text(const json& j, std::ostream& os, int depth = 0) {
  const std::string pad(static_cast<size_t>(2 * depth), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && value.size() > 8)) {
        os << pad << key << ":\n";
        render_text(value, os, depth + 1);
      } else {
        os << pad << key << ": " << value.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    os << pad << "[" << j.size() << " entries]\n";
  } else {
    os << pad << j.dump() << "\n";
  }
}

int run(const JobSpec& spec) {
  spec.validate();
  const json input = io::load_json_file(spec.input_path);
  const io::InputDocument doc = io::parse_input(input);
  json report;
  if (spec.command == "triple")
    report = run_triple(doc, spec);
  else if (spec.command == "szego")
    report = run_szego(doc, spec);
  else if (spec.command == "opuc")
    report = run_opuc(doc, spec);
  else if (spec.command == "basis")
    report = run_basis(doc, spec);
  else if (spec.command == "colligation")
    report = run_colligation(doc, spec);
  else if (spec.command == "pcont")
    report = run_pcont(doc, spec);
  else
    raise(errc::precondition, "unknown command: " + spec.command);

  json envelope;
  envelope["format"] = "opuckit-report";
  envelope["version"] = 1;
  envelope["command"] = spec.command;
  envelope["parameters"] =
      json{{"grid", spec.grid_n}, {"trunc", spec.trunc_n}, {"psi", spec.psi_k}, {"tol", spec.tol}};
  envelope["result"] = report;

  std::ostringstream body;
  if (spec.format == "json") {
    body << envelope.dump(2) << "\n";
  } else {
    body << "opuckit " << spec.command << " report\n";
    render_text(envelope, body);
  }
  if (spec.out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(spec.out_path, std::ios::binary);
    if (!out) raise(errc::io, "cannot open output file: " + spec.out_path);
    out << body.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur functions, circle measures, orthogonal systems and pseudocontinuability indicators"};
  app.require_subcommand(1);

  JobSpec spec;
  for (const std::string& name : {"triple", "szego", "opuc", "basis", "colligation", "pcont"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("input", spec.input_path, "input record (JSON)")->required();
    sub->add_option("--grid", spec.grid_n, "grid size (power of two in [256, 16384])");
    sub->add_option("--trunc", spec.trunc_n, "polynomial truncation N (<= 256)");
    sub->add_option("--psi", spec.psi_k, "completion truncation K (<= 256)");
    sub->add_option("--tol", spec.tol, "residual tolerance for verdicts");
    sub->add_option("--out", spec.out_path, "output path (default: stdout)");
    sub->add_option("--format", spec.format, "output format: json or text");
    sub->callback([&spec, name] { spec.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run(spec);
  } catch (const Error& e) {
    json err{{"error", {{"code", static_cast<int>(e.code())}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    json err{{"error", {{"code", static_cast<int>(errc::internal)}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return static_cast<int>(errc::internal);
  }
}
