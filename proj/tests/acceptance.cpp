// Acceptance suite: one pass/fail line per criterion.  Criterion 9 is an
// empirical control and demotes to a warning on failure; everything else is
// binding.  Exit status is nonzero if any binding criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "opuckit/opuckit.hpp"

using namespace opuckit;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& what, const std::string& detail, bool warn_only = false) {
  const char* tag = pass ? "PASS" : (warn_only ? "WARN" : "FAIL");
  std::printf("[%2d] %s  %s%s%s\n", idx, tag, what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass && !warn_only) ++failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CircleMeasure bernstein_szego(const GridPtr& grid, Complex gamma) {
  std::vector<double> w(static_cast<size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j)
    w[static_cast<size_t>(j)] = (1.0 - std::norm(gamma)) / std::norm(1.0 - gamma * grid->point(j));
  return CircleMeasure(grid, std::move(w));
}

CircleMeasure half_atom(const GridPtr& grid) {
  std::vector<double> w(static_cast<size_t>(grid->size()), 0.5);
  return CircleMeasure(grid, std::move(w), {Atom{0, 0.5}});
}

SchurFn rational_schur(Poly n, Poly d) { return SchurFn::from_rational(RationalFn(std::move(n), std::move(d))); }

CircleMeasure measure_of(const SchurFn& theta, const GridPtr& grid) {
  return caratheodory_to_measure(schur_to_caratheodory(theta, 256), grid);
}

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  auto grid = UnitGrid::make(2048);
  CircleMeasure mu = CircleMeasure::lebesgue(grid);
  auto basis = make_canonical_basis(mu, 32, 32, 256);
  double dev = 0;
  for (int n = 0; n <= 32; ++n)
    for (int j = 0; j <= n; ++j) {
      const Complex expect = (j == n) ? Complex{1, 0} : Complex{0, 0};
      dev = std::max(dev, std::abs(basis.opuc().coeff(n)[static_cast<size_t>(j)] - expect));
    }
  double psi_dev = 0;
  for (int k = 1; k <= 32; ++k) {
    Complex tk;
    for (int j = 0; j < 2048; ++j) {
      tk = std::pow(grid->point(j), k);
      psi_dev = std::max(psi_dev, std::abs(basis.psi(k)[j] - tk));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = dev < 1e-12 && psi_dev < 1e-12 && secs < 1.0;
  report(1, pass, "Lebesgue baseline: monomial basis and completion recovered",
         "coeff dev " + fmt(dev) + ", psi dev " + fmt(psi_dev) + ", " + fmt(secs) + " s");
}

void criterion_2() {
  auto grid = UnitGrid::make(2048);
  std::vector<std::pair<std::string, SchurFn>> thetas;
  thetas.push_back({"0", SchurFn::from_constant({0, 0})});
  thetas.push_back({"1/2", SchurFn::from_constant({0.5, 0})});
  thetas.push_back({"z/2", rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}})});
  thetas.push_back({"0.3 b(0.5)", rational_schur({{-0.15, 0}, {0.3, 0}}, {{1, 0}, {-0.5, 0}})});
  double round_dev = 0, identity_dev = 0;
  bool pass = true;
  std::string detail;
  for (auto& [name, theta] : thetas) {
    const CaratheodoryFn phi = schur_to_caratheodory(theta, 256);
    const CircleMeasure mu = caratheodory_to_measure(phi, grid);
    const CaratheodoryFn phi2 = measure_to_caratheodory(mu, 256);
    const SchurFn theta2 = caratheodory_to_schur(phi2);
    for (const Complex& z : disk_test_lattice())
      round_dev = std::max(round_dev, std::abs(theta2.eval(z) - theta.eval(z)));
    identity_dev = std::max(identity_dev, boundary_identity_check(theta, phi, grid));
  }
  pass = round_dev < 1e-8 && identity_dev < 1e-10;
  report(2, pass, "triple round trips and boundary identity",
         "round-trip dev " + fmt(round_dev) + ", identity dev " + fmt(identity_dev));
}

void criterion_3() {
  auto grid = UnitGrid::make(2048);
  const double c = std::sqrt(0.75);
  double coeff_dev = 0, boundary_dev = 0;
  {
    std::vector<double> w(2048);
    for (int j = 0; j < 2048; ++j) w[static_cast<size_t>(j)] = std::norm(1.0 - grid->point(j) / 2.0);
    auto d = szego_function_from_density(grid, w, 128);
    for (int k = 0; k < 32; ++k) {
      const Complex expect = k == 0 ? Complex{1, 0} : (k == 1 ? Complex{-0.5, 0} : Complex{0, 0});
      coeff_dev = std::max(coeff_dev, std::abs(d.taylor()[static_cast<size_t>(k)] - expect));
    }
    for (int j = 0; j < 2048; ++j)
      boundary_dev = std::max(boundary_dev, std::abs(std::norm(d.boundary_at(j)) - w[static_cast<size_t>(j)]));
  }
  {
    std::vector<double> w(2048);
    for (int j = 0; j < 2048; ++j) w[static_cast<size_t>(j)] = 0.75 / std::norm(1.0 - grid->point(j) / 2.0);
    auto d = szego_function_from_density(grid, w, 128);
    for (int k = 0; k < 32; ++k)
      coeff_dev = std::max(coeff_dev, std::abs(d.taylor()[static_cast<size_t>(k)] - Complex{c * std::pow(0.5, k), 0}));
    for (int j = 0; j < 2048; ++j)
      boundary_dev = std::max(boundary_dev, std::abs(std::norm(d.boundary_at(j)) - w[static_cast<size_t>(j)]));
  }
  const bool pass = coeff_dev < 1e-8 && boundary_dev < 1e-6;
  report(3, pass, "Szego function closed forms",
         "coeff dev " + fmt(coeff_dev) + ", |D|^2 - w dev " + fmt(boundary_dev));
}

void criterion_4() {
  auto grid = UnitGrid::make(4096);
  double dev = 0;
  for (const CircleMeasure& mu :
       {bernstein_szego(grid, {0.5, 0}), half_atom(grid), CircleMeasure::lebesgue(grid)}) {
    auto basis = make_canonical_basis(mu, 10, 10, 256);
    dev = std::max(dev, identity_deviation(family_gram(canonical_family(basis), mu)));
  }
  report(4, dev < 1e-7, "canonical basis orthonormality (21x21 Gram at n = 4096)", "max dev " + fmt(dev));
}

void criterion_5() {
  auto grid = UnitGrid::make(2048);
  double basis_dev = 0;
  std::vector<CircleMeasure> suite{CircleMeasure::lebesgue(grid), bernstein_szego(grid, {0.5, 0}),
                                   half_atom(grid),
                                   measure_of(rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}}), grid),
                                   measure_of(rational_schur({{-0.15, 0}, {0.3, 0}}, {{1, 0}, {-0.5, 0}}), grid)};
  for (const CircleMeasure& mu : suite) {
    auto fast = szego_recursion(moments(mu, 9), 8);
    auto direct = gram_schmidt_basis(mu, 8);
    for (int n = 0; n <= 8; ++n)
      for (int j = 0; j <= n; ++j)
        basis_dev = std::max(basis_dev, std::abs(fast.coeff(n)[static_cast<size_t>(j)] -
                                                 direct.coeff(n)[static_cast<size_t>(j)]));
  }
  double param_dev = 0;
  for (Complex gamma : {Complex{0.5, 0}, Complex{-0.3, 0}, Complex{0, 0.35}}) {
    CircleMeasure mu = bernstein_szego(grid, gamma);
    auto verblunsky = szego_recursion(moments(mu, 9), 8).verblunsky();
    auto schur = schur_algorithm(SchurFn::from_constant(gamma), 7).gamma;
    for (size_t k = 0; k < schur.size(); ++k) param_dev = std::max(param_dev, std::abs(verblunsky[k] - schur[k]));
  }
  {
    auto theta = rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}});
    CircleMeasure mu = measure_of(theta, grid);
    auto verblunsky = szego_recursion(moments(mu, 9), 8).verblunsky();
    auto schur = schur_algorithm(theta, 7).gamma;
    for (size_t k = 0; k < schur.size(); ++k) param_dev = std::max(param_dev, std::abs(verblunsky[k] - schur[k]));
  }
  const bool pass = basis_dev < 1e-9 && param_dev < 1e-9;
  report(5, pass, "oracle equivalence: recursion vs orthogonalization, recursion vs Schur algorithm",
         "basis dev " + fmt(basis_dev) + ", parameter dev " + fmt(param_dev));
}

void criterion_6() {
  auto grid = UnitGrid::make(4096);
  const std::vector<Complex> probes{Complex{0.3, 0}, Complex{0, 0.5}, Complex{-0.4, 0}};
  std::vector<std::pair<std::string, SchurFn>> thetas;
  thetas.push_back({"0", SchurFn::from_constant({0, 0})});
  thetas.push_back({"1/2", SchurFn::from_constant({0.5, 0})});
  thetas.push_back({"z/2", rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}})});
  bool pass = true;
  std::string detail;
  for (auto& [name, theta] : thetas) {
    CircleMeasure mu = measure_of(theta, grid);
    double err64 = 0, err128 = 0;
    for (int NK : {64, 128}) {
      auto basis = make_canonical_basis(mu, NK, NK, 512);
      auto col = build_colligation(mu, basis);
      double err = 0;
      for (Complex z : probes) err = std::max(err, std::abs(characteristic_function(col, z) - theta.eval(z)));
      (NK == 64 ? err64 : err128) = err;
    }
    if (!(err64 < 1e-5 && err128 <= err64 + 1e-12)) pass = false;
    detail += name + ": " + fmt(err64) + "/" + fmt(err128) + "  ";
  }
  report(6, pass, "colligation characteristic function at N=K=64 and refinement at 128", detail);
}

void criterion_7() {
  auto grid = UnitGrid::make(2048);
  std::vector<std::pair<std::string, SchurFn>> suite;
  suite.push_back({"0", SchurFn::from_constant({0, 0})});
  suite.push_back({"1/2", SchurFn::from_constant({0.5, 0})});
  suite.push_back({"0.3i", SchurFn::from_constant({0, 0.3})});
  suite.push_back({"-0.25+0.25i", SchurFn::from_constant({-0.25, 0.25})});
  suite.push_back({"z/2", rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}})});
  suite.push_back({"0.3 z^2", rational_schur({{0, 0}, {0, 0}, {0.3, 0}}, {{1, 0}})});
  suite.push_back({"0.25 z^3", rational_schur({{0, 0}, {0, 0}, {0, 0}, {0.25, 0}}, {{1, 0}})});
  suite.push_back({"0.25 b(0.4)", rational_schur({{-0.1, 0}, {0.25, 0}}, {{1, 0}, {-0.4, 0}})});
  suite.push_back({"0.5 b(0.4i)", rational_schur({{0, -0.2}, {0.5, 0}}, {{1, 0}, {0, 0.4}})});
  suite.push_back({"0.2(1+z)", rational_schur({{0.2, 0}, {0.2, 0}}, {{1, 0}})});
  suite.push_back({"0.3/(1-0.4z)", rational_schur({{0.3, 0}}, {{1, 0}, {-0.4, 0}})});
  suite.push_back({"(0.15z^3+0.1)/(1-0.2z)", rational_schur({{0.1, 0}, {0, 0}, {0, 0}, {0.15, 0}}, {{1, 0}, {-0.2, 0}})});
  bool pass = true;
  int agree = 0;
  double worst_res = 0, worst_norm = 0, worst_ident = 0;
  for (auto& [name, theta] : suite) {
    CircleMeasure mu = measure_of(theta, grid);
    auto v = full_verdict(theta, mu, PcontOptions{.N = 48, .K = 48, .M = 256, .levels = {8, 16, 32}});
    const bool all_yes = v.agreement && v.route_outer == Tribool::yes && v.route_subspace == Tribool::yes &&
                         v.route_witness == Tribool::yes;
    if (all_yes) ++agree;
    if (!v.witness) {
      pass = false;
      continue;
    }
    worst_res = std::max({worst_res, v.witness->residual_phi_star, v.witness->residual_psi});
    worst_norm = std::max(worst_norm, std::abs(v.witness->norm - 1.0));
    worst_ident = std::max(worst_ident, v.szego_d.identity_error);
    if (!all_yes) pass = false;
  }
  pass = pass && worst_res < 1e-6 && worst_norm <= 1e-7 && worst_ident <= 1e-7 && agree == 12;
  report(7, pass, "pseudocontinuability positive suite (12 rational non-inner functions)",
         std::to_string(agree) + "/12 agree, residual " + fmt(worst_res) + ", |norm-1| " + fmt(worst_norm) +
             ", identity " + fmt(worst_ident));
}

void criterion_8() {
  auto grid = UnitGrid::make(2048);
  auto theta = SchurFn::from_constant({0.5, 0});
  CircleMeasure mu = measure_of(theta, grid);
  auto crit = criterion_szego_d(theta, mu, 256);
  auto basis = make_canonical_basis(mu, 2, 2, 256);
  auto conj = conjugate_basis(basis);
  auto w = h0_witness(crit, basis, conj, mu, 1);
  const bool pass = w.residual_phi_star < 1e-12 && w.residual_psi < 1e-12;
  report(8, pass, "exact witness collision for the kernel weight at N = 1",
         "residuals " + fmt(w.residual_phi_star) + " / " + fmt(w.residual_psi));
}

void criterion_9() {
  auto grid = UnitGrid::make(2048);
  Series th(64);
  double fact = 1.0;
  for (int k = 0; k < 64; ++k) {
    if (k > 0) fact *= k;
    th[static_cast<size_t>(k)] = Complex{std::exp(-1.0) / fact, 0.0};
  }
  auto theta = SchurFn::from_taylor(std::move(th));
  auto mu = caratheodory_to_measure(schur_to_caratheodory(theta, 255), grid);
  auto basis = make_canonical_basis(mu, 32, 32, 768);
  auto conj = conjugate_basis(basis);
  auto rep = subspace_intersection_indicator(basis, conj, mu, {8, 16, 32});
  bool nondecreasing = true;
  for (size_t i = 1; i < rep.min_principal_angle.size(); ++i)
    if (rep.min_principal_angle[i] < rep.min_principal_angle[i - 1] - 1e-12) nondecreasing = false;
  const bool pass = rep.min_principal_angle.back() > 0.05 && nondecreasing &&
                    rep.verdict == IntersectionVerdict::separated;
  std::string detail = "angles ";
  for (double a : rep.min_principal_angle) detail += fmt(a) + " ";
  detail += "verdict " + std::string(verdict_name(rep.verdict)) + " (empirical control; warning only)";
  report(9, pass, "qualitative negative control exp(z-1)", detail, /*warn_only=*/true);
}

void criterion_10() {
  auto grid = UnitGrid::make(2048);
  std::mt19937 rng(20240810);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Poly> polys;
  for (int trial = 0; trial < 20; ++trial) {
    Poly f;
    for (int k = 0; k <= 10; ++k) f.push_back(Complex{u(rng), u(rng)});
    polys.push_back(std::move(f));
  }
  double dev = 0;
  for (const CircleMeasure& mu :
       {CircleMeasure::lebesgue(grid), bernstein_szego(grid, {0.5, 0}), half_atom(grid),
        measure_of(rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}}), grid)}) {
    auto basis = make_canonical_basis(mu, 4, 4, 256);
    for (const Poly& f : polys) {
      double h2 = 0;
      for (const Complex& c : f) h2 += std::norm(c);
      h2 = std::sqrt(h2);
      dev = std::max(dev, std::abs(norm_l2(lift_h2_isometry(f, basis), mu) - h2));
    }
  }
  report(10, dev < 1e-8, "Hardy-space isometry on 20 random polynomials per measure", "max dev " + fmt(dev));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures > 0) {
    std::printf("%d binding criteria failed\n", failures);
    return 1;
  }
  std::printf("all binding criteria passed\n");
  return 0;
}
