#include <catch2/catch_amalgamated.hpp>

#include "opuckit/pcont.hpp"

using namespace opuckit;

namespace {

SchurFn rational_schur(Poly n, Poly d) { return SchurFn::from_rational(RationalFn(std::move(n), std::move(d))); }

CircleMeasure measure_of(const SchurFn& theta, const GridPtr& grid, int order = 256) {
  return caratheodory_to_measure(schur_to_caratheodory(theta, order), grid);
}

SchurFn exp_control() {
  Series th(64);
  double fact = 1.0;
  for (int k = 0; k < 64; ++k) {
    if (k > 0) fact *= k;
    th[static_cast<size_t>(k)] = Complex{std::exp(-1.0) / fact, 0.0};
  }
  return SchurFn::from_taylor(std::move(th));
}

}  // namespace

TEST_CASE("outer-function criterion", "[pcont]") {
  auto grid = UnitGrid::make(2048);

  SECTION("constant 1/2 splits with a plain z inner factor") {
    auto theta = SchurFn::from_constant({0.5, 0});
    auto crit = criterion_szego_d(theta, measure_of(theta, grid));
    REQUIRE(crit.szego.holds);
    REQUIRE(crit.d_in_pi == Tribool::yes);
    REQUIRE(crit.I1->degree() == 1);
    REQUIRE(crit.i1_has_origin_zero);
    REQUIRE(crit.I2->degree() == 1);
    REQUIRE(std::abs(crit.I2->zeros()[0].z - Complex{0.5, 0}) < 1e-9);
    REQUIRE(crit.identity_error < 1e-7);
    REQUIRE(crit.rational_series_mismatch < 1e-7);
  }

  SECTION("zero function splits trivially") {
    auto theta = SchurFn::from_constant({0, 0});
    auto crit = criterion_szego_d(theta, measure_of(theta, grid));
    REQUIRE(crit.d_in_pi == Tribool::yes);
    REQUIRE(crit.I1->degree() == 0);
    REQUIRE(crit.I2->degree() == 0);
    REQUIRE_FALSE(crit.i1_has_origin_zero);
    REQUIRE(crit.identity_error < 1e-12);
  }

  SECTION("theta(z) = z/2 splits with a double origin zero") {
    auto theta = rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}});
    auto crit = criterion_szego_d(theta, measure_of(theta, grid));
    REQUIRE(crit.d_in_pi == Tribool::yes);
    REQUIRE(crit.I1->degree() == 2);
    REQUIRE(crit.i1_has_origin_zero);
    REQUIRE(crit.I2->degree() == 2);
    double best = 1.0;
    for (const RootCluster& z : crit.I2->zeros()) best = std::min(best, std::abs(std::abs(z.z) - 1.0 / std::sqrt(2.0)));
    REQUIRE(best < 1e-9);
    REQUIRE(crit.identity_error < 1e-7);
  }

  SECTION("taylor input stays undecided on the factorization route") {
    auto theta = exp_control();
    auto phi = schur_to_caratheodory(theta, 255);
    auto mu = caratheodory_to_measure(phi, grid);
    auto crit = criterion_szego_d(theta, mu);
    REQUIRE(crit.szego.holds);
    REQUIRE(crit.d_in_pi == Tribool::undecided);
  }

  SECTION("inner functions are outside the hypothesis") {
    auto blaschke = rational_schur({{-0.5, 0}, {1, 0}}, {{1, 0}, {-0.5, 0}});
    auto mu = CircleMeasure::lebesgue(grid);
    REQUIRE_THROWS_AS(criterion_szego_d(blaschke, mu), Error);
  }
}

TEST_CASE("subspace intersection indicator", "[pcont]") {
  auto grid = UnitGrid::make(2048);

  SECTION("lebesgue measure: the families coincide") {
    CircleMeasure mu = CircleMeasure::lebesgue(grid);
    auto basis = make_canonical_basis(mu, 8, 8, 64);
    auto conj = conjugate_basis(basis);
    auto rep = subspace_intersection_indicator(basis, conj, mu, {2, 4, 8});
    REQUIRE(rep.verdict == IntersectionVerdict::intersects);
    for (double a : rep.min_principal_angle) REQUIRE(a < 1e-7);
  }

  SECTION("kernel weight: collision already at the first level") {
    std::vector<double> w(2048);
    for (int j = 0; j < 2048; ++j) w[static_cast<size_t>(j)] = 0.75 / std::norm(1.0 - grid->point(j) / 2.0);
    CircleMeasure mu(grid, w);
    auto basis = make_canonical_basis(mu, 4, 4, 128);
    auto conj = conjugate_basis(basis);
    auto rep = subspace_intersection_indicator(basis, conj, mu, {1, 2, 4});
    REQUIRE(rep.min_principal_angle.front() < 1e-7);
    REQUIRE(rep.verdict == IntersectionVerdict::intersects);
  }

  SECTION("level exceeding the basis rejected") {
    CircleMeasure mu = CircleMeasure::lebesgue(grid);
    auto basis = make_canonical_basis(mu, 4, 4, 64);
    auto conj = conjugate_basis(basis);
    REQUIRE_THROWS_AS(subspace_intersection_indicator(basis, conj, mu, {8}), Error);
  }
}

TEST_CASE("verdict classifier branches", "[pcont]") {
  IntersectionOptions opts;
  REQUIRE(classify_intersection({1e-3, 1e-5, 1e-6}, opts) == IntersectionVerdict::intersects);
  REQUIRE(classify_intersection({0.3, 0.31, 0.31}, opts) == IntersectionVerdict::separated);
  REQUIRE(classify_intersection({0.3, 0.1, 0.02}, opts) == IntersectionVerdict::inconclusive);
  // a collapse with a non-monotone trend stays inconclusive
  REQUIRE(classify_intersection({1e-6, 1e-3, 1e-5}, opts) == IntersectionVerdict::inconclusive);
}

TEST_CASE("explicit witness", "[pcont]") {
  auto grid = UnitGrid::make(2048);

  SECTION("kernel weight: the witness is the first completion element") {
    auto theta = SchurFn::from_constant({0.5, 0});
    CircleMeasure mu = measure_of(theta, grid);
    auto crit = criterion_szego_d(theta, mu);
    auto basis = make_canonical_basis(mu, 4, 4, 256);
    auto conj = conjugate_basis(basis);
    auto w = h0_witness(crit, basis, conj, mu, 1);
    REQUIRE(std::abs(w.norm - 1.0) < 1e-7);
    REQUIRE(w.residual_phi_star < 1e-12);
    REQUIRE(w.residual_psi < 1e-12);
    double dev = 0;
    for (int j = 0; j < 2048; j += 7) dev = std::max(dev, std::abs(w.h0[j] - basis.psi(1)[j]));
    REQUIRE(dev < 1e-12);
  }

  SECTION("lebesgue: the witness is t") {
    auto theta = SchurFn::from_constant({0, 0});
    CircleMeasure mu = CircleMeasure::lebesgue(grid);
    auto crit = criterion_szego_d(theta, mu);
    auto basis = make_canonical_basis(mu, 4, 4, 64);
    auto conj = conjugate_basis(basis);
    auto w = h0_witness(crit, basis, conj, mu, 2);
    double dev = 0;
    for (int j = 0; j < 2048; j += 7) dev = std::max(dev, std::abs(w.h0[j] - grid->point(j)));
    REQUIRE(dev < 1e-12);
    REQUIRE(w.residual_phi_star < 1e-12);
  }

  SECTION("witness orthogonality against the conjugate completion") {
    auto theta = rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}});
    CircleMeasure mu = measure_of(theta, grid);
    auto crit = criterion_szego_d(theta, mu);
    auto basis = make_canonical_basis(mu, 16, 16, 256);
    auto conj = conjugate_basis(basis);
    auto w = h0_witness(crit, basis, conj, mu, 16);
    REQUIRE(w.max_psi_star_overlap < 1e-7);
    REQUIRE(w.phi0_star_overlap < 1e-7);
    REQUIRE(std::abs(w.norm - 1.0) < 1e-7);
    REQUIRE(w.residual_phi_star < 1e-6);
    REQUIRE(w.residual_psi < 1e-6);
  }

  SECTION("witness without an origin zero in the inner factor") {
    // theta = 0.3/(1 - 0.4 z): the quotient witness I1 has no zero at 0
    auto theta = rational_schur({{0.3, 0}}, {{1, 0}, {-0.4, 0}});
    CircleMeasure mu = measure_of(theta, grid);
    auto crit = criterion_szego_d(theta, mu);
    REQUIRE(crit.d_in_pi == Tribool::yes);
    REQUIRE_FALSE(crit.i1_has_origin_zero);
    auto basis = make_canonical_basis(mu, 24, 24, 256);
    auto conj = conjugate_basis(basis);
    auto w = h0_witness(crit, basis, conj, mu, 24);
    REQUIRE_FALSE(w.i1_had_origin_zero);
    REQUIRE(std::abs(w.norm - 1.0) < 1e-7);
    REQUIRE(w.residual_phi_star < 1e-6);
    REQUIRE(w.residual_psi < 1e-6);
  }
}

TEST_CASE("full verdict", "[pcont]") {
  auto grid = UnitGrid::make(2048);

  SECTION("positive rational cases agree on every route") {
    std::vector<SchurFn> thetas;
    thetas.push_back(SchurFn::from_constant({0.5, 0}));
    thetas.push_back(rational_schur({{0, 0}, {0.5, 0}}, {{1, 0}}));
    for (const SchurFn& theta : thetas) {
      CircleMeasure mu = measure_of(theta, grid);
      auto v = full_verdict(theta, mu, PcontOptions{.N = 32, .K = 32, .M = 256, .levels = {8, 16, 32}});
      REQUIRE(v.agreement);
      REQUIRE(v.overall == "pseudocontinuable");
      REQUIRE(v.route_outer == Tribool::yes);
      REQUIRE(v.route_subspace == Tribool::yes);
      REQUIRE(v.route_witness == Tribool::yes);
      REQUIRE(v.szego_d.identity_error < 1e-7);
    }
  }

  SECTION("taylor control follows the basis route only") {
    auto theta = exp_control();
    auto mu = caratheodory_to_measure(schur_to_caratheodory(theta, 255), grid);
    auto v = full_verdict(theta, mu, PcontOptions{.N = 32, .K = 32, .M = 768, .levels = {8, 16, 32}});
    REQUIRE(v.route_outer == Tribool::undecided);
    REQUIRE_FALSE(v.witness.has_value());
    REQUIRE(v.agreement);  // no decided routes can disagree
    // at these scales the control data is not distinguishable from
    // near-rational data; the only honest claims are the measured angles
    REQUIRE(v.basis_criterion.min_principal_angle.back() > 1e-5);
    REQUIRE(v.basis_criterion.verdict != IntersectionVerdict::intersects);
  }

  SECTION("the control separates at its own plateau scale") {
    auto theta = exp_control();
    auto mu = caratheodory_to_measure(schur_to_caratheodory(theta, 255), grid);
    PcontOptions opts{.N = 32, .K = 32, .M = 768, .levels = {8, 16, 32}};
    opts.intersection.sep_tol = 5e-4;  // tightened to the measured plateau
    auto v = full_verdict(theta, mu, opts);
    REQUIRE(v.basis_criterion.verdict == IntersectionVerdict::separated);
    REQUIRE(v.overall == "not-pseudocontinuable");
  }

  SECTION("inner input rejected") {
    auto inner = rational_schur({{-0.5, 0}, {1, 0}}, {{1, 0}, {-0.5, 0}});
    REQUIRE_THROWS_AS(full_verdict(inner, CircleMeasure::lebesgue(grid), {}), Error);
  }
}
