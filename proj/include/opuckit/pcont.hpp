#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opuckit/colligation.hpp"

namespace opuckit {

enum class Tribool { yes, no, undecided };

inline const char* tribool_name(Tribool t) {
  switch (t) {
    case Tribool::yes: return "yes";
    case Tribool::no: return "no";
    case Tribool::undecided: return "undecided";
  }
  return "?";
}

/// Outcome of the outer-function route: Szego status plus, for rational data,
/// the Blaschke-quotient witnesses I1, I2 with
/// D / conj(D) = I2 / I1 on the circle.
struct SzegoDCriterion {
  SzegoReport szego;
  Tribool d_in_pi = Tribool::undecided;
  std::optional<BlaschkeProduct> I1, I2;
  bool i1_has_origin_zero = false;
  double identity_error = std::numeric_limits<double>::quiet_NaN();
  std::optional<RationalFn> D_rational;
  double rational_series_mismatch = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline Series rational_taylor(const RationalFn& f, int M) {
  Series n(f.num().begin(), f.num().end());
  Series d(f.den().begin(), f.den().end());
  return series_div(n, d, M);
}

}  // namespace detail

/// Route one: the measure must satisfy the Szego condition and its outer
/// function must split as a Blaschke quotient.  For rational input the outer
/// function is obtained as the rational spectral factor of
/// W = (Phi + Phi^)/2 and the split is constructive; for Taylor input the
/// split is not attempted and the result stays undecided.
inline SzegoDCriterion criterion_szego_d(const SchurFn& theta, const CircleMeasure& mu, int M = 256) {
  if (theta.is_inner())
    raise(errc::precondition, "criterion requires a non-inner Schur function");
  SzegoDCriterion out;
  out.szego = szego_condition(mu);
  if (!out.szego.holds) {
    out.d_in_pi = Tribool::no;  // without the Szego condition there is no outer function to continue
    return out;
  }
  const SzegoFn D = szego_function(mu, M);
  if (!theta.fn().is_rational_like()) {
    out.d_in_pi = Tribool::undecided;
    return out;
  }
  const CaratheodoryFn phi = schur_to_caratheodory(theta);
  const RationalFn& phir = phi.fn().rational_fn();
  const RationalFn W = Complex{0.5, 0.0} * (phir + phir.hat());
  RationalFn Drat = outer_spectral_factor(W);
  // consistency between the spectral factor and the exponential-series route
  {
    const int Mc = std::min<int>(32, static_cast<int>(D.taylor().size()) - 1);
    const Series ds = detail::rational_taylor(Drat, Mc);
    double mis = 0.0;
    for (int k = 0; k <= Mc; ++k) mis = std::max(mis, std::abs(ds[static_cast<size_t>(k)] - D.taylor()[static_cast<size_t>(k)]));
    out.rational_series_mismatch = mis;
  }
  const RationalFn R = Drat / Drat.hat();
  auto [I1, I2] = blaschke_quotient_of_unimodular(R);
  out.I1 = I1;
  out.I2 = I2;
  out.i1_has_origin_zero = I1.has_zero_at_origin();
  out.D_rational = std::move(Drat);
  // boundary identity: D / conj(D) = I2 / I1 off the atom set
  const GridPtr& grid = mu.grid_ptr();
  std::vector<bool> atom_mask(static_cast<size_t>(grid->size()), false);
  for (int idx : mu.atom_indices()) atom_mask[static_cast<size_t>(idx)] = true;
  double err = 0.0;
  for (int j = 0; j < grid->size(); ++j) {
    if (atom_mask[static_cast<size_t>(j)]) continue;
    const Complex d = D.boundary_at(j);
    if (std::abs(d) < 1e-12) continue;
    const Complex t = grid->point(j);
    err = std::max(err, std::abs(d / std::conj(d) - I2.eval(t) / I1.eval(t)));
  }
  out.identity_error = err;
  out.d_in_pi = Tribool::yes;
  return out;
}

enum class IntersectionVerdict { intersects, separated, inconclusive };

inline const char* verdict_name(IntersectionVerdict v) {
  switch (v) {
    case IntersectionVerdict::intersects: return "intersects";
    case IntersectionVerdict::separated: return "separated";
    case IntersectionVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Principal-angle report between span{psi_1..psi_N} and span{phi*_1..phi*_N}
/// across truncation levels.  The verdict is three-valued: a finite truncation
/// can only indicate, never decide, whether the infinite spans intersect.
struct IntersectionReport {
  std::vector<int> sizes;
  std::vector<double> min_principal_angle;  // radians, per level
  std::optional<std::pair<double, double>> h0_residuals;  // (onto span phi*, onto span psi)
  IntersectionVerdict verdict = IntersectionVerdict::inconclusive;
};

struct IntersectionOptions {
  double angle_tol = 1e-4;  // radians: below this at the top level counts as intersecting
  double sep_tol = 1e-2;    // radians: above this with no decreasing trend counts as separated
};

/// Classification of an angle trend into the three-valued verdict.  A finite
/// truncation cannot decide the infinite-span statement, so the thresholds
/// are deliberately conservative: a clear collapse with a non-increasing
/// trend counts as intersecting, a clearly bounded angle with no substantial
/// decay as separated, anything else stays inconclusive.
inline IntersectionVerdict classify_intersection(const std::vector<double>& angles,
                                                 const IntersectionOptions& opts) {
  bool nonincreasing = true;
  for (size_t i = 1; i < angles.size(); ++i)
    if (angles[i] > angles[i - 1] + 1e-12) nonincreasing = false;
  const double last = angles.back();
  if (last < opts.angle_tol && nonincreasing) return IntersectionVerdict::intersects;
  if (last >= opts.sep_tol && last >= 0.8 * angles.front()) return IntersectionVerdict::separated;
  return IntersectionVerdict::inconclusive;
}

namespace detail {

inline Eigen::MatrixXcd inverse_sqrt_psd(const Eigen::MatrixXcd& G) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  if (es.info() != Eigen::Success) raise(errc::numeric, "Gram eigensolve failed");
  if (es.eigenvalues().minCoeff() <= 1e-13) raise(errc::degenerate, "family Gram numerically singular");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace detail

inline IntersectionReport subspace_intersection_indicator(const CanonicalBasis& basis, const ConjugateBasis& conj,
                                                          const CircleMeasure& mu, std::vector<int> levels,
                                                          IntersectionOptions opts = {}) {
  if (levels.empty()) raise(errc::precondition, "no truncation levels given");
  std::sort(levels.begin(), levels.end());
  const int top = levels.back();
  if (top < 1 || top > basis.K() || top > basis.N())
    raise(errc::precondition, "truncation level exceeds the constructed basis");
  // cross matrix X(i,j) = <phi*_{j+1}, psi_{i+1}> and the two family Grams in
  // the operator convention G(i,j) = <u_{j+1}, u_{i+1}>
  Eigen::MatrixXcd C(top, top), Gpsi(top, top), Gphi(top, top);
  for (int i = 0; i < top; ++i)
    for (int j = 0; j < top; ++j) {
      C(i, j) = inner_l2(conj.phi_star[static_cast<size_t>(j + 1)], basis.psi(i + 1), mu);
      Gpsi(i, j) = inner_l2(basis.psi(j + 1), basis.psi(i + 1), mu);
      Gphi(i, j) = inner_l2(conj.phi_star[static_cast<size_t>(j + 1)], conj.phi_star[static_cast<size_t>(i + 1)], mu);
    }
  IntersectionReport rep;
  rep.sizes = levels;
  for (int L : levels) {
    // whiten both families so the singular values are exact angle cosines
    // even when the constructed Grams deviate from the identity in the last
    // digits; otherwise the clamp would turn Gram noise into fake intersections
    const Eigen::MatrixXcd wl = detail::inverse_sqrt_psd(Gpsi.topLeftCorner(L, L));
    const Eigen::MatrixXcd wr = detail::inverse_sqrt_psd(Gphi.topLeftCorner(L, L));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(wl * C.topLeftCorner(L, L) * wr);
    const double smax = std::min(1.0, svd.singularValues()(0));
    rep.min_principal_angle.push_back(std::acos(smax));
  }
  rep.verdict = classify_intersection(rep.min_principal_angle, opts);
  return rep;
}

/// The explicit intersection witness h0(t) = t * I1h(t) / conj(D(t)) off the
/// atom set (0 on it), where I1h is I1 with one origin zero removed when
/// present; h0 has unit norm and lies in both spans in the limit.
struct H0Witness {
  GridFunction h0;
  double norm;
  double residual_phi_star;  // distance to span{phi*_1..phi*_N}
  double residual_psi;       // distance to span{psi_1..psi_N}
  bool i1_had_origin_zero;
  double max_psi_star_overlap;  // max_n |<h0, psi*_n>|, expected ~ 0
  double phi0_star_overlap;     // |<h0, phi*_0>|, expected ~ 0
};

namespace detail {

/// Norm of f minus its projection onto an orthonormal family, computed as an
/// explicit residual vector; the squared-norm shortcut would lose all digits
/// once the residual is tiny.
inline double projection_residual(const GridFunction& f, const std::vector<const GridFunction*>& family,
                                  const CircleMeasure& mu) {
  std::vector<Complex> r = f.values;
  std::vector<std::pair<int, Complex>> ro;
  for (const Atom& a : mu.atoms()) ro.emplace_back(a.index, f.value_at(a.index));
  for (const GridFunction* g : family) {
    const Complex cf = inner_l2(f, *g, mu);
    for (size_t j = 0; j < r.size(); ++j) r[j] -= cf * g->values[j];
    for (auto& [idx, z] : ro) z -= cf * g->value_at(idx);
  }
  return norm_l2(GridFunction(f.grid, std::move(r), std::move(ro)), mu);
}

}  // namespace detail

inline H0Witness h0_witness(const SzegoDCriterion& crit, const CanonicalBasis& basis, const ConjugateBasis& conj,
                            const CircleMeasure& mu, int N) {
  if (crit.d_in_pi != Tribool::yes || !crit.I1)
    raise(errc::precondition, "witness requires the Blaschke-quotient factorization");
  if (N < 1 || N > basis.N() || N > basis.K()) raise(errc::precondition, "witness level exceeds the basis");
  const BlaschkeProduct i1h =
      crit.I1->has_zero_at_origin() ? crit.I1->deflate_origin() : *crit.I1;
  const GridPtr& grid = basis.grid_ptr();
  std::vector<std::pair<int, Complex>> zero_at_atoms;
  for (int idx : basis.atom_set()) zero_at_atoms.emplace_back(idx, Complex{0.0, 0.0});
  std::vector<Complex> v(static_cast<size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j) {
    const Complex t = grid->point(j);
    v[static_cast<size_t>(j)] = t * i1h.eval(t) / std::conj(basis.szego().boundary_at(j));
  }
  GridFunction h0(grid, std::move(v), std::move(zero_at_atoms));
  H0Witness out{h0, norm_l2(h0, mu), 0.0, 0.0, crit.I1->has_zero_at_origin(), 0.0, 0.0};
  std::vector<const GridFunction*> phistar, psis;
  for (int j = 1; j <= N; ++j) phistar.push_back(&conj.phi_star[static_cast<size_t>(j)]);
  for (int k = 1; k <= N; ++k) psis.push_back(&basis.psi(k));
  out.residual_phi_star = detail::projection_residual(h0, phistar, mu);
  out.residual_psi = detail::projection_residual(h0, psis, mu);
  for (int k = 1; k <= N; ++k)
    out.max_psi_star_overlap =
        std::max(out.max_psi_star_overlap, std::abs(inner_l2(h0, conj.psi_star[static_cast<size_t>(k - 1)], mu)));
  out.phi0_star_overlap = std::abs(inner_l2(h0, conj.phi_star[0], mu));
  return out;
}

struct PcontOptions {
  int N = 48;                       // basis size for residual checks
  int K = 48;
  int M = 256;                      // series truncation order
  std::vector<int> levels = {8, 16, 32};
  IntersectionOptions intersection = {};
  double residual_tol = 1e-6;
  double norm_tol = 1e-7;
};

/// Combined verdict: the outer-function route, the subspace route, and the
/// explicit witness, with an agreement flag over the signals that could be
/// decided.  A disagreement is an implementation fault and is surfaced, never
/// reconciled.
struct PcontVerdict {
  SzegoDCriterion szego_d;
  IntersectionReport basis_criterion;
  std::optional<H0Witness> witness;
  Tribool route_outer = Tribool::undecided;    // Szego condition + Blaschke quotient
  Tribool route_subspace = Tribool::undecided; // principal angles
  Tribool route_witness = Tribool::undecided;  // h0 residuals
  bool agreement = false;
  std::string overall;
};

inline PcontVerdict full_verdict(const SchurFn& theta, const CircleMeasure& mu, PcontOptions opts = {}) {
  if (theta.is_inner()) raise(errc::precondition, "verdict requires a non-inner Schur function");
  PcontVerdict out;
  out.szego_d = criterion_szego_d(theta, mu, opts.M);
  if (out.szego_d.szego.holds) {
    const int top = *std::max_element(opts.levels.begin(), opts.levels.end());
    const int NN = std::max(opts.N, top), KK = std::max(opts.K, top);
    const CanonicalBasis basis = make_canonical_basis(mu, NN, KK, opts.M);
    const ConjugateBasis conj = conjugate_basis(basis);
    out.basis_criterion = subspace_intersection_indicator(basis, conj, mu, opts.levels, opts.intersection);
    if (out.szego_d.d_in_pi == Tribool::yes) {
      out.witness = h0_witness(out.szego_d, basis, conj, mu, std::min(opts.N, std::min(NN, KK)));
      out.basis_criterion.h0_residuals = {out.witness->residual_phi_star, out.witness->residual_psi};
    }
  } else {
    // completion is empty: the second family does not exist, nothing can intersect
    out.basis_criterion.verdict = IntersectionVerdict::separated;
  }

  out.route_outer = out.szego_d.szego.holds ? out.szego_d.d_in_pi : Tribool::no;
  switch (out.basis_criterion.verdict) {
    case IntersectionVerdict::intersects: out.route_subspace = Tribool::yes; break;
    case IntersectionVerdict::separated: out.route_subspace = Tribool::no; break;
    case IntersectionVerdict::inconclusive: out.route_subspace = Tribool::undecided; break;
  }
  if (out.witness) {
    const bool ok = out.witness->residual_phi_star < opts.residual_tol &&
                    out.witness->residual_psi < opts.residual_tol &&
                    std::abs(out.witness->norm - 1.0) <= opts.norm_tol;
    out.route_witness = ok ? Tribool::yes : Tribool::no;
  }

  bool any_yes = false, any_no = false;
  for (Tribool t : {out.route_outer, out.route_subspace, out.route_witness}) {
    if (t == Tribool::yes) any_yes = true;
    if (t == Tribool::no) any_no = true;
  }
  out.agreement = !(any_yes && any_no);
  if (!out.agreement)
    out.overall = "implementation-fault: routes disagree";
  else if (any_yes)
    out.overall = "pseudocontinuable";
  else if (any_no)
    out.overall = "not-pseudocontinuable";
  else
    out.overall = "inconclusive";
  return out;
}

}  // namespace opuckit
