#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "opuckit/triples.hpp"

namespace opuckit {

/// Moments c_k = integral of t^{-k} d(mu); Hermitian extension c_{-k} = conj(c_k).
class MomentTable {
public:
  explicit MomentTable(std::vector<Complex> c) : c_(std::move(c)) {
    if (c_.empty()) raise(errc::precondition, "empty moment table");
  }
  int max_order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Complex at(int k) const {
    const int a = std::abs(k);
    if (a > max_order()) raise(errc::precondition, "moment order out of range");
    return k >= 0 ? c_[static_cast<size_t>(a)] : std::conj(c_[static_cast<size_t>(a)]);
  }

private:
  std::vector<Complex> c_;
};

inline MomentTable moments(const CircleMeasure& mu, int N) {
  std::vector<Complex> c = raw_moments(mu, N);
  if (std::abs(c[0] - Complex{1.0, 0.0}) > 1e-8) raise(errc::precondition, "zeroth moment deviates from 1");
  return MomentTable(std::move(c));
}

/// Orthonormal polynomials in t^{-1}: phi_n(t) = sum_j alpha_{n,j} t^{-j},
/// normalized so that <e_{-n}, phi_n> > 0, together with the recurrence
/// parameters gamma_n (|gamma_n| < 1).
class OpucBasis {
public:
  OpucBasis(std::vector<std::vector<Complex>> coeffs, std::vector<Complex> verblunsky)
      : coeffs_(std::move(coeffs)), verblunsky_(std::move(verblunsky)) {
    for (size_t n = 0; n < coeffs_.size(); ++n)
      if (coeffs_[n].size() != n + 1) raise(errc::internal, "triangular coefficient shape expected");
  }

  int max_degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::vector<Complex>>& coefficients() const noexcept { return coeffs_; }
  const std::vector<Complex>& coeff(int n) const { return coeffs_[static_cast<size_t>(n)]; }
  const std::vector<Complex>& verblunsky() const noexcept { return verblunsky_; }

  /// Samples of phi_n on the grid (Horner in t^{-1} = conj t).
  GridFunction sample(int n, const GridPtr& grid) const {
    const std::vector<Complex>& a = coeffs_[static_cast<size_t>(n)];
    return sample_on_grid(grid, [&a](Complex t) {
      const Complex u = std::conj(t);
      Complex s{0.0, 0.0};
      for (size_t k = a.size(); k-- > 0;) s = s * u + a[k];
      return s;
    });
  }

private:
  std::vector<std::vector<Complex>> coeffs_;  // coeffs_[n][j] multiplies t^{-j}
  std::vector<Complex> verblunsky_;           // gamma_0 .. gamma_{N-1}
};

namespace detail {

inline std::vector<Complex> verblunsky_from_coeffs(const std::vector<std::vector<Complex>>& coeffs) {
  std::vector<Complex> gamma;
  for (size_t n = 1; n < coeffs.size(); ++n)
    gamma.push_back(-coeffs[n][0] / coeffs[n][n]);
  return gamma;
}

}  // namespace detail

/// Direct Gram-Schmidt orthogonalization of {1, t^{-1}, ..., t^{-N}} in
/// L^2(mu), run in coefficient space against the Toeplitz moment matrix.
/// Modified Gram-Schmidt with one reorthogonalization pass; the moment matrix
/// must be numerically positive (smallest eigenvalue > 1e-12).
inline OpucBasis gram_schmidt_basis(const CircleMeasure& mu, int N) {
  if (N < 0) raise(errc::precondition, "negative degree");
  if (N >= mu.grid().size() / 2) raise(errc::precondition, "degree too large for grid: aliasing");
  const std::vector<Complex> c = raw_moments(mu, N);
  const int m = N + 1;
  Eigen::MatrixXcd A(m, m);  // A(i,j) = <e_{-j}, e_{-i}> = c_{j-i}
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      A(i, j) = j >= i ? c[static_cast<size_t>(j - i)] : std::conj(c[static_cast<size_t>(i - j)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) raise(errc::numeric, "moment matrix eigensolve failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 1e-12) raise(errc::degenerate, "measure too degenerate for the requested degree");
  if (hi / lo > 1e12) raise(errc::degenerate, "moment matrix condition number exceeds guard");

  auto ip = [&A](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) -> Complex {
    return (g.adjoint() * (A * f))(0, 0);
  };

  std::vector<Eigen::VectorXcd> phi;
  for (int n = 0; n < m; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
    v(n) = Complex{1.0, 0.0};
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < n; ++j) v -= ip(v, phi[static_cast<size_t>(j)]) * phi[static_cast<size_t>(j)];
    const double nrm2 = ip(v, v).real();
    if (!(nrm2 > 1e-14)) raise(errc::degenerate, "Gram-Schmidt collapsed: measure too degenerate");
    v /= std::sqrt(nrm2);
    Eigen::VectorXcd en = Eigen::VectorXcd::Zero(m);
    en(n) = Complex{1.0, 0.0};
    const Complex s = ip(en, v);
    v *= s / std::abs(s);
    phi.push_back(std::move(v));
  }
  std::vector<std::vector<Complex>> coeffs(static_cast<size_t>(m));
  for (int n = 0; n < m; ++n) {
    coeffs[static_cast<size_t>(n)].resize(static_cast<size_t>(n + 1));
    for (int j = 0; j <= n; ++j) coeffs[static_cast<size_t>(n)][static_cast<size_t>(j)] = phi[static_cast<size_t>(n)](j);
  }
  std::vector<Complex> gamma = detail::verblunsky_from_coeffs(coeffs);
  for (const Complex& g : gamma)
    if (std::abs(g) >= 1.0) raise(errc::degenerate, "recurrence parameter reached the unit circle");
  return OpucBasis(std::move(coeffs), std::move(gamma));
}

/// Fast construction through the classical Szego/Levinson recurrence on the
/// monic polynomials: Phi_{n+1}(z) = z Phi_n(z) - conj(gamma_n) Phi_n*(z).
/// Produces the same basis as gram_schmidt_basis and emits the parameters
/// gamma_n along the way.
inline OpucBasis szego_recursion(const MomentTable& mom, int N) {
  if (N < 0) raise(errc::precondition, "negative degree");
  if (N > mom.max_order()) raise(errc::precondition, "moment table too short");
  // monic coefficients in z, ascending
  std::vector<Complex> a{Complex{1.0, 0.0}};
  std::vector<Complex> gamma;
  double norm2 = mom.at(0).real();
  if (!(norm2 > 0.0)) raise(errc::degenerate, "zeroth moment not positive");
  std::vector<double> norms{norm2};
  std::vector<std::vector<Complex>> monic{a};
  for (int n = 0; n < N; ++n) {
    Complex eta{0.0, 0.0};
    for (int j = 0; j <= n; ++j) eta += a[static_cast<size_t>(j)] * mom.at(-(j + 1));  // m_{j+1}
    Complex delta{0.0, 0.0};
    for (int j = 0; j <= n; ++j) delta += std::conj(a[static_cast<size_t>(n - j)]) * mom.at(-j);  // m_j
    if (std::abs(delta) < 1e-300) raise(errc::degenerate, "Levinson step collapsed");
    const Complex abar = eta / delta;  // conj(gamma_n)
    const Complex g = std::conj(abar);
    if (std::abs(g) >= 1.0)
      raise(errc::degenerate, "parameter modulus reached 1: moments not from a nondegenerate probability measure");
    std::vector<Complex> next(static_cast<size_t>(n + 2), Complex{0.0, 0.0});
    for (int j = 0; j <= n; ++j) {
      next[static_cast<size_t>(j + 1)] += a[static_cast<size_t>(j)];                      // z Phi_n
      next[static_cast<size_t>(j)] -= abar * std::conj(a[static_cast<size_t>(n - j)]);    // - conj(g) Phi_n*
    }
    a = std::move(next);
    gamma.push_back(g);
    norm2 *= (1.0 - std::norm(g));
    norms.push_back(norm2);
    monic.push_back(a);
  }
  std::vector<std::vector<Complex>> coeffs(static_cast<size_t>(N + 1));
  for (int n = 0; n <= N; ++n) {
    const double scale = 1.0 / std::sqrt(norms[static_cast<size_t>(n)]);
    coeffs[static_cast<size_t>(n)].resize(static_cast<size_t>(n + 1));
    for (int j = 0; j <= n; ++j)
      coeffs[static_cast<size_t>(n)][static_cast<size_t>(j)] =
          std::conj(monic[static_cast<size_t>(n)][static_cast<size_t>(j)] * scale);
  }
  return OpucBasis(std::move(coeffs), std::move(gamma));
}

struct SchurParameters {
  std::vector<Complex> gamma;
  bool terminated_inner = false;  // the tail became a unimodular constant
  int termination_step = -1;
};

/// Classical Schur algorithm on a rational (or constant) Schur function:
/// gamma_n = Theta_n(0), Theta_{n+1} = (Theta_n - gamma_n) / (z (1 - conj(gamma_n) Theta_n)),
/// carried out in exact rational arithmetic with the z-factor cancelled at
/// each step.
inline SchurParameters schur_algorithm(const SchurFn& theta, int N) {
  if (theta.kind() == FnKind::taylor)
    raise(errc::precondition, "Schur algorithm requires a rational or constant representation");
  RationalFn cur = theta.fn().as_rational();
  SchurParameters out;
  for (int n = 0; n <= N; ++n) {
    if (cur.is_zero()) {
      out.gamma.push_back(Complex{0.0, 0.0});
      continue;
    }
    const Complex g = cur(Complex{0.0, 0.0});
    if (std::abs(g) > 1.0 + 1e-9) raise(errc::precondition, "not a Schur function: parameter modulus exceeds 1");
    out.gamma.push_back(g);
    if (std::abs(g) >= 1.0 - 1e-12) {
      if (!cur.is_constant()) raise(errc::precondition, "unimodular value attained by a non-constant iterate");
      out.terminated_inner = true;
      out.termination_step = n;
      break;
    }
    // numerator (Theta_n - g) has a zero at 0 by construction: deflate it
    Poly ns = poly_sub(cur.num(), poly_scale(cur.den(), g));
    if (poly_is_zero(ns, 1e-14 * std::max(1.0, poly_max_abs(cur.num())))) {
      cur = RationalFn();  // identically zero tail
      continue;
    }
    ns[0] = Complex{0.0, 0.0};
    ns.erase(ns.begin());
    Poly ds = poly_sub(cur.den(), poly_scale(cur.num(), std::conj(g)));
    cur = RationalFn(std::move(ns), std::move(ds));
  }
  return out;
}

/// The canonical completion psi_k(t) = t^k / conj(D(t)) off the atom set and 0
/// on it; the numerical stand-in for the exceptional boundary set is exactly
/// the atom set.
inline std::vector<GridFunction> psi_completion(const CircleMeasure& mu, const SzegoFn& D, int K) {
  if (!szego_condition(mu).holds)
    raise(errc::precondition, "Szego condition fails: the polynomials are already complete");
  const GridPtr& grid = mu.grid_ptr();
  const int n = grid->size();
  for (int idx : mu.atom_indices())
    if (std::abs(D.boundary_at(idx)) < 1e-150)
      raise(errc::degenerate, "outer boundary value vanishes at an atom node");
  std::vector<std::pair<int, Complex>> zero_at_atoms;
  for (int idx : mu.atom_indices()) zero_at_atoms.emplace_back(idx, Complex{0.0, 0.0});
  std::vector<GridFunction> psi;
  std::vector<Complex> cur(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) cur[static_cast<size_t>(j)] = grid->point(j) / std::conj(D.boundary_at(j));
  psi.emplace_back(grid, cur, zero_at_atoms);
  for (int k = 2; k <= K; ++k) {
    for (int j = 0; j < n; ++j) cur[static_cast<size_t>(j)] *= grid->point(j);
    psi.emplace_back(grid, cur, zero_at_atoms);
  }
  // normalization sign: <projection of t onto the completion, psi_1> reduces
  // to the value D(0) and must be positive
  GridFunction e1 = sample_on_grid(grid, [](Complex t) { return t; });
  const Complex pos = inner_l2(e1, psi.front(), mu);
  if (!(pos.real() > 0.0) || std::abs(pos.imag()) > 1e-6 * (1.0 + std::abs(pos)))
    raise(errc::degenerate, "completion normalization is not positive");
  return psi;
}

/// The canonical orthonormal basis data: polynomials phi_0..phi_N, completion
/// psi_1..psi_K, the outer function behind the completion, and the atom set.
class CanonicalBasis {
public:
  CanonicalBasis(OpucBasis opuc, std::vector<GridFunction> psi, SzegoFn szego, std::vector<int> atom_set,
                 GridPtr grid)
      : opuc_(std::move(opuc)), psi_(std::move(psi)), szego_(std::move(szego)), atom_set_(std::move(atom_set)),
        grid_(std::move(grid)) {}

  int N() const noexcept { return opuc_.max_degree(); }
  int K() const noexcept { return static_cast<int>(psi_.size()); }
  const OpucBasis& opuc() const noexcept { return opuc_; }
  const SzegoFn& szego() const noexcept { return szego_; }
  const std::vector<int>& atom_set() const noexcept { return atom_set_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  GridFunction phi(int nidx) const { return opuc_.sample(nidx, grid_); }
  const GridFunction& psi(int k) const {  // 1-based index
    if (k < 1 || k > K()) raise(errc::precondition, "psi index out of range");
    return psi_[static_cast<size_t>(k - 1)];
  }

private:
  OpucBasis opuc_;
  std::vector<GridFunction> psi_;
  SzegoFn szego_;
  std::vector<int> atom_set_;
  GridPtr grid_;
};

inline CanonicalBasis make_canonical_basis(const CircleMeasure& mu, int N, int K, int M = 256) {
  const MomentTable mom = moments(mu, N + 1);
  OpucBasis opuc = szego_recursion(mom, N);
  SzegoFn D = szego_function(mu, M);
  std::vector<GridFunction> psi = psi_completion(mu, D, K);
  return CanonicalBasis(std::move(opuc), std::move(psi), std::move(D), mu.atom_indices(), mu.grid_ptr());
}

/// Conjugated samples of the canonical basis; conjugation is involutive and
/// preserves the Gram identity.
struct ConjugateBasis {
  std::vector<GridFunction> phi_star;  // indices 0..N
  std::vector<GridFunction> psi_star;  // indices 1..K (stored from 0)
};

inline ConjugateBasis conjugate_basis(const CanonicalBasis& b) {
  auto conjugated = [](GridFunction f) {
    for (Complex& z : f.values) z = std::conj(z);
    for (auto& [idx, z] : f.point_overrides) z = std::conj(z);
    return f;
  };
  ConjugateBasis out;
  for (int n = 0; n <= b.N(); ++n) out.phi_star.push_back(conjugated(b.phi(n)));
  for (int k = 1; k <= b.K(); ++k) out.psi_star.push_back(conjugated(b.psi(k)));
  return out;
}

/// Image of a polynomial F under the isometry of H^2 onto the orthogonal
/// complement of the polynomial span: f = F / conj(D) off atoms, 0 on atoms;
/// the L^2(mu) norm of f equals the H^2 norm of F.
inline GridFunction lift_h2_isometry(const Poly& F, const CanonicalBasis& b) {
  const GridPtr& grid = b.grid_ptr();
  std::vector<std::pair<int, Complex>> zero_at_atoms;
  for (int idx : b.atom_set()) zero_at_atoms.emplace_back(idx, Complex{0.0, 0.0});
  std::vector<Complex> v(static_cast<size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j)
    v[static_cast<size_t>(j)] = poly_eval(F, grid->point(j)) / std::conj(b.szego().boundary_at(j));
  return GridFunction(grid, std::move(v), std::move(zero_at_atoms));
}

/// Gram matrix of a family in L^2(mu).
inline Eigen::MatrixXcd family_gram(const std::vector<GridFunction>& fam, const CircleMeasure& mu) {
  const int m = static_cast<int>(fam.size());
  Eigen::MatrixXcd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = inner_l2(fam[static_cast<size_t>(i)], fam[static_cast<size_t>(j)], mu);
  return G;
}

inline Eigen::MatrixXcd cross_gram(const std::vector<GridFunction>& fa, const std::vector<GridFunction>& fb,
                                   const CircleMeasure& mu) {
  Eigen::MatrixXcd C(static_cast<int>(fa.size()), static_cast<int>(fb.size()));
  for (int i = 0; i < C.rows(); ++i)
    for (int j = 0; j < C.cols(); ++j)
      C(i, j) = inner_l2(fa[static_cast<size_t>(i)], fb[static_cast<size_t>(j)], mu);
  return C;
}

inline double identity_deviation(const Eigen::MatrixXcd& G) {
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

/// The full canonical family [phi_0..phi_N, psi_1..psi_K] as grid samples.
inline std::vector<GridFunction> canonical_family(const CanonicalBasis& b) {
  std::vector<GridFunction> fam;
  for (int n = 0; n <= b.N(); ++n) fam.push_back(b.phi(n));
  for (int k = 1; k <= b.K(); ++k) fam.push_back(b.psi(k));
  return fam;
}

}  // namespace opuckit
