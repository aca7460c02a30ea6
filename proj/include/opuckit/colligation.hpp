#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "opuckit/opuc.hpp"

namespace opuckit {

/// Matrix blocks of the multiplication-by-conj(t) operator on L^2(mu) in the
/// canonical basis, ordered [phi_1..phi_N, psi_1..psi_K, phi_0]; the constants
/// occupy the last slot, so the assembled matrix is [[T, F], [G, S]].
class Colligation {
public:
  Colligation(Eigen::MatrixXcd full, int N, int K, std::vector<double> column_tail = {}, double tau = 0.0)
      : full_(std::move(full)), N_(N), K_(K), column_tail_(std::move(column_tail)), tau_(tau) {
    if (full_.rows() != N_ + K_ + 1 || full_.cols() != N_ + K_ + 1)
      raise(errc::internal, "colligation block sizes do not match the matrix");
  }

  int N() const noexcept { return N_; }
  int K() const noexcept { return K_; }
  int dim() const noexcept { return N_ + K_ + 1; }

  const Eigen::MatrixXcd& full() const noexcept { return full_; }
  Eigen::MatrixXcd T() const { return full_.topLeftCorner(N_ + K_, N_ + K_); }
  Eigen::VectorXcd F() const { return full_.topRightCorner(N_ + K_, 1); }
  Eigen::RowVectorXcd G() const { return full_.bottomLeftCorner(1, N_ + K_); }
  Complex S() const { return full_(N_ + K_, N_ + K_); }

  const std::vector<double>& column_tail() const noexcept { return column_tail_; }
  double tau() const noexcept { return tau_; }

  /// The adjoint colligation as a view: conjugate transpose of the blocks
  /// (the input/output roles of F and G swap with the transposition).
  Colligation adjoint() const { return Colligation(full_.adjoint(), N_, K_, column_tail_, tau_); }

  // index helpers into the basis order
  int phi_slot(int n) const {  // n = 1..N
    if (n < 1 || n > N_) raise(errc::precondition, "phi slot out of range");
    return n - 1;
  }
  int psi_slot(int k) const {  // k = 1..K
    if (k < 1 || k > K_) raise(errc::precondition, "psi slot out of range");
    return N_ + k - 1;
  }
  int const_slot() const { return N_ + K_; }

private:
  Eigen::MatrixXcd full_;
  int N_, K_;
  std::vector<double> column_tail_;
  double tau_;
};

/// Entries <U b_col, b_row> in L^2(mu) with (U f)(t) = f(t)/t, for the basis
/// order [phi_1..phi_N, psi_1..psi_K, phi_0].  Refuses to assemble when the
/// basis Gram deviates from the identity by more than 1e-5.
inline Eigen::MatrixXcd build_umu_matrix(const CircleMeasure& mu, const CanonicalBasis& basis,
                                         double gram_guard = 1e-5) {
  const GridPtr& grid = basis.grid_ptr();
  if (grid->size() != mu.grid().size()) raise(errc::precondition, "grid mismatch");
  const int n = grid->size();
  const int N = basis.N(), K = basis.K();
  const int m = N + K + 1;
  // a.e. samples, plus a separate copy of the atom rows with the point values
  Eigen::MatrixXcd Smat(n, m);
  Eigen::MatrixXcd Arows(static_cast<int>(mu.atoms().size()), m);
  auto fill_column = [&](int col, const GridFunction& f) {
    for (int j = 0; j < n; ++j) Smat(j, col) = f[j];
    for (size_t a = 0; a < mu.atoms().size(); ++a) Arows(static_cast<int>(a), col) = f.value_at(mu.atoms()[a].index);
  };
  for (int c = 1; c <= N; ++c) fill_column(c - 1, basis.phi(c));
  for (int k = 1; k <= K; ++k) fill_column(N + k - 1, basis.psi(k));
  fill_column(m - 1, basis.phi(0));

  Eigen::VectorXd wdens(n);
  for (int j = 0; j < n; ++j) wdens(j) = mu.density()[static_cast<size_t>(j)] / n;

  Eigen::MatrixXcd gram = Smat.adjoint() * (wdens.asDiagonal() * Smat);
  for (size_t a = 0; a < mu.atoms().size(); ++a)
    gram += mu.atoms()[a].mass * Arows.row(static_cast<int>(a)).adjoint() * Arows.row(static_cast<int>(a));
  const double dev = identity_deviation(gram);
  if (dev > gram_guard)
    raise(errc::precondition, "basis Gram deviates from identity beyond guard; refusing to build");

  Eigen::VectorXcd wshift(n);
  for (int j = 0; j < n; ++j) wshift(j) = wdens(j) * std::conj(grid->point(j));
  Eigen::MatrixXcd full = Smat.adjoint() * (wshift.asDiagonal() * Smat);
  for (size_t a = 0; a < mu.atoms().size(); ++a) {
    const Atom& at = mu.atoms()[a];
    full += at.mass * std::conj(grid->point(at.index)) * Arows.row(static_cast<int>(a)).adjoint() *
            Arows.row(static_cast<int>(a));
  }
  return full;
}

/// Partition the assembled matrix into the colligation blocks and attach the
/// column-tail report: 1 - captured column mass bounds the truncation defect.
inline Colligation split_blocks(const Eigen::MatrixXcd& full, int N, int K) {
  const int m = N + K + 1;
  if (full.rows() != m || full.cols() != m) raise(errc::precondition, "matrix size does not match N, K");
  std::vector<double> tail(static_cast<size_t>(m));
  double tau = 0.0;
  // tau covers the columns with truncation headroom: phi_n for n <= N/2,
  // psi_k for k <= K/2, and the constants column.  The last polynomial
  // columns legitimately lose their mass to the dropped phi_{N+1}, ...
  for (int c = 0; c < m; ++c) {
    const double captured = full.col(c).squaredNorm();
    tail[static_cast<size_t>(c)] = std::max(0.0, 1.0 - captured);
    const bool phi_head = c < N && (c + 1) <= N / 2;
    const bool psi_head = c >= N && c < N + K && (c - N + 1) <= K / 2;
    if (phi_head || psi_head || c == m - 1) tau = std::max(tau, tail[static_cast<size_t>(c)]);
  }
  return Colligation(full, N, K, std::move(tail), tau);
}

inline Colligation build_colligation(const CircleMeasure& mu, const CanonicalBasis& basis) {
  return split_blocks(build_umu_matrix(mu, basis), basis.N(), basis.K());
}

/// Characteristic function value S + zeta G (I - zeta T)^{-1} F.  Restricted
/// to |zeta| <= 0.9 since truncation accuracy degrades toward the circle; the
/// linear solve is guarded against ill-conditioning.
inline Complex characteristic_function(const Colligation& c, Complex zeta) {
  if (std::abs(zeta) > 0.9 + 1e-12) raise(errc::precondition, "characteristic function probe outside |z| <= 0.9");
  const int m = c.N() + c.K();
  const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(m, m) - zeta * c.T();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  if (lu.rcond() < 1e-12) raise(errc::numeric, "resolvent solve ill-conditioned: truncation too small");
  const Eigen::VectorXcd x = lu.solve(c.F());
  return c.S() + zeta * (c.G() * x)(0, 0);
}

struct SimplicityReport {
  std::vector<double> controllability_residuals;  // phi_{j+1} against span{T^0 F .. T^j F}
  std::vector<double> observability_residuals;    // phi*_{j+1} coords against span{(T*)^0 G* .. (T*)^j G*}
  double psi_shift_deviation = 0.0;               // T* on psi coordinates vs the forward shift
};

/// Numerical confirmation that the Krylov spans of (T, F) and (T*, G*)
/// reproduce the polynomial family and its conjugates, and that T* acts as
/// the forward shift on the completion coordinates.
inline SimplicityReport verify_simplicity_spans(const Colligation& c, const CanonicalBasis& basis,
                                                const CircleMeasure& mu) {
  const int m = c.N() + c.K();
  const int steps = std::max(1, c.N() / 2);
  SimplicityReport rep;

  auto orthonormal_append = [](std::vector<Eigen::VectorXcd>& q, Eigen::VectorXcd v) {
    for (const Eigen::VectorXcd& u : q) v -= u.dot(v) * u;  // u.dot(v) = conj(u)^T v
    const double nrm = v.norm();
    if (nrm > 1e-14) {
      v /= nrm;
      q.push_back(std::move(v));
    }
  };
  auto residual_against = [](const std::vector<Eigen::VectorXcd>& q, const Eigen::VectorXcd& x) {
    Eigen::VectorXcd r = x;
    for (const Eigen::VectorXcd& u : q) r -= u.dot(x) * u;
    return r.norm();
  };

  {
    std::vector<Eigen::VectorXcd> q;
    Eigen::VectorXcd v = c.F();
    const Eigen::MatrixXcd T = c.T();
    for (int j = 0; j < steps && j + 1 <= c.N(); ++j) {
      orthonormal_append(q, v);
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
      e(c.phi_slot(j + 1)) = Complex{1.0, 0.0};
      rep.controllability_residuals.push_back(residual_against(q, e));
      v = T * v;
    }
  }
  {
    const ConjugateBasis conj = conjugate_basis(basis);
    std::vector<GridFunction> fam = canonical_family(basis);  // [phi_0.., psi..]
    std::vector<Eigen::VectorXcd> q;
    Eigen::VectorXcd v = c.G().adjoint();
    const Eigen::MatrixXcd Tadj = c.T().adjoint();
    for (int j = 0; j < steps && j + 1 <= c.N(); ++j) {
      orthonormal_append(q, v);
      // coordinates of phi*_{j+1} over [phi_1..phi_N, psi_1..psi_K]
      Eigen::VectorXcd x = Eigen::VectorXcd::Zero(m);
      for (int i = 1; i <= c.N(); ++i)
        x(c.phi_slot(i)) = inner_l2(conj.phi_star[static_cast<size_t>(j + 1)], fam[static_cast<size_t>(i)], mu);
      for (int k = 1; k <= c.K(); ++k)
        x(c.psi_slot(k)) =
            inner_l2(conj.phi_star[static_cast<size_t>(j + 1)], fam[static_cast<size_t>(c.N() + k)], mu);
      rep.observability_residuals.push_back(residual_against(q, x));
      v = Tadj * v;
    }
  }
  {
    const Eigen::MatrixXcd Tadj = c.T().adjoint();
    double dev = 0.0;
    for (int k = 1; k < c.K(); ++k) {
      Eigen::VectorXcd col = Tadj.col(c.psi_slot(k));
      for (int kk = 1; kk <= c.K(); ++kk) {
        const Complex expect = (kk == k + 1) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
        dev = std::max(dev, std::abs(col(c.psi_slot(kk)) - expect));
      }
    }
    rep.psi_shift_deviation = dev;
  }
  return rep;
}

}  // namespace opuckit
