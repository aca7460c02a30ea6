#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "opuckit/common.hpp"

namespace opuckit {

/// Complex polynomial, coefficients in ascending powers, trailing zeros trimmed.
using Poly = std::vector<Complex>;

inline double poly_max_abs(const Poly& p) {
  double m = 0.0;
  for (const Complex& c : p) m = std::max(m, std::abs(c));
  return m;
}

inline Poly poly_trim(Poly p, double rel_tol = 0.0) {
  const double cut = rel_tol * poly_max_abs(p);
  while (p.size() > 1 && std::abs(p.back()) <= cut) p.pop_back();
  if (p.empty()) p.push_back(Complex{0.0, 0.0});
  return p;
}

inline bool poly_is_zero(const Poly& p, double tol = 0.0) {
  for (const Complex& c : p)
    if (std::abs(c) > tol) return false;
  return true;
}

inline int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Complex poly_eval(const Poly& p, Complex z) {
  Complex s{0.0, 0.0};
  for (size_t k = p.size(); k-- > 0;) s = s * z + p[k];
  return s;
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{Complex{0.0, 0.0}};
  Poly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Complex{0.0, 0.0});
  for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return poly_trim(std::move(r));
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Complex{0.0, 0.0});
  for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  return poly_trim(std::move(r));
}

inline Poly poly_scale(Poly a, Complex s) {
  for (Complex& c : a) c *= s;
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Complex{0.0, 0.0});
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

inline Poly poly_from_roots(const std::vector<Complex>& roots, Complex lead = Complex{1.0, 0.0}) {
  Poly p{lead};
  for (const Complex& r : roots) {
    Poly q(p.size() + 1, Complex{0.0, 0.0});
    for (size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = std::move(q);
  }
  return p;
}

/// Reversed-conjugate polynomial p*(z) = z^deg * conj(p(1/conj(z))).
inline Poly poly_conj_reverse(const Poly& p) {
  Poly r(p.size());
  for (size_t k = 0; k < p.size(); ++k) r[p.size() - 1 - k] = std::conj(p[k]);
  return poly_trim(std::move(r));
}

struct RootCluster {
  Complex z;
  int multiplicity;
};

/// Roots via the companion-matrix eigensolve with one Newton polish step per
/// root; nearby roots are merged into multiplicity clusters (radius
/// `cluster_radius`).
inline std::vector<RootCluster> poly_roots(const Poly& poly, double cluster_radius = 1e-7) {
  Poly p = poly_trim(poly, 1e-14);
  if (poly_is_zero(p)) raise(errc::precondition, "root finding on the zero polynomial");
  // strip exact zero roots at the origin first
  int zero_mult = 0;
  while (p.size() > 1 && std::abs(p[0]) == 0.0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  std::vector<Complex> raw;
  const int d = poly_degree(p);
  if (d >= 1) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    const Complex lead = p[static_cast<size_t>(d)];
    for (int i = 1; i < d; ++i) companion(i, i - 1) = Complex{1.0, 0.0};
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<size_t>(i)] / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    if (es.info() != Eigen::Success) raise(errc::numeric, "companion eigensolve failed");
    const Poly dp = poly_derivative(p);
    for (int i = 0; i < d; ++i) {
      Complex z = es.eigenvalues()(i);
      const Complex fpz = poly_eval(dp, z);
      if (std::abs(fpz) > 1e-12 * std::max(1.0, poly_max_abs(dp))) z -= poly_eval(p, z) / fpz;
      raw.push_back(z);
    }
  }
  // multiplicity clustering
  std::vector<RootCluster> clusters;
  std::vector<bool> used(raw.size(), false);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Complex acc = raw[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(raw[j] - acc / static_cast<double>(count)) <= cluster_radius) {
        acc += raw[j];
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({acc / static_cast<double>(count), count});
  }
  if (zero_mult > 0) clusters.push_back({Complex{0.0, 0.0}, zero_mult});
  return clusters;
}

inline std::vector<Complex> expand_roots(const std::vector<RootCluster>& clusters) {
  std::vector<Complex> out;
  for (const RootCluster& c : clusters)
    for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.z);
  return out;
}

}  // namespace opuckit
