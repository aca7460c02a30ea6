#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "opuckit/grid.hpp"
#include "opuckit/poly.hpp"

namespace opuckit {

/// Quotient of two complex polynomials on the extended plane.
///
/// Canonical form: monic denominator, trailing zeros trimmed, numerator and
/// denominator co-prime (common roots cancelled by root matching with
/// tolerance 1e-9; symbolic GCD is pointless for inexact coefficients).
/// Root lists for both polynomials are cached at construction.
class RationalFn {
public:
  static constexpr double cancel_tol = 1e-9;
  static constexpr double pole_guard = 1e-12;

  RationalFn() : RationalFn(Poly{Complex{0.0, 0.0}}, Poly{Complex{1.0, 0.0}}) {}

  RationalFn(Poly num, Poly den) {
    num = poly_trim(std::move(num), 1e-14);
    den = poly_trim(std::move(den), 1e-14);
    if (poly_is_zero(den)) raise(errc::precondition, "rational function with zero denominator");
    if (poly_is_zero(num)) {
      num_ = Poly{Complex{0.0, 0.0}};
      den_ = Poly{Complex{1.0, 0.0}};
      return;
    }
    if (poly_degree(num) >= 1 && poly_degree(den) >= 1) cancel_common_roots(num, den);
    // monic denominator
    const Complex lead = den.back();
    for (Complex& c : num) c /= lead;
    for (Complex& c : den) c /= lead;
    num_ = std::move(num);
    den_ = std::move(den);
    if (poly_degree(num_) >= 1) num_roots_ = poly_roots(num_);
    if (poly_degree(den_) >= 1) den_roots_ = poly_roots(den_);
  }

  static RationalFn constant(Complex c) { return RationalFn(Poly{c}, Poly{Complex{1.0, 0.0}}); }
  static RationalFn variable() { return RationalFn(Poly{{0.0, 0.0}, {1.0, 0.0}}, Poly{Complex{1.0, 0.0}}); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const std::vector<RootCluster>& zeros() const noexcept { return num_roots_; }
  const std::vector<RootCluster>& poles() const noexcept { return den_roots_; }

  bool is_zero() const { return poly_is_zero(num_); }
  bool is_constant() const { return poly_degree(num_) == 0 && poly_degree(den_) == 0; }

  Complex operator()(Complex z) const {
    for (const RootCluster& p : den_roots_)
      if (std::abs(z - p.z) <= pole_guard) raise(errc::degenerate, "evaluation too close to a pole");
    return poly_eval(num_, z) / poly_eval(den_, z);
  }

  double distance_to_poles(Complex z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const RootCluster& p : den_roots_) d = std::min(d, std::abs(z - p.z));
    return d;
  }

  bool has_pole_near_circle(double tol = 1e-9) const {
    for (const RootCluster& p : den_roots_)
      if (std::abs(std::abs(p.z) - 1.0) <= tol) return true;
    return false;
  }

  bool holomorphic_in_closed_disk(double margin = 1e-9) const {
    for (const RootCluster& p : den_roots_)
      if (std::abs(p.z) <= 1.0 + margin) return false;
    return true;
  }

  /// The involution f -> f^ with f^(z) = conj(f(1/conj(z))).  Coefficients are
  /// conjugated and order-reversed relative to the common degree.
  RationalFn hat() const {
    const int d = std::max(poly_degree(num_), poly_degree(den_));
    Poly n(static_cast<size_t>(d + 1), Complex{0.0, 0.0});
    Poly m(static_cast<size_t>(d + 1), Complex{0.0, 0.0});
    for (size_t k = 0; k < num_.size(); ++k) n[static_cast<size_t>(d) - k] = std::conj(num_[k]);
    for (size_t k = 0; k < den_.size(); ++k) m[static_cast<size_t>(d) - k] = std::conj(den_[k]);
    return RationalFn(std::move(n), std::move(m));
  }

  RationalFn reciprocal() const {
    if (is_zero()) raise(errc::precondition, "reciprocal of the zero function");
    return RationalFn(den_, num_);
  }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(poly_mul(a.num_, b.num_), poly_mul(a.den_, b.den_));
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) raise(errc::precondition, "division by the zero function");
    return RationalFn(poly_mul(a.num_, b.den_), poly_mul(a.den_, b.num_));
  }
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(poly_add(poly_mul(a.num_, b.den_), poly_mul(b.num_, a.den_)), poly_mul(a.den_, b.den_));
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(poly_sub(poly_mul(a.num_, b.den_), poly_mul(b.num_, a.den_)), poly_mul(a.den_, b.den_));
  }
  friend RationalFn operator*(Complex s, const RationalFn& a) { return RationalFn(poly_scale(a.num_, s), a.den_); }

  /// Boundary samples; rejects functions with poles within `pole_tol` of the circle.
  GridFunction boundary(const GridPtr& grid, double pole_tol = 1e-9) const {
    if (has_pole_near_circle(pole_tol)) raise(errc::degenerate, "pole on the unit circle");
    return sample_on_grid(grid, [this](Complex t) { return poly_eval(num_, t) / poly_eval(den_, t); });
  }

private:
  void cancel_common_roots(Poly& num, Poly& den) {
    std::vector<RootCluster> nr = poly_roots(num);
    std::vector<RootCluster> dr = poly_roots(den);
    bool cancelled = false;
    for (RootCluster& d : dr) {
      for (RootCluster& n : nr) {
        if (n.multiplicity == 0 || d.multiplicity == 0) continue;
        if (std::abs(n.z - d.z) <= cancel_tol) {
          const int m = std::min(n.multiplicity, d.multiplicity);
          n.multiplicity -= m;
          d.multiplicity -= m;
          cancelled = true;
        }
      }
    }
    if (!cancelled) return;
    std::vector<Complex> nkeep, dkeep;
    for (const RootCluster& n : nr)
      for (int i = 0; i < n.multiplicity; ++i) nkeep.push_back(n.z);
    for (const RootCluster& d : dr)
      for (int i = 0; i < d.multiplicity; ++i) dkeep.push_back(d.z);
    num = poly_from_roots(nkeep, num.back());
    den = poly_from_roots(dkeep, den.back());
  }

  Poly num_, den_;
  std::vector<RootCluster> num_roots_, den_roots_;
};

inline RationalFn hat_involution(const RationalFn& f) { return f.hat(); }

/// Finite Blaschke product c * prod ((z - a)/(1 - conj(a) z))^m with |c| = 1
/// and every zero strictly inside the disk.
class BlaschkeProduct {
public:
  BlaschkeProduct() = default;

  BlaschkeProduct(Complex unimodular, std::vector<RootCluster> zeros)
      : unimodular_(unimodular), zeros_(std::move(zeros)) {
    const double r = std::abs(unimodular_);
    if (std::abs(r - 1.0) > 1e-9) raise(errc::precondition, "blaschke constant must be unimodular");
    unimodular_ /= r;
    for (const RootCluster& a : zeros_)
      if (std::abs(a.z) >= 1.0 - 1e-12) raise(errc::precondition, "blaschke zero not strictly inside the disk");
  }

  Complex unimodular_constant() const noexcept { return unimodular_; }
  const std::vector<RootCluster>& zeros() const noexcept { return zeros_; }

  int degree() const {
    int d = 0;
    for (const RootCluster& a : zeros_) d += a.multiplicity;
    return d;
  }

  Complex eval(Complex z) const {
    Complex v = unimodular_;
    for (const RootCluster& a : zeros_) {
      const Complex factor = (z - a.z) / (Complex{1.0, 0.0} - std::conj(a.z) * z);
      for (int i = 0; i < a.multiplicity; ++i) v *= factor;
    }
    return v;
  }

  RationalFn to_rational() const {
    Poly n{unimodular_};
    Poly d{Complex{1.0, 0.0}};
    for (const RootCluster& a : zeros_)
      for (int i = 0; i < a.multiplicity; ++i) {
        n = poly_mul(n, Poly{-a.z, Complex{1.0, 0.0}});
        d = poly_mul(d, Poly{Complex{1.0, 0.0}, -std::conj(a.z)});
      }
    return RationalFn(std::move(n), std::move(d));
  }

  bool has_zero_at_origin(double tol = 1e-12) const {
    for (const RootCluster& a : zeros_)
      if (std::abs(a.z) <= tol) return true;
    return false;
  }

  /// Remove one zero at the origin (one multiplicity count).
  BlaschkeProduct deflate_origin(double tol = 1e-12) const {
    std::vector<RootCluster> zs;
    bool removed = false;
    for (const RootCluster& a : zeros_) {
      RootCluster b = a;
      if (!removed && std::abs(a.z) <= tol) {
        --b.multiplicity;
        removed = true;
      }
      if (b.multiplicity > 0) zs.push_back(b);
    }
    if (!removed) raise(errc::precondition, "no zero at the origin to remove");
    return BlaschkeProduct(unimodular_, std::move(zs));
  }

  BlaschkeProduct with_constant(Complex c) const {
    BlaschkeProduct b = *this;
    const double r = std::abs(c);
    if (std::abs(r - 1.0) > 1e-8) raise(errc::internal, "constant adjustment is not unimodular");
    b.unimodular_ = c / r;
    return b;
  }

private:
  Complex unimodular_{1.0, 0.0};
  std::vector<RootCluster> zeros_;
};

struct FactorizationResult {
  BlaschkeProduct inner;
  RationalFn outer;
};

/// Inner-outer split of a rational function holomorphic on the closed disk
/// (no poles with |z| <= 1, no zeros on the circle).  The rational inner part
/// is a finite Blaschke product; the outer factor is normalized so that
/// outer(0) is a positive real (the unimodular constant goes to the inner factor).
inline FactorizationResult inner_outer_factor(const RationalFn& h, double boundary_tol = 1e-9) {
  if (h.is_zero()) raise(errc::precondition, "inner-outer factorization of the zero function");
  for (const RootCluster& p : h.poles())
    if (std::abs(p.z) <= 1.0 + boundary_tol)
      raise(errc::precondition, "function has a pole in the closed disk; not in the holomorphic Nevanlinna class");
  std::vector<RootCluster> inner_zeros;
  std::vector<Complex> outer_zeros;
  for (const RootCluster& a : h.zeros()) {
    const double r = std::abs(a.z);
    if (r <= 1.0 - boundary_tol) {
      inner_zeros.push_back(a);
    } else if (r < 1.0 + boundary_tol) {
      raise(errc::degenerate, "zero on the unit circle; factorization degenerate");
    } else {
      for (int i = 0; i < a.multiplicity; ++i) outer_zeros.push_back(a.z);
    }
  }
  // outer = h / blaschke(inner zeros): assemble directly from the factored form
  const Complex lead = h.num().back();  // den is monic
  Poly onum = poly_from_roots(outer_zeros, lead);
  Poly oden = h.den();
  for (const RootCluster& a : inner_zeros)
    for (int i = 0; i < a.multiplicity; ++i) oden = poly_mul(oden, Poly{Complex{1.0, 0.0}, -std::conj(a.z)});
  RationalFn outer(std::move(onum), std::move(oden));
  const Complex o0 = outer(Complex{0.0, 0.0});
  const Complex phase = o0 / std::abs(o0);
  outer = (Complex{1.0, 0.0} / phase) * outer;
  return FactorizationResult{BlaschkeProduct(phase, std::move(inner_zeros)), std::move(outer)};
}

/// A rational function viewed as its own continuation to the exterior of the
/// closed disk: the boundary values from either side agree identically.
struct ExteriorRational {
  RationalFn fn;
  Complex eval(Complex z) const {
    if (std::abs(z) <= 1.0 - 1e-12) raise(errc::precondition, "exterior restriction evaluated inside the disk");
    return fn(z);
  }
};

inline ExteriorRational pseudocontinuation_rational(const RationalFn& f, double pole_tol = 1e-9) {
  if (f.has_pole_near_circle(pole_tol)) raise(errc::precondition, "pole on the unit circle: no boundary values");
  return ExteriorRational{f};
}

/// Split a rational function with unimodular boundary values into a quotient
/// I2 / I1 of finite Blaschke products: zeros of R inside the disk feed I2,
/// poles of R inside the disk feed I1; the unimodular constant is absorbed
/// into I2 so that I2/I1 reproduces R.
inline std::pair<BlaschkeProduct, BlaschkeProduct> blaschke_quotient_of_unimodular(const RationalFn& R,
                                                                                   double unimod_tol = 1e-8,
                                                                                   double boundary_tol = 1e-9) {
  if (R.is_zero()) raise(errc::precondition, "zero function is not unimodular");
  // contract: |R| = 1 on the circle
  const int m = 512;
  for (int j = 0; j < m; ++j) {
    const Complex t = std::polar(1.0, 2.0 * pi * (j + 0.5) / m);
    if (std::abs(std::abs(R(t)) - 1.0) > unimod_tol)
      raise(errc::precondition, "function is not unimodular on the circle");
  }
  std::vector<RootCluster> i2_zeros, i1_zeros;
  for (const RootCluster& a : R.zeros()) {
    const double r = std::abs(a.z);
    if (std::abs(r - 1.0) <= boundary_tol) raise(errc::degenerate, "zero on the unit circle");
    if (r < 1.0) i2_zeros.push_back(a);
  }
  for (const RootCluster& p : R.poles()) {
    const double r = std::abs(p.z);
    if (std::abs(r - 1.0) <= boundary_tol) raise(errc::degenerate, "pole on the unit circle");
    if (r < 1.0) i1_zeros.push_back(p);
  }
  BlaschkeProduct I1(Complex{1.0, 0.0}, std::move(i1_zeros));
  BlaschkeProduct I2(Complex{1.0, 0.0}, std::move(i2_zeros));
  // absorb the unimodular constant into I2
  Complex s{0.0, 0.0};
  int used = 0;
  for (int j = 0; j < 8; ++j) {
    const Complex t = std::polar(1.0, 2.0 * pi * (j + 0.37) / 8);
    const Complex i2t = I2.eval(t);
    if (std::abs(i2t) < 1e-8) continue;
    s += R(t) * I1.eval(t) / i2t;
    ++used;
  }
  if (used == 0) raise(errc::internal, "no usable test points for constant absorption");
  s /= static_cast<double>(used);
  if (std::abs(std::abs(s) - 1.0) > unimod_tol) raise(errc::precondition, "function is not a Blaschke quotient");
  I2 = I2.with_constant(s);
  // verify the reproduction on a sample set
  double dev = 0.0;
  for (int j = 0; j < m; ++j) {
    const Complex t = std::polar(1.0, 2.0 * pi * (j + 0.5) / m);
    dev = std::max(dev, std::abs(I2.eval(t) / I1.eval(t) - R(t)));
  }
  if (dev > 10.0 * unimod_tol) raise(errc::internal, "blaschke quotient does not reproduce the input");
  return {I1, I2};
}

/// Outer spectral factor of a rational weight W >= 0 on the circle:
/// the rational D, holomorphic and zero-free in the disk with D(0) > 0,
/// such that D * D^ = W (equivalently |D|^2 = W on the circle).
inline RationalFn outer_spectral_factor(const RationalFn& W, double boundary_tol = 1e-9) {
  if (W.is_zero()) raise(errc::precondition, "zero weight has no outer factor");
  std::vector<Complex> dnum, dden;
  for (const RootCluster& a : W.zeros()) {
    const double r = std::abs(a.z);
    if (std::abs(r - 1.0) <= boundary_tol) raise(errc::degenerate, "weight vanishes on the circle");
    if (r > 1.0)
      for (int i = 0; i < a.multiplicity; ++i) dnum.push_back(a.z);
  }
  for (const RootCluster& p : W.poles()) {
    const double r = std::abs(p.z);
    if (std::abs(r - 1.0) <= boundary_tol) raise(errc::degenerate, "weight has a pole on the circle");
    if (r > 1.0)
      for (int i = 0; i < p.multiplicity; ++i) dden.push_back(p.z);
  }
  RationalFn d0(poly_from_roots(dnum), poly_from_roots(dden));
  const RationalFn t = d0 * d0.hat();
  // W / (d0 * d0^) must be a positive constant; evaluate at a few circle points
  Complex s{0.0, 0.0};
  int used = 0;
  for (int j = 0; j < 8; ++j) {
    const Complex z = std::polar(1.0, 2.0 * pi * (j + 0.29) / 8);
    const Complex tz = t(z);
    if (std::abs(tz) < 1e-12) continue;
    const Complex ratio = W(z) / tz;
    s += ratio;
    ++used;
  }
  if (used == 0) raise(errc::internal, "no usable test points for spectral factor");
  s /= static_cast<double>(used);
  if (!(s.real() > 0.0) || std::abs(s.imag()) > 1e-7 * std::abs(s))
    raise(errc::internal, "spectral factor ratio is not a positive constant");
  const Complex d00 = d0(Complex{0.0, 0.0});
  const Complex alpha = std::sqrt(s.real()) * std::conj(d00) / std::abs(d00);
  RationalFn D = alpha * d0;
  // consistency: D * D^ reproduces W on the circle
  const RationalFn dd = D * D.hat();
  for (int j = 0; j < 16; ++j) {
    const Complex z = std::polar(1.0, 2.0 * pi * (j + 0.41) / 16);
    if (std::abs(dd(z) - W(z)) > 1e-7 * std::max(1.0, std::abs(W(z))))
      raise(errc::internal, "spectral factor does not reproduce the weight");
  }
  return D;
}

}  // namespace opuckit
