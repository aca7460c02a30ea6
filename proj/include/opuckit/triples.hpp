#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "opuckit/measure.hpp"
#include "opuckit/rational.hpp"
#include "opuckit/series.hpp"

namespace opuckit {

enum class FnKind { constant, rational, taylor };

/// Fixed lattice in the open disk used to validate class membership:
/// radii {0.3, 0.6, 0.9} times 64 angles.
inline const std::vector<Complex>& disk_test_lattice() {
  static const std::vector<Complex> lattice = [] {
    std::vector<Complex> pts;
    for (double r : {0.3, 0.6, 0.9})
      for (int j = 0; j < 64; ++j) pts.push_back(std::polar(r, 2.0 * pi * j / 64.0));
    return pts;
  }();
  return lattice;
}

/// Holomorphic function on the disk in one of three representations:
/// a constant, a rational function, or truncated Taylor coefficients with
/// radius-1 validity.
class DiskFn {
public:
  static DiskFn constant(Complex c) {
    DiskFn f;
    f.kind_ = FnKind::constant;
    f.constant_ = c;
    return f;
  }
  static DiskFn rational(RationalFn r) {
    DiskFn f;
    f.kind_ = FnKind::rational;
    f.rational_ = std::move(r);
    return f;
  }
  static DiskFn taylor(Series s) {
    if (s.empty()) raise(errc::precondition, "empty Taylor representation");
    DiskFn f;
    f.kind_ = FnKind::taylor;
    f.taylor_ = std::move(s);
    return f;
  }

  FnKind kind() const noexcept { return kind_; }

  Complex eval(Complex z) const {
    switch (kind_) {
      case FnKind::constant:
        return constant_;
      case FnKind::rational:
        return (*rational_)(z);
      case FnKind::taylor:
        if (std::abs(z) >= 1.0) raise(errc::precondition, "Taylor representation only valid inside the disk");
        return series_eval(taylor_, z);
    }
    raise(errc::internal, "bad kind");
  }

  /// Boundary samples: exact for constant and rational kinds, the truncated
  /// partial sum for the taylor kind.
  GridFunction boundary(const GridPtr& grid) const {
    switch (kind_) {
      case FnKind::constant:
        return GridFunction(grid, std::vector<Complex>(static_cast<size_t>(grid->size()), constant_));
      case FnKind::rational:
        return rational_->boundary(grid);
      case FnKind::taylor:
        return sample_on_grid(grid, [this](Complex t) { return series_eval(taylor_, t); });
    }
    raise(errc::internal, "bad kind");
  }

  Complex constant_value() const {
    if (kind_ != FnKind::constant) raise(errc::precondition, "not a constant representation");
    return constant_;
  }
  const RationalFn& rational_fn() const {
    if (kind_ != FnKind::rational) raise(errc::precondition, "not a rational representation");
    return *rational_;
  }
  const Series& taylor_coeffs() const {
    if (kind_ != FnKind::taylor) raise(errc::precondition, "not a Taylor representation");
    return taylor_;
  }

  bool is_rational_like() const { return kind_ != FnKind::taylor; }

  RationalFn as_rational() const {
    if (kind_ == FnKind::constant) return RationalFn::constant(constant_);
    if (kind_ == FnKind::rational) return *rational_;
    raise(errc::precondition, "Taylor representation has no rational form");
  }

private:
  FnKind kind_ = FnKind::constant;
  Complex constant_{0.0, 0.0};
  std::optional<RationalFn> rational_;
  Series taylor_;
};

/// Schur function: holomorphic on the disk with modulus at most 1.
class SchurFn {
public:
  static SchurFn from_constant(Complex c) { return SchurFn(DiskFn::constant(c)); }
  static SchurFn from_rational(RationalFn r) { return SchurFn(DiskFn::rational(std::move(r))); }
  static SchurFn from_taylor(Series s) { return SchurFn(DiskFn::taylor(std::move(s))); }

  explicit SchurFn(DiskFn f) : fn_(std::move(f)) {
    for (const Complex& z : disk_test_lattice())
      if (std::abs(fn_.eval(z)) > 1.0 + 1e-9) raise(errc::precondition, "not a Schur function: modulus exceeds 1");
    if (fn_.kind() == FnKind::rational) {
      const RationalFn& r = fn_.rational_fn();
      if (!r.holomorphic_in_closed_disk(1e-9))
        raise(errc::precondition, "not a Schur function: pole in the closed disk");
      for (int j = 0; j < 512; ++j) {
        const Complex t = std::polar(1.0, 2.0 * pi * (j + 0.5) / 512);
        if (std::abs(r(t)) > 1.0 + 1e-9) raise(errc::precondition, "not a Schur function: boundary modulus exceeds 1");
      }
    }
  }

  const DiskFn& fn() const noexcept { return fn_; }
  FnKind kind() const noexcept { return fn_.kind(); }
  Complex eval(Complex z) const { return fn_.eval(z); }
  GridFunction boundary(const GridPtr& grid) const { return fn_.boundary(grid); }

  /// Inner means unimodular boundary values.  Only decidable for the constant
  /// and rational kinds; a Taylor-represented function is reported non-inner
  /// when its modulus stays below 1 - tol somewhere on the test lattice.
  bool is_inner(double tol = 1e-6) const {
    switch (fn_.kind()) {
      case FnKind::constant:
        return std::abs(std::abs(fn_.constant_value()) - 1.0) < tol;
      case FnKind::rational: {
        const RationalFn& r = fn_.rational_fn();
        for (int j = 0; j < 512; ++j) {
          const Complex t = std::polar(1.0, 2.0 * pi * (j + 0.5) / 512);
          if (std::abs(r(t)) < 1.0 - tol) return false;
        }
        return true;
      }
      case FnKind::taylor: {
        for (const Complex& z : disk_test_lattice())
          if (std::abs(fn_.eval(z)) < 1.0 - tol) return false;
        return true;
      }
    }
    raise(errc::internal, "bad kind");
  }

private:
  DiskFn fn_;
};

/// Normalized Caratheodory function: holomorphic on the disk, nonnegative
/// real part, value 1 at the origin.
class CaratheodoryFn {
public:
  static CaratheodoryFn from_constant(Complex c) { return CaratheodoryFn(DiskFn::constant(c)); }
  static CaratheodoryFn from_rational(RationalFn r) { return CaratheodoryFn(DiskFn::rational(std::move(r))); }
  static CaratheodoryFn from_taylor(Series s) { return CaratheodoryFn(DiskFn::taylor(std::move(s))); }

  explicit CaratheodoryFn(DiskFn f) : fn_(std::move(f)) {
    if (std::abs(fn_.eval(Complex{0.0, 0.0}) - Complex{1.0, 0.0}) > 1e-10)
      raise(errc::precondition, "not normalized: value at 0 differs from 1");
    for (const Complex& z : disk_test_lattice())
      if (fn_.eval(z).real() < -1e-9)
        raise(errc::precondition, "not a Caratheodory function: negative real part");
  }

  const DiskFn& fn() const noexcept { return fn_; }
  FnKind kind() const noexcept { return fn_.kind(); }
  Complex eval(Complex z) const { return fn_.eval(z); }
  GridFunction boundary(const GridPtr& grid) const { return fn_.boundary(grid); }

private:
  DiskFn fn_;
};

/// Phi(z) = (1 + z Theta(z)) / (1 - z Theta(z)).  For the Taylor kind the
/// output order is the input order unless a longer `order` is requested; the
/// division generates the higher coefficients exactly.
inline CaratheodoryFn schur_to_caratheodory(const SchurFn& theta, int order = -1) {
  switch (theta.kind()) {
    case FnKind::constant: {
      const Complex c = theta.fn().constant_value();
      return CaratheodoryFn::from_rational(
          RationalFn(Poly{Complex{1.0, 0.0}, c}, Poly{Complex{1.0, 0.0}, -c}));
    }
    case FnKind::rational: {
      const RationalFn& r = theta.fn().rational_fn();
      const Poly zn = poly_mul(Poly{{0.0, 0.0}, {1.0, 0.0}}, r.num());  // z * num
      return CaratheodoryFn::from_rational(RationalFn(poly_add(r.den(), zn), poly_sub(r.den(), zn)));
    }
    case FnKind::taylor: {
      const Series& s = theta.fn().taylor_coeffs();
      const int M = order > 0 ? order : static_cast<int>(s.size());
      const Series zs = series_shift_up(s, M);
      const Series one{Complex{1.0, 0.0}};
      return CaratheodoryFn::from_taylor(series_div(series_add(one, zs, M), series_sub(one, zs, M), M));
    }
  }
  raise(errc::internal, "bad kind");
}

/// Theta(z) = (Phi(z) - 1) / (z (Phi(z) + 1)), removable singularity at 0
/// resolved by coefficient cancellation.
inline SchurFn caratheodory_to_schur(const CaratheodoryFn& phi) {
  switch (phi.kind()) {
    case FnKind::constant:
      // Phi(0) = 1 forces Phi == 1 for constants
      return SchurFn::from_constant(Complex{0.0, 0.0});
    case FnKind::rational: {
      const RationalFn& r = phi.fn().rational_fn();
      Poly ns = poly_sub(r.num(), r.den());
      const double scale = std::max(poly_max_abs(r.num()), poly_max_abs(r.den()));
      if (std::abs(ns.empty() ? Complex{0.0, 0.0} : ns[0]) > 1e-9 * scale)
        raise(errc::precondition, "normalization failure: numerator does not vanish at 0");
      if (poly_is_zero(ns)) return SchurFn::from_constant(Complex{0.0, 0.0});
      ns.erase(ns.begin());  // divide by z
      return SchurFn::from_rational(RationalFn(std::move(ns), poly_add(r.num(), r.den())));
    }
    case FnKind::taylor: {
      const Series& s = phi.fn().taylor_coeffs();
      const int M = std::max<int>(1, static_cast<int>(s.size()) - 1);
      Series numer = s;
      if (std::abs(numer[0] - Complex{1.0, 0.0}) > 1e-9)
        raise(errc::precondition, "normalization failure: value at 0 differs from 1");
      numer[0] = Complex{0.0, 0.0};
      const Series deflated = series_deflate_zero(numer);
      Series denom = s;
      denom[0] += Complex{1.0, 0.0};
      return SchurFn::from_taylor(series_div(deflated, denom, M - 1));
    }
  }
  raise(errc::internal, "bad kind");
}

/// Herglotz transform Phi(z) = integral of (t+z)/(t-z) d(mu), realized through
/// the moment expansion Phi = 1 + 2 sum_{k>=1} c_k z^k with c_k the measure
/// moments; exact for band-limited densities.
inline CaratheodoryFn measure_to_caratheodory(const CircleMeasure& mu, int M = 256) {
  if (M >= mu.grid().size() / 2) raise(errc::precondition, "series length too large for the grid");
  const std::vector<Complex> c = raw_moments(mu, M);
  if (std::abs(c[0] - Complex{1.0, 0.0}) > 1e-8) raise(errc::precondition, "measure is not a probability measure");
  Series phi(static_cast<size_t>(M + 1));
  phi[0] = Complex{1.0, 0.0};
  for (int k = 1; k <= M; ++k) phi[static_cast<size_t>(k)] = 2.0 * c[static_cast<size_t>(k)];
  return CaratheodoryFn::from_taylor(std::move(phi));
}

namespace detail {

/// Herglotz kernel of a point mass at the grid node t0: (t0 + z)/(t0 - z).
inline RationalFn atom_kernel(Complex t0) { return RationalFn(Poly{t0, Complex{1.0, 0.0}}, Poly{t0, Complex{-1.0, 0.0}}); }

/// Point-mass detection from Taylor coefficients of a Caratheodory function.
/// With moments c_k = Phi_k/2 the Cesaro sum
///   A_K(t0) = 1 + sum_{k<=K} (1 - k/(K+1)) Re(Phi_k t0^k)
/// satisfies A_K/(K+1) = mass(t0) + w(t0)/(K+1) + O(1/(K+1)^2); a three-point
/// fit in 1/(K+1) isolates the mass.  The nonnegative Fejer kernel keeps
/// sidelobes quadratically small, but neighbors of a heavy atom still report
/// spurious mass, so above-threshold nodes are merged into clusters and only
/// each cluster's peak carries an atom.
inline std::vector<Atom> fejer_atom_scan(const Series& s, const GridPtr& grid, double atom_tol) {
  const int n = grid->size();
  const int M = static_cast<int>(s.size()) - 1;
  const int K1 = M, K0 = std::max(2, M / 2), Km = std::max(1, M / 4);
  const double x1 = 1.0 / (K1 + 1.0), x0 = 1.0 / (K0 + 1.0), xm = 1.0 / (Km + 1.0);
  const double l1 = (0.0 - x0) * (0.0 - xm) / ((x1 - x0) * (x1 - xm));
  const double l0 = (0.0 - x1) * (0.0 - xm) / ((x0 - x1) * (x0 - xm));
  const double lm = (0.0 - x1) * (0.0 - x0) / ((xm - x1) * (xm - x0));
  std::vector<double> mass_ext(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    const Complex t = grid->point(j);
    double sum = 0.0, ksum = 0.0;
    Complex tk{1.0, 0.0};
    double a_m = 0.0, a_0 = 0.0;
    for (int k = 1; k <= K1; ++k) {
      tk *= t;
      const double re = (s[static_cast<size_t>(k)] * tk).real();
      sum += re;
      ksum += k * re;
      if (k == Km) a_m = (1.0 + sum - ksum / (Km + 1.0)) / (Km + 1.0);
      if (k == K0) a_0 = (1.0 + sum - ksum / (K0 + 1.0)) / (K0 + 1.0);
    }
    const double a_1 = (1.0 + sum - ksum / (K1 + 1.0)) / (K1 + 1.0);
    mass_ext[static_cast<size_t>(j)] = l1 * a_1 + l0 * a_0 + lm * a_m;
  }
  std::vector<Atom> atoms;
  std::vector<bool> hot(static_cast<size_t>(n), false);
  bool any = false;
  for (int j = 0; j < n; ++j)
    if (mass_ext[static_cast<size_t>(j)] > atom_tol) hot[static_cast<size_t>(j)] = true, any = true;
  if (any) {
    const int gap = 8;
    std::vector<bool> visited(static_cast<size_t>(n), false);
    for (int j = 0; j < n; ++j) {
      if (!hot[static_cast<size_t>(j)] || visited[static_cast<size_t>(j)]) continue;
      int peak = j;
      auto visit = [&](int idx) {
        visited[static_cast<size_t>(idx)] = true;
        if (mass_ext[static_cast<size_t>(idx)] > mass_ext[static_cast<size_t>(peak)]) peak = idx;
      };
      visit(j);
      for (int dir : {1, -1}) {
        int misses = 0;
        for (int step = 1; step < n && misses <= gap; ++step) {
          const int idx = ((j + dir * step) % n + n) % n;
          if (visited[static_cast<size_t>(idx)] && hot[static_cast<size_t>(idx)]) break;
          if (hot[static_cast<size_t>(idx)]) {
            visit(idx);
            misses = 0;
          } else {
            ++misses;
          }
        }
      }
      const double mass = mass_ext[static_cast<size_t>(peak)];
      if (mass > 1.0 + 1e-6) raise(errc::precondition, "recovered point mass exceeds the total");
      atoms.push_back(Atom{peak, mass});
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.index < b.index; });
  return atoms;
}

}  // namespace detail

/// Atom handling for the Taylor branch of caratheodory_to_measure.  Point
/// masses cannot be read off finitely many Taylor coefficients without an
/// extra inference step, so the default leaves them smeared into the density;
/// `fejer_scan` runs the averaged-Fourier-sum detector and moves recovered
/// masses onto grid nodes.
enum class AtomRecovery { none, fejer_scan };

/// Recover the measure of a Caratheodory function: density w = Re of the
/// boundary values, atoms from simple poles on the circle (rational kind).
/// For the Taylor kind the plain boundary sums are used when they stay
/// nonnegative; otherwise (an unresolved point mass makes them oscillate
/// negative) the Cesaro means of the same data are taken, which are
/// nonnegative by construction.  Atoms must land on grid nodes.
inline CircleMeasure caratheodory_to_measure(const CaratheodoryFn& phi, const GridPtr& grid,
                                             AtomRecovery recovery = AtomRecovery::none,
                                             double atom_tol = 1e-4) {
  const int n = grid->size();
  switch (phi.kind()) {
    case FnKind::constant:
      return CircleMeasure::lebesgue(grid);
    case FnKind::rational: {
      const RationalFn& r = phi.fn().rational_fn();
      std::vector<Atom> atoms;
      RationalFn ac = r;
      for (const RootCluster& p : r.poles()) {
        const double rad = std::abs(p.z);
        if (rad < 1.0 - 1e-9) raise(errc::precondition, "pole inside the disk: not a Caratheodory function");
        if (std::abs(rad - 1.0) > 1e-9) continue;  // pole in the exterior is fine
        if (p.multiplicity != 1) raise(errc::precondition, "non-simple pole on the circle is unsupported");
        const int j = grid->snap_index(p.z / rad, 1e-9);
        const Complex t0 = grid->point(j);
        const Complex A = -poly_eval(r.num(), t0) / poly_eval(poly_derivative(r.den()), t0);
        const Complex massc = A / (2.0 * t0);
        if (!(massc.real() > 0.0) || std::abs(massc.imag()) > 1e-8 * std::abs(massc))
          raise(errc::precondition, "circle pole does not carry a positive mass");
        atoms.push_back(Atom{j, massc.real()});
        ac = ac - massc.real() * detail::atom_kernel(t0);
      }
      if (ac.has_pole_near_circle(1e-9)) raise(errc::internal, "atom removal left a pole on the circle");
      std::vector<double> w(static_cast<size_t>(n));
      double wmax = 0.0;
      for (int j = 0; j < n; ++j) {
        w[static_cast<size_t>(j)] = ac(grid->point(j)).real();
        wmax = std::max(wmax, std::abs(w[static_cast<size_t>(j)]));
      }
      for (double& x : w) {
        if (x < -1e-8 * std::max(1.0, wmax)) raise(errc::precondition, "negative density: not a Caratheodory function");
        if (x < 0.0) x = 0.0;
      }
      return CircleMeasure(grid, std::move(w), std::move(atoms));
    }
    case FnKind::taylor: {
      const Series& s = phi.fn().taylor_coeffs();
      const int M = static_cast<int>(s.size()) - 1;
      if (M >= n / 2) raise(errc::precondition, "grid too small for the series length");
      std::vector<Atom> atoms;
      Series ac = s;
      if (recovery == AtomRecovery::fejer_scan) {
        atoms = detail::fejer_atom_scan(s, grid, atom_tol);
        for (const Atom& a : atoms) {
          const Complex t0 = grid->point(a.index);
          ac[0] -= Complex{a.mass, 0.0};
          Complex u{1.0, 0.0};
          for (int k = 1; k <= M; ++k) {
            u *= std::conj(t0);
            ac[static_cast<size_t>(k)] -= 2.0 * a.mass * u;
          }
        }
      }
      std::vector<double> w(static_cast<size_t>(n));
      double wmin = 0.0, wmax = 0.0;
      for (int j = 0; j < n; ++j) {
        w[static_cast<size_t>(j)] = series_eval(ac, grid->point(j)).real();
        wmin = std::min(wmin, w[static_cast<size_t>(j)]);
        wmax = std::max(wmax, std::abs(w[static_cast<size_t>(j)]));
      }
      if (wmin < -1e-8 * std::max(1.0, wmax)) {
        if (recovery == AtomRecovery::fejer_scan)
          raise(errc::precondition, "negative density after atom removal: not a Caratheodory function");
        // an unresolved point mass makes the plain sums oscillate negative;
        // the Cesaro means of the same coefficients are nonnegative whenever
        // the underlying measure is
        for (int j = 0; j < n; ++j) {
          const Complex t = grid->point(j);
          Complex tk{1.0, 0.0};
          double acc = ac[0].real();
          for (int k = 1; k <= M; ++k) {
            tk *= t;
            acc += (1.0 - static_cast<double>(k) / (M + 1)) * (ac[static_cast<size_t>(k)] * tk).real();
          }
          if (acc < -1e-8 * std::max(1.0, wmax))
            raise(errc::precondition, "negative density: not a Caratheodory function");
          w[static_cast<size_t>(j)] = std::max(0.0, acc);
        }
      } else {
        for (double& x : w) x = std::max(0.0, x);
      }
      return CircleMeasure(grid, std::move(w), std::move(atoms));
    }
  }
  raise(errc::internal, "bad kind");
}

/// Max grid deviation of the boundary identity
/// 1 - |Theta|^2 = 4 Re(Phi) / |Phi + 1|^2; samples too close to a boundary
/// pole of a rational representation are skipped.
inline double boundary_identity_check(const SchurFn& theta, const CaratheodoryFn& phi, const GridPtr& grid) {
  auto valid = [&](const DiskFn& f, Complex t) {
    if (f.kind() != FnKind::rational) return true;
    return f.rational_fn().distance_to_poles(t) > 1e-6;
  };
  auto at_boundary = [](const DiskFn& f, Complex t) -> Complex {
    switch (f.kind()) {
      case FnKind::constant:
        return f.constant_value();
      case FnKind::rational:
        return f.rational_fn()(t);
      case FnKind::taylor:
        return series_eval(f.taylor_coeffs(), t);
    }
    raise(errc::internal, "bad kind");
  };
  double dev = 0.0;
  for (int j = 0; j < grid->size(); ++j) {
    const Complex t = grid->point(j);
    if (!valid(theta.fn(), t) || !valid(phi.fn(), t)) continue;
    const Complex th = at_boundary(theta.fn(), t);
    const Complex ph = at_boundary(phi.fn(), t);
    const double denom = std::norm(ph + Complex{1.0, 0.0});
    if (denom < 1e-8) continue;
    dev = std::max(dev, std::abs((1.0 - std::norm(th)) - 4.0 * ph.real() / denom));
  }
  return dev;
}

struct SzegoReport {
  double integral;         // mean of ln w over the grid (floored logarithm)
  bool holds;              // integral above the divergence threshold
  bool refinement_stable;  // sub-grid probes agree within 1%
};

/// Szego condition: m-integrability of ln w, decided through the floored grid
/// quadrature with a divergence threshold and a stability probe over nested
/// sub-grids.
inline SzegoReport szego_condition(const CircleMeasure& mu, double threshold = 50.0,
                                   double log_floor = 1e-300) {
  const std::vector<double>& w = mu.density();
  auto log_mean = [&](int stride) {
    double s = 0.0;
    int count = 0;
    for (size_t j = 0; j < w.size(); j += static_cast<size_t>(stride)) {
      s += std::log(std::max(w[j], log_floor));
      ++count;
    }
    return s / count;
  };
  const double i1 = log_mean(1), i2 = log_mean(2), i4 = log_mean(4);
  const double scale = std::max(1.0, std::abs(i1));
  const bool stable = std::abs(i1 - i2) <= 0.01 * scale && std::abs(i2 - i4) <= 0.01 * scale;
  return SzegoReport{i1, i1 > -threshold, stable};
}

/// Normalized outer function with |D|^2 = w on the circle: Taylor coefficients
/// of exp(c_0/2 + sum_{k>=1} c_k z^k) where c_k are the Fourier coefficients
/// of ln w; boundary samples from the truncated series itself so the data is
/// holomorphic by construction.
class SzegoFn {
public:
  SzegoFn(Series taylor, GridFunction boundary, Series log_coeffs)
      : taylor_(std::move(taylor)), boundary_(std::move(boundary)), log_coeffs_(std::move(log_coeffs)) {
    if (taylor_.empty() || !(taylor_[0].real() > 0.0) || std::abs(taylor_[0].imag()) > 1e-12)
      raise(errc::internal, "Szego function constant term must be a positive real");
  }

  double d0() const { return taylor_[0].real(); }
  const Series& taylor() const noexcept { return taylor_; }
  const GridFunction& boundary() const noexcept { return boundary_; }
  const Series& log_coeffs() const noexcept { return log_coeffs_; }
  const GridPtr& grid_ptr() const noexcept { return boundary_.grid; }

  Complex eval(Complex z) const {
    if (std::abs(z) >= 1.0) raise(errc::precondition, "series evaluation outside the open disk");
    return series_eval(taylor_, z);
  }
  Complex boundary_at(int j) const { return boundary_[j]; }
  /// conj(D(t_j)): the boundary values of the reflected function.
  Complex boundary_star(int j) const { return std::conj(boundary_[j]); }

private:
  Series taylor_;
  GridFunction boundary_;
  Series log_coeffs_;
};

/// Construction from a bare nonnegative weight; the weight need not be a
/// probability density (the condition is about the logarithm only).
inline SzegoFn szego_function_from_density(const GridPtr& grid, const std::vector<double>& w, int M = 256,
                                           double log_floor = 1e-300) {
  if (static_cast<int>(w.size()) != grid->size()) raise(errc::precondition, "weight sample count mismatch");
  if (M >= grid->size() / 2) raise(errc::precondition, "series length too large for the grid");
  std::vector<Complex> lw(static_cast<size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j)
    lw[static_cast<size_t>(j)] = Complex{std::log(std::max(w[static_cast<size_t>(j)], log_floor)), 0.0};
  const FourierTable c = fourier_coeffs(GridFunction(grid, std::move(lw)), M);
  Series g(static_cast<size_t>(M + 1));
  g[0] = Complex{0.5 * c.at(0).real(), 0.0};
  for (int k = 1; k <= M; ++k) g[static_cast<size_t>(k)] = c.at(k);
  Series d = series_exp(g, M);
  GridFunction boundary = sample_on_grid(grid, [&d](Complex t) { return series_eval(d, t); });
  Series logc(static_cast<size_t>(M + 1));
  for (int k = 0; k <= M; ++k) logc[static_cast<size_t>(k)] = c.at(k);
  return SzegoFn(std::move(d), std::move(boundary), std::move(logc));
}

inline SzegoFn szego_function(const CircleMeasure& mu, int M = 256, double threshold = 50.0) {
  const SzegoReport rep = szego_condition(mu, threshold);
  if (!rep.holds) raise(errc::precondition, "Szego condition fails: no Szego function");
  return szego_function_from_density(mu.grid_ptr(), mu.density(), M);
}

}  // namespace opuckit
