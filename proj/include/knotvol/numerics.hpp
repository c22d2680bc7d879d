#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "knotvol/errors.hpp"

namespace knotvol {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

// ---------------------------------------------------------------------------
// Logarithm branches
//
// Every call site names its branch. log_principal is the usual arg in (-pi, pi];
// log_branch_neg moves the cut to the other side so that log(-1) = -i*pi.
// ---------------------------------------------------------------------------

// Wraps an angle to [-pi, pi).
double wrap_phase(double phase);

cplx log_principal(cplx z);
cplx log_branch_neg(cplx z);

// ---------------------------------------------------------------------------
// LogComplex: exp(log_mag + i*phase), phase kept in [-pi, pi).
// ---------------------------------------------------------------------------

template <class Real>
struct BasicLogComplex {
  Real log_mag = -std::numeric_limits<Real>::infinity();
  Real phase = 0;

  BasicLogComplex() = default;
  BasicLogComplex(Real log_mag_, Real phase_) : log_mag(log_mag_), phase(wrap_phase(phase_)) {
    if (is_zero()) phase = 0;
  }

  static BasicLogComplex from_complex(std::complex<Real> z) {
    if (z == std::complex<Real>(0)) return BasicLogComplex();
    return BasicLogComplex(std::log(std::abs(z)), std::arg(z));
  }
  // exp(w) without forming the possibly overflowing intermediate.
  static BasicLogComplex from_log(std::complex<Real> w) { return BasicLogComplex(w.real(), w.imag()); }
  static BasicLogComplex one() { return BasicLogComplex(Real(0), Real(0)); }

  bool is_zero() const { return log_mag == -std::numeric_limits<Real>::infinity(); }
  std::complex<Real> to_complex() const { return is_zero() ? std::complex<Real>(0) : std::polar(std::exp(log_mag), phase); }
  // log_mag + i*phase, i.e. the principal-like logarithm with arg in [-pi, pi).
  std::complex<Real> log() const { return {log_mag, phase}; }

  friend BasicLogComplex operator*(const BasicLogComplex& x, const BasicLogComplex& y) {
    if (x.is_zero() || y.is_zero()) return BasicLogComplex();
    return BasicLogComplex(x.log_mag + y.log_mag, x.phase + y.phase);
  }
  friend BasicLogComplex operator/(const BasicLogComplex& x, const BasicLogComplex& y) {
    if (y.is_zero()) throw DomainError("LogComplex: division by zero");
    if (x.is_zero()) return BasicLogComplex();
    return BasicLogComplex(x.log_mag - y.log_mag, x.phase - y.phase);
  }
  BasicLogComplex& operator*=(const BasicLogComplex& y) { return *this = *this * y; }
  BasicLogComplex& operator/=(const BasicLogComplex& y) { return *this = *this / y; }
  friend bool operator==(const BasicLogComplex&, const BasicLogComplex&) = default;
};

using LogComplex = BasicLogComplex<double>;

// cos/sin of a phase, exact at the multiples of pi/2 so that x + (-x) cancels to 0.
cplx unit_phasor(double phase);

// Sum of the represented numbers. Terms are shifted by the largest log_mag, so
// magnitudes far outside double range are fine. A sum that cancels down to the
// rounding level of its terms returns the zero sentinel (log_mag = -inf).
// Throws DomainError when empty.
LogComplex log_sum_exp(std::span<const LogComplex> terms);

// ---------------------------------------------------------------------------
// Dilogarithm
// ---------------------------------------------------------------------------

// Which side of the cut [1, inf) a real argument is approached from.
enum class CutSide { none, above, below };

// Principal branch Li_2(z). On the open cut (1, inf) the side must be given;
// otherwise BranchAmbiguityError.
cplx dilog(cplx z, CutSide side = CutSide::none);

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

template <class F>
auto central_derivative(F&& f, cplx u, double h) -> decltype(f(u)) {
  if (!(h > 0)) throw DomainError("central_derivative: step must be positive");
  return (f(u + h) - f(u - h)) / (2.0 * h);
}

inline constexpr double default_derivative_step = 1e-5;

// Central differences at h and h/2 combined by one Richardson step, O(h^4).
template <class F>
auto richardson_derivative(F&& f, cplx u, double h = default_derivative_step) -> decltype(f(u)) {
  const auto coarse = central_derivative(f, u, h);
  const auto fine = central_derivative(f, u, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

// ---------------------------------------------------------------------------
// Limits of sequences f_N
// ---------------------------------------------------------------------------

struct Sample {
  int n = 0;
  cplx value;
  friend bool operator==(const Sample&, const Sample&) = default;
};

struct LimitEstimate {
  cplx value;
  double error_estimate = 0.0;
  std::vector<Sample> samples;
};

// Least-squares fit of f_N = L + a log(N)/N + b/N over the trailing half of the
// samples (at least three). error_estimate = |L(all) - L(all but the last)|.
// Needs at least four samples with strictly increasing N.
LimitEstimate extrapolate(std::span<const Sample> samples);

}  // namespace knotvol
