#pragma once

#include <span>
#include <vector>

#include "knotvol/knots.hpp"
#include "knotvol/numerics.hpp"

namespace knotvol {

// J_N = exp(analytic) * rest. analytic collects pure powers of q, taken as
// exponent * log q with no branch reduction; rest carries everything else.
struct JonesLog {
  cplx analytic{0.0, 0.0};
  LogComplex rest = LogComplex::one();
  double condition = 1.0;  // cancellation factor of the underlying sum
  int precision_bits = 53;

  LogComplex value() const {
    if (rest.is_zero()) return rest;
    return LogComplex(analytic.real() + rest.log_mag, analytic.imag() + rest.phase);
  }
  // analytic + principal log of rest
  cplx log() const { return analytic + rest.log(); }
};

// Evaluation with q = exp(w); w fixes the branch of every fractional power.
JonesLog colored_jones_fig8_log(int n, cplx w);
JonesLog colored_jones_torus_log(int a, int b, int n, cplx w);
JonesLog colored_jones_log(const KnotSpec& knot, int n, cplx w);

// q^{1/2} = exp(log_branch_neg(q)/2). J_N is a Laurent polynomial in q so
// the value does not depend on this choice.
LogComplex colored_jones(const KnotSpec& knot, int n, cplx q);
LogComplex colored_jones_fig8(int n, cplx q);
LogComplex colored_jones_torus(int a, int b, int n, cplx q);

// log J_N(K; exp((u + 2 pi i)/N)) / N for a single N, with the principal
// phase of the non-analytic part.
cplx log_jones_scaled(const KnotSpec& knot, int n, cplx u);

// The same quantity along an increasing schedule with the phase made
// continuous in N. Each schedule point also evaluates N+1 to get the local
// phase slope; gaps are bridged by the trapezoid rule on those slopes.
std::vector<Sample> log_jones_sequence(const KnotSpec& knot, cplx u, std::span<const int> schedule);

// n_min, n_min + step, ..., up to n_max inclusive.
std::vector<int> make_schedule(int n_min, int n_max, int step);

}  // namespace knotvol
