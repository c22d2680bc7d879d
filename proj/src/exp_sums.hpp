#pragma once

#include <array>
#include <optional>
#include <span>

#include "knotvol/numerics.hpp"

namespace knotvol::detail {

// c * exp(e * w)
struct ExpTerm {
  double e;
  double c;
};

// Moments M_j = sum_t c_t e_t^j exp(e_t w), j = 0..3, as LogComplex so that
// huge or tiny magnitudes survive. condition is sum|terms| / |M_lead| for the
// requested leading moment.
struct Moments {
  std::array<LogComplex, 4> m;
  double condition = 1.0;
  int precision_bits = 53;
};

// Exact root w0 = 2 pi i * num / den, used when expanding around a pole.
struct RootPoint {
  long long num;
  long long den;
};

Moments moments_double(std::span<const ExpTerm> terms, cplx w, int lead, int max_moment);

// Same sum evaluated with MPFR at the given precision. When root is set, w is
// ignored and the exact root of unity is used instead.
Moments moments_mp(std::span<const ExpTerm> terms, cplx w, std::optional<RootPoint> root, int lead,
                   int max_moment, int bits);

// Evaluates in double and re-evaluates with growing precision until the
// estimated relative error is below rel_tol. Throws ConvergenceError past the cap.
Moments moments_adaptive(std::span<const ExpTerm> terms, cplx w, std::optional<RootPoint> root, int lead,
                         int max_moment, double rel_tol);

}  // namespace knotvol::detail
