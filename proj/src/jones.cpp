#include "knotvol/jones.hpp"

#include <cmath>
#include <string>

#include "exp_sums.hpp"

namespace knotvol {

namespace {

constexpr double sum_rel_tol = 1e-13;
// Below this value of |w - w0| * max|exponent| the torus ratio is expanded around the pole.
constexpr double pole_expansion_radius = 1e-6;

// log(2 sinh z), with z reduced modulo i*pi first so that zeros stay exact.
LogComplex log_two_sinh(cplx z) {
  const double m = std::round(z.imag() / pi);
  const cplx d = z - cplx(0.0, pi * m);
  const double sign_phase = std::fmod(m, 2.0) != 0.0 ? pi : 0.0;
  LogComplex out;
  if (d.real() > 20.0) {
    out = LogComplex::from_log(d + std::log(1.0 - std::exp(-2.0 * d)));
  } else if (d.real() < -20.0) {
    out = LogComplex::from_log(-d + cplx(0.0, pi) + std::log(1.0 - std::exp(2.0 * d)));
  } else {
    out = LogComplex::from_complex(2.0 * std::sinh(d));
  }
  if (out.is_zero()) return out;
  return LogComplex(out.log_mag, out.phase + sign_phase);
}

void check_color(int n) {
  if (n < 1) throw DomainError("color N must be a positive integer, got " + std::to_string(n));
}

}  // namespace

JonesLog colored_jones_fig8_log(int n, cplx w) {
  check_color(n);
  std::vector<LogComplex> terms;
  terms.reserve(static_cast<std::size_t>(n));
  LogComplex product = LogComplex::one();
  terms.push_back(product);
  for (int j = 1; j < n; ++j) {
    // q^N + q^-N - q^j - q^-j = 4 sinh((N+j)w/2) sinh((N-j)w/2)
    const LogComplex factor = log_two_sinh(0.5 * (n + j) * w) * log_two_sinh(0.5 * (n - j) * w);
    if (factor.is_zero()) break;  // every later product shares this factor
    product *= factor;
    terms.push_back(product);
  }

  JonesLog out;
  out.rest = log_sum_exp(terms);
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.log_mag);
  double abs_sum = 0.0;
  for (const auto& t : terms) abs_sum += std::exp(t.log_mag - top);
  out.condition = out.rest.is_zero() ? std::numeric_limits<double>::infinity()
                                     : abs_sum / std::exp(out.rest.log_mag - top);
  return out;
}

JonesLog colored_jones_torus_log(int a, int b, int n, cplx w) {
  KnotSpec::torus(a, b);  // validates
  check_color(n);
  const long long ab = static_cast<long long>(a) * b;

  // With j = 2k: exponents (ab j^2 + 2(a+b) j + 2)/4 and (ab j^2 + 2(a-b) j - 2)/4.
  std::vector<detail::ExpTerm> terms;
  terms.reserve(2 * static_cast<std::size_t>(n));
  double e_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const long long j = 2LL * i - n + 1;
    const double e_plus = static_cast<double>(ab * j * j + 2LL * (a + b) * j + 2) / 4.0;
    const double e_minus = static_cast<double>(ab * j * j + 2LL * (a - b) * j - 2) / 4.0;
    terms.push_back({e_plus, 1.0});
    terms.push_back({e_minus, -1.0});
    e_max = std::max({e_max, std::abs(e_plus), std::abs(e_minus)});
  }

  JonesLog out;
  out.analytic = static_cast<double>(ab * (1LL - static_cast<long long>(n) * n)) / 4.0 * w;

  // Denominator q^{N/2} - q^{-N/2} vanishes at N w = 2 pi i m.
  const double m = std::round((static_cast<double>(n) * w).imag() / (2.0 * pi));
  const cplx delta = w - cplx(0.0, 2.0 * pi * m / n);
  if (std::abs(delta) * e_max <= pole_expansion_radius) {
    // S(w0) = D(w0) = 0; expand both to third order in delta.
    const auto mom = detail::moments_adaptive(terms, w, detail::RootPoint{static_cast<long long>(m), n}, 1, 3,
                                              sum_rel_tol);
    if (mom.m[1].is_zero()) throw PoleError("colored Jones: degenerate expansion at a root of unity");
    const cplx r2 = (mom.m[2] / mom.m[1]).to_complex();
    const cplx r3 = (mom.m[3] / mom.m[1]).to_complex();
    const double sign = std::fmod(m, 2.0) != 0.0 ? -1.0 : 1.0;
    const double nn = n;
    const cplx num = 1.0 + r2 * delta / 2.0 + r3 * delta * delta / 6.0;
    const cplx den = sign * nn * (1.0 + nn * nn * delta * delta / 24.0);
    out.rest = mom.m[1] * LogComplex::from_complex(num / den);
    out.condition = mom.condition;
    out.precision_bits = mom.precision_bits;
    return out;
  }

  const auto mom = detail::moments_adaptive(terms, w, std::nullopt, 0, 0, sum_rel_tol);
  out.rest = mom.m[0] / log_two_sinh(0.5 * n * w);
  out.condition = mom.condition;
  out.precision_bits = mom.precision_bits;
  return out;
}

JonesLog colored_jones_log(const KnotSpec& knot, int n, cplx w) {
  check_color(n);
  switch (knot.kind) {
    case KnotKind::unknot: return {};
    case KnotKind::figure_eight: return colored_jones_fig8_log(n, w);
    case KnotKind::torus: return colored_jones_torus_log(knot.a, knot.b, n, w);
  }
  throw DomainError("unknown knot kind");
}

LogComplex colored_jones(const KnotSpec& knot, int n, cplx q) {
  if (q == cplx(0.0)) throw DomainError("colored Jones at q = 0");
  return colored_jones_log(knot, n, log_branch_neg(q)).value();
}

LogComplex colored_jones_fig8(int n, cplx q) { return colored_jones(KnotSpec::figure_eight(), n, q); }

LogComplex colored_jones_torus(int a, int b, int n, cplx q) { return colored_jones(KnotSpec::torus(a, b), n, q); }

cplx log_jones_scaled(const KnotSpec& knot, int n, cplx u) {
  check_color(n);
  const cplx w = (u + two_pi_i) / static_cast<double>(n);
  const JonesLog j = colored_jones_log(knot, n, w);
  if (j.rest.is_zero()) throw NumericalError("J_N vanishes; its logarithm is undefined");
  return j.log() / static_cast<double>(n);
}

std::vector<Sample> log_jones_sequence(const KnotSpec& knot, cplx u, std::span<const int> schedule) {
  if (schedule.empty()) throw DomainError("empty N schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    check_color(schedule[i]);
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw DomainError("N schedule must be strictly increasing");
  }

  std::vector<Sample> out;
  out.reserve(schedule.size());
  const auto eval = [&](int n) {
    const JonesLog j = colored_jones_log(knot, n, (u + two_pi_i) / static_cast<double>(n));
    if (j.rest.is_zero()) throw NumericalError("J_" + std::to_string(n) + " vanishes; its logarithm is undefined");
    return j;
  };

  double prev_phase = 0.0, prev_slope = 0.0;
  int prev_n = 0;
  for (int n : schedule) {
    if (knot.kind == KnotKind::unknot) {
      out.push_back({n, 0.0});
      continue;
    }
    const JonesLog here = eval(n);
    const JonesLog next = eval(n + 1);
    const double slope = wrap_phase(next.rest.phase - here.rest.phase);
    double phase = here.rest.phase;
    if (prev_n != 0) {
      const double predicted = prev_phase + 0.5 * (prev_slope + slope) * (n - prev_n);
      phase += 2.0 * pi * std::round((predicted - phase) / (2.0 * pi));
    }
    prev_phase = phase;
    prev_slope = slope;
    prev_n = n;
    out.push_back({n, (here.analytic + cplx(here.rest.log_mag, phase)) / static_cast<double>(n)});
  }
  return out;
}

std::vector<int> make_schedule(int n_min, int n_max, int step) {
  if (n_min < 1 || step < 1 || n_max < n_min) throw DomainError("invalid N schedule");
  std::vector<int> out;
  for (int n = n_min; n <= n_max; n += step) out.push_back(n);
  return out;
}

}  // namespace knotvol
