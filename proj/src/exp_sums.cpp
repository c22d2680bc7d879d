#include "exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include <mpfr.h>

namespace knotvol::detail {

namespace {

constexpr int max_bits = 16384;

// RAII over mpfr_t with an explicit precision; no global default precision is touched.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits) { mpfr_init2(x_, bits); mpfr_set_zero(x_, 1); }
  ~MpReal() { mpfr_clear(x_); }
  MpReal(const MpReal&) = delete;
  MpReal& operator=(const MpReal&) = delete;
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  operator mpfr_ptr() { return x_; }

 private:
  mpfr_t x_;
};

double max_shift(std::span<const ExpTerm> terms, double w_re) {
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms)
    if (t.c != 0.0) shift = std::max(shift, t.e * w_re);
  return shift;
}

double max_phase(std::span<const ExpTerm> terms, cplx w) {
  double out = 0.0;
  for (const auto& t : terms) out = std::max(out, std::abs(t.e * w));
  return out;
}

}  // namespace

Moments moments_double(std::span<const ExpTerm> terms, cplx w, int lead, int max_moment) {
  if (terms.empty()) throw DomainError("empty exponential sum");
  const double shift = max_shift(terms, w.real());
  std::array<cplx, 4> sum{};
  double abs_lead = 0.0;
  for (const auto& t : terms) {
    if (t.c == 0.0) continue;
    const cplx base = t.c * std::exp(cplx(t.e * w.real() - shift, t.e * w.imag()));
    cplx term = base;
    for (int j = 0; j <= max_moment; ++j) {
      sum[j] += term;
      if (j == lead) abs_lead += std::abs(term);
      term *= t.e;
    }
  }
  Moments out;
  for (int j = 0; j <= max_moment; ++j) {
    const LogComplex s = LogComplex::from_complex(sum[j]);
    out.m[j] = s.is_zero() ? s : LogComplex(s.log_mag + shift, s.phase);
  }
  const double lead_abs = std::abs(sum[lead]);
  out.condition = lead_abs > 0.0 ? abs_lead / lead_abs : std::numeric_limits<double>::infinity();
  out.precision_bits = 53;
  return out;
}

Moments moments_mp(std::span<const ExpTerm> terms, cplx w, std::optional<RootPoint> root, int lead,
                   int max_moment, int bits) {
  if (terms.empty()) throw DomainError("empty exponential sum");
  const double shift = root ? 0.0 : max_shift(terms, w.real());

  MpReal w_re(bits), w_im(bits), arg_re(bits), arg_im(bits), mag(bits), cos_v(bits), sin_v(bits), tmp(bits);
  std::array<MpReal*, 4> sum_re{}, sum_im{};
  std::array<std::unique_ptr<MpReal>, 8> storage;
  for (int j = 0; j < 4; ++j) {
    storage[2 * j] = std::make_unique<MpReal>(bits);
    storage[2 * j + 1] = std::make_unique<MpReal>(bits);
    sum_re[j] = storage[2 * j].get();
    sum_im[j] = storage[2 * j + 1].get();
  }

  if (root) {
    mpfr_set_zero(w_re, 1);
    mpfr_const_pi(w_im, MPFR_RNDN);
    mpfr_mul_si(w_im, w_im, 2 * root->num, MPFR_RNDN);
    mpfr_div_si(w_im, w_im, root->den, MPFR_RNDN);
  } else {
    mpfr_set_d(w_re, w.real(), MPFR_RNDN);
    mpfr_set_d(w_im, w.imag(), MPFR_RNDN);
  }

  double abs_lead = 0.0;
  for (const auto& t : terms) {
    if (t.c == 0.0) continue;
    // exp(e*w - shift) = mag * (cos + i sin)
    mpfr_mul_d(arg_re, w_re, t.e, MPFR_RNDN);
    mpfr_sub_d(arg_re, arg_re, shift, MPFR_RNDN);
    mpfr_exp(mag, arg_re, MPFR_RNDN);
    mpfr_mul_d(mag, mag, t.c, MPFR_RNDN);
    mpfr_mul_d(arg_im, w_im, t.e, MPFR_RNDN);
    mpfr_sin_cos(sin_v, cos_v, arg_im, MPFR_RNDN);
    mpfr_mul(cos_v, cos_v, mag, MPFR_RNDN);
    mpfr_mul(sin_v, sin_v, mag, MPFR_RNDN);
    for (int j = 0; j <= max_moment; ++j) {
      if (j > 0) {
        mpfr_mul_d(cos_v, cos_v, t.e, MPFR_RNDN);
        mpfr_mul_d(sin_v, sin_v, t.e, MPFR_RNDN);
      }
      mpfr_add(*sum_re[j], *sum_re[j], cos_v, MPFR_RNDN);
      mpfr_add(*sum_im[j], *sum_im[j], sin_v, MPFR_RNDN);
      if (j == lead) abs_lead += std::abs(mpfr_get_d(mag, MPFR_RNDN) * std::pow(t.e, j));
    }
  }

  Moments out;
  out.precision_bits = bits;
  double lead_log = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= max_moment; ++j) {
    if (mpfr_zero_p(sum_re[j]->get()) && mpfr_zero_p(sum_im[j]->get())) {
      out.m[j] = LogComplex();
      continue;
    }
    mpfr_hypot(tmp, *sum_re[j], *sum_im[j], MPFR_RNDN);
    mpfr_log(tmp, tmp, MPFR_RNDN);
    if (j == lead) lead_log = mpfr_get_d(tmp, MPFR_RNDN);
    const double log_mag = mpfr_get_d(tmp, MPFR_RNDN) + shift;
    mpfr_atan2(tmp, *sum_im[j], *sum_re[j], MPFR_RNDN);
    out.m[j] = LogComplex(log_mag, mpfr_get_d(tmp, MPFR_RNDN));
  }
  // Through logs: past ~1000 bits the ratio itself leaves double range.
  out.condition = std::exp(std::min(700.0, std::log(abs_lead) - lead_log));
  return out;
}

Moments moments_adaptive(std::span<const ExpTerm> terms, cplx w, std::optional<RootPoint> root, int lead,
                         int max_moment, double rel_tol) {
  const double growth = 1.0 + max_phase(terms, w) + static_cast<double>(terms.size());
  const auto error_of = [&](const Moments& m) {
    return m.condition * growth * std::ldexp(1.0, -m.precision_bits);
  };

  Moments result = moments_double(terms, w, lead, max_moment);
  if (!root && std::isfinite(result.condition) && error_of(result) < rel_tol) return result;

  const double needed = std::isfinite(result.condition) ? std::log2(result.condition * growth / rel_tol) : 0.0;
  int bits = std::max(128, static_cast<int>(std::ceil(needed)) + 64);
  while (bits <= max_bits) {
    result = moments_mp(terms, w, root, lead, max_moment, bits);
    if (std::isfinite(result.condition) && error_of(result) < rel_tol) return result;
    bits *= 2;
  }
  throw ConvergenceError("exponential sum still cancels at " + std::to_string(max_bits) + " bits");
}

}  // namespace knotvol::detail
