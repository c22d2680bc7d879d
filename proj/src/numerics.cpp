#include "knotvol/numerics.hpp"

#include <algorithm>
#include <array>

#include <Eigen/Dense>

namespace knotvol {

double wrap_phase(double phase) {
  if (!std::isfinite(phase)) return phase;
  if (phase >= -pi && phase < pi) return phase;
  double wrapped = phase - 2.0 * pi * std::floor((phase + pi) / (2.0 * pi));
  if (wrapped >= pi) wrapped -= 2.0 * pi;
  if (wrapped < -pi) wrapped += 2.0 * pi;
  return wrapped;
}

cplx log_principal(cplx z) {
  if (z == cplx(0.0)) throw DomainError("log of zero");
  double arg = std::arg(z);
  if (arg == -pi) arg = pi;
  return {std::log(std::abs(z)), arg};
}

cplx log_branch_neg(cplx z) {
  if (z == cplx(0.0)) throw DomainError("log of zero");
  double arg = std::arg(z);
  if (arg == pi) arg = -pi;
  return {std::log(std::abs(z)), arg};
}

cplx unit_phasor(double phase) {
  constexpr double half_pi = 0.5 * pi;
  if (phase == 0.0) return {1.0, 0.0};
  if (phase == -pi || phase == pi) return {-1.0, 0.0};
  if (phase == half_pi) return {0.0, 1.0};
  if (phase == -half_pi) return {0.0, -1.0};
  return std::polar(1.0, phase);
}

LogComplex log_sum_exp(std::span<const LogComplex> terms) {
  if (terms.empty()) throw DomainError("log_sum_exp: empty input");
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) shift = std::max(shift, t.log_mag);
  if (shift == -std::numeric_limits<double>::infinity()) return {};

  cplx sum{0.0, 0.0};
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    const double scale = std::exp(t.log_mag - shift);
    sum += scale * unit_phasor(t.phase);
    total += scale;
  }
  // A remainder at the rounding level of the terms carries no digits; x + (x e^{i pi})
  // would otherwise come out as a few ulps instead of zero.
  if (std::abs(sum) <= 4.0 * std::numeric_limits<double>::epsilon() * total) return {};
  return {shift + std::log(std::abs(sum)), std::arg(sum)};
}

namespace {

constexpr double pi_sq_6 = pi * pi / 6.0;

cplx dilog_series(cplx z) {
  cplx sum = 0.0;
  cplx power = z;
  for (int k = 1; k < 200; ++k) {
    const cplx term = power / static_cast<double>(k * k);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= z;
  }
  return sum;
}

// B_{2k} / (2k+1)! for k = 1..15.
const std::array<double, 15>& bernoulli_coefficients() {
  static const std::array<double, 15> coeffs = [] {
    constexpr std::array<double, 15> b2k = {
        1.0 / 6.0,          -1.0 / 30.0,           1.0 / 42.0,           -1.0 / 30.0,
        5.0 / 66.0,         -691.0 / 2730.0,       7.0 / 6.0,            -3617.0 / 510.0,
        43867.0 / 798.0,    -174611.0 / 330.0,     854513.0 / 138.0,     -236364091.0 / 2730.0,
        8553103.0 / 6.0,    -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};
    std::array<double, 15> out{};
    double factorial = 1.0;  // (2k+1)!
    int m = 1;
    for (std::size_t k = 0; k < b2k.size(); ++k) {
      const int target = 2 * static_cast<int>(k + 1) + 1;
      while (m < target) factorial *= ++m;
      out[k] = b2k[k] / factorial;
    }
    return out;
  }();
  return coeffs;
}

// Li_2(z) = sum_n B_n w^{n+1}/(n+1)!, w = -log(1-z). Converges for |w| < 2 pi.
cplx dilog_bernoulli(cplx z) {
  const cplx w = -std::log(1.0 - z);
  const cplx w2 = w * w;
  cplx sum = w - 0.25 * w2;
  cplx power = w * w2;  // w^{2k+1}
  for (double c : bernoulli_coefficients()) {
    const cplx term = c * power;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= w2;
  }
  return sum;
}

// |z| <= 1, z != 1.
cplx dilog_unit_disk(cplx z) {
  if (std::abs(z) <= 0.5) return dilog_series(z);
  if (z.real() > 0.5) {
    const cplx one_minus = 1.0 - z;
    return pi_sq_6 - std::log(z) * std::log(one_minus) - dilog_bernoulli(one_minus);
  }
  return dilog_bernoulli(z);
}

}  // namespace

cplx dilog(cplx z, CutSide side) {
  if (z == cplx(0.0)) return 0.0;
  if (z == cplx(1.0)) return pi_sq_6;
  if (z.imag() == 0.0 && z.real() > 1.0) {
    if (side == CutSide::none)
      throw BranchAmbiguityError("dilog: argument on the cut (1, inf) without a side");
    const double x = z.real();
    const double lx = std::log(x);
    const double re = 2.0 * pi_sq_6 - 0.5 * lx * lx - dilog_unit_disk(1.0 / x).real();
    const double im = side == CutSide::above ? pi * lx : -pi * lx;
    return {re, im};
  }
  if (std::abs(z) > 1.0) {
    const cplx l = std::log(-z);
    return -pi_sq_6 - 0.5 * l * l - dilog_unit_disk(1.0 / z);
  }
  return dilog_unit_disk(z);
}

namespace {

cplx fit_constant_term(std::span<const Sample> samples, cplx reference) {
  const std::size_t m = std::max<std::size_t>(3, (samples.size() + 1) / 2);
  const auto window = samples.subspan(samples.size() - m);

  Eigen::MatrixXd design(static_cast<Eigen::Index>(m), 3);
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(m), 2);
  for (std::size_t i = 0; i < m; ++i) {
    const double n = window[i].n;
    const auto r = static_cast<Eigen::Index>(i);
    design(r, 0) = 1.0;
    design(r, 1) = std::log(n) / n;
    design(r, 2) = 1.0 / n;
    rhs(r, 0) = (window[i].value - reference).real();
    rhs(r, 1) = (window[i].value - reference).imag();
  }
  // Column scaling keeps the QR well conditioned when N spans a narrow band.
  const Eigen::Vector3d scale = design.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd coeffs = scaled.colPivHouseholderQr().solve(rhs);
  return reference + cplx(coeffs(0, 0), coeffs(0, 1)) / scale(0);
}

}  // namespace

LimitEstimate extrapolate(std::span<const Sample> samples) {
  if (samples.size() < 4) throw InsufficientDataError("extrapolate: need at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].n < 1) throw DomainError("extrapolate: N must be positive");
    if (i > 0 && samples[i].n <= samples[i - 1].n)
      throw DomainError("extrapolate: N must be strictly increasing");
  }
  const cplx reference = samples.back().value;
  const cplx all = fit_constant_term(samples, reference);
  const cplx previous = fit_constant_term(samples.first(samples.size() - 1), reference);

  LimitEstimate out;
  out.value = all;
  out.error_estimate = std::abs(all - previous);
  out.samples.assign(samples.begin(), samples.end());
  return out;
}

}  // namespace knotvol
