#include "knotvol/geometry.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "knotvol/jones.hpp"

namespace knotvol {

namespace {

constexpr cplx i_unit{0.0, 1.0};

void require_not_unknot(const KnotSpec& knot, const char* what) {
  if (knot.kind == KnotKind::unknot) throw DomainError(std::string(what) + ": no closed form for the unknot");
}

double ab_of(const KnotSpec& knot) { return static_cast<double>(knot.a) * knot.b; }

}  // namespace

cplx h_fig8(cplx u, cplx y) {
  const cplx e = std::exp(-u);
  return dilog(e / y, CutSide::below) - dilog(y * e, CutSide::below) + (log_branch_neg(-y) + pi * i_unit) * u;
}

SaddleY solve_y(cplx u) {
  const cplx c = 2.0 * std::cosh(u) - 1.0;
  const cplx disc = c * c - 4.0;
  if (std::abs(disc) <= 1e-12 * std::max(1.0, std::norm(c))) return {0.5 * c};

  // Pick the sign that avoids cancellation, then take the other root as the reciprocal.
  cplx s = std::sqrt(disc);
  if (std::real(std::conj(c) * s) < 0.0) s = -s;
  const cplx y1 = 0.5 * (c + s);
  const cplx y2 = 1.0 / y1;

  const double im1 = h_fig8(u, y1).imag();
  const double im2 = h_fig8(u, y2).imag();
  if (std::abs(im1 - im2) <= 1e-12 * (1.0 + std::abs(im1))) return {std::abs(y1) <= 1.0 ? y1 : y2};
  return {im1 > im2 ? y1 : y2};
}

cplx h_closed(const KnotSpec& knot, cplx u) {
  require_not_unknot(knot, "h_closed");
  if (knot.kind == KnotKind::figure_eight) return h_fig8(u, solve_y(u).y);
  const double ab = ab_of(knot);
  const cplx z = ab * (u + two_pi_i) - two_pi_i;
  return -z * z / (4.0 * ab);
}

cplx h_closed_derivative(const KnotSpec& knot, cplx u) {
  require_not_unknot(knot, "h_closed_derivative");
  if (knot.kind == KnotKind::figure_eight) {
    const cplx y = solve_y(u).y;
    const cplx e = std::exp(-u);
    return std::log(1.0 - e / y) - std::log(1.0 - y * e) + log_branch_neg(-y) + pi * i_unit;
  }
  const double ab = ab_of(knot);
  return -(ab * (u + two_pi_i) - two_pi_i) / 2.0;
}

bool in_torus_region(const KnotSpec& knot, cplx u) {
  if (knot.kind != KnotKind::torus) return true;
  return std::abs(u + two_pi_i) > 2.0 * pi / ab_of(knot) && u.real() < 0.0 && u.imag() > -2.0 * pi;
}

LimitEstimate h_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule) {
  if (schedule.empty() || schedule.back() < 500) throw DomainError("h_numeric: schedule must reach N >= 500");
  const auto samples = log_jones_sequence(knot, u, schedule);
  LimitEstimate est = extrapolate(samples);
  const cplx x = u + two_pi_i;
  est.value *= x;
  est.error_estimate *= std::abs(x);
  return est;
}

LimitEstimate v_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule, double h) {
  if (!(h > 0)) throw DomainError("v_numeric: step must be positive");
  if (schedule.empty() || schedule.back() < 500) throw DomainError("v_numeric: schedule must reach N >= 500");
  const auto plus = log_jones_sequence(knot, u + h, schedule);
  const auto minus = log_jones_sequence(knot, u - h, schedule);
  std::vector<Sample> deriv;
  deriv.reserve(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double n = schedule[i];
    // The two sequences are unwound separately; realign any whole turn between them.
    cplx diff = plus[i].value - minus[i].value;
    diff -= two_pi_i * std::round(diff.imag() * n / (2.0 * pi)) / n;
    const cplx x = u + two_pi_i;
    // d/du [(u + 2 pi i) s_N(u)] = s_N + x s_N'
    const cplx mid = 0.5 * (plus[i].value + minus[i].value);
    deriv.push_back({schedule[i], mid + x * diff / (2.0 * h)});
  }
  LimitEstimate est = extrapolate(deriv);
  est.value = 2.0 * est.value - two_pi_i;
  est.error_estimate *= 2.0;
  return est;
}

cplx v_from_h(const std::function<cplx(cplx)>& h_fn, cplx u, double h) {
  return 2.0 * richardson_derivative(h_fn, u, h) - two_pi_i;
}

cplx v_of_u(const KnotSpec& knot, cplx u, double h) {
  require_not_unknot(knot, "v_of_u");
  if (knot.kind == KnotKind::torus) return -ab_of(knot) * (u + two_pi_i);
  return v_from_h([&](cplx z) { return h_closed(knot, z); }, u, h);
}

double volume(cplx u, cplx H, cplx v) { return H.imag() - pi * u.real() - 0.5 * u.real() * v.imag(); }

double volume_geodesic_form(cplx u, cplx H, cplx v) {
  return H.imag() - pi * u.real() - 0.25 * (u * v).imag() - 0.5 * pi * geodesic_length(u, v);
}

double volume(const KnotSpec& knot, cplx u) { return volume(u, h_closed(knot, u), v_of_u(knot, u)); }

double geodesic_length(cplx u, cplx v) { return -(u * std::conj(v)).imag() / (2.0 * pi); }

double schlafli_residual(const KnotSpec& knot, const std::function<cplx(double)>& path, double t, double dt) {
  if (!(dt > 0)) throw DomainError("schlafli_residual: dt must be positive");
  const cplx u_lo = path(t - dt), u_mid = path(t), u_hi = path(t + dt);
  const cplx v_lo = v_of_u(knot, u_lo), v_mid = v_of_u(knot, u_mid), v_hi = v_of_u(knot, u_hi);
  const double dV = (volume(u_hi, h_closed(knot, u_hi), v_hi) - volume(u_lo, h_closed(knot, u_lo), v_lo)) / (2.0 * dt);
  const double d_im_v = (v_hi.imag() - v_lo.imag()) / (2.0 * dt);
  const double d_im_u = (u_hi.imag() - u_lo.imag()) / (2.0 * dt);
  const double rhs = -0.5 * (u_mid.real() * d_im_v - v_mid.real() * d_im_u);
  return std::abs(dV - rhs);
}

std::optional<SurgeryCoefficients> surgery_coefficients(cplx u, cplx v) {
  Eigen::Matrix2d a;
  a << u.real(), v.real(), u.imag(), v.imag();
  const Eigen::Vector2d b(0.0, 2.0 * pi);
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix2d> cod;
  cod.setThreshold(1e-12);
  cod.compute(a);
  if (cod.rank() == 0) return std::nullopt;
  const Eigen::Vector2d x = cod.solve(b);
  if ((a * x - b).norm() > 1e-9 * b.norm()) return std::nullopt;

  SurgeryCoefficients out{x(0), x(1), cod.rank() == 2, false};
  const double rp = std::round(out.p), rq = std::round(out.q);
  out.integral = std::abs(out.p - rp) <= 1e-6 && std::abs(out.q - rq) <= 1e-6 &&
                 std::gcd(static_cast<long long>(std::abs(rp)), static_cast<long long>(std::abs(rq))) == 1;
  return out;
}

GukovReport gukov_check(const KnotSpec& knot, cplx u, double tol) {
  require_not_unknot(knot, "gukov_check");
  GukovReport rep;
  rep.u = u;
  rep.v = v_of_u(knot, u);
  rep.a = (u + two_pi_i) / two_pi_i;
  rep.l = -rep.v / 2.0 - pi * i_unit;

  const APolynomial ap = a_polynomial(knot);
  const cplx M = std::exp(u / 2.0);
  const cplx pairs[2] = {-std::exp(-rep.v / 2.0), -std::exp(rep.v / 2.0)};
  const auto add = [&](const std::string& name, const BivariatePolynomial& p) {
    for (int k = 0; k < 2; ++k) {
      const double r = std::abs(eval_bivariate(p, pairs[k], M));
      rep.entries.push_back({name, k + 1, pairs[k], M, r, r <= tol});
    }
  };
  add("abelian", ap.abelian);
  for (std::size_t i = 0; i < ap.candidates.size(); ++i) add(ap.candidate_names[i], ap.candidates[i]);
  return rep;
}

namespace {

// Secant iteration on g = H / H', which has simple zeros where H has multiple ones.
SharedRoot find_root(const KnotSpec& knot, cplx seed) {
  const auto g = [&](cplx z) {
    const cplx d = h_closed_derivative(knot, z);
    const cplx h = h_closed(knot, z);
    return d == cplx(0.0) ? h : h / d;
  };
  SharedRoot out;
  out.seed = seed;
  std::vector<cplx> iterates = {seed};
  cplx x0 = seed, g0 = g(seed);
  cplx x1 = seed - g0;
  iterates.push_back(x1);
  int it = 1;
  for (; it < 100; ++it) {
    const cplx g1 = g(x1);
    if (g1 == cplx(0.0) || g1 == g0) break;
    cplx step = g1 * (x1 - x0) / (g1 - g0);
    // The figure-eight H jumps across the log cut right next to its zeros;
    // backtrack so that an overshoot does not land on the other sheet.
    for (int k = 0; k < 60 && !(std::abs(g(x1 - step)) <= std::abs(g1)); ++k) step *= 0.5;
    x0 = x1;
    g0 = g1;
    x1 -= step;
    iterates.push_back(x1);
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x1))) break;
  }
  out.root = x1;
  out.iterations = it;
  out.h_at_root = h_closed(knot, x1);
  if (!std::isfinite(std::abs(out.h_at_root)) || std::abs(out.h_at_root) > 1e-10) {
    std::ostringstream os;
    os << "Newton did not converge from seed " << seed << "; iterates:";
    for (const auto& z : iterates) os << ' ' << z;
    throw ConvergenceError(os.str());
  }
  out.t = std::exp(x1);
  out.alexander_at_t = alexander(knot)(out.t);
  return out;
}

}  // namespace

SharedRootReport shared_root_check(const KnotSpec& knot, double tol) {
  require_not_unknot(knot, "shared_root_check");
  std::vector<cplx> seeds;
  if (knot.kind == KnotKind::figure_eight) {
    seeds = {1.0, -1.0};
  } else {
    seeds = {two_pi_i / ab_of(knot) - two_pi_i + 0.1};
  }
  SharedRootReport rep;
  rep.ok = true;
  for (cplx s : seeds) {
    SharedRoot r = find_root(knot, s);
    r.ok = std::abs(r.h_at_root) <= 1e-10 && std::abs(r.alexander_at_t) <= tol;
    rep.ok = rep.ok && r.ok;
    rep.roots.push_back(r);
  }
  return rep;
}

cplx nz_potential(const KnotSpec& knot, cplx u) { return 4.0 * h_closed(knot, u) - 4.0 * pi * i_unit * u; }

MMReport mm_check(const KnotSpec& knot, cplx u, int n, double tol) {
  const cplx x = u + two_pi_i;
  if (std::abs(x) > mm_gate) throw DomainError("mm_check: |u + 2 pi i| exceeds the gate");
  const cplx delta = alexander_symmetric(knot, std::exp(x));
  if (std::abs(delta) < 1e-14) throw PoleError("mm_check: Alexander polynomial vanishes at exp(u + 2 pi i)");
  MMReport rep;
  rep.jones = colored_jones_log(knot, n, x / static_cast<double>(n)).value().to_complex();
  rep.target = 1.0 / delta;
  rep.deviation = std::abs(rep.jones - rep.target);
  rep.ok = rep.deviation <= tol;
  return rep;
}

namespace {

void finish_point(const KnotSpec& knot, GeometryPoint& pt) {
  pt.V = volume(pt.u, pt.H, pt.v);
  pt.geodesic_length = geodesic_length(pt.u, pt.v);
  pt.surgery = surgery_coefficients(pt.u, pt.v);
  if (!in_torus_region(knot, pt.u)) pt.flags.push_back("out_of_region");
  if (!pt.surgery) pt.flags.push_back("surgery_singular");
  else if (!pt.surgery->unique) pt.flags.push_back("surgery_nonunique");
  else if (pt.surgery->integral) pt.flags.push_back("integral_surgery");
  if (!std::isfinite(pt.V)) pt.flags.push_back("nonfinite");
}

}  // namespace

GeometryPoint geometry_point(const KnotSpec& knot, cplx u) {
  GeometryPoint pt;
  pt.u = u;
  pt.source = HSource::closed_form;
  pt.H = h_closed(knot, u);
  pt.v = v_of_u(knot, u);
  finish_point(knot, pt);
  return pt;
}

GeometryPoint geometry_point_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule) {
  GeometryPoint pt;
  pt.u = u;
  pt.source = HSource::numeric_limit;
  const LimitEstimate h = h_numeric(knot, u, schedule);
  const LimitEstimate v = v_numeric(knot, u, schedule);
  pt.H = h.value;
  pt.v = v.value;
  pt.err_est = h.error_estimate;
  finish_point(knot, pt);
  return pt;
}

}  // namespace knotvol
