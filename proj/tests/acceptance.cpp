// Acceptance runner: prints one PASS/FAIL line per criterion.
// `acceptance` runs all of them, `acceptance K` only criterion K.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "knotvol/geometry.hpp"
#include "knotvol/jones.hpp"
#include "knotvol/knots.hpp"
#include "knotvol/sweep.hpp"
#include "oracles.hpp"

using namespace knotvol;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const cplx I{0.0, 1.0};

// Numbers (a + b sqrt 5)/2 with integer a, b.
struct QSqrt5 {
  long long a = 0, b = 0;  // value = (a + b sqrt5) / 2
};
QSqrt5 operator*(QSqrt5 x, QSqrt5 y) {
  // ((xa ya + 5 xb yb) + (xa yb + xb ya) sqrt5) / 4; both parts stay even for this ring.
  const long long a = x.a * y.a + 5 * x.b * y.b, b = x.a * y.b + x.b * y.a;
  return {a / 2, b / 2};
}
QSqrt5 operator+(QSqrt5 x, QSqrt5 y) { return {x.a + y.a, x.b + y.b}; }

QSqrt5 eval_exact(const UnivariatePolynomial& p, QSqrt5 t) {
  QSqrt5 sum{0, 0};
  for (const auto& [e, c] : p.coefficients()) {
    QSqrt5 term{2 * c, 0};
    for (int k = 0; k < e; ++k) term = term * t;
    sum = sum + term;
  }
  return sum;
}

Outcome torus_limit() {
  const auto t0 = Clock::now();
  const cplx r(1.05, 0.1);
  const cplx u = two_pi_i * (r - 1.0);
  const auto seq = log_jones_sequence(KnotSpec::torus(2, 3), u, make_schedule(200, 4000, 200));
  const auto lim = extrapolate(seq);
  const cplx target = (1.0 - 1.0 / (12.0 * r) - 3.0 * r) * pi * I;
  const double err = std::abs(lim.value - target);
  const double secs = seconds_since(t0);
  return {err <= 1e-3 && secs <= 60.0,
          fmt("limit %.9f%+.9fi vs %.9f%+.9fi, |err| %.2e, %.1f s", lim.value.real(), lim.value.imag(), target.real(),
              target.imag(), err, secs)};
}

Outcome torus_volume_zero() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int points = 0;
  for (auto [a, b] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 4}}) {
    const KnotSpec k = KnotSpec::torus(a, b);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        const cplx u(-3.0 + 2.9 * i / 9.0, -5.0 + 10.0 * j / 9.0);
        if (!in_torus_region(k, u)) return {false, "grid point left the region"};
        worst = std::max(worst, std::abs(geometry_point(k, u).V));
        ++points;
      }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs <= 1.0, fmt("max |V| %.2e over %d points, %.3f s", worst, points, secs)};
}

Outcome schlafli() {
  double torus_worst = 0.0;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (auto [a, b] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 4}}) {
    const KnotSpec k = KnotSpec::torus(a, b);
    for (int trial = 0; trial < 5; ++trial) {
      const cplx c0(-1.5 + 0.5 * d(rng), 1.0 + d(rng)), c1(0.3 * d(rng), 0.5 * d(rng)), c2(0.2 * d(rng), 0.4 * d(rng));
      const auto path = [&](double t) { return c0 + c1 * t + c2 * std::sin(3.0 * t); };
      for (int s = 0; s <= 80; ++s) torus_worst = std::max(torus_worst, schlafli_residual(k, path, 0.1 + 0.01 * s, 1e-3));
    }
  }
  double fig_worst = 0.0;
  const auto ray = [](double t) { return t * cplx(-0.1, 0.2); };
  for (int s = 0; s <= 80; ++s)
    fig_worst = std::max(fig_worst, schlafli_residual(KnotSpec::figure_eight(), ray, 0.1 + 0.01 * s, 1e-3));
  return {torus_worst <= 1e-9 && fig_worst <= 1e-4, fmt("torus max %.2e, figure-eight max %.2e", torus_worst, fig_worst)};
}

Outcome shared_root() {
  const double us = std::acosh(1.5);
  const KnotSpec fig8 = KnotSpec::figure_eight();
  const double hp = std::abs(h_closed(fig8, us)), hm = std::abs(h_closed(fig8, -us));
  // (3 +- sqrt5)/2 are roots of -t^2 + 3t - 1 in exact arithmetic.
  const auto delta = alexander(fig8);
  const QSqrt5 rp = eval_exact(delta, {3, 1}), rm = eval_exact(delta, {3, -1});
  const bool exact_zero = rp.a == 0 && rp.b == 0 && rm.a == 0 && rm.b == 0;
  const bool e_matches = std::abs(std::exp(us) - (3 + std::sqrt(5.0)) / 2) < 1e-14;

  double torus_h = 0.0, torus_delta = 0.0;
  for (auto [a, b] : {std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 4}}) {
    const KnotSpec k = KnotSpec::torus(a, b);
    const cplx r = two_pi_i / double(a * b) - two_pi_i;
    torus_h = std::max(torus_h, std::abs(h_closed(k, r)));
    torus_delta = std::max(torus_delta, std::abs(alexander(k)(std::exp(r))));
  }
  const auto rep = shared_root_check(fig8, 1e-10);
  const bool pass = hp <= 1e-10 && hm <= 1e-10 && exact_zero && e_matches && torus_h <= 1e-12 && torus_delta <= 1e-10 && rep.ok;
  return {pass, fmt("|H(E;+-u*)| %.1e/%.1e, exact Delta zero %s, torus |H| %.1e, |Delta| %.1e, Newton %s", hp, hm,
                    exact_zero ? "yes" : "no", torus_h, torus_delta, rep.ok ? "ok" : "failed")};
}

Outcome gukov() {
  // Gate the stored figure-eight A-polynomial on the representation oracle first.
  const auto A = a_polynomial(KnotSpec::figure_eight()).candidates.at(0);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> mag(0.8, 1.25), ang(-pi, pi);
  int gated = 0;
  for (int i = 0; i < 40 && gated < 10; ++i) {
    oracle::Eigenpair ep;
    if (!oracle::fig8_representation(std::polar(mag(rng), ang(rng)), ep)) continue;
    if (std::abs(eval_bivariate(A, ep.L, ep.M)) > 1e-8 * std::max(1.0, std::norm(ep.M) * std::norm(ep.M) * std::norm(ep.L)))
      return {false, "stored figure-eight A-polynomial failed the representation oracle"};
    ++gated;
  }
  if (gated < 10) return {false, "representation oracle did not converge"};

  const auto fr = gukov_check(KnotSpec::figure_eight(), cplx(0.05, 0.05), 1e-6);
  double fig_best = 1e300;
  for (const auto& e : fr.entries)
    if (e.factor != "abelian") fig_best = std::min(fig_best, e.residual);

  const auto tr = gukov_check(KnotSpec::torus(2, 3), cplx(-0.6, 0.4), 1e-8);
  std::ostringstream hits;
  bool torus_ok = true;
  const auto names = a_polynomial(KnotSpec::torus(2, 3)).candidate_names;
  for (const auto& name : names) {
    int n = 0;
    for (const auto& e : tr.entries)
      if (e.factor == name && e.vanishes) {
        ++n;
        hits << ' ' << name << "@pair" << e.pair;
      }
    torus_ok = torus_ok && n == 1;
  }
  return {fig_best <= 1e-6 && torus_ok,
          fmt("oracle gate %d/10, figure-eight residual %.1e, T(2,3) vanishing:", gated, fig_best) + hits.str()};
}

Outcome melvin_morton() {
  const auto f = mm_check(KnotSpec::figure_eight(), cplx(0.3, -2 * pi), 2000, 1e-2);
  const auto t = mm_check(KnotSpec::torus(2, 3), cplx(0.3, -2 * pi), 2000, 1e-2);
  return {f.ok && t.ok, fmt("figure-eight deviation %.2e, T(2,3) deviation %.2e", f.deviation, t.deviation)};
}

Outcome jones_oracles() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mag(0.8, 1.25), ang(-pi, pi);
  double worst_fig = 0.0, worst_tre = 0.0;
  for (int i = 0; i < 10; ++i) {
    const cplx q = std::polar(mag(rng), ang(rng));
    const cplx fig = colored_jones(KnotSpec::figure_eight(), 2, q).to_complex();
    const cplx fig_ref = oracle::tl_colored_jones(3, oracle::figure_eight_braid(), 2, std::log(q));
    worst_fig = std::max(worst_fig, std::abs(fig - fig_ref) / std::abs(fig_ref));
    const cplx tre = colored_jones(KnotSpec::torus(2, 3), 2, q).to_complex();
    const cplx tre_ref = 1.0 / q + std::pow(q, -3) - std::pow(q, -4);
    worst_tre = std::max(worst_tre, std::abs(tre - tre_ref) / std::abs(tre_ref));
  }
  bool unknot_exact = true;
  for (int n : {1, 2, 3, 50, 1000})
    for (cplx q : {cplx(1.3, 0.1), cplx(0.0, 1.0), cplx(-2.0, 0.5)}) {
      const LogComplex v = colored_jones(KnotSpec::unknot(), n, q);
      unknot_exact = unknot_exact && v.log_mag == 0.0 && v.phase == 0.0 && v.to_complex() == cplx(1.0);
    }
  return {worst_fig <= 1e-9 && worst_tre <= 1e-9 && unknot_exact,
          fmt("figure-eight rel %.1e, trefoil rel %.1e, unknot exact %s", worst_fig, worst_tre, unknot_exact ? "yes" : "no")};
}

Outcome figure_eight_volume() {
  const double reference = 2.0 * oracle::dilog_series(std::polar(1.0, pi / 3)).imag();
  const double im_h = h_closed(KnotSpec::figure_eight(), 0.0).imag();
  const double vol = volume(KnotSpec::figure_eight(), 0.0);
  const bool pass = std::abs(im_h - 2.0298832) <= 1e-6 && std::abs(im_h - reference) <= 1e-6 && std::abs(vol - im_h) <= 1e-12;
  return {pass, fmt("Im H(E;0) %.10f, oracle %.10f, volume %.10f", im_h, reference, vol)};
}

Outcome torus_discontinuity() {
  const auto seq = log_jones_sequence(KnotSpec::torus(2, 3), 0.0, make_schedule(250, 5000, 250));
  const auto lim = extrapolate(seq);
  const cplx closed = (1.0 - 1.0 / 12.0 - 3.0) * pi * I;
  const double mag = std::abs(lim.value);
  return {mag <= 0.05 && std::abs(closed) >= 1.5,
          fmt("extrapolated %.6f%+.6fi (|.| %.4f, gate 0.05), log|J_N|/N -> %.2e, closed-form |.| %.3f", lim.value.real(),
              lim.value.imag(), mag, lim.value.real(), std::abs(closed))};
}

Outcome robustness() {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> mag(0.97, 1.03), ang(-pi, pi);
  double worst = 0.0;
  int compared = 0;
  for (int i = 0; i < 10; ++i) {
    const cplx q = std::polar(mag(rng), ang(rng));
    for (int n = 2; n <= 100; n += 7) {
      const cplx f = colored_jones(KnotSpec::figure_eight(), n, q).to_complex();
      const cplx fd = oracle::fig8_direct(n, q);
      worst = std::max(worst, std::abs(f - fd) / std::abs(fd));
      const cplx t = colored_jones_torus_log(2, 3, n, std::log(q)).value().to_complex();
      double cond = 0.0;
      const cplx td = oracle::torus_direct(2, 3, n, std::log(q), &cond);
      // A cancelling plain sum is no reference at all.
      if (cond > 1e3) continue;
      worst = std::max(worst, std::abs(t - td) / std::abs(td));
      ++compared;
    }
  }
  bool finite = true;
  for (KnotSpec k : {KnotSpec::figure_eight(), KnotSpec::torus(2, 3)}) {
    const LogComplex v = colored_jones_log(k, 10000, (cplx(-1.0, 1.0) + two_pi_i) / 1e4).value();
    finite = finite && std::isfinite(v.log_mag) && std::isfinite(v.phase);
  }
  // Order of the central difference on the figure-eight potential.
  const cplx u(0.2, 0.1);
  const auto h = [](cplx z) { return h_closed(KnotSpec::figure_eight(), z); };
  const cplx exact = h_closed_derivative(KnotSpec::figure_eight(), u);
  const double e1 = std::abs(central_derivative(h, u, 2e-2) - exact);
  const double e2 = std::abs(central_derivative(h, u, 1e-2) - exact);
  const double e3 = std::abs(central_derivative(h, u, 5e-3) - exact);
  const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
  return {worst <= 1e-10 && compared >= 150 && finite && order >= 1.9,
          fmt("log-space vs direct rel %.1e over %d evaluations, N=1e4 finite %s, observed order %.3f", worst, compared,
              finite ? "yes" : "no", order)};
}

Outcome sweep_determinism() {
  SweepJob job;
  job.knot = KnotSpec::torus(2, 3);
  job.re_min = -2.0;
  job.re_max = -0.1;
  job.im_min = 0.1;
  job.im_max = 3.0;
  job.steps_re = 20;
  job.steps_im = 20;
  const std::string a = to_csv(run_sweep(job, 1)), b = to_csv(run_sweep(job, 8));

  SweepJob fig;
  fig.knot = KnotSpec::figure_eight();
  fig.re_min = -0.5;
  fig.re_max = 0.5;
  fig.im_min = -0.5;
  fig.im_max = 0.5;
  fig.steps_re = 4;
  fig.steps_im = 3;
  fig.mode = SweepMode::both;
  fig.n_min = 100;
  fig.n_max = 600;
  fig.n_step = 100;
  const std::string c = to_csv(run_sweep(fig, 1)), d = to_csv(run_sweep(fig, 8));
  return {a == b && c == d, fmt("closed-form CSV %zu bytes, numeric CSV %zu bytes, identical %s", a.size(), c.size(),
                                a == b && c == d ? "yes" : "no")};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {"torus limit theorem at r = 1.05+0.1i", torus_limit},
      {"torus volume function vanishes", torus_volume_zero},
      {"Schlafli residual", schlafli},
      {"shared root of H and Delta", shared_root},
      {"A-polynomial pairing", gukov},
      {"J_N -> 1/Delta near q = 1", melvin_morton},
      {"Jones oracles and unknot normalization", jones_oracles},
      {"figure-eight complete volume", figure_eight_volume},
      {"torus discontinuity at u = 0", torus_discontinuity},
      {"numerical robustness", robustness},
      {"sweep determinism", sweep_determinism},
  };
  const int count = static_cast<int>(std::size(criteria));
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > count) {
      std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0], count);
      return 2;
    }
  }
  int failed = 0;
  for (int k = 1; k <= count; ++k) {
    if (only && k != only) continue;
    Outcome out;
    try {
      out = criteria[k - 1].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s #%d %s: %s\n", out.pass ? "PASS" : "FAIL", k, criteria[k - 1].name, out.detail.c_str());
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed ? 1 : 0;
}
