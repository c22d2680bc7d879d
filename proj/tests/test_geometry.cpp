#include <doctest.h>

#include <random>

#include "knotvol/geometry.hpp"
#include "knotvol/jones.hpp"
#include "oracles.hpp"

using namespace knotvol;

namespace {

const KnotSpec fig8 = KnotSpec::figure_eight();
const KnotSpec t23 = KnotSpec::torus(2, 3);
const cplx I{0.0, 1.0};
const double ustar = std::acosh(1.5);

cplx torus_h(int a, int b, cplx u) {
  const double ab = double(a) * b;
  const cplx z = ab * (u + two_pi_i) - two_pi_i;
  return -z * z / (4.0 * ab);
}

}  // namespace

TEST_CASE("saddle y") {
  for (double s : {1.0, -1.0}) {
    const cplx y = solve_y(s * ustar).y;
    CHECK(std::abs(y - 1.0) < 1e-15);
  }
  const cplx y0 = solve_y(0.0).y;
  CHECK((std::abs(y0 - std::polar(1.0, pi / 3)) < 1e-14 || std::abs(y0 - std::polar(1.0, -pi / 3)) < 1e-14));
  const double im_chosen = h_fig8(0.0, y0).imag();
  const double im_other = h_fig8(0.0, 1.0 / y0).imag();
  CHECK(im_chosen >= im_other);
  CHECK(im_chosen == doctest::Approx(2.0298832128193).epsilon(1e-12));

  std::mt19937 rng(53);
  std::uniform_real_distribution<double> re(-2, 2), im(-4, 4);
  for (int i = 0; i < 100; ++i) {
    const cplx u(re(rng), im(rng));
    const cplx y = solve_y(u).y;
    CHECK(std::abs(y + 1.0 / y - (2.0 * std::cosh(u) - 1.0)) <= 1e-12 * std::max(1.0, std::abs(y + 1.0 / y)));
  }
}

TEST_CASE("closed-form H") {
  CHECK(std::abs(h_closed(t23, two_pi_i / 6.0 - two_pi_i)) <= 1e-12);
  CHECK(std::abs(h_closed(fig8, ustar)) <= 1e-10);
  CHECK(std::abs(h_closed(fig8, -ustar)) <= 1e-10);
  // Im H(E;0) = 2 Im Li2(e^{i pi/3}), computed independently by the series oracle.
  CHECK(std::abs(h_closed(fig8, 0.0).imag() - 2.0 * oracle::dilog_series(std::polar(1.0, pi / 3)).imag()) < 1e-9);
  CHECK_THROWS_AS(h_closed(KnotSpec::unknot(), 0.1), DomainError);

  std::mt19937 rng(59);
  std::uniform_real_distribution<double> re(-3, 0), im(-5, 5);
  for (int i = 0; i < 20; ++i) {
    const cplx u(re(rng), im(rng));
    CHECK(std::abs(h_closed(KnotSpec::torus(3, 4), u) - torus_h(3, 4, u)) <= 1e-12 * std::max(1.0, std::abs(torus_h(3, 4, u))));
  }
}

TEST_CASE("analytic derivative matches finite differences") {
  for (cplx u : {cplx(0.02, 0.03), cplx(0.3, -0.4), cplx(-0.5, 0.7)}) {
    const auto h = [](cplx z) { return h_closed(fig8, z); };
    CHECK(std::abs(h_closed_derivative(fig8, u) - richardson_derivative(h, u)) < 1e-8);
  }
  const cplx u(-0.3, 0.2);
  const auto h = [](cplx z) { return h_closed(t23, z); };
  // v + 2 pi i = 2 dH/du for T(2,3) gives dH/du = -3(u + 2 pi i) + pi i.
  CHECK(std::abs(central_derivative(h, u, default_derivative_step) - (-3.0 * (u + two_pi_i) + pi * I)) <= 1e-8);
  CHECK(std::abs(h_closed_derivative(t23, u) - (-3.0 * (u + two_pi_i) + pi * I)) <= 1e-13);
}

TEST_CASE("v_of_u") {
  const cplx u(-1.0, 1.0);
  CHECK(v_of_u(KnotSpec::torus(3, 4), u) == -12.0 * (u + two_pi_i));
  for (KnotSpec k : {t23, KnotSpec::torus(2, 5), KnotSpec::torus(3, 4)}) {
    const cplx w(-0.7, 0.9);
    const cplx numeric = v_from_h([&](cplx z) { return h_closed(k, z); }, w);
    CHECK(std::abs(numeric - v_of_u(k, w)) <= 1e-8 * std::max(1.0, std::abs(v_of_u(k, w))));
  }
  const cplx fig_v = v_of_u(fig8, cplx(0.2, 0.1));
  CHECK(std::abs(fig_v - (2.0 * h_closed_derivative(fig8, cplx(0.2, 0.1)) - two_pi_i)) <= 1e-4);
}

TEST_CASE("volume and geodesic length") {
  CHECK(volume(fig8, 0.0) == doctest::Approx(2.0298832128193).epsilon(1e-9));
  CHECK(geodesic_length(cplx(0, 0.4), cplx(0, -3)) == 0.0);
  CHECK(geodesic_length(1.0, I) == doctest::Approx(1.0 / (2 * pi)));
  CHECK(geodesic_length(0.0, v_of_u(fig8, 0.0)) == 0.0);

  for (KnotSpec k : {t23, KnotSpec::torus(2, 5), KnotSpec::torus(3, 4)}) {
    for (cplx u : {cplx(-0.5, 0.5), cplx(-2.0, 3.0), cplx(-0.5, -5.0)}) {
      CHECK(in_torus_region(k, u));
      CHECK(std::abs(volume(k, u)) <= 1e-9);
    }
  }

  std::mt19937 rng(61);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const cplx u(d(rng), d(rng)), v(d(rng), d(rng)), H(d(rng), d(rng));
    CHECK(std::abs(volume(u, H, v) - volume_geodesic_form(u, H, v)) <= 1e-12 * std::max(1.0, std::abs(volume(u, H, v))));
  }
}

TEST_CASE("region gate") {
  CHECK(in_torus_region(t23, cplx(-0.5, 0.4)));
  CHECK_FALSE(in_torus_region(t23, cplx(0.1, 0.4)));
  CHECK_FALSE(in_torus_region(t23, cplx(-0.5, -7.0)));
  CHECK_FALSE(in_torus_region(t23, two_pi_i / 6.0 - two_pi_i));
  CHECK(in_torus_region(fig8, cplx(5, 5)));
  const auto pt = geometry_point(t23, two_pi_i / 6.0 - two_pi_i);
  CHECK(std::find(pt.flags.begin(), pt.flags.end(), "out_of_region") != pt.flags.end());
}

TEST_CASE("Schlafli residual") {
  const auto seg = [](double t) { return cplx(-1.0, 0.5) + t * cplx(0.8, 0.5); };
  for (KnotSpec k : {t23, KnotSpec::torus(2, 5), KnotSpec::torus(3, 4)})
    for (double t = 0.1; t <= 0.9; t += 0.1) CHECK(schlafli_residual(k, seg, t, 1e-3) <= 1e-9);
  const auto constant = [](double) { return cplx(0.1, 0.2); };
  CHECK(schlafli_residual(fig8, constant, 0.5, 1e-3) == 0.0);
  const auto ray = [](double t) { return t * cplx(-0.1, 0.2); };
  for (double t = 0.1; t <= 0.9; t += 0.1) CHECK(schlafli_residual(fig8, ray, t, 1e-3) <= 1e-4);
}

TEST_CASE("surgery coefficients") {
  for (KnotSpec k : {t23, KnotSpec::torus(3, 4)}) {
    const cplx u(-0.8, 0.3);
    const auto s = surgery_coefficients(u, v_of_u(k, u));
    REQUIRE(s);
    CHECK(s->p == doctest::Approx(-1.0));
    CHECK(s->q == doctest::Approx(-1.0 / (k.a * k.b)));
    CHECK(s->unique);
    CHECK_FALSE(s->integral);
  }
  const auto a = surgery_coefficients(two_pi_i, cplx(0.7, -0.2));
  REQUIRE(a);
  CHECK(a->p == doctest::Approx(1.0));
  CHECK(std::abs(a->q) < 1e-12);
  CHECK(a->integral);

  const auto b = surgery_coefficients(0.0, two_pi_i);
  REQUIRE(b);
  CHECK(std::abs(b->p) < 1e-12);
  CHECK(b->q == doctest::Approx(1.0));
  CHECK_FALSE(b->unique);

  // Both real parts zero and both imaginary parts zero: nothing solves Im = 2 pi.
  CHECK_FALSE(surgery_coefficients(1.0, 2.0));
  CHECK_FALSE(surgery_coefficients(0.0, 0.0));
}

TEST_CASE("Gukov check") {
  const auto rep = gukov_check(t23, cplx(-0.6, 0.4), 1e-8);
  CHECK(rep.a == (cplx(-0.6, 0.4) + two_pi_i) / two_pi_i);
  CHECK(std::abs(rep.l - (-rep.v / 2.0 - pi * I)) == 0.0);
  for (const std::string name : {"L*M^ab=eps", "L=eps*M^ab"}) {
    int hits = 0;
    for (const auto& e : rep.entries)
      if (e.factor == name && e.vanishes) ++hits;
    CHECK(hits == 1);
  }

  const auto fr = gukov_check(fig8, cplx(0.05, 0.05), 1e-6);
  bool any = false;
  for (const auto& e : fr.entries)
    if (e.factor != "abelian" && e.vanishes) any = true;
  CHECK(any);

  // Near u = -2 pi i with v = -2 pi i the L candidate is 1 and kills L - 1.
  const cplx u = -two_pi_i + 1e-3;
  const cplx v = -two_pi_i;
  const cplx L = -std::exp(-v / 2.0);
  CHECK(std::abs(L - 1.0) < 1e-15);
  CHECK(std::abs(eval_bivariate(a_polynomial(fig8).abelian, L, std::exp(u / 2.0))) < 1e-15);
}

TEST_CASE("shared roots") {
  const auto fr = shared_root_check(fig8, 1e-10);
  CHECK(fr.ok);
  REQUIRE(fr.roots.size() == 2);
  CHECK(std::abs(fr.roots[0].root - ustar) < 1e-9);
  CHECK(std::abs(fr.roots[1].root + ustar) < 1e-9);
  for (const auto& r : fr.roots) CHECK(std::abs(r.h_at_root) <= 1e-10);

  for (KnotSpec k : {t23, KnotSpec::torus(2, 5), KnotSpec::torus(3, 4)}) {
    const auto rep = shared_root_check(k, 1e-10);
    CHECK(rep.ok);
    REQUIRE(rep.roots.size() == 1);
    CHECK(std::abs(rep.roots[0].root - (two_pi_i / double(k.a * k.b) - two_pi_i)) < 1e-6);
    CHECK(std::abs(rep.roots[0].alexander_at_t) <= 1e-10);
  }
}

TEST_CASE("Neumann-Zagier potential") {
  CHECK(std::abs(nz_potential(fig8, ustar) - (-4.0 * pi * I * ustar)) < 1e-9);
  const cplx r = two_pi_i / 6.0 - two_pi_i;
  CHECK(std::abs(nz_potential(t23, r) - (-4.0 * pi * I * r)) < 1e-12);
  CHECK(nz_potential(fig8, 0.0) == 4.0 * h_closed(fig8, 0.0));
}

TEST_CASE("Melvin-Morton regime") {
  const auto unk = mm_check(KnotSpec::unknot(), cplx(0.1, -2 * pi), 50, 1e-12);
  CHECK(unk.jones == cplx(1.0));
  CHECK(unk.deviation == 0.0);
  const auto f = mm_check(fig8, cplx(0.3, -2 * pi), 2000, 1e-2);
  CHECK(f.ok);
  CHECK(std::abs(f.target - 1.0 / (3.0 - 2.0 * std::cosh(0.3))) < 1e-12);
  const auto t = mm_check(t23, cplx(0.2, -2 * pi), 2000, 1e-2);
  CHECK(t.ok);
  CHECK_THROWS_AS(mm_check(fig8, cplx(1.0, -2 * pi), 100, 1e-2), DomainError);
}

TEST_CASE("numeric limits") {
  const auto schedule = make_schedule(100, 1500, 100);
  const auto unk = h_numeric(KnotSpec::unknot(), cplx(-0.3, 0.2), schedule);
  CHECK(unk.value == cplx(0.0));
  CHECK_THROWS_AS(h_numeric(t23, cplx(-0.6, 0.4), make_schedule(100, 400, 100)), DomainError);

  const auto t = h_numeric(t23, cplx(-0.6, 0.4), schedule);
  CHECK(std::abs(t.value - h_closed(t23, cplx(-0.6, 0.4))) <= 1e-3);

  const cplx u(0.02, 0.03);
  const auto f = h_numeric(fig8, u, schedule);
  CHECK(std::abs(f.value - h_closed(fig8, u)) <= 1e-2);
  const auto v = v_numeric(fig8, u, schedule);
  CHECK(std::abs(v.value - v_of_u(fig8, u)) <= 1e-2);

  const auto pt = geometry_point_numeric(fig8, u, schedule);
  CHECK(pt.source == HSource::numeric_limit);
  CHECK(std::isfinite(pt.V));
}
