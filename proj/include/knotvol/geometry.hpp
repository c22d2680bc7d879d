#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knotvol/knots.hpp"
#include "knotvol/numerics.hpp"

namespace knotvol {

enum class HSource { closed_form, numeric_limit };

struct SurgeryCoefficients {
  double p = 0.0;
  double q = 0.0;
  bool unique = true;      // false when the 2x2 system is rank deficient but consistent (minimum-norm answer)
  bool integral = false;   // within 1e-6 of a coprime integer pair
};

struct GeometryPoint {
  cplx u;
  cplx H;
  cplx v;
  double V = 0.0;
  double geodesic_length = 0.0;
  std::optional<SurgeryCoefficients> surgery;
  HSource source = HSource::closed_form;
  double err_est = 0.0;
  std::vector<std::string> flags;
};

struct SaddleY {
  cplx y;
};

// Root of y^2 - (2 cosh u - 1) y + 1 = 0 on the geometric branch: larger Im H,
// ties broken toward |y| <= 1. Near the double root y is snapped to (2 cosh u - 1)/2.
SaddleY solve_y(cplx u);

// Figure-eight potential at a given saddle y. Real dilog arguments above 1
// are taken as the limit from Im u -> 0+.
cplx h_fig8(cplx u, cplx y);

// Closed-form H; DomainError for the unknot.
cplx h_closed(const KnotSpec& knot, cplx u);
// Analytic dH/du of the closed form.
cplx h_closed_derivative(const KnotSpec& knot, cplx u);

// |u + 2 pi i| > 2 pi/(ab), Re u < 0, Im u > -2 pi. Always true for non-torus knots.
bool in_torus_region(const KnotSpec& knot, cplx u);

// H = (u + 2 pi i) * lim log J_N / N. Needs max N >= 500.
LimitEstimate h_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule);
// v = 2 lim d/du [(u + 2 pi i) log J_N / N] - 2 pi i, differentiating each sample at step h.
LimitEstimate v_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule, double h = 1e-4);

// 2 dH/du - 2 pi i of an arbitrary H via the Richardson-refined central difference.
cplx v_from_h(const std::function<cplx(cplx)>& h_fn, cplx u, double h = default_derivative_step);
// Torus: -ab(u + 2 pi i) exactly. Figure-eight: numeric derivative of h_closed.
cplx v_of_u(const KnotSpec& knot, cplx u, double h = default_derivative_step);

// Im H - pi Re u - (1/2) Re u Im v
double volume(cplx u, cplx H, cplx v);
// Im H - pi Re u - (1/4) Im(u v) - (pi/2) length; same value by algebra.
double volume_geodesic_form(cplx u, cplx H, cplx v);
double volume(const KnotSpec& knot, cplx u);

// -Im(u conj(v)) / (2 pi)
double geodesic_length(cplx u, cplx v);

// |dV/dt + (1/2)(Re u dIm v/dt - Re v dIm u/dt)| by central differences.
double schlafli_residual(const KnotSpec& knot, const std::function<cplx(double)>& path, double t, double dt);

// Real (p, q) with p u + q v = 2 pi i; nullopt when no real solution exists.
std::optional<SurgeryCoefficients> surgery_coefficients(cplx u, cplx v);

struct GukovEntry {
  std::string factor;  // "abelian" or a candidate name
  int pair = 0;        // 1: L = -exp(-v/2), 2: L = -exp(v/2)
  cplx L;
  cplx M;
  double residual = 0.0;
  bool vanishes = false;
};

struct GukovReport {
  cplx u;
  cplx v;
  cplx a;  // (u + 2 pi i)/(2 pi i)
  cplx l;  // -v/2 - pi i
  std::vector<GukovEntry> entries;
};

GukovReport gukov_check(const KnotSpec& knot, cplx u, double tol);

struct SharedRoot {
  cplx seed;
  cplx root;
  cplx h_at_root;
  cplx t;            // exp(root)
  cplx alexander_at_t;
  int iterations = 0;
  bool ok = false;
};

struct SharedRootReport {
  std::vector<SharedRoot> roots;
  bool ok = false;
};

// Newton on h_closed from fixed seeds; ConvergenceError lists the iterates on failure.
SharedRootReport shared_root_check(const KnotSpec& knot, double tol);

// 4 H - 4 pi i u
cplx nz_potential(const KnotSpec& knot, cplx u);

struct MMReport {
  cplx jones;   // J_N(exp((u + 2 pi i)/N))
  cplx target;  // 1 / Delta(exp(u + 2 pi i)), symmetric normalization
  double deviation = 0.0;
  bool ok = false;
};

inline constexpr double mm_gate = 0.5;

// Requires |u + 2 pi i| <= mm_gate. PoleError when Delta vanishes there.
MMReport mm_check(const KnotSpec& knot, cplx u, int n, double tol);

GeometryPoint geometry_point(const KnotSpec& knot, cplx u);
GeometryPoint geometry_point_numeric(const KnotSpec& knot, cplx u, std::span<const int> schedule);

}  // namespace knotvol
