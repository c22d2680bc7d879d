#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "knotvol/geometry.hpp"
#include "knotvol/knots.hpp"

namespace knotvol {

// "1.3+0.1i", "-0.6-0.4i", "2", "0.5i"; no spaces.
cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

enum class SweepMode { closed_form, numeric_limit, both };

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view text);

struct SweepJob {
  KnotSpec knot;
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
  int steps_re = 1, steps_im = 1;
  int n_min = 100, n_max = 1000, n_step = 100;
  SweepMode mode = SweepMode::closed_form;
  std::map<std::string, double> tolerances;

  // Throws DomainError on the first violated constraint.
  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(steps_re) * static_cast<std::size_t>(steps_im); }
  // Row-major: idx = i_im * steps_re + i_re.
  cplx grid_point(std::size_t idx) const;

  friend bool operator==(const SweepJob&, const SweepJob&) = default;
};

struct SweepRow {
  std::size_t idx = 0;
  GeometryPoint point;
};

struct SweepFailure {
  std::size_t idx = 0;
  std::string diagnostic;
  friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepResult {
  SweepJob job;
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
};

bool operator==(const SurgeryCoefficients& x, const SurgeryCoefficients& y);
bool operator==(const GeometryPoint& x, const GeometryPoint& y);
bool operator==(const SweepRow& x, const SweepRow& y);
bool operator==(const SweepResult& x, const SweepResult& y);

// Evaluates one grid point according to the job's mode.
GeometryPoint evaluate_point(const SweepJob& job, cplx u);

// Bounded pool of `parallelism` workers; output order is grid order regardless of scheduling.
SweepResult run_sweep(const SweepJob& job, int parallelism);

inline constexpr std::string_view csv_header = "idx,u_re,u_im,H_re,H_im,v_re,v_im,V,geo_len,p,q,err_est,flags";
std::string csv_row(std::size_t idx, const GeometryPoint& pt);
// Failures appear as rows with empty numeric fields and an "error:" flag.
std::string to_csv(const SweepResult& result);

std::string to_json(const GeometryPoint& pt, std::size_t idx);
std::string to_json(const SweepResult& result);
SweepResult sweep_from_json(std::string_view text);

}  // namespace knotvol
