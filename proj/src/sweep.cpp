#include "knotvol/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "knotvol/jones.hpp"

namespace knotvol {

using nlohmann::json;

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw DomainError("not a number: '" + std::string(text) + "'");
  return value;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool same(double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); }
bool same(cplx x, cplx y) { return same(x.real(), y.real()) && same(x.imag(), y.imag()); }

}  // namespace

cplx parse_complex(std::string_view text) {
  if (text.empty()) throw DomainError("empty complex number");
  if (text.back() != 'i') return parse_double(text);

  const auto body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s.front() == '+' ? s.substr(1) : s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string format_complex(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::closed_form: return "closed_form";
    case SweepMode::numeric_limit: return "numeric_limit";
    case SweepMode::both: return "both";
  }
  return "?";
}

SweepMode parse_sweep_mode(std::string_view text) {
  if (text == "closed_form" || text == "closed") return SweepMode::closed_form;
  if (text == "numeric_limit" || text == "numeric") return SweepMode::numeric_limit;
  if (text == "both") return SweepMode::both;
  throw DomainError("unknown sweep mode '" + std::string(text) + "'");
}

void SweepJob::validate() const {
  for (double x : {re_min, re_max, im_min, im_max})
    if (!std::isfinite(x)) throw DomainError("sweep grid bounds must be finite");
  if (re_min > re_max || im_min > im_max) throw DomainError("sweep grid bounds must satisfy min <= max");
  if (steps_re < 1 || steps_im < 1) throw DomainError("sweep steps must be at least 1");
  if (n_min < 2) throw DomainError("sweep n_min must be at least 2");
  if (n_step < 1 || n_max < n_min) throw DomainError("sweep N schedule is empty");
  if (mode != SweepMode::closed_form && n_max < 500) throw DomainError("numeric sweeps need n_max >= 500");
  if (mode != SweepMode::closed_form && make_schedule(n_min, n_max, n_step).size() < 4)
    throw DomainError("numeric sweeps need at least 4 schedule points");
}

cplx SweepJob::grid_point(std::size_t idx) const {
  const auto i_re = static_cast<int>(idx % static_cast<std::size_t>(steps_re));
  const auto i_im = static_cast<int>(idx / static_cast<std::size_t>(steps_re));
  const auto at = [](double lo, double hi, int i, int steps) {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  };
  return {at(re_min, re_max, i_re, steps_re), at(im_min, im_max, i_im, steps_im)};
}

bool operator==(const SurgeryCoefficients& x, const SurgeryCoefficients& y) {
  return same(x.p, y.p) && same(x.q, y.q) && x.unique == y.unique && x.integral == y.integral;
}

bool operator==(const GeometryPoint& x, const GeometryPoint& y) {
  return same(x.u, y.u) && same(x.H, y.H) && same(x.v, y.v) && same(x.V, y.V) &&
         same(x.geodesic_length, y.geodesic_length) && x.surgery == y.surgery && x.source == y.source &&
         same(x.err_est, y.err_est) && x.flags == y.flags;
}

bool operator==(const SweepRow& x, const SweepRow& y) { return x.idx == y.idx && x.point == y.point; }

bool operator==(const SweepResult& x, const SweepResult& y) {
  return x.job == y.job && x.rows == y.rows && x.failures == y.failures;
}

GeometryPoint evaluate_point(const SweepJob& job, cplx u) {
  switch (job.mode) {
    case SweepMode::closed_form: return geometry_point(job.knot, u);
    case SweepMode::numeric_limit:
      return geometry_point_numeric(job.knot, u, make_schedule(job.n_min, job.n_max, job.n_step));
    case SweepMode::both: {
      GeometryPoint pt = geometry_point(job.knot, u);
      const auto schedule = make_schedule(job.n_min, job.n_max, job.n_step);
      pt.err_est = std::abs(h_numeric(job.knot, u, schedule).value - pt.H);
      pt.flags.push_back("numeric_checked");
      return pt;
    }
  }
  throw DomainError("unknown sweep mode");
}

SweepResult run_sweep(const SweepJob& job, int parallelism) {
  job.validate();
  if (parallelism < 1) throw DomainError("parallelism must be positive");

  const std::size_t total = job.size();
  std::vector<std::optional<GeometryPoint>> points(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        points[idx] = evaluate_point(job, job.grid_point(idx));
      } catch (const std::exception& e) {
        errors[idx] = e.what();
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(parallelism), total);
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  SweepResult out;
  out.job = job;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (points[idx]) out.rows.push_back({idx, std::move(*points[idx])});
    else out.failures.push_back({idx, errors[idx]});
  }
  return out;
}

std::string csv_row(std::size_t idx, const GeometryPoint& pt) {
  std::ostringstream os;
  os << idx << ',' << fmt(pt.u.real()) << ',' << fmt(pt.u.imag()) << ',' << fmt(pt.H.real()) << ','
     << fmt(pt.H.imag()) << ',' << fmt(pt.v.real()) << ',' << fmt(pt.v.imag()) << ',' << fmt(pt.V) << ','
     << fmt(pt.geodesic_length) << ',';
  if (pt.surgery) os << fmt(pt.surgery->p) << ',' << fmt(pt.surgery->q) << ',';
  else os << ",,";
  os << fmt(pt.err_est) << ',';
  for (std::size_t k = 0; k < pt.flags.size(); ++k) os << (k ? ";" : "") << pt.flags[k];
  return os.str();
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << csv_header << '\n';
  auto row = result.rows.begin();
  auto fail = result.failures.begin();
  // Merge back into grid order.
  while (row != result.rows.end() || fail != result.failures.end()) {
    if (fail == result.failures.end() || (row != result.rows.end() && row->idx < fail->idx)) {
      os << csv_row(row->idx, row->point) << '\n';
      ++row;
    } else {
      std::string diag = fail->diagnostic;
      std::replace_if(diag.begin(), diag.end(), [](char c) { return c == ',' || c == '\n' || c == ';'; }, ' ');
      const cplx u = result.job.grid_point(fail->idx);
      os << fail->idx << ',' << fmt(u.real()) << ',' << fmt(u.imag()) << ",,,,,,,,,,error:" << diag << '\n';
      ++fail;
    }
  }
  return os.str();
}

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double number(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

json point_json(const GeometryPoint& pt, std::size_t idx) {
  json j;
  j["idx"] = idx;
  j["u_re"] = number(pt.u.real());
  j["u_im"] = number(pt.u.imag());
  j["H_re"] = number(pt.H.real());
  j["H_im"] = number(pt.H.imag());
  j["v_re"] = number(pt.v.real());
  j["v_im"] = number(pt.v.imag());
  j["V"] = number(pt.V);
  j["geo_len"] = number(pt.geodesic_length);
  if (pt.surgery) {
    j["p"] = number(pt.surgery->p);
    j["q"] = number(pt.surgery->q);
    j["surgery_unique"] = pt.surgery->unique;
    j["surgery_integral"] = pt.surgery->integral;
  } else {
    j["p"] = nullptr;
    j["q"] = nullptr;
  }
  j["err_est"] = number(pt.err_est);
  j["flags"] = pt.flags;
  j["source"] = pt.source == HSource::closed_form ? "closed_form" : "numeric_limit";
  return j;
}

SweepRow point_from_json(const json& j) {
  SweepRow row;
  row.idx = j.at("idx").get<std::size_t>();
  GeometryPoint& pt = row.point;
  pt.u = {number(j.at("u_re")), number(j.at("u_im"))};
  pt.H = {number(j.at("H_re")), number(j.at("H_im"))};
  pt.v = {number(j.at("v_re")), number(j.at("v_im"))};
  pt.V = number(j.at("V"));
  pt.geodesic_length = number(j.at("geo_len"));
  if (j.contains("surgery_unique"))
    pt.surgery = SurgeryCoefficients{number(j.at("p")), number(j.at("q")), j.at("surgery_unique").get<bool>(),
                                     j.at("surgery_integral").get<bool>()};
  pt.err_est = number(j.at("err_est"));
  pt.flags = j.at("flags").get<std::vector<std::string>>();
  const auto source = j.at("source").get<std::string>();
  if (source == "closed_form") pt.source = HSource::closed_form;
  else if (source == "numeric_limit") pt.source = HSource::numeric_limit;
  else throw DomainError("unknown source '" + source + "'");
  return row;
}

}  // namespace

std::string to_json(const GeometryPoint& pt, std::size_t idx) { return point_json(pt, idx).dump(); }

std::string to_json(const SweepResult& result) {
  const SweepJob& job = result.job;
  json j;
  j["job"] = {{"knot", job.knot.to_string()},
              {"re_min", job.re_min},
              {"re_max", job.re_max},
              {"im_min", job.im_min},
              {"im_max", job.im_max},
              {"steps_re", job.steps_re},
              {"steps_im", job.steps_im},
              {"n_min", job.n_min},
              {"n_max", job.n_max},
              {"n_step", job.n_step},
              {"mode", to_string(job.mode)},
              {"tolerances", job.tolerances}};
  j["rows"] = json::array();
  for (const auto& row : result.rows) j["rows"].push_back(point_json(row.point, row.idx));
  j["failures"] = json::array();
  for (const auto& f : result.failures) j["failures"].push_back({{"idx", f.idx}, {"diagnostic", f.diagnostic}});
  return j.dump(2);
}

SweepResult sweep_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    SweepResult out;
    const json& jj = j.at("job");
    SweepJob& job = out.job;
    job.knot = KnotSpec::parse(jj.at("knot").get<std::string>());
    job.re_min = jj.at("re_min").get<double>();
    job.re_max = jj.at("re_max").get<double>();
    job.im_min = jj.at("im_min").get<double>();
    job.im_max = jj.at("im_max").get<double>();
    job.steps_re = jj.at("steps_re").get<int>();
    job.steps_im = jj.at("steps_im").get<int>();
    job.n_min = jj.at("n_min").get<int>();
    job.n_max = jj.at("n_max").get<int>();
    job.n_step = jj.at("n_step").get<int>();
    job.mode = parse_sweep_mode(jj.at("mode").get<std::string>());
    job.tolerances = jj.at("tolerances").get<std::map<std::string, double>>();
    for (const auto& r : j.at("rows")) out.rows.push_back(point_from_json(r));
    for (const auto& f : j.at("failures"))
      out.failures.push_back({f.at("idx").get<std::size_t>(), f.at("diagnostic").get<std::string>()});
    return out;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed sweep JSON: ") + e.what());
  }
}

}  // namespace knotvol
