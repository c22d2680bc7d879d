#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotvol/geometry.hpp"
#include "knotvol/jones.hpp"
#include "knotvol/knots.hpp"
#include "knotvol/sweep.hpp"

using namespace knotvol;
using nlohmann::json;

namespace {

struct Globals {
  std::string format = "csv";
  double tol = 1e-8;
  int threads = 1;
  std::string out;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int parse_count(const std::string& text) {
  const double x = parse_complex(text).real();
  if (x != std::floor(x) || x < 1 || x > 1e6) throw DomainError("expected a positive integer, got '" + text + "'");
  return static_cast<int>(x);
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

// key/value output, either as a two-line CSV table or a flat JSON object
class Record {
 public:
  void add(const std::string& key, const std::string& text, json value) {
    keys_.push_back(key);
    texts_.push_back(text);
    obj_[key] = std::move(value);
  }
  void add(const std::string& key, double x) { add(key, num(x), x); }
  void add(const std::string& key, cplx z) {
    add(key + "_re", z.real());
    add(key + "_im", z.imag());
  }
  void add(const std::string& key, const std::string& s) { add(key, s, s); }
  void add_flag(const std::string& key, bool b) { add(key, b ? "true" : "false", b); }

  std::string render(const std::string& format) const {
    if (format == "json") return obj_.dump(2) + "\n";
    std::ostringstream os;
    for (std::size_t i = 0; i < keys_.size(); ++i) os << (i ? "," : "") << keys_[i];
    os << '\n';
    for (std::size_t i = 0; i < texts_.size(); ++i) os << (i ? "," : "") << texts_[i];
    os << '\n';
    return os.str();
  }

 private:
  std::vector<std::string> keys_, texts_;
  json obj_ = json::object();
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + g.out + "'");
  f << text;
}

std::string table(const Globals& g, const std::vector<Record>& rows, const std::string& array_key) {
  if (g.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(json::parse(r.render("json")));
    return json{{array_key, arr}}.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string text = rows[i].render("csv");
    out += i == 0 ? text : text.substr(text.find('\n') + 1);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knotvol: colored Jones asymptotics and the geometry around them"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "Tolerance for pass/fail checks");
  app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write output to this file instead of stdout");

  std::string knot_text = "fig8", q_text = "1", u_text = "0", from_text, to_text, grid_text = "-1:-0.1:0.1:1",
              steps_text = "10x10", mode_text = "closed_form";
  int n = 2, n_min = 100, n_max = 2000, n_step = 100, samples = 9;
  double dt = 1e-3;

  auto add_knot = [&](CLI::App* sub) { sub->add_option("--knot", knot_text, "unknot, fig8 or torus:A,B")->required(); };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--nmin", n_min, "Smallest N of the schedule");
    sub->add_option("--nmax", n_max, "Largest N of the schedule");
    sub->add_option("--nstep", n_step, "Schedule step");
  };

  auto* jones = app.add_subcommand("jones", "Evaluate J_N(K;q)");
  add_knot(jones);
  jones->add_option("--n", n, "Color N")->required();
  jones->add_option("--q", q_text, "Quantum parameter, e.g. 1.3+0.1i")->required();

  auto* limit = app.add_subcommand("limit", "Extrapolate log J_N(K; exp((u+2 pi i)/N))/N");
  add_knot(limit);
  limit->add_option("--u", u_text, "Deformation parameter")->required();
  add_schedule(limit);

  auto* geometry = app.add_subcommand("geometry", "H, v, V, geodesic length and surgery coefficients at u");
  add_knot(geometry);
  geometry->add_option("--u", u_text, "Deformation parameter")->required();
  geometry->add_option("--mode", mode_text, "closed_form, numeric_limit or both");
  add_schedule(geometry);

  auto* schlafli = app.add_subcommand("schlafli", "Schlafli residual along the segment u(t) = from + t (to - from)");
  add_knot(schlafli);
  schlafli->add_option("--from", from_text, "Path start")->required();
  schlafli->add_option("--to", to_text, "Path end")->required();
  schlafli->add_option("--samples", samples, "Number of t values in [0.1, 0.9]")->check(CLI::PositiveNumber);
  schlafli->add_option("--dt", dt, "Finite-difference step");

  auto* gukov = app.add_subcommand("gukov", "Evaluate the A-polynomial at the two candidate (L, M) pairs");
  add_knot(gukov);
  gukov->add_option("--u", u_text, "Deformation parameter")->required();

  auto* roots = app.add_subcommand("roots", "Alexander roots and the shared root of H");
  add_knot(roots);

  auto* mm = app.add_subcommand("mm-check", "Compare J_N near q = 1 with 1/Delta");
  add_knot(mm);
  mm->add_option("--u", u_text, "Deformation parameter with |u + 2 pi i| small")->required();
  mm->add_option("--n", n, "Color N")->required();

  auto* sweep = app.add_subcommand("sweep", "Evaluate GeometryPoints over a grid in the u-plane");
  add_knot(sweep);
  sweep->add_option("--grid", grid_text, "re_min:re_max:im_min:im_max");
  sweep->add_option("--steps", steps_text, "steps_re x steps_im, e.g. 20x20");
  sweep->add_option("--mode", mode_text, "closed_form, numeric_limit or both");
  add_schedule(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  KnotSpec knot;
  try {
    knot = KnotSpec::parse(knot_text);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (jones->parsed()) {
      const cplx q = parse_complex(q_text);
      const LogComplex value = colored_jones(knot, n, q);
      Record r;
      r.add("knot", knot.to_string());
      r.add("n", std::to_string(n), n);
      r.add("q", q);
      r.add("J", value.to_complex());
      r.add("log_mag", value.log_mag);
      r.add("phase", value.phase);
      emit(g, r.render(g.format));
    } else if (limit->parsed()) {
      const cplx u = parse_complex(u_text);
      const auto schedule = make_schedule(n_min, n_max, n_step);
      const LimitEstimate est = extrapolate(log_jones_sequence(knot, u, schedule));
      Record r;
      r.add("knot", knot.to_string());
      r.add("u", u);
      r.add("limit", est.value);
      r.add("err_est", est.error_estimate);
      r.add("H_numeric", est.value * (u + two_pi_i));
      if (knot.kind != KnotKind::unknot) {
        const cplx h = h_closed(knot, u);
        r.add("H_closed", h);
        r.add("abs_diff", std::abs(est.value * (u + two_pi_i) - h));
        r.add_flag("in_region", in_torus_region(knot, u));
      }
      if (g.format == "json") {
        json j = json::parse(r.render("json"));
        for (const auto& s : est.samples) j["samples"].push_back({{"n", s.n}, {"value", cjson(s.value)}});
        emit(g, j.dump(2) + "\n");
      } else {
        emit(g, r.render("csv"));
      }
    } else if (geometry->parsed()) {
      const cplx u = parse_complex(u_text);
      SweepJob job;
      job.knot = knot;
      job.mode = parse_sweep_mode(mode_text);
      job.n_min = n_min;
      job.n_max = n_max;
      job.n_step = n_step;
      job.re_min = job.re_max = u.real();
      job.im_min = job.im_max = u.imag();
      job.validate();
      const GeometryPoint pt = evaluate_point(job, u);
      if (g.format == "json") emit(g, to_json(pt, 0) + "\n");
      else emit(g, std::string(csv_header) + "\n" + csv_row(0, pt) + "\n");
    } else if (schlafli->parsed()) {
      const cplx u0 = parse_complex(from_text), u1 = parse_complex(to_text);
      const auto path = [&](double t) { return u0 + t * (u1 - u0); };
      std::vector<Record> rows;
      for (int k = 0; k < samples; ++k) {
        const double t = samples == 1 ? 0.5 : 0.1 + 0.8 * k / (samples - 1);
        const double res = schlafli_residual(knot, path, t, dt);
        Record r;
        r.add("t", t);
        r.add("u", path(t));
        r.add("residual", res);
        r.add_flag("ok", res <= g.tol);
        rows.push_back(r);
      }
      emit(g, table(g, rows, "points"));
    } else if (gukov->parsed()) {
      const cplx u = parse_complex(u_text);
      const GukovReport rep = gukov_check(knot, u, g.tol);
      std::vector<Record> rows;
      for (const auto& e : rep.entries) {
        Record r;
        r.add("factor", e.factor);
        r.add("pair", std::to_string(e.pair), e.pair);
        r.add("L", e.L);
        r.add("M", e.M);
        r.add("residual", e.residual);
        r.add_flag("vanishes", e.vanishes);
        r.add("l", rep.l);
        r.add("a", rep.a);
        rows.push_back(r);
      }
      emit(g, table(g, rows, "entries"));
    } else if (roots->parsed()) {
      std::vector<Record> rows;
      for (cplx t : alexander_roots(knot)) {
        Record r;
        r.add("kind", "alexander_root");
        r.add("value", t);
        r.add("residual", std::abs(alexander(knot)(t)));
        rows.push_back(r);
      }
      if (knot.kind != KnotKind::unknot) {
        for (const auto& s : shared_root_check(knot, g.tol).roots) {
          Record r;
          r.add("kind", "shared_root_u");
          r.add("value", s.root);
          r.add("residual", std::abs(s.h_at_root));
          rows.push_back(r);
          Record rt;
          rt.add("kind", "shared_root_exp_u");
          rt.add("value", s.t);
          rt.add("residual", std::abs(s.alexander_at_t));
          rows.push_back(rt);
        }
      }
      emit(g, table(g, rows, "roots"));
    } else if (mm->parsed()) {
      const cplx u = parse_complex(u_text);
      const MMReport rep = mm_check(knot, u, n, g.tol);
      Record r;
      r.add("knot", knot.to_string());
      r.add("n", std::to_string(n), n);
      r.add("J", rep.jones);
      r.add("inverse_alexander", rep.target);
      r.add("deviation", rep.deviation);
      r.add_flag("ok", rep.ok);
      emit(g, r.render(g.format));
    } else if (sweep->parsed()) {
      SweepJob job;
      job.knot = knot;
      std::vector<double> bounds;
      std::stringstream gs(grid_text);
      for (std::string part; std::getline(gs, part, ':');) bounds.push_back(parse_complex(part).real());
      if (bounds.size() != 4) throw DomainError("--grid must be re_min:re_max:im_min:im_max");
      job.re_min = bounds[0];
      job.re_max = bounds[1];
      job.im_min = bounds[2];
      job.im_max = bounds[3];
      const auto x = steps_text.find('x');
      if (x == std::string::npos) throw DomainError("--steps must look like 20x20");
      job.steps_re = parse_count(steps_text.substr(0, x));
      job.steps_im = parse_count(steps_text.substr(x + 1));
      job.mode = parse_sweep_mode(mode_text);
      job.n_min = n_min;
      job.n_max = n_max;
      job.n_step = n_step;
      job.tolerances["tol"] = g.tol;
      const SweepResult res = run_sweep(job, g.threads);
      emit(g, g.format == "json" ? to_json(res) + "\n" : to_csv(res));
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
