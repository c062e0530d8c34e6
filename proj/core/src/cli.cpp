#include "imploder/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "imploder/raster.hpp"

namespace imploder {

using Json = nlohmann::ordered_json;

Complex parse_complex(const std::string& text) {
  std::string s = text;
  std::erase(s, ' ');
  if (s.empty()) fail(Errc::Usage, "empty complex literal");

  // Split at the last '+' or '-' that is not leading and not an exponent
  // sign; "1.5e-3-2e-4i" splits before the second term.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto parse_part = [&](std::string part, bool imaginary) -> double {
    if (imaginary) {
      if (part.empty() || part.back() != 'i') {
        fail(Errc::Usage, "bad complex literal: " + text);
      }
      part.pop_back();
      if (part.empty() || part == "+") part = "1";
      if (part == "-") part = "-1";
    }
    try {
      size_t used = 0;
      double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::exception&) {
      fail(Errc::Usage, "bad complex literal: " + text);
    }
  };
  if (split == std::string::npos) {
    if (s.back() == 'i') return {0.0, parse_part(s, true)};
    return {parse_part(s, false), 0.0};
  }
  if (s.back() != 'i') fail(Errc::Usage, "bad complex literal: " + text);
  return {parse_part(s.substr(0, split), false),
          parse_part(s.substr(split), true)};
}

PolynomialMap parse_poly(const std::string& text) {
  std::vector<Complex> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(parse_complex(item));
  if (coeffs.empty()) fail(Errc::Usage, "empty polynomial");
  return PolynomialMap(std::move(coeffs));
}

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

struct Options {
  std::string poly;
  std::string a;
  std::string alpha = "0";
  std::string center = "0";
  double half_width = 1.5;
  std::string px = "256";
  int n_max = 200;
  int depth = 10;
  double tol = 1e-9;
  std::string out;
  std::string json_path;
  int threads = 0;
  std::string config;
  bool stable_output = false;
  std::string z0 = "0";
  std::string w0 = "0.3";
  std::string g_poly = "0,1,-1";
  bool skew = false;
  double radius = -1.0;
  std::string n_list;
  int n_cap = 25;
  int samples = 100;
  double b_lo = -8.0 / 27.0;
  double b_hi = 0.0;
  int steps = 50;
  double im_min = 0.4;
  double im_max = -1.0;
  int grid = 24;
};

void apply_config(Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) fail(Errc::Io, "config: cannot open " + o.config);
  Json cfg = Json::parse(in, nullptr, true, true);
  auto str = [&](const char* key, std::string& field) {
    if (cfg.contains(key)) field = cfg[key].get<std::string>();
  };
  auto num = [&](const char* key, auto& field) {
    using T = std::decay_t<decltype(field)>;
    if (cfg.contains(key)) field = cfg[key].get<T>();
  };
  str("poly", o.poly);
  str("a", o.a);
  str("alpha", o.alpha);
  str("center", o.center);
  num("half-width", o.half_width);
  str("px", o.px);
  num("n-max", o.n_max);
  num("depth", o.depth);
  num("tol", o.tol);
  str("out", o.out);
  str("json", o.json_path);
  num("threads", o.threads);
  num("stable-output", o.stable_output);
  str("z0", o.z0);
  str("w0", o.w0);
  str("g", o.g_poly);
  num("skew", o.skew);
  num("R", o.radius);
  str("n-list", o.n_list);
  num("n-cap", o.n_cap);
  num("samples", o.samples);
  num("b-lo", o.b_lo);
  num("b-hi", o.b_hi);
  num("steps", o.steps);
  num("im-min", o.im_min);
  num("im-max", o.im_max);
  num("grid", o.grid);
}

std::pair<int, int> parse_px(const std::string& text) {
  size_t x = text.find('x');
  try {
    if (x == std::string::npos) {
      int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    fail(Errc::Usage, "bad --px value: " + text);
  }
}

RasterSpec make_spec(const Options& o, const std::string& palette) {
  auto [w, h] = parse_px(o.px);
  if (w < 1 || h < 1) fail(Errc::Usage, "--px must be positive");
  RasterSpec spec;
  spec.center = parse_complex(o.center);
  spec.half_width = o.half_width;
  spec.px_w = w;
  spec.px_h = h;
  spec.n_max = o.n_max;
  spec.depth = o.depth;
  spec.palette = palette;
  return spec;
}

// The parabolic model: --a builds f = z + z^2 + a z^3, otherwise --poly is
// normalized at --alpha.
ParabolicModel make_model(const Options& o) {
  if (!o.a.empty()) {
    Complex a = parse_complex(o.a);
    return normalize_parabolic(
        PolynomialMap({Complex(0), Complex(1), Complex(1), a}), Complex(0));
  }
  if (o.poly.empty()) fail(Errc::Usage, "need --poly or --a");
  return normalize_parabolic(parse_poly(o.poly), parse_complex(o.alpha));
}

std::vector<int> parse_n_list(const std::string& text,
                              std::vector<int> fallback) {
  if (text.empty()) return fallback;
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail(Errc::Usage, "bad integer list: " + text);
    }
  }
  return out;
}

Json count_labels(const Raster& r) {
  std::map<int, long> counts;
  for (std::uint8_t v : r.labels) ++counts[v];
  Json out = Json::object();
  for (auto [label, n] : counts) out[std::to_string(label)] = n;
  return out;
}

Json fps_json(const std::vector<LavaursFixedPoint>& fps) {
  Json arr = Json::array();
  for (const auto& fp : fps) {
    arr.push_back({{"Z", complex_json(fp.Z)},
                   {"xi", complex_json(fp.xi)},
                   {"rho", complex_json(fp.rho)},
                   {"abs_rho", std::abs(fp.rho)},
                   {"basin_label", fp.basin_label}});
  }
  return arr;
}

struct ReportSink {
  Json report;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  ReportSink(const std::string& command) {
    report["command"] = command;
    report["inputs"] = Json::object();
    report["results"] = Json::object();
    report["residuals"] = Json::object();
  }

  void finish(const Options& o) {
    auto elapsed = std::chrono::steady_clock::now() - start;
    report["runtime_ms"] =
        o.stable_output
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
                  .count();
    std::string text = report.dump(2);
    if (!o.json_path.empty()) {
      std::ofstream out(o.json_path, std::ios::binary);
      if (!out) fail(Errc::Io, "cannot open " + o.json_path);
      out << text << "\n";
    }
    std::cout << text << "\n";
  }
};

int cmd_julia(const Options& o) {
  if (o.poly.empty()) fail(Errc::Usage, "julia: --poly required");
  PolynomialMap p = parse_poly(o.poly);
  RasterSpec spec = make_spec(o, "paper-grey");
  ReportSink sink("julia");
  sink.report["inputs"] = {{"poly", o.poly},
                           {"center", o.center},
                           {"half_width", o.half_width},
                           {"px", o.px},
                           {"n_max", o.n_max}};
  Raster r = render_filled_julia(p, spec, o.threads);
  long bounded = 0;
  for (std::uint8_t v : r.labels) bounded += v == 0;
  sink.report["results"] = {
      {"escape_radius", escape_radius(p)},
      {"bounded_pixels", bounded},
      {"escaped_pixels", long(r.labels.size()) - bounded}};
  if (!o.out.empty()) write_ppm(r, o.out);
  sink.finish(o);
  return 0;
}

int cmd_stripes(const Options& o) {
  ParabolicModel m = make_model(o);
  RasterSpec spec = make_spec(o, "stripes");
  ReportSink sink("stripes");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"center", o.center},
                           {"half_width", o.half_width},
                           {"px", o.px},
                           {"n_max", o.n_max}};
  Raster r = render_fatou_stripes(m, spec, o.threads);
  std::vector<Complex> crit_values;
  for (Complex c : critical_points(m.f())) {
    if (in_basin(m, c, spec.n_max).inside()) {
      crit_values.push_back(phi(m, c, 1e-6).value);
    }
  }
  Json vs = Json::array();
  for (Complex v : crit_values) vs.push_back(complex_json(v));
  sink.report["results"] = {{"trap_radius", m.trap_radius()},
                            {"b", complex_json(m.b())},
                            {"critical_values", vs},
                            {"label_counts", count_labels(r)}};
  if (!o.out.empty()) write_ppm(r, o.out);
  sink.finish(o);
  return 0;
}

int cmd_lavaurs_map(const Options& o) {
  ParabolicModel m = make_model(o);
  RasterSpec spec = make_spec(o, "lavaurs");
  ReportSink sink("lavaurs-map");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"center", o.center},
                           {"half_width", o.half_width},
                           {"px", o.px},
                           {"n_max", o.n_max}};
  Raster r = render_lavaurs(m, spec, o.threads);
  sink.report["results"] = {{"label_counts", count_labels(r)}};
  if (!o.out.empty()) write_ppm(r, o.out);
  sink.finish(o);
  return 0;
}

int cmd_k_lavaurs(const Options& o) {
  ParabolicModel m = make_model(o);
  RasterSpec spec = make_spec(o, "k-lavaurs");
  ReportSink sink("k-lavaurs");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"center", o.center},
                           {"half_width", o.half_width},
                           {"px", o.px},
                           {"n_max", o.n_max},
                           {"depth", o.depth},
                           {"im_min", o.im_min},
                           {"grid", o.grid}};
  auto fps = find_attracting_fixed_points(m, o.im_min, o.im_max, o.grid);
  Raster r = render_k_lavaurs(m, fps, spec, o.threads);
  sink.report["results"] = {{"fixed_points", fps_json(fps)},
                            {"label_counts", count_labels(r)}};
  if (!o.out.empty()) write_ppm(r, o.out);
  sink.finish(o);
  return 0;
}

int cmd_fixed_points(const Options& o) {
  ParabolicModel m = make_model(o);
  const PolynomialMap& p =
      o.a.empty() && !o.poly.empty() ? parse_poly(o.poly) : m.f();
  ReportSink sink("fixed-points");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"im_min", o.im_min},
                           {"im_max", o.im_max},
                           {"grid", o.grid}};
  Json poly_fps = Json::array();
  double worst_fixed = 0;
  for (const FixedPointRecord& rec : fixed_points(p)) {
    worst_fixed =
        std::max(worst_fixed, std::abs(p(rec.location) - rec.location));
    poly_fps.push_back({{"location", complex_json(rec.location)},
                        {"multiplier", complex_json(rec.multiplier)},
                        {"class", to_string(rec.cls)}});
  }
  auto fps = find_attracting_fixed_points(m, o.im_min, o.im_max, o.grid);
  double worst_lavaurs = 0;
  for (const auto& fp : fps) {
    worst_lavaurs =
        std::max(worst_lavaurs, std::abs(lavaurs(m, fp.xi, o.tol) - fp.xi));
  }
  sink.report["results"] = {{"polynomial_fixed_points", poly_fps},
                            {"infinity", "superattracting"},
                            {"lavaurs_fixed_points", fps_json(fps)}};
  sink.report["residuals"] = {{"max_fixed_point_residual", worst_fixed},
                              {"max_lavaurs_residual", worst_lavaurs}};
  sink.finish(o);
  return 0;
}

int cmd_implosion(const Options& o) {
  ParabolicModel m = make_model(o);
  std::vector<int> ns = parse_n_list(o.n_list, {64, 128, 256, 512, 1024});
  int sample_count = std::max(2, std::min(o.samples, 64));
  std::vector<Complex> samples;
  for (int k = 0; k < sample_count; ++k) {
    samples.emplace_back(-0.3 + 0.2 * k / (sample_count - 1), 0.0);
  }
  ReportSink sink("implosion");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"samples", sample_count},
                           {"N", ns}};
  Json errors = Json::object();
  for (int N : ns) {
    errors[std::to_string(N)] = implosion_error(m, samples, N, o.tol);
  }
  sink.report["results"] = {{"max_error_by_N", errors}};
  sink.finish(o);
  return 0;
}

int cmd_key_limit(const Options& o) {
  ParabolicModel m = make_model(o);
  SkewMap F(m.f(), standard_coupling(), parse_poly(o.g_poly));
  std::vector<int> ns = parse_n_list(o.n_list, {5, 10, 20, 40});
  Complex z = parse_complex(o.z0);
  Complex w = parse_complex(o.w0);
  ReportSink sink("key-limit");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"z", complex_json(z)},
                           {"w", complex_json(w)},
                           {"n", ns}};
  Json errors = Json::object();
  for (int n : ns) {
    errors[std::to_string(n)] = key_limit_error(F, m, z, w, n, o.tol);
  }
  sink.report["results"] = {{"error_by_n", errors}};
  sink.finish(o);
  return 0;
}

int cmd_wander(const Options& o) {
  ParabolicModel m = make_model(o);
  SkewMap F(m.f(), standard_coupling(), parse_poly(o.g_poly));
  auto fps = find_attracting_fixed_points(m, o.im_min, o.im_max, o.grid);
  if (fps.empty()) fail(Errc::NoFixedPoint, "wander: no attracting fixed point");
  ReportSink sink("wander");
  sink.report["inputs"] = {{"a", complex_json(m.a())},
                           {"n_cap", o.n_cap},
                           {"samples", o.samples}};
  WitnessReport w = wandering_witness(F, m, fps.front(), o.n_cap, o.samples);
  Json contained = Json::array();
  for (bool c : w.contained) contained.push_back(c);
  sink.report["results"] = {{"xi", complex_json(w.xi)},
                            {"V_center", complex_json(w.V_center)},
                            {"V_radius", w.V_radius},
                            {"W_center", complex_json(w.W_center)},
                            {"W_radius", w.W_radius},
                            {"n0", w.n0},
                            {"contained", contained},
                            {"distances", w.distances},
                            {"samples_checked", w.samples_checked},
                            {"success", w.success}};
  sink.finish(o);
  return 0;
}

int cmd_quartic_scan(const Options& o) {
  ReportSink sink("quartic-scan");
  sink.report["inputs"] = {{"b_lo", o.b_lo},
                           {"b_hi", o.b_hi},
                           {"steps", o.steps}};
  auto hits = real_quartic_scan(o.b_lo, o.b_hi, o.steps);
  Json arr = Json::array();
  for (const auto& [b, fp] : hits) {
    arr.push_back({{"b", b},
                   {"Z", complex_json(fp.Z)},
                   {"xi", complex_json(fp.xi)},
                   {"rho", complex_json(fp.rho)}});
  }
  sink.report["results"] = {{"hits", arr}, {"hit_count", hits.size()}};
  sink.finish(o);
  return 0;
}

int cmd_orbit(const Options& o) {
  ReportSink sink("orbit");
  if (o.skew) {
    ParabolicModel m = make_model(o);
    SkewMap F(m.f(), standard_coupling(), parse_poly(o.g_poly));
    Complex z = parse_complex(o.z0);
    Complex w = parse_complex(o.w0);
    auto trace = skew_orbit(F, z, w, o.n_max);
    sink.report["inputs"] = {{"a", complex_json(m.a())},
                             {"z0", complex_json(z)},
                             {"w0", complex_json(w)},
                             {"n_max", o.n_max}};
    if (!o.out.empty()) {
      std::ofstream csv(o.out, std::ios::binary);
      if (!csv) fail(Errc::Io, "cannot open " + o.out);
      csv << "n,z_re,z_im,w_re,w_im\n";
      for (size_t n = 0; n < trace.size(); ++n) {
        csv << n << "," << trace[n].first.real() << ","
            << trace[n].first.imag() << "," << trace[n].second.real() << ","
            << trace[n].second.imag() << "\n";
      }
    }
    sink.report["results"] = {
        {"points", trace.size()},
        {"final_z", complex_json(trace.back().first)},
        {"final_w", complex_json(trace.back().second)}};
  } else {
    if (o.poly.empty()) fail(Errc::Usage, "orbit: --poly required");
    PolynomialMap p = parse_poly(o.poly);
    double R = o.radius > 0 ? o.radius : escape_radius(p);
    Complex z = parse_complex(o.z0);
    OrbitTrace trace = orbit(p, z, o.n_max, R);
    sink.report["inputs"] = {{"poly", o.poly},
                             {"z0", complex_json(z)},
                             {"n_max", o.n_max},
                             {"R", R}};
    if (!o.out.empty()) {
      std::ofstream csv(o.out, std::ios::binary);
      if (!csv) fail(Errc::Io, "cannot open " + o.out);
      csv << "n,re,im\n";
      for (size_t n = 0; n < trace.points.size(); ++n) {
        csv << n << "," << trace.points[n].real() << ","
            << trace.points[n].imag() << "\n";
      }
    }
    sink.report["results"] = {
        {"points", trace.points.size()},
        {"escaped", trace.escaped},
        {"escape_index",
         trace.escape_index ? Json(*trace.escape_index) : Json(nullptr)},
        {"final", complex_json(trace.points.back())}};
  }
  sink.finish(o);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Complex-dynamics toolkit: filled Julia sets, Fatou "
               "coordinates of parabolic points, Lavaurs and horn maps, "
               "implosion experiments and skew-product orbits"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--poly", o.poly,
                    "comma-separated complex coefficients c0,c1,... "
                    "(ascending degree; literals like 1.5, -2i, 0.3+0.1i)");
    cmd->add_option("--a", o.a, "cubic coefficient: use f = z+z^2+a z^3");
    cmd->add_option("--alpha", o.alpha, "parabolic fixed point of --poly");
    cmd->add_option("--center", o.center, "window center (complex literal)");
    cmd->add_option("--half-width", o.half_width, "window half width");
    cmd->add_option("--px", o.px, "pixels: N or WxH");
    cmd->add_option("--n-max", o.n_max, "iteration budget");
    cmd->add_option("--depth", o.depth, "Lavaurs iterations for k-lavaurs");
    cmd->add_option("--tol", o.tol, "coordinate tolerance");
    cmd->add_option("--out", o.out, "output path (PPM image or CSV)");
    cmd->add_option("--json", o.json_path, "write the JSON report here");
    cmd->add_option("--threads", o.threads,
                    "worker threads (0 = IMPLODER_THREADS or hardware)");
    cmd->add_option("--config", o.config, "JSON config overriding flags");
    cmd->add_flag("--stable-output", o.stable_output,
                  "zero runtime_ms for byte-reproducible reports");
    return cmd;
  };

  auto* julia_cmd = add_common(app.add_subcommand("julia", "filled Julia raster"));
  auto* stripes_cmd =
      add_common(app.add_subcommand("stripes", "Fatou-coordinate stripes"));
  auto* lavmap_cmd = add_common(
      app.add_subcommand("lavaurs-map", "Lavaurs-image classification"));
  auto* klav_cmd =
      add_common(app.add_subcommand("k-lavaurs", "K(L) raster with basins"));
  auto* fps_cmd = add_common(app.add_subcommand(
      "fixed-points", "polynomial and Lavaurs fixed points"));
  auto* implo_cmd = add_common(
      app.add_subcommand("implosion", "perturbed-iterate convergence"));
  auto* key_cmd =
      add_common(app.add_subcommand("key-limit", "skew-product limit error"));
  auto* wander_cmd =
      add_common(app.add_subcommand("wander", "wandering-domain witness"));
  auto* scan_cmd =
      add_common(app.add_subcommand("quartic-scan", "real quartic scan"));
  auto* orbit_cmd = add_common(app.add_subcommand("orbit", "orbit CSV dump"));

  for (CLI::App* cmd : {klav_cmd, fps_cmd, wander_cmd}) {
    cmd->add_option("--im-min", o.im_min, "search band lower height");
    cmd->add_option("--im-max", o.im_max, "search band upper height (<0 auto)");
    cmd->add_option("--grid", o.grid, "search grid nodes per unit");
  }
  for (CLI::App* cmd : {implo_cmd, key_cmd}) {
    cmd->add_option("--n-list", o.n_list, "comma-separated iterate counts");
  }
  implo_cmd->add_option("--samples", o.samples, "basin sample count");
  key_cmd->add_option("--z0", o.z0, "first coordinate");
  key_cmd->add_option("--w0", o.w0, "second coordinate");
  for (CLI::App* cmd : {key_cmd, wander_cmd, orbit_cmd}) {
    cmd->add_option("--g", o.g_poly,
                    "second-coordinate polynomial (w - w^2 + O(w^3))");
  }
  wander_cmd->add_option("--n-cap", o.n_cap, "largest return index n");
  wander_cmd->add_option("--samples", o.samples, "sample grid size");
  scan_cmd->add_option("--b-lo", o.b_lo, "lower end of b range");
  scan_cmd->add_option("--b-hi", o.b_hi, "upper end of b range");
  scan_cmd->add_option("--steps", o.steps, "number of b samples");
  orbit_cmd->add_option("--z0", o.z0, "starting point");
  orbit_cmd->add_option("--w0", o.w0, "second coordinate (with --skew)");
  orbit_cmd->add_flag("--skew", o.skew, "iterate the skew product");
  orbit_cmd->add_option("--R", o.radius, "escape radius override");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_config(o);
    if (julia_cmd->parsed()) return cmd_julia(o);
    if (stripes_cmd->parsed()) return cmd_stripes(o);
    if (lavmap_cmd->parsed()) return cmd_lavaurs_map(o);
    if (klav_cmd->parsed()) return cmd_k_lavaurs(o);
    if (fps_cmd->parsed()) return cmd_fixed_points(o);
    if (implo_cmd->parsed()) return cmd_implosion(o);
    if (key_cmd->parsed()) return cmd_key_limit(o);
    if (wander_cmd->parsed()) return cmd_wander(o);
    if (scan_cmd->parsed()) return cmd_quartic_scan(o);
    if (orbit_cmd->parsed()) return cmd_orbit(o);
    fail(Errc::Usage, "no subcommand");
  } catch (const Error& e) {
    Json err = {{"error", {{"code", e.code_name()}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return e.code() == Errc::Usage ? 1 : 2;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace imploder
