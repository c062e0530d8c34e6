#include "imploder/raster.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

namespace imploder {

Complex pixel_to_plane(const RasterSpec& spec, int i, int j) {
  double re = spec.center.real() +
              spec.half_width * (2.0 * i + 1.0 - spec.px_w) / spec.px_w;
  double im = spec.center.imag() +
              spec.half_width * (double(spec.px_h) / spec.px_w) *
                  (spec.px_h - 2.0 * j - 1.0) / spec.px_h;
  return {re, im};
}

std::pair<int, int> plane_to_pixel(const RasterSpec& spec, Complex z) {
  double x = (z.real() - spec.center.real()) / spec.half_width;
  double y = (z.imag() - spec.center.imag()) /
             (spec.half_width * double(spec.px_h) / spec.px_w);
  int i = int(std::lround((x * spec.px_w + spec.px_w - 1.0) / 2.0));
  int j = int(std::lround((spec.px_h - 1.0 - y * spec.px_h) / 2.0));
  return {i, j};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IMPLODER_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

namespace {

Raster render_rows(const RasterSpec& spec, int threads,
                   const std::function<std::uint8_t(Complex)>& kernel) {
  Raster raster{spec, std::vector<std::uint8_t>(
                          size_t(spec.px_w) * size_t(spec.px_h), 0)};
  int workers = std::min(resolve_threads(threads), spec.px_h);
  auto run_rows = [&](int begin, int step) {
    for (int j = begin; j < spec.px_h; j += step) {
      for (int i = 0; i < spec.px_w; ++i) {
        raster.labels[size_t(j) * spec.px_w + size_t(i)] =
            kernel(pixel_to_plane(spec, i, j));
      }
    }
  };
  if (workers <= 1) {
    run_rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(run_rows, t, workers);
    run_rows(0, workers);
    for (auto& th : pool) th.join();
  }
  return raster;
}

}  // namespace

Raster render_filled_julia(const PolynomialMap& p, const RasterSpec& spec,
                           int threads) {
  return render_rows(spec, threads, [&](Complex z) -> std::uint8_t {
    Verdict v = membership(p, z, spec.n_max);
    if (!v.escaped()) return 0;
    return std::uint8_t(1 + std::min(v.escape_index, 254));
  });
}

Raster render_fatou_stripes(const ParabolicModel& m, const RasterSpec& spec,
                            int threads) {
  const double render_tol = 1e-6;
  // v+- = phi at the critical points; for real a they are conjugate.
  std::vector<Complex> crits = critical_points(m.f());
  double im_lo = 0, im_hi = 0;
  bool have = false;
  for (Complex c : crits) {
    if (!in_basin(m, c, spec.n_max).inside()) continue;
    double im = phi(m, c, render_tol).value.imag();
    if (!have) {
      im_lo = im_hi = im;
      have = true;
    } else {
      im_lo = std::min(im_lo, im);
      im_hi = std::max(im_hi, im);
    }
  }
  if (!have) fail(Errc::OutOfDomain, "stripes: no critical point in basin");

  return render_rows(spec, threads, [&, im_lo, im_hi](Complex z) -> std::uint8_t {
    if (!in_basin(m, z, spec.n_max).inside()) return 0;
    double im = phi(m, z, render_tol).value.imag();
    if (im < im_lo) return 1;
    if (im > im_hi) return 3;
    return 2;
  });
}

Raster render_lavaurs(const ParabolicModel& m, const RasterSpec& spec,
                      int threads) {
  const double render_tol = 1e-6;
  return render_rows(spec, threads, [&](Complex z) -> std::uint8_t {
    if (!in_basin(m, z, spec.n_max).inside()) return 0;
    Complex image = lavaurs(m, z, render_tol);
    return in_basin(m, image, spec.n_max).inside() ? 1 : 2;
  });
}

Raster render_k_lavaurs(const ParabolicModel& m,
                        const std::vector<LavaursFixedPoint>& fps,
                        const RasterSpec& spec, int threads) {
  const double render_tol = 1e-6;
  std::vector<AttractionDisk> disks = attraction_disks(m, fps, render_tol);
  return render_rows(spec, threads, [&](Complex z) -> std::uint8_t {
    KLVerdict v =
        k_lavaurs_verdict(m, z, spec.depth, spec.n_max, disks, render_tol);
    switch (v.state) {
      case KLVerdict::State::NotInKf: return 0;
      case KLVerdict::State::InKfOutsideBasin: return 1;
      case KLVerdict::State::LavaursEscapes: return 2;
      case KLVerdict::State::Retained:
        return std::uint8_t(3 + (v.attractor ? *v.attractor
                                             : int(fps.size())));
    }
    return 0;
  });
}

std::array<std::uint8_t, 3> palette_rgb(const std::string& palette,
                                        std::uint8_t label) {
  auto grey = [](std::uint8_t v) {
    return std::array<std::uint8_t, 3>{v, v, v};
  };
  if (palette == "stripes") {
    switch (label) {
      case 0: return grey(255);
      case 1: return grey(64);
      case 2: return grey(200);
      default: return grey(140);
    }
  }
  if (palette == "lavaurs") {
    switch (label) {
      case 0: return grey(0);
      case 1: return grey(140);
      default: return grey(255);
    }
  }
  if (palette == "k-lavaurs") {
    switch (label) {
      case 0: return grey(255);
      case 1: return grey(0);
      case 2: return grey(230);
      case 3: return grey(64);
      case 4: return grey(200);
      default: return grey(140);
    }
  }
  // paper-grey: bounded black, escape times on a cyclic grey ramp.
  if (label == 0) return grey(0);
  return grey(std::uint8_t(255 - 8 * ((label - 1) % 24)));
}

void write_ppm(const Raster& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::Io, "write_ppm: cannot open " + path);
  out << "P6\n" << r.spec.px_w << " " << r.spec.px_h << "\n255\n";
  std::vector<std::uint8_t> row(size_t(r.spec.px_w) * 3);
  for (int j = 0; j < r.spec.px_h; ++j) {
    for (int i = 0; i < r.spec.px_w; ++i) {
      auto rgb = palette_rgb(r.spec.palette, r.at(i, j));
      row[size_t(i) * 3] = rgb[0];
      row[size_t(i) * 3 + 1] = rgb[1];
      row[size_t(i) * 3 + 2] = rgb[2];
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              std::streamsize(row.size()));
  }
  if (!out) fail(Errc::Io, "write_ppm: short write to " + path);
}

}  // namespace imploder
