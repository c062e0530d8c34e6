#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "imploder/implosion.hpp"

namespace imploder {

// Rectangular sampling grid, row-major from the top-left pixel. Pixel
// (i, j) maps to
//   z = center + half_width * (2i+1-px_w)/px_w
//            + i_unit * half_width * (px_h/px_w) * (px_h-2j-1)/px_h,
// so the window is aspect-preserving with half height half_width*px_h/px_w.
struct RasterSpec {
  Complex center{0, 0};
  double half_width = 1.5;
  int px_w = 256;
  int px_h = 256;
  int n_max = 200;     // forward-iteration budget per pixel
  int depth = 10;      // Lavaurs iterations for K(L) jobs
  std::string palette = "paper-grey";
};

Complex pixel_to_plane(const RasterSpec& spec, int i, int j);
std::pair<int, int> plane_to_pixel(const RasterSpec& spec, Complex z);

struct Raster {
  RasterSpec spec;
  std::vector<std::uint8_t> labels;  // px_w * px_h, row-major

  std::uint8_t at(int i, int j) const {
    return labels[size_t(j) * spec.px_w + size_t(i)];
  }
};

// Label codes per job:
//   filled julia : 0 = bounded so far, 1+min(n,254) = escaped at step n
//   stripes      : 0 = outside basin, 1 = Im phi < Im v-,
//                  2 = between, 3 = Im phi > Im v+   (v+- = phi at the
//                  critical points)
//   lavaurs      : 0 = outside basin, 1 = L(z) in basin, 2 = L(z) outside
//   k-lavaurs    : 0 = NotInKf, 1 = InKfOutsideBasin, 2 = LavaursEscapes,
//                  3+k = Retained with attractor label k (3+#fps when the
//                  orbit never entered an attraction disk)
//
// threads = 0 picks IMPLODER_THREADS or the hardware count. Output is
// byte-identical for any thread count: the per-pixel kernels are pure and
// rows are assembled in index order.
Raster render_filled_julia(const PolynomialMap& p, const RasterSpec& spec,
                           int threads = 0);
Raster render_fatou_stripes(const ParabolicModel& m, const RasterSpec& spec,
                            int threads = 0);
Raster render_lavaurs(const ParabolicModel& m, const RasterSpec& spec,
                      int threads = 0);
Raster render_k_lavaurs(const ParabolicModel& m,
                        const std::vector<LavaursFixedPoint>& fps,
                        const RasterSpec& spec, int threads = 0);

// Binary PPM, header "P6\n{w} {h}\n255\n" then RGB triples row-major from
// the top-left, colors taken from the named palette.
void write_ppm(const Raster& r, const std::string& path);

std::array<std::uint8_t, 3> palette_rgb(const std::string& palette,
                                        std::uint8_t label);

int resolve_threads(int requested);

}  // namespace imploder
