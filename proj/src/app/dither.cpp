#include "tvw/app/dither.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tvw::app {

std::vector<std::uint8_t> floyd_steinberg(std::span<const double> values, int width, int height) {
  if (width <= 0 || height <= 0 || values.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("floyd_steinberg: size mismatch");
  }
  std::vector<double> work(values.begin(), values.end());
  for (std::size_t k = 0; k < work.size(); ++k) {
    if (!(work[k] >= 0.0 && work[k] <= 1.0)) {
      throw std::invalid_argument("floyd_steinberg: value outside [0, 1] at pixel " + std::to_string(k));
    }
  }
  std::vector<std::uint8_t> out(work.size(), 0);
  struct Tap {
    int di, dj;
    double w;
  };
  constexpr Tap kTaps[4] = {{1, 0, 7.0 / 16}, {-1, 1, 3.0 / 16}, {0, 1, 5.0 / 16}, {1, 1, 1.0 / 16}};
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * width + i;
      const double v = work[k];
      out[k] = v >= 0.5 ? 1 : 0;
      const double err = v - out[k];
      double total = 0.0;
      for (const Tap& t : kTaps) {
        const int a = i + t.di;
        const int b = j + t.dj;
        if (a >= 0 && a < width && b < height) total += t.w;
      }
      if (total == 0.0) continue;
      for (const Tap& t : kTaps) {
        const int a = i + t.di;
        const int b = j + t.dj;
        if (a >= 0 && a < width && b < height) work[static_cast<std::size_t>(b) * width + a] += err * t.w / total;
      }
    }
  }
  return out;
}

}  // namespace tvw::app
