#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tvw::app {

/// Floyd-Steinberg error diffusion of values in [0, 1], scanned left to
/// right and top to bottom with weights 7/16, 3/16, 5/16, 1/16. At the image
/// border the weights of the missing neighbours are redistributed over the
/// present ones, so the diffused error is conserved up to the last pixel.
/// Returns 0/1 per pixel, row-major.
std::vector<std::uint8_t> floyd_steinberg(std::span<const double> values, int width, int height);

}  // namespace tvw::app
