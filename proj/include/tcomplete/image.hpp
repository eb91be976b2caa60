#pragma once

#include <string>

#include "tcomplete/completion.hpp"
#include "tcomplete/metrics.hpp"
#include "tcomplete/sampling.hpp"
#include "tcomplete/tensor3.hpp"

namespace tcomplete {

// An RGB image is a height x width x 3 tensor with the channel on mode 3, so
// each tube is one pixel and tubal sampling drops whole pixels.

/// Reads an 8-bit RGB PNG. Grayscale, alpha and 16-bit images are rejected
/// with UnsupportedFormat; unreadable files raise IoFailure.
Tensor3d load_png(const std::string& path);

/// Writes an 8-bit RGB PNG after clamping to [0, 255] and rounding half to even.
void save_png(const std::string& path, const Tensor3d& image);

/// clamp(t, 0, 255), entrywise.
Tensor3d clamp_pixels(const Tensor3d& t);

struct InpaintResult {
    Tensor3d image;    ///< completed, observed pixels kept, clamped to [0, 255]
    Tensor3d estimate; ///< raw solver output
    MetricRow row;     ///< PSNR of the unclamped completion against the input
};

/// Drops the pixels outside `mask`, completes with `method` and scores the
/// result against the full image. Observed pixels are copied back into the
/// completion before scoring.
InpaintResult inpaint(const Tensor3d& image, const TubalMask& mask, Method method,
                      const MethodSettings& settings);

} // namespace tcomplete
