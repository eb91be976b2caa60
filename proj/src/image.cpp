#include "tcomplete/image.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace tcomplete {

namespace {

struct ImageGuard {
    png_image* image;
    ~ImageGuard() { png_image_free(image); }
};

} // namespace

Tensor3d load_png(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    ImageGuard guard{&image};
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        std::FILE* probe = std::fopen(path.c_str(), "rb");
        if (!probe)
            throw IoFailure("cannot open '" + path + "'");
        std::fclose(probe);
        throw UnsupportedFormat("'" + path + "' is not a readable PNG: " + image.message);
    }
    const auto format = image.format;
    if (!(format & PNG_FORMAT_FLAG_COLOR))
        throw UnsupportedFormat("'" + path + "' is grayscale; an RGB image is required");
    if (format & PNG_FORMAT_FLAG_ALPHA)
        throw UnsupportedFormat("'" + path + "' has an alpha channel; an RGB image is required");
    if (format & PNG_FORMAT_FLAG_LINEAR)
        throw UnsupportedFormat("'" + path + "' is 16-bit; an 8-bit image is required");

    image.format = PNG_FORMAT_RGB;
    const Index height = image.height, width = image.width;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr))
        throw UnsupportedFormat("'" + path + "': " + image.message);

    Tensor3d t(height, width, 3);
    for (Index i = 0; i < height; ++i)
        for (Index j = 0; j < width; ++j)
            for (Index c = 0; c < 3; ++c)
                t(i, j, c) = buffer[static_cast<size_t>(3 * (i * width + j) + c)];
    return t;
}

Tensor3d clamp_pixels(const Tensor3d& t) {
    Tensor3d out = t;
    out.matrix() = out.matrix().cwiseMax(0.0).cwiseMin(255.0);
    return out;
}

void save_png(const std::string& path, const Tensor3d& image_tensor) {
    if (image_tensor.n3() != 3)
        throw DimensionMismatch("save_png: expected n3 = 3 channels, got " +
                                std::to_string(image_tensor.n3()));
    if (!image_tensor.allFinite())
        throw NumericalFailure("save_png: image has non-finite values");
    const Index height = image_tensor.n1(), width = image_tensor.n2();
    std::vector<png_byte> buffer(static_cast<size_t>(3 * height * width));
    for (Index i = 0; i < height; ++i)
        for (Index j = 0; j < width; ++j)
            for (Index c = 0; c < 3; ++c) {
                const double v = std::clamp(image_tensor(i, j, c), 0.0, 255.0);
                // nearbyint rounds half to even in the default rounding mode.
                buffer[static_cast<size_t>(3 * (i * width + j) + c)] =
                    static_cast<png_byte>(std::nearbyint(v));
            }

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr))
        throw IoFailure("cannot write '" + path + "': " + image.message);
}

InpaintResult inpaint(const Tensor3d& image, const TubalMask& mask, Method method,
                      const MethodSettings& settings) {
    if (image.n3() != 3)
        throw DimensionMismatch("inpaint: expected an RGB image tensor (n3 = 3)");
    const Tensor3d y = project(image, mask);
    auto outcome = run_completion(method, y, mask, settings);

    InpaintResult result;
    result.estimate = impose(outcome.estimate, y, mask);
    result.image = clamp_pixels(result.estimate);
    result.row.method = to_string(method);
    result.row.ratio = mask.sampling_ratio();
    result.row.re = relative_error(result.estimate, image);
    result.row.psnr = psnr(result.estimate, image);
    result.row.time_s = outcome.time_s;
    result.row.iters = outcome.iters;
    result.row.converged = outcome.converged;
    return result;
}

} // namespace tcomplete
