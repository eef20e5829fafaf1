#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehoi {

/// Per-pixel distance along the camera ray in meters, row-major.
/// 0.0 encodes "no hit".
struct DepthRaster {
    int width = 0;
    int height = 0;
    std::vector<float> values;

    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

    static DepthRaster zeros(int width, int height) {
        return {width, height, std::vector<float>(static_cast<std::size_t>(width) * height, 0.0f)};
    }
    bool operator==(const DepthRaster&) const = default;
};

/// Per-pixel instance id, row-major. 0 is background.
struct MaskRaster {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> values;

    std::uint16_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    std::uint16_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

    static MaskRaster zeros(int width, int height) {
        return {width, height,
                std::vector<std::uint16_t>(static_cast<std::size_t>(width) * height, 0)};
    }
    bool operator==(const MaskRaster&) const = default;
};

/// Raster file does not match the expected layout (bad magic, truncation).
struct RasterFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Depth file: magic "EHOIDPT1", u32le width, u32le height, then
// width*height float32le meters. Mask file: magic "EHOIMSK1", u32le width,
// u32le height, then width*height u16le instance ids.
void write_depth_raster(const DepthRaster& raster, const std::string& path);
DepthRaster read_depth_raster(const std::string& path);
void write_mask_raster(const MaskRaster& raster, const std::string& path);
MaskRaster read_mask_raster(const std::string& path);

}  // namespace ehoi
