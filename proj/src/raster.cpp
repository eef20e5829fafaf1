#include "ehoi/raster.hpp"

#include <cstring>
#include <fstream>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

constexpr char kDepthMagic[8] = {'E', 'H', 'O', 'I', 'D', 'P', 'T', '1'};
constexpr char kMaskMagic[8] = {'E', 'H', 'O', 'I', 'M', 'S', 'K', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v));
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v >> 16));
    out.push_back(static_cast<char>(v >> 24));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open " + path + " for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoFailure("write failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path);
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void check_header(const std::string& bytes, const char magic[8], std::size_t value_size,
                  const std::string& path, std::uint32_t& width, std::uint32_t& height) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), magic, 8) != 0) {
        throw RasterFormatError("bad magic in " + path);
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    width = get_u32(p + 8);
    height = get_u32(p + 12);
    const std::size_t expected = 16 + static_cast<std::size_t>(width) * height * value_size;
    if (bytes.size() != expected) {
        throw RasterFormatError("truncated raster " + path);
    }
}

}  // namespace

void write_depth_raster(const DepthRaster& raster, const std::string& path) {
    std::string bytes;
    bytes.reserve(16 + raster.values.size() * 4);
    bytes.append(kDepthMagic, 8);
    put_u32(bytes, static_cast<std::uint32_t>(raster.width));
    put_u32(bytes, static_cast<std::uint32_t>(raster.height));
    for (float v : raster.values) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_u32(bytes, bits);
    }
    write_file(path, bytes);
}

DepthRaster read_depth_raster(const std::string& path) {
    const std::string bytes = read_file(path);
    std::uint32_t w = 0, h = 0;
    check_header(bytes, kDepthMagic, 4, path, w, h);
    DepthRaster raster = DepthRaster::zeros(static_cast<int>(w), static_cast<int>(h));
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + 16;
    for (std::size_t i = 0; i < raster.values.size(); ++i) {
        const std::uint32_t bits = get_u32(p + i * 4);
        std::memcpy(&raster.values[i], &bits, 4);
    }
    return raster;
}

void write_mask_raster(const MaskRaster& raster, const std::string& path) {
    std::string bytes;
    bytes.reserve(16 + raster.values.size() * 2);
    bytes.append(kMaskMagic, 8);
    put_u32(bytes, static_cast<std::uint32_t>(raster.width));
    put_u32(bytes, static_cast<std::uint32_t>(raster.height));
    for (std::uint16_t v : raster.values) {
        bytes.push_back(static_cast<char>(v));
        bytes.push_back(static_cast<char>(v >> 8));
    }
    write_file(path, bytes);
}

MaskRaster read_mask_raster(const std::string& path) {
    const std::string bytes = read_file(path);
    std::uint32_t w = 0, h = 0;
    check_header(bytes, kMaskMagic, 2, path, w, h);
    MaskRaster raster = MaskRaster::zeros(static_cast<int>(w), static_cast<int>(h));
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + 16;
    for (std::size_t i = 0; i < raster.values.size(); ++i) {
        raster.values[i] = static_cast<std::uint16_t>(p[i * 2] |
                                                      (static_cast<std::uint16_t>(p[i * 2 + 1]) << 8));
    }
    return raster;
}

}  // namespace ehoi
