#pragma once

#include <vector>

#include "ehoi/raster.hpp"

namespace ehoi {

/// Grayscale image with values expected in [0, 1], row-major doubles.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

    static GrayImage zeros(int width, int height) {
        return {width, height, std::vector<double>(static_cast<std::size_t>(width) * height, 0.0)};
    }
    bool operator==(const GrayImage&) const = default;
};

/// Depth raster scaled into [0, 1] by max_depth (values clamped; the 0.0
/// no-hit sentinel maps to 0).
GrayImage normalize_depth(const DepthRaster& raster, double max_depth);

inline constexpr double kDefaultMaxDepthMeters = 5.0;

struct DepthLossWeights {
    double alpha = 0.85;  // edge-map SSIM term
    double beta = 0.9;    // depth SSIM term
    double gamma = 0.9;   // L1 term

    bool operator==(const DepthLossWeights&) const = default;
};

/// Canonical SSIM parameterization at dynamic range L = 1.
struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double c1 = 0.01 * 0.01;
    double c2 = 0.03 * 0.03;
};

/// 3x3 Sobel gradient magnitude with replicate-padded borders, rescaled to
/// [0, 1] by 1/(4*sqrt(2)) (the maximum magnitude on unit-range input).
/// Throws RasterTooSmall below 3x3.
GrayImage sobel_edges(const GrayImage& image);

/// 1 - mean windowed SSIM index. Symmetric; 0 for identical inputs; range
/// [0, 2]. Windows are Gaussian, replicate-padded, evaluated at every pixel.
double ssim_loss(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

double mean_abs_diff(const GrayImage& a, const GrayImage& b);

/// All three components of the depth loss, for callers that report them.
struct DepthLossTerms {
    double edge_ssim = 0.0;   // ssim_loss(sobel(d), sobel(d*))
    double depth_ssim = 0.0;  // ssim_loss(d, d*)
    double l1 = 0.0;          // mean |d - d*|
    double total = 0.0;       // alpha*edge + beta*depth + gamma*l1
};

DepthLossTerms depth_loss_terms(const GrayImage& d, const GrayImage& d_star,
                                const DepthLossWeights& weights = {},
                                const SsimParams& params = {});

double depth_loss(const GrayImage& d, const GrayImage& d_star,
                  const DepthLossWeights& weights = {}, const SsimParams& params = {});

/// Binary cross-entropy with the probability clamped to [1e-7, 1 - 1e-7].
double bce(double p, int label);

/// Late fusion of the RGB-branch and multimodal-branch contact
/// probabilities: w*cs_rgb + (1-w)*cs_mm.
double fuse_contact(double cs_rgb, double cs_mm, double w = 0.5);

inline constexpr double kDefaultFusionWeight = 0.5;

/// Sum of the three BCE terms: RGB branch, multimodal branch, and their
/// fused prediction, all against the same label.
double contact_state_loss(double cs_rgb, double cs_mm, double w, int label);

namespace reference {

/// Serial implementations with straightforward running accumulation.
/// Kept as independent checks for the OpenMP kernels above.
GrayImage sobel_edges(const GrayImage& image);
double ssim_loss(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});
double depth_loss(const GrayImage& d, const GrayImage& d_star,
                  const DepthLossWeights& weights = {}, const SsimParams& params = {});

}  // namespace reference

}  // namespace ehoi
