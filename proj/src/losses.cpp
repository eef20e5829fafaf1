#include "ehoi/losses.hpp"

#include <algorithm>
#include <cmath>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

constexpr double kSobelScale = 1.0 / (4.0 * 1.4142135623730951);  // 1/(4*sqrt(2))
constexpr double kBceEps = 1e-7;

inline int clamp_index(int v, int hi) {
    return v < 0 ? 0 : (v > hi ? hi : v);
}

void require_same_shape(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatch("rasters differ in shape");
    }
}

std::vector<double> gaussian_window(int size, double sigma) {
    std::vector<double> w(static_cast<std::size_t>(size) * size);
    const int r = size / 2;
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dx = x - r, dy = y - r;
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            w[static_cast<std::size_t>(y) * size + x] = v;
            sum += v;
        }
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

// Windowed SSIM index at one pixel, replicate-padded. Tap order is fixed
// (window rows outer, columns inner) so every caller gets identical bits.
double ssim_at(const GrayImage& a, const GrayImage& b, int cx, int cy,
               const std::vector<double>& window, int size, double c1, double c2) {
    const int r = size / 2;
    double mu_a = 0.0, mu_b = 0.0, e_aa = 0.0, e_bb = 0.0, e_ab = 0.0;
    for (int wy = 0; wy < size; ++wy) {
        const int y = clamp_index(cy + wy - r, a.height - 1);
        for (int wx = 0; wx < size; ++wx) {
            const int x = clamp_index(cx + wx - r, a.width - 1);
            const double w = window[static_cast<std::size_t>(wy) * size + wx];
            const double va = a.at(x, y);
            const double vb = b.at(x, y);
            mu_a += w * va;
            mu_b += w * vb;
            e_aa += w * va * va;
            e_bb += w * vb * vb;
            e_ab += w * va * vb;
        }
    }
    const double var_a = e_aa - mu_a * mu_a;
    const double var_b = e_bb - mu_b * mu_b;
    const double cov = e_ab - mu_a * mu_b;
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

double sobel_at(const GrayImage& img, int x, int y) {
    const int xl = clamp_index(x - 1, img.width - 1);
    const int xr = clamp_index(x + 1, img.width - 1);
    const int yt = clamp_index(y - 1, img.height - 1);
    const int yb = clamp_index(y + 1, img.height - 1);
    const double gx = (img.at(xr, yt) + 2.0 * img.at(xr, y) + img.at(xr, yb)) -
                      (img.at(xl, yt) + 2.0 * img.at(xl, y) + img.at(xl, yb));
    const double gy = (img.at(xl, yb) + 2.0 * img.at(x, yb) + img.at(xr, yb)) -
                      (img.at(xl, yt) + 2.0 * img.at(x, yt) + img.at(xr, yt));
    return std::sqrt(gx * gx + gy * gy) * kSobelScale;
}

// Mean of per-pixel values with per-row partial sums accumulated in row
// order: the summation order is fixed no matter how many threads run the
// row loop, so results are bitwise reproducible.
template <typename PixelFn>
double row_ordered_mean(int width, int height, PixelFn&& fn) {
    std::vector<double> row_sums(static_cast<std::size_t>(height), 0.0);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
        double s = 0.0;
        for (int x = 0; x < width; ++x) {
            s += fn(x, y);
        }
        row_sums[static_cast<std::size_t>(y)] = s;
    }
    double total = 0.0;
    for (double s : row_sums) {
        total += s;
    }
    return total / (static_cast<double>(width) * height);
}

}  // namespace

GrayImage normalize_depth(const DepthRaster& raster, double max_depth) {
    GrayImage img = GrayImage::zeros(raster.width, raster.height);
    for (std::size_t i = 0; i < raster.values.size(); ++i) {
        img.values[i] = std::clamp(static_cast<double>(raster.values[i]) / max_depth, 0.0, 1.0);
    }
    return img;
}

GrayImage sobel_edges(const GrayImage& image) {
    if (image.width < 3 || image.height < 3) {
        throw RasterTooSmall("sobel_edges needs at least 3x3");
    }
    GrayImage out = GrayImage::zeros(image.width, image.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            out.at(x, y) = sobel_at(image, x, y);
        }
    }
    return out;
}

double ssim_loss(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
    require_same_shape(a, b);
    const std::vector<double> window = gaussian_window(params.window, params.sigma);
    const double mean = row_ordered_mean(a.width, a.height, [&](int x, int y) {
        return ssim_at(a, b, x, y, window, params.window, params.c1, params.c2);
    });
    return 1.0 - mean;
}

double mean_abs_diff(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    return row_ordered_mean(a.width, a.height,
                            [&](int x, int y) { return std::abs(a.at(x, y) - b.at(x, y)); });
}

DepthLossTerms depth_loss_terms(const GrayImage& d, const GrayImage& d_star,
                                const DepthLossWeights& weights, const SsimParams& params) {
    require_same_shape(d, d_star);
    DepthLossTerms terms;
    terms.edge_ssim = ssim_loss(sobel_edges(d), sobel_edges(d_star), params);
    terms.depth_ssim = ssim_loss(d, d_star, params);
    terms.l1 = mean_abs_diff(d, d_star);
    terms.total =
        weights.alpha * terms.edge_ssim + weights.beta * terms.depth_ssim + weights.gamma * terms.l1;
    return terms;
}

double depth_loss(const GrayImage& d, const GrayImage& d_star, const DepthLossWeights& weights,
                  const SsimParams& params) {
    return depth_loss_terms(d, d_star, weights, params).total;
}

double bce(double p, int label) {
    const double q = std::clamp(p, kBceEps, 1.0 - kBceEps);
    return label == 1 ? -std::log(q) : -std::log1p(-q);
}

double fuse_contact(double cs_rgb, double cs_mm, double w) {
    return w * cs_rgb + (1.0 - w) * cs_mm;
}

double contact_state_loss(double cs_rgb, double cs_mm, double w, int label) {
    return bce(cs_rgb, label) + bce(cs_mm, label) + bce(fuse_contact(cs_rgb, cs_mm, w), label);
}

namespace reference {

GrayImage sobel_edges(const GrayImage& image) {
    if (image.width < 3 || image.height < 3) {
        throw RasterTooSmall("sobel_edges needs at least 3x3");
    }
    GrayImage out = GrayImage::zeros(image.width, image.height);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            out.at(x, y) = sobel_at(image, x, y);
        }
    }
    return out;
}

double ssim_loss(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
    require_same_shape(a, b);
    const std::vector<double> window = gaussian_window(params.window, params.sigma);
    double sum = 0.0;
    for (int y = 0; y < a.height; ++y) {
        for (int x = 0; x < a.width; ++x) {
            sum += ssim_at(a, b, x, y, window, params.window, params.c1, params.c2);
        }
    }
    return 1.0 - sum / (static_cast<double>(a.width) * a.height);
}

double depth_loss(const GrayImage& d, const GrayImage& d_star, const DepthLossWeights& weights,
                  const SsimParams& params) {
    require_same_shape(d, d_star);
    double l1 = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        l1 += std::abs(d.values[i] - d_star.values[i]);
    }
    l1 /= static_cast<double>(d.values.size());
    return weights.alpha *
               reference::ssim_loss(reference::sobel_edges(d), reference::sobel_edges(d_star),
                                    params) +
           weights.beta * reference::ssim_loss(d, d_star, params) + weights.gamma * l1;
}

}  // namespace reference

}  // namespace ehoi
