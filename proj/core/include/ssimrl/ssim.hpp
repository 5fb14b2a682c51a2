#pragma once

#include "ssimrl/image.hpp"

#include <vector>

namespace ssimrl {

enum class SsimMode { Global, Windowed };

/// Stability constants and window geometry. c1/c2 are always derived from
/// (k1, k2, L); intensities stay on their native [0, 255] scale.
struct SsimParams {
    double dynamic_range = 255.0; // L
    double k1 = 0.01;
    double k2 = 0.03;
    SsimMode mode = SsimMode::Windowed;
    int window_radius = 5;    // 11x11 window
    double window_sigma = 1.5;

    double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
    double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }

    bool operator==(const SsimParams&) const = default;
};

/// Whole-image population statistics (divide by N).
struct ImageStats {
    double mu_x = 0, mu_y = 0;
    double var_x = 0, var_y = 0;
    double cov_xy = 0;
};

ImageStats compute_stats(const GrayImage& x, const GrayImage& y);

/// Single-window SSIM over whole-image statistics:
///   (2 mu_x mu_y + c1)(2 cov + c2) / ((mu_x^2 + mu_y^2 + c1)(var_x + var_y + c2))
double ssim_global(const GrayImage& x, const GrayImage& y, const SsimParams& params);

/// Mean of per-window SSIM values with Gaussian-weighted local moments.
/// Windows are evaluated only where fully inside the image (no padding).
double ssim_windowed(const GrayImage& x, const GrayImage& y, const SsimParams& params);

/// SSIM with an explicit 2-D window kernel (need not be Gaussian); the
/// kernel is normalized to sum 1 and slides over every fully-interior
/// position. A uniform kernel covering the whole image reduces to
/// ssim_global.
double ssim_with_kernel(const GrayImage& x, const GrayImage& y,
                        const std::vector<double>& kernel, int kernel_width,
                        int kernel_height, const SsimParams& params);

/// Separable Gaussian kernel, normalized to sum 1.
std::vector<double> gaussian_kernel_1d(int radius, double sigma);

/// Per-image precomputation for repeated pairwise SSIM. For Windowed mode
/// this caches the Gaussian-filtered mean and second-moment maps so a pair
/// evaluation only has to filter the cross product.
class SsimEngine {
public:
    explicit SsimEngine(SsimParams params);

    struct Precomp {
        int width = 0, height = 0;
        std::vector<double> pixels;   // intensities as doubles
        // Windowed mode: valid-region filtered maps.
        std::vector<double> mu;       // E_w[x]
        std::vector<double> raw2;     // E_w[x^2]
        // Global mode: whole-image moments.
        double mean = 0, var = 0;
    };

    const SsimParams& params() const { return params_; }

    Precomp prepare(const GrayImage& image) const;

    /// Equals ssim_windowed / ssim_global on the same pair, bit-for-bit.
    double similarity(const Precomp& x, const Precomp& y) const;

private:
    SsimParams params_;
    std::vector<double> kernel_; // 1-D Gaussian taps, Windowed mode only
};

} // namespace ssimrl
