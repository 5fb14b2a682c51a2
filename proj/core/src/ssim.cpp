#include "ssimrl/ssim.hpp"

#include "ssimrl/errors.hpp"

#include <cmath>
#include <string>

namespace ssimrl {
namespace {

void check_same_shape(const GrayImage& x, const GrayImage& y) {
    if (!x.same_shape(y))
        throw DimensionError("SSIM: image dimensions differ: " + std::to_string(x.width) + "x" +
                             std::to_string(x.height) + " vs " + std::to_string(y.width) + "x" +
                             std::to_string(y.height));
}

double ssim_term(double mu_x, double mu_y, double var_x, double var_y, double cov,
                 const SsimParams& p) {
    const double c1 = p.c1();
    const double c2 = p.c2();
    return ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) /
           ((mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2));
}

// Valid-mode separable filter: horizontal then vertical pass with the same
// 1-D taps. Output is (h-k+1) x (w-k+1).
std::vector<double> filter_valid(const std::vector<double>& img, int w, int h,
                                 const std::vector<double>& taps) {
    const int k = static_cast<int>(taps.size());
    const int ow = w - k + 1;
    const int oh = h - k + 1;
    std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < ow; ++c) {
            double acc = 0;
            for (int i = 0; i < k; ++i) acc += taps[i] * img[static_cast<std::size_t>(r) * w + c + i];
            tmp[static_cast<std::size_t>(r) * ow + c] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(oh) * ow);
    for (int r = 0; r < oh; ++r) {
        for (int c = 0; c < ow; ++c) {
            double acc = 0;
            for (int j = 0; j < k; ++j) acc += taps[j] * tmp[static_cast<std::size_t>(r + j) * ow + c];
            out[static_cast<std::size_t>(r) * ow + c] = acc;
        }
    }
    return out;
}

} // namespace

ImageStats compute_stats(const GrayImage& x, const GrayImage& y) {
    check_same_shape(x, y);
    const std::size_t n = x.size();
    double sum_x = 0, sum_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_x += x.pixels[i];
        sum_y += y.pixels[i];
    }
    ImageStats s;
    s.mu_x = sum_x / static_cast<double>(n);
    s.mu_y = sum_y / static_cast<double>(n);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x.pixels[i] - s.mu_x;
        const double dy = y.pixels[i] - s.mu_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    s.var_x = sxx / static_cast<double>(n);
    s.var_y = syy / static_cast<double>(n);
    s.cov_xy = sxy / static_cast<double>(n);
    return s;
}

double ssim_global(const GrayImage& x, const GrayImage& y, const SsimParams& params) {
    const ImageStats s = compute_stats(x, y);
    return ssim_term(s.mu_x, s.mu_y, s.var_x, s.var_y, s.cov_xy, params);
}

std::vector<double> gaussian_kernel_1d(int radius, double sigma) {
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(i + radius)] = v;
        sum += v;
    }
    for (double& t : taps) t /= sum;
    return taps;
}

double ssim_with_kernel(const GrayImage& x, const GrayImage& y,
                        const std::vector<double>& kernel, int kernel_width,
                        int kernel_height, const SsimParams& params) {
    check_same_shape(x, y);
    if (kernel_width <= 0 || kernel_height <= 0 ||
        static_cast<std::size_t>(kernel_width) * kernel_height != kernel.size())
        throw WindowError("SSIM: kernel size does not match its dimensions");
    if (kernel_width > x.width || kernel_height > x.height)
        throw WindowError("SSIM: window " + std::to_string(kernel_width) + "x" +
                          std::to_string(kernel_height) + " larger than image");

    double ksum = 0;
    for (double w : kernel) ksum += w;
    std::vector<double> norm(kernel);
    for (double& w : norm) w /= ksum;

    const int ow = x.width - kernel_width + 1;
    const int oh = x.height - kernel_height + 1;
    double total = 0;
    for (int r = 0; r < oh; ++r) {
        for (int c = 0; c < ow; ++c) {
            double mu_x = 0, mu_y = 0, raw_xx = 0, raw_yy = 0, raw_xy = 0;
            for (int j = 0; j < kernel_height; ++j) {
                for (int i = 0; i < kernel_width; ++i) {
                    const double w = norm[static_cast<std::size_t>(j) * kernel_width + i];
                    const double px = x.at(r + j, c + i);
                    const double py = y.at(r + j, c + i);
                    mu_x += w * px;
                    mu_y += w * py;
                    raw_xx += w * px * px;
                    raw_yy += w * py * py;
                    raw_xy += w * px * py;
                }
            }
            total += ssim_term(mu_x, mu_y, raw_xx - mu_x * mu_x, raw_yy - mu_y * mu_y,
                               raw_xy - mu_x * mu_y, params);
        }
    }
    return total / (static_cast<double>(ow) * oh);
}

SsimEngine::SsimEngine(SsimParams params) : params_(params) {
    if (params_.mode == SsimMode::Windowed) {
        if (params_.window_radius < 0) throw WindowError("SSIM: negative window radius");
        kernel_ = gaussian_kernel_1d(params_.window_radius, params_.window_sigma);
    }
}

SsimEngine::Precomp SsimEngine::prepare(const GrayImage& image) const {
    Precomp pre;
    pre.width = image.width;
    pre.height = image.height;
    pre.pixels.assign(image.pixels.begin(), image.pixels.end());

    if (params_.mode == SsimMode::Global) {
        double sum = 0;
        for (double p : pre.pixels) sum += p;
        pre.mean = sum / static_cast<double>(pre.pixels.size());
        double acc = 0;
        for (double p : pre.pixels) {
            const double d = p - pre.mean;
            acc += d * d;
        }
        pre.var = acc / static_cast<double>(pre.pixels.size());
        return pre;
    }

    const int k = static_cast<int>(kernel_.size());
    if (k > image.width || k > image.height)
        throw WindowError("SSIM: window " + std::to_string(k) + "x" + std::to_string(k) +
                          " larger than image " + std::to_string(image.width) + "x" +
                          std::to_string(image.height));
    pre.mu = filter_valid(pre.pixels, image.width, image.height, kernel_);
    std::vector<double> sq(pre.pixels.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = pre.pixels[i] * pre.pixels[i];
    pre.raw2 = filter_valid(sq, image.width, image.height, kernel_);
    return pre;
}

double SsimEngine::similarity(const Precomp& x, const Precomp& y) const {
    if (x.width != y.width || x.height != y.height)
        throw DimensionError("SSIM: image dimensions differ: " + std::to_string(x.width) + "x" +
                             std::to_string(x.height) + " vs " + std::to_string(y.width) + "x" +
                             std::to_string(y.height));

    if (params_.mode == SsimMode::Global) {
        double acc = 0;
        for (std::size_t i = 0; i < x.pixels.size(); ++i)
            acc += (x.pixels[i] - x.mean) * (y.pixels[i] - y.mean);
        const double cov = acc / static_cast<double>(x.pixels.size());
        return ssim_term(x.mean, y.mean, x.var, y.var, cov, params_);
    }

    std::vector<double> prod(x.pixels.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = x.pixels[i] * y.pixels[i];
    const std::vector<double> raw_xy = filter_valid(prod, x.width, x.height, kernel_);

    double total = 0;
    for (std::size_t i = 0; i < raw_xy.size(); ++i) {
        const double mu_x = x.mu[i];
        const double mu_y = y.mu[i];
        total += ssim_term(mu_x, mu_y, x.raw2[i] - mu_x * mu_x, y.raw2[i] - mu_y * mu_y,
                           raw_xy[i] - mu_x * mu_y, params_);
    }
    return total / static_cast<double>(raw_xy.size());
}

double ssim_windowed(const GrayImage& x, const GrayImage& y, const SsimParams& params) {
    check_same_shape(x, y);
    SsimParams p = params;
    p.mode = SsimMode::Windowed;
    SsimEngine engine(p);
    return engine.similarity(engine.prepare(x), engine.prepare(y));
}

} // namespace ssimrl
