#include "ssimrl/synthetic.hpp"

#include "ssimrl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ssimrl {
namespace {

struct Point {
    double x, y;
};
using Polyline = std::vector<Point>;

// Stroke skeletons in a unit box, y growing downward.
std::vector<Polyline> digit_strokes(int digit) {
    switch (digit) {
    case 0:
        return {{{0.5, 0.0}, {0.95, 0.25}, {0.95, 0.75}, {0.5, 1.0}, {0.05, 0.75}, {0.05, 0.25}, {0.5, 0.0}}};
    case 1:
        return {{{0.3, 0.18}, {0.55, 0.0}, {0.55, 1.0}}};
    case 2:
        return {{{0.05, 0.2}, {0.45, 0.0}, {0.9, 0.18}, {0.9, 0.4}, {0.05, 1.0}, {0.95, 1.0}}};
    case 3:
        return {{{0.1, 0.05}, {0.85, 0.05}, {0.45, 0.42}, {0.9, 0.68}, {0.55, 1.0}, {0.05, 0.92}}};
    case 4:
        return {{{0.7, 0.0}, {0.05, 0.62}, {0.95, 0.62}}, {{0.7, 0.0}, {0.7, 1.0}}};
    case 5:
        return {{{0.9, 0.0}, {0.15, 0.0}, {0.12, 0.45}, {0.65, 0.42}, {0.92, 0.7}, {0.6, 1.0}, {0.08, 0.92}}};
    case 6:
        return {{{0.8, 0.0}, {0.3, 0.35}, {0.08, 0.72}, {0.45, 1.0}, {0.9, 0.78}, {0.75, 0.5}, {0.15, 0.58}}};
    case 7:
        return {{{0.05, 0.0}, {0.95, 0.0}, {0.4, 1.0}}};
    case 8:
        return {{{0.5, 0.0}, {0.85, 0.22}, {0.5, 0.48}, {0.15, 0.22}, {0.5, 0.0}},
                {{0.5, 0.48}, {0.9, 0.75}, {0.5, 1.0}, {0.1, 0.75}, {0.5, 0.48}}};
    case 9:
        return {{{0.5, 0.0}, {0.92, 0.22}, {0.5, 0.45}, {0.1, 0.22}, {0.5, 0.0}},
                {{0.92, 0.22}, {0.72, 1.0}}};
    default:
        throw RangeError("digit out of range: " + std::to_string(digit));
    }
}

double dist_to_segment(double px, double py, const Point& a, const Point& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((px - a.x) * vx + (py - a.y) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = px - (a.x + t * vx);
    const double dy = py - (a.y + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

// Box-Muller on a splitmix stream; hand-rolled so streams are identical
// across standard libraries.
double gaussian(SplitMix64& rng) {
    const double u1 = (static_cast<double>(rng.next() >> 11) + 0.5) * 0x1p-53;
    const double u2 = static_cast<double>(rng.next() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double uniform(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng.next() >> 11) * 0x1p-53);
}

// Midpoint-subdivide each segment, then jitter every control point; this is
// what turns one skeleton into many distinct "hands".
std::vector<Polyline> wobble_strokes(std::vector<Polyline> strokes, double sigma_px,
                                     SplitMix64& rng) {
    if (sigma_px <= 0) return strokes;
    const double sigma = sigma_px / 14.0; // unit-box coordinates
    for (auto& line : strokes) {
        Polyline dense;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i > 0)
                dense.push_back({(line[i - 1].x + line[i].x) / 2, (line[i - 1].y + line[i].y) / 2});
            dense.push_back(line[i]);
        }
        for (auto& pt : dense) {
            pt.x += sigma * gaussian(rng);
            pt.y += sigma * gaussian(rng);
        }
        line = std::move(dense);
    }
    return strokes;
}

void add_strokes(GrayImage& img, const std::vector<Polyline>& strokes, const GlyphStyle& style,
                 double gain) {
    // Glyph box: columns 7..21, rows 4..24 before styling.
    const double box_x = 7.0, box_w = 14.0;
    const double box_y = 4.0, box_h = 20.0;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            // Map the pixel back into glyph space.
            double gx = (c + 0.5 - style.dx - 14.0) / style.scale + 14.0;
            double gy = (r + 0.5 - style.dy - 14.0) / style.scale + 14.0;
            gx -= style.shear * (gy - 14.0);

            double d = 1e9;
            for (const auto& line : strokes)
                for (std::size_t i = 0; i + 1 < line.size(); ++i) {
                    const Point a{box_x + line[i].x * box_w, box_y + line[i].y * box_h};
                    const Point b{box_x + line[i + 1].x * box_w, box_y + line[i + 1].y * box_h};
                    d = std::min(d, dist_to_segment(gx, gy, a, b));
                }
            const double edge = 0.9; // soft falloff width, pixels
            const double v = std::clamp((style.thickness + edge - d) / edge, 0.0, 1.0);
            const double shade = gain * 255.0 * v;
            img.at(r, c) = static_cast<std::uint8_t>(
                std::clamp(img.at(r, c) + shade, 0.0, 255.0));
        }
    }
}

} // namespace

GrayImage render_digit(int digit, const GlyphStyle& style) {
    GrayImage img(28, 28, 0);
    add_strokes(img, digit_strokes(digit), style, 1.0);
    return img;
}

std::array<std::vector<GrayImage>, 10> make_font_templates() {
    std::array<std::vector<GrayImage>, 10> fonts;
    for (int digit = 0; digit < 10; ++digit) {
        for (int f = 0; f < 10; ++f) {
            GlyphStyle style;
            style.thickness = 1.2 + 0.12 * f;
            style.shear = -0.12 + 0.027 * f;
            style.dx = (f % 3) - 1.0;
            style.dy = (f % 2) == 0 ? -0.5 : 0.5;
            style.scale = 0.94 + 0.015 * (f % 5);
            fonts[digit].push_back(render_digit(digit, style));
        }
    }
    return fonts;
}

SyntheticDataset make_handwritten_samples(int per_digit, std::uint64_t seed,
                                          const HandwritingKnobs& knobs) {
    SyntheticDataset data;
    SplitMix64 root(seed);
    for (int digit = 0; digit < 10; ++digit) {
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(digit) + 100);
        for (int i = 0; i < per_digit; ++i) {
            const bool sloppy = uniform(rng, 0.0, 1.0) < knobs.sloppy_fraction;
            GlyphStyle style;
            style.dx = uniform(rng, -2.0, 2.0);
            style.dy = uniform(rng, -2.0, 2.0);
            style.thickness = uniform(rng, 1.0, 2.4);
            style.shear = uniform(rng, -0.22, 0.22);
            style.scale = uniform(rng, 0.86, 1.12);
            GrayImage img(28, 28, 0);

            const double wobble = sloppy ? knobs.sloppy_wobble : knobs.wobble;
            const auto own = wobble_strokes(digit_strokes(digit), wobble, rng);

            if (sloppy) {
                // A blend with a confusable digit. Mild blends still look
                // like their label but carry a wrong-class smudge; heavy
                // blends are closer to the partner digit than to the label.
                static constexpr int kConfusable[10] = {8, 7, 3, 5, 9, 6, 0, 4, 2, 1};
                const int other = kConfusable[digit];
                const double mix = uniform(rng, knobs.mix_lo, knobs.mix_hi);
                add_strokes(img, own, style, 1.0 - knobs.own_atten * mix);
                // The smudge has its own fixed styling, so with zero ghost
                // wobble the sloppy samples of one digit share a stereotyped
                // overlay.
                const auto ghost = wobble_strokes(digit_strokes(other), knobs.ghost_wobble, rng);
                GlyphStyle ghost_style;
                ghost_style.thickness = knobs.ghost_thickness;
                add_strokes(img, ghost, ghost_style, mix);
            } else {
                add_strokes(img, own, style, 1.0);
            }

            const double noise_sigma =
                sloppy ? uniform(rng, knobs.sloppy_noise_lo, knobs.sloppy_noise_hi)
                       : uniform(rng, knobs.noise_lo, knobs.noise_hi);
            for (auto& px : img.pixels) {
                const double v = px + noise_sigma * gaussian(rng);
                px = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
            data.images.push_back(std::move(img));
            data.labels.push_back(digit);
            data.sloppy.push_back(sloppy);
        }
    }
    return data;
}

SyntheticDataset make_handwritten_samples(int per_digit, std::uint64_t seed,
                                          double sloppy_fraction) {
    HandwritingKnobs knobs;
    knobs.sloppy_fraction = sloppy_fraction;
    return make_handwritten_samples(per_digit, seed, knobs);
}

} // namespace ssimrl
