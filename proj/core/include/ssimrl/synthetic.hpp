#pragma once

#include "ssimrl/image.hpp"
#include "ssimrl/split.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ssimrl {

/// Procedural 28x28 digit rendering: white strokes on a black background,
/// matching the shape of the datasets the pipeline consumes. Used to build
/// template seeds and desk-scale datasets where no real corpus is at hand.
struct GlyphStyle {
    double dx = 0.0;        // horizontal shift, pixels
    double dy = 0.0;        // vertical shift, pixels
    double thickness = 1.6; // stroke half-width, pixels
    double shear = 0.0;     // horizontal shear per vertical unit
    double scale = 1.0;     // glyph box scale around its center
};

GrayImage render_digit(int digit, const GlyphStyle& style);

/// Ten clean fixed styles per digit, playing the role of the "standard
/// computer fonts" that seed each exemplar pool.
std::array<std::vector<GrayImage>, 10> make_font_templates();

struct SyntheticDataset {
    std::vector<GrayImage> images;
    std::vector<int> labels;
    std::vector<bool> sloppy; // provenance flag, parallel to images
};

/// Knobs for the handwriting simulator. Wobble perturbs the stroke control
/// points per sample, which is what makes two renderings of the same digit
/// differ the way two people's handwriting does.
struct HandwritingKnobs {
    double sloppy_fraction = 0.45;
    double wobble = 1.2;        // control-point jitter std-dev, pixels
    double sloppy_wobble = 1.2;
    double noise_lo = 10.0;     // pixel noise std-dev range, clean samples
    double noise_hi = 20.0;
    double sloppy_noise_lo = 6.0;
    double sloppy_noise_hi = 10.0;
    double mix_lo = 0.8;        // ghost-digit blend range for sloppy samples
    double mix_hi = 1.0;
    double own_atten = 0.35;    // how much the blend fades the labeled glyph
    double ghost_wobble = 0.5;  // jitter on the ghost strokes; small values
                                // keep the smudge near-stereotyped, so sloppy
                                // samples of a digit resemble each other
    double ghost_thickness = 1.6;
};

/// Distorted handwriting-like samples: wobbled strokes, jittered styles,
/// pixel noise. The sloppy share is blended with a confusable digit,
/// producing the low-quality exemplars the fuzzy weighting is there to
/// demote.
SyntheticDataset make_handwritten_samples(int per_digit, std::uint64_t seed,
                                          const HandwritingKnobs& knobs = {});
SyntheticDataset make_handwritten_samples(int per_digit, std::uint64_t seed,
                                          double sloppy_fraction);

} // namespace ssimrl
