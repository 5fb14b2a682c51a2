#pragma once

#include "ssimrl/image.hpp"
#include "ssimrl/split.hpp"
#include "ssimrl/ssim.hpp"

#include <array>
#include <vector>

namespace ssimrl {

/// A "good sample": image, digit, its mean SSIM against the font templates
/// only (never against other exemplars), and the round it was picked in.
/// Round 0 is reserved for the font templates themselves.
struct Exemplar {
    GrayImage image;
    int digit = 0;
    double font_similarity = 0.0;
    int round = 0;
    std::size_t source_index = 0;
};

struct ExemplarPool {
    int digit = 0;
    std::vector<GrayImage> fonts;
    std::vector<Exemplar> selected; // insertion order == selection order
};

struct SelectionConfig {
    double threshold = 0.40; // mean similarity must be strictly greater
    int rounds = 5;
    SsimParams ssim;

    bool operator==(const SelectionConfig&) const = default;
};

/// Unweighted mean SSIM of `candidate` against every pool member
/// (fonts first, then selected exemplars, in stored order).
double mean_pool_similarity(const GrayImage& candidate, const ExemplarPool& pool,
                            const SsimParams& params);

struct RoundResult {
    std::vector<Exemplar> selected;
    std::vector<LabeledImage> rejected;
};

/// One selection pass against the pool as frozen at round start. Candidates
/// whose mean pool similarity strictly exceeds cfg.threshold become
/// exemplars with font_similarity measured against fonts only. The pool is
/// not mutated; the caller appends.
RoundResult run_round(const std::vector<LabeledImage>& candidates, const ExemplarPool& pool,
                      const SelectionConfig& cfg, int round, unsigned threads = 1);

/// The full per-digit loop: cfg.rounds rounds, selected exemplars join the
/// pool after each round and leave the candidate set. A round that selects
/// nothing does not stop the loop.
ExemplarPool train_digit(const std::vector<LabeledImage>& train_samples,
                         const std::vector<GrayImage>& fonts, const SelectionConfig& cfg,
                         unsigned threads = 1);

/// Train all ten digits independently.
std::array<ExemplarPool, 10> train_all(const DatasetSplit& split,
                                       const std::array<std::vector<GrayImage>, 10>& templates,
                                       const SelectionConfig& cfg, unsigned threads = 1);

} // namespace ssimrl
