#include "ssimrl/selection.hpp"

#include "ssimrl/errors.hpp"
#include "ssimrl/parallel.hpp"

#include <string>
#include <utility>

namespace ssimrl {

double mean_pool_similarity(const GrayImage& candidate, const ExemplarPool& pool,
                            const SsimParams& params) {
    const std::size_t n = pool.fonts.size() + pool.selected.size();
    if (n == 0) throw EmptyPoolError("pool for digit " + std::to_string(pool.digit) + " is empty");

    SsimEngine engine(params);
    const auto cand = engine.prepare(candidate);
    double sum = 0;
    for (const auto& font : pool.fonts) sum += engine.similarity(cand, engine.prepare(font));
    for (const auto& ex : pool.selected) sum += engine.similarity(cand, engine.prepare(ex.image));
    return sum / static_cast<double>(n);
}

namespace {

// Incremental per-candidate state kept across rounds: the running sum over
// pool members is extended as exemplars join, which reproduces the naive
// fonts-then-selected accumulation chain term for term.
struct CandidateState {
    LabeledImage sample;
    SsimEngine::Precomp pre;
    double pool_sum = 0; // sum of SSIM vs all current pool members
    double font_sum = 0; // sum of SSIM vs fonts only
};

ExemplarPool train_digit_impl(const std::vector<LabeledImage>& train_samples,
                              const std::vector<GrayImage>& fonts, const SelectionConfig& cfg,
                              unsigned threads) {
    if (fonts.empty()) throw EmptyPoolError("no font templates supplied");

    const SsimEngine engine(cfg.ssim);
    std::vector<SsimEngine::Precomp> pool_pre;
    pool_pre.reserve(fonts.size());
    for (const auto& font : fonts) pool_pre.push_back(engine.prepare(font));

    std::vector<CandidateState> candidates(train_samples.size());
    parallel_for(train_samples.size(), threads, [&](std::size_t i) {
        candidates[i].sample = train_samples[i];
        candidates[i].pre = engine.prepare(train_samples[i].image);
        double sum = 0;
        for (std::size_t f = 0; f < fonts.size(); ++f)
            sum += engine.similarity(candidates[i].pre, pool_pre[f]);
        candidates[i].pool_sum = sum;
        candidates[i].font_sum = sum;
    });

    ExemplarPool pool;
    pool.digit = train_samples.empty() ? 0 : train_samples.front().label;
    pool.fonts = fonts;

    std::size_t scored_members = fonts.size(); // pool members already in pool_sum
    for (int round = 1; round <= cfg.rounds; ++round) {
        // Extend each candidate's running sum with members added last round.
        if (scored_members < pool_pre.size()) {
            parallel_for(candidates.size(), threads, [&](std::size_t i) {
                for (std::size_t m = scored_members; m < pool_pre.size(); ++m)
                    candidates[i].pool_sum += engine.similarity(candidates[i].pre, pool_pre[m]);
            });
            scored_members = pool_pre.size();
        }

        std::vector<CandidateState> remaining;
        remaining.reserve(candidates.size());
        std::vector<SsimEngine::Precomp> new_pre;
        for (auto& cand : candidates) {
            const double mean = cand.pool_sum / static_cast<double>(scored_members);
            if (mean > cfg.threshold) {
                Exemplar ex;
                ex.image = cand.sample.image;
                ex.digit = cand.sample.label;
                ex.font_similarity = cand.font_sum / static_cast<double>(fonts.size());
                ex.round = round;
                ex.source_index = cand.sample.source_index;
                pool.selected.push_back(std::move(ex));
                new_pre.push_back(std::move(cand.pre));
            } else {
                remaining.push_back(std::move(cand));
            }
        }
        candidates = std::move(remaining);
        for (auto& pre : new_pre) pool_pre.push_back(std::move(pre));
    }
    return pool;
}

} // namespace

RoundResult run_round(const std::vector<LabeledImage>& candidates, const ExemplarPool& pool,
                      const SelectionConfig& cfg, int round, unsigned threads) {
    const std::size_t n_members = pool.fonts.size() + pool.selected.size();
    if (n_members == 0)
        throw EmptyPoolError("pool for digit " + std::to_string(pool.digit) + " is empty");
    if (round < 1 || round > cfg.rounds)
        throw RangeError("round " + std::to_string(round) + " outside 1.." +
                         std::to_string(cfg.rounds));

    const SsimEngine engine(cfg.ssim);
    std::vector<SsimEngine::Precomp> member_pre;
    member_pre.reserve(n_members);
    for (const auto& font : pool.fonts) member_pre.push_back(engine.prepare(font));
    for (const auto& ex : pool.selected) member_pre.push_back(engine.prepare(ex.image));

    std::vector<double> mean_sim(candidates.size());
    std::vector<double> font_sim(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t i) {
        const auto cand = engine.prepare(candidates[i].image);
        double sum = 0, fsum = 0;
        for (std::size_t m = 0; m < member_pre.size(); ++m) {
            const double s = engine.similarity(cand, member_pre[m]);
            sum += s;
            if (m < pool.fonts.size()) fsum += s;
        }
        mean_sim[i] = sum / static_cast<double>(n_members);
        font_sim[i] = fsum / static_cast<double>(pool.fonts.size());
    });

    RoundResult result;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (mean_sim[i] > cfg.threshold) {
            result.selected.push_back(Exemplar{candidates[i].image, candidates[i].label,
                                               font_sim[i], round, candidates[i].source_index});
        } else {
            result.rejected.push_back(candidates[i]);
        }
    }
    return result;
}

ExemplarPool train_digit(const std::vector<LabeledImage>& train_samples,
                         const std::vector<GrayImage>& fonts, const SelectionConfig& cfg,
                         unsigned threads) {
    return train_digit_impl(train_samples, fonts, cfg, threads);
}

std::array<ExemplarPool, 10> train_all(const DatasetSplit& split,
                                       const std::array<std::vector<GrayImage>, 10>& templates,
                                       const SelectionConfig& cfg, unsigned threads) {
    for (int digit = 0; digit < 10; ++digit)
        if (templates[digit].empty())
            throw ConfigError("no font templates for digit " + std::to_string(digit));

    std::array<ExemplarPool, 10> pools;
    for (int digit = 0; digit < 10; ++digit) {
        pools[digit] = train_digit(split.train[digit], templates[digit], cfg, threads);
        pools[digit].digit = digit;
    }
    return pools;
}

} // namespace ssimrl
