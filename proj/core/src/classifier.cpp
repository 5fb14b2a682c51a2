#include "ssimrl/classifier.hpp"

#include "ssimrl/errors.hpp"

#include <algorithm>

namespace ssimrl {

bool mode_uses_weights(AblationMode mode) {
    return mode == AblationMode::FuzzyOnly || mode == AblationMode::Full;
}

bool mode_uses_selection(AblationMode mode) {
    return mode == AblationMode::RlOnly || mode == AblationMode::Full;
}

std::string to_string(AblationMode mode) {
    switch (mode) {
    case AblationMode::SsimOnly: return "ssim_only";
    case AblationMode::FuzzyOnly: return "fuzzy_only";
    case AblationMode::RlOnly: return "rl_only";
    case AblationMode::Full: return "full";
    }
    return "unknown";
}

AblationMode ablation_mode_from_string(const std::string& name) {
    if (name == "ssim_only") return AblationMode::SsimOnly;
    if (name == "fuzzy_only") return AblationMode::FuzzyOnly;
    if (name == "rl_only") return AblationMode::RlOnly;
    if (name == "full") return AblationMode::Full;
    throw ConfigError("unknown ablation mode '" + name + "'");
}

double score_digit(const GrayImage& test, const ExemplarPool& pool, const FuzzyWeightTable& table,
                   AblationMode mode, double gamma, const SsimParams& params,
                   Aggregate aggregate) {
    std::array<ExemplarPool, 10> pools;
    std::array<FuzzyWeightTable, 10> tables;
    const int digit = pool.digit;
    pools[digit] = pool;
    tables[digit] = table;
    Classifier one(pools, tables, mode, gamma, params, 0.0, aggregate);
    return one.score_digit(test, digit);
}

Classifier::Classifier(const std::array<ExemplarPool, 10>& pools,
                       const std::array<FuzzyWeightTable, 10>& tables, AblationMode mode,
                       double gamma, const SsimParams& params, double margin_threshold,
                       Aggregate aggregate)
    : engine_(params), margin_threshold_(margin_threshold), aggregate_(aggregate) {
    for (int digit = 0; digit < 10; ++digit) {
        auto& list = comparands_[digit];
        list.reserve(pools[digit].fonts.size() + pools[digit].selected.size());
        for (const auto& font : pools[digit].fonts)
            list.push_back(Comparand{engine_.prepare(font), 1.0});
        const auto& selected = pools[digit].selected;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const double w = mode_uses_weights(mode)
                                 ? effective_weight(selected[i], i, tables[digit], gamma)
                                 : 1.0;
            list.push_back(Comparand{engine_.prepare(selected[i].image), w});
        }
    }
}

double Classifier::score_prepared(const SsimEngine::Precomp& test, int digit) const {
    const auto& list = comparands_[digit];
    if (list.empty())
        throw EmptyPoolError("digit " + std::to_string(digit) + " has no comparands");
    if (aggregate_ == Aggregate::Max) {
        double best = engine_.similarity(test, list.front().pre) * list.front().weight;
        for (std::size_t i = 1; i < list.size(); ++i)
            best = std::max(best, engine_.similarity(test, list[i].pre) * list[i].weight);
        return best;
    }
    double sum = 0;
    for (const auto& cmp : list) sum += engine_.similarity(test, cmp.pre) * cmp.weight;
    return sum / static_cast<double>(list.size());
}

double Classifier::score_digit(const GrayImage& test, int digit) const {
    return score_prepared(engine_.prepare(test), digit);
}

ClassificationResult Classifier::classify(const GrayImage& test) const {
    const auto pre = engine_.prepare(test);
    ClassificationResult result;
    for (int digit = 0; digit < 10; ++digit) result.scores[digit] = score_prepared(pre, digit);

    int top1 = 0;
    for (int digit = 1; digit < 10; ++digit)
        if (result.scores[digit] > result.scores[top1]) top1 = digit; // ties keep smaller digit
    int top2 = top1 == 0 ? 1 : 0;
    for (int digit = 0; digit < 10; ++digit)
        if (digit != top1 && result.scores[digit] > result.scores[top2]) top2 = digit;

    result.predicted = top1;
    result.runner_up = top2;
    result.margin = result.scores[top1] - result.scores[top2];
    result.uncertain = result.margin < margin_threshold_;
    return result;
}

ClassificationResult classify(const GrayImage& test, const std::array<ExemplarPool, 10>& pools,
                              const std::array<FuzzyWeightTable, 10>& tables, AblationMode mode,
                              double gamma, const SsimParams& params, double margin_threshold,
                              Aggregate aggregate) {
    return Classifier(pools, tables, mode, gamma, params, margin_threshold, aggregate)
        .classify(test);
}

} // namespace ssimrl
