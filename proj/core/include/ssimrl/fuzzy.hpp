#pragma once

#include "ssimrl/selection.hpp"

#include <vector>

namespace ssimrl {

/// Per-digit min-max bounds over the selected exemplars' font similarities
/// and the derived [0.25, 0.75] weights, indexed parallel to pool.selected.
struct FuzzyWeightTable {
    int digit = 0;
    double sim_min = 0.0;
    double sim_max = 0.0;
    std::vector<double> weights;

    bool operator==(const FuzzyWeightTable&) const = default;
};

struct RewardTrace {
    double gamma = 1.0;
    std::vector<double> rewards; // r_{t+1} per step
    double total = 0.0;
};

/// Affine map of a font similarity from [sim_min, sim_max] onto
/// [0.25, 0.75]. A degenerate interval maps to the midpoint 0.5.
double fuzzy_weight(double sim, double sim_min, double sim_max);

/// Bounds taken over pool.selected only; the fonts' similarity of 1.0 is
/// theirs alone and never enters the normalization.
FuzzyWeightTable build_weight_table(const ExemplarPool& pool);

/// Finite-horizon evaluation of R = sum_t gamma^t * rewards[t], t from 0.
double discounted_total(const std::vector<double>& rewards, double gamma);

RewardTrace make_reward_trace(std::vector<double> rewards, double gamma);

/// gamma^(round-1) times the exemplar's fuzzy weight. With the default
/// gamma = 1 the round plays no role; the font-only similarity measurement
/// already discounts later rounds implicitly.
double effective_weight(const Exemplar& exemplar, std::size_t index,
                        const FuzzyWeightTable& table, double gamma);

} // namespace ssimrl
