#include "ssimrl/fuzzy.hpp"

#include "ssimrl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssimrl {

double fuzzy_weight(double sim, double sim_min, double sim_max) {
    if (sim < sim_min || sim > sim_max)
        throw RangeError("similarity " + std::to_string(sim) + " outside [" +
                         std::to_string(sim_min) + ", " + std::to_string(sim_max) + "]");
    if (sim_max == sim_min) return 0.5;
    return 0.25 + 0.5 * (sim - sim_min) / (sim_max - sim_min);
}

FuzzyWeightTable build_weight_table(const ExemplarPool& pool) {
    if (pool.selected.empty())
        throw EmptyPoolError("no selected exemplars for digit " + std::to_string(pool.digit));

    FuzzyWeightTable table;
    table.digit = pool.digit;
    table.sim_min = pool.selected.front().font_similarity;
    table.sim_max = table.sim_min;
    for (const auto& ex : pool.selected) {
        table.sim_min = std::min(table.sim_min, ex.font_similarity);
        table.sim_max = std::max(table.sim_max, ex.font_similarity);
    }
    table.weights.reserve(pool.selected.size());
    for (const auto& ex : pool.selected)
        table.weights.push_back(fuzzy_weight(ex.font_similarity, table.sim_min, table.sim_max));
    return table;
}

double discounted_total(const std::vector<double>& rewards, double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw RangeError("gamma " + std::to_string(gamma) + " outside [0, 1]");
    double total = 0;
    double factor = 1.0; // gamma^t, t starting at 0
    for (double r : rewards) {
        total += factor * r;
        factor *= gamma;
    }
    return total;
}

RewardTrace make_reward_trace(std::vector<double> rewards, double gamma) {
    RewardTrace trace;
    trace.gamma = gamma;
    trace.total = discounted_total(rewards, gamma);
    trace.rewards = std::move(rewards);
    return trace;
}

double effective_weight(const Exemplar& exemplar, std::size_t index,
                        const FuzzyWeightTable& table, double gamma) {
    if (index >= table.weights.size())
        throw KeyError("exemplar index " + std::to_string(index) + " not in weight table for digit " +
                       std::to_string(table.digit));
    if (exemplar.round < 1)
        throw RangeError("effective_weight requires a selected exemplar (round >= 1)");
    return std::pow(gamma, exemplar.round - 1) * table.weights[index];
}

} // namespace ssimrl
