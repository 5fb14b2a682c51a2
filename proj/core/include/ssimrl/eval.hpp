#pragma once

#include "ssimrl/classifier.hpp"
#include "ssimrl/model_io.hpp"
#include "ssimrl/split.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

namespace ssimrl {

struct EvalReport {
    AblationMode mode = AblationMode::Full;
    std::size_t n_test = 0;
    std::optional<double> accuracy;               // empty when n_test == 0
    std::array<std::array<std::size_t, 10>, 10> confusion{}; // [true][predicted]
    std::size_t uncertain_count = 0;
    std::array<std::optional<double>, 10> per_digit_accuracy;
    std::string config_fingerprint;
    double wall_time_seconds = 0.0;
};

/// Classify every test sample under one ablation mode. The model must have
/// been trained with the given config (fingerprint check), otherwise
/// StaleModelError. For SsimOnly/FuzzyOnly the comparand pools hold the
/// training samples themselves (capped by cfg.baseline_train_cap).
EvalReport evaluate(AblationMode mode, const DatasetSplit& split, const Model& model,
                    const RunConfig& cfg, unsigned threads = 1);

/// All four ablation modes on identical inputs, in the fixed order
/// ssim_only, fuzzy_only, rl_only, full.
std::vector<EvalReport> compare_modes(const DatasetSplit& split, const Model& model,
                                      const RunConfig& cfg, unsigned threads = 1);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
void write_report_json(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report_json(const std::filesystem::path& path);

/// One row per report: mode, accuracy, then the ten per-digit accuracies.
void write_summary_csv(const std::vector<EvalReport>& reports, const std::filesystem::path& path);

/// 10x10 counts with header row `true\pred,0,...,9`.
void write_confusion_csv(const EvalReport& report, const std::filesystem::path& path);

} // namespace ssimrl
