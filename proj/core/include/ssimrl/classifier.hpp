#pragma once

#include "ssimrl/fuzzy.hpp"
#include "ssimrl/selection.hpp"
#include "ssimrl/ssim.hpp"

#include <array>
#include <string>

namespace ssimrl {

/// The four configurations of the ablation study. SsimOnly and FuzzyOnly
/// are run against pools that hold the full training set as exemplars;
/// RlOnly and Full run against the selected exemplar pools. FuzzyOnly and
/// Full multiply each comparison by the comparand's fuzzy weight.
enum class AblationMode { SsimOnly, FuzzyOnly, RlOnly, Full };

bool mode_uses_weights(AblationMode mode);
bool mode_uses_selection(AblationMode mode);
std::string to_string(AblationMode mode);
AblationMode ablation_mode_from_string(const std::string& name);

enum class Aggregate { Mean, Max };

struct ClassificationResult {
    std::array<double, 10> scores{};
    int predicted = 0;
    int runner_up = 0;
    double margin = 0.0;
    bool uncertain = false;
};

/// Weighted aggregate SSIM of a test image against one digit's comparands:
/// fonts always carry weight 1; exemplars carry their effective fuzzy
/// weight in weighted modes and 1 otherwise.
double score_digit(const GrayImage& test, const ExemplarPool& pool, const FuzzyWeightTable& table,
                   AblationMode mode, double gamma, const SsimParams& params,
                   Aggregate aggregate = Aggregate::Mean);

/// Precomputes SSIM state for every comparand once so that many test images
/// can be scored cheaply. Pure after construction; safe to share across
/// threads.
class Classifier {
public:
    Classifier(const std::array<ExemplarPool, 10>& pools,
               const std::array<FuzzyWeightTable, 10>& tables, AblationMode mode, double gamma,
               const SsimParams& params, double margin_threshold,
               Aggregate aggregate = Aggregate::Mean);

    double score_digit(const GrayImage& test, int digit) const;
    ClassificationResult classify(const GrayImage& test) const;

private:
    struct Comparand {
        SsimEngine::Precomp pre;
        double weight = 1.0;
    };
    SsimEngine engine_;
    std::array<std::vector<Comparand>, 10> comparands_;
    double margin_threshold_;
    Aggregate aggregate_;

    double score_prepared(const SsimEngine::Precomp& test, int digit) const;
};

/// One-shot form of Classifier::classify for callers that only need a
/// single prediction.
ClassificationResult classify(const GrayImage& test, const std::array<ExemplarPool, 10>& pools,
                              const std::array<FuzzyWeightTable, 10>& tables, AblationMode mode,
                              double gamma, const SsimParams& params, double margin_threshold,
                              Aggregate aggregate = Aggregate::Mean);

} // namespace ssimrl
