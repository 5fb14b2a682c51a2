#include "ssimrl/eval.hpp"

#include "ssimrl/errors.hpp"
#include "ssimrl/parallel.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>

namespace ssimrl {
namespace {

using nlohmann::json;

// For the no-selection baselines the "pool" is the training set itself:
// every train sample becomes a round-1 exemplar, its font similarity
// min-max normalized per digit when the mode weights comparisons.
void build_baseline_pools(const DatasetSplit& split, const Model& model, const RunConfig& cfg,
                          bool need_weights, unsigned threads,
                          std::array<ExemplarPool, 10>& pools,
                          std::array<FuzzyWeightTable, 10>& tables) {
    for (int digit = 0; digit < 10; ++digit) {
        auto& pool = pools[digit];
        pool.digit = digit;
        pool.fonts = model.pools[digit].fonts;

        const auto& train = split.train[digit];
        std::size_t n = train.size();
        if (cfg.baseline_train_cap > 0) n = std::min(n, cfg.baseline_train_cap);
        pool.selected.resize(n);

        const SsimEngine engine(cfg.selection.ssim);
        std::vector<SsimEngine::Precomp> font_pre;
        if (need_weights)
            for (const auto& font : pool.fonts) font_pre.push_back(engine.prepare(font));

        parallel_for(n, threads, [&](std::size_t i) {
            Exemplar& ex = pool.selected[i];
            ex.image = train[i].image;
            ex.digit = digit;
            ex.round = 1;
            ex.source_index = train[i].source_index;
            if (need_weights) {
                const auto pre = engine.prepare(ex.image);
                double sum = 0;
                for (const auto& fp : font_pre) sum += engine.similarity(pre, fp);
                ex.font_similarity = sum / static_cast<double>(font_pre.size());
            }
        });

        tables[digit].digit = digit;
        if (need_weights && !pool.selected.empty())
            tables[digit] = build_weight_table(pool);
    }
}

} // namespace

EvalReport evaluate(AblationMode mode, const DatasetSplit& split, const Model& model,
                    const RunConfig& cfg, unsigned threads) {
    const std::string expected = config_fingerprint(cfg);
    if (model.fingerprint != expected)
        throw StaleModelError("model fingerprint " + model.fingerprint +
                              " does not match config fingerprint " + expected);

    const auto start = std::chrono::steady_clock::now();

    const std::array<ExemplarPool, 10>* pools = &model.pools;
    const std::array<FuzzyWeightTable, 10>* tables = &model.tables;
    std::array<ExemplarPool, 10> baseline_pools;
    std::array<FuzzyWeightTable, 10> baseline_tables;
    if (!mode_uses_selection(mode)) {
        build_baseline_pools(split, model, cfg, mode_uses_weights(mode), threads, baseline_pools,
                             baseline_tables);
        pools = &baseline_pools;
        tables = &baseline_tables;
    }

    const Classifier classifier(*pools, *tables, mode, cfg.gamma, cfg.selection.ssim,
                                cfg.margin_threshold, cfg.aggregate);

    std::vector<const LabeledImage*> samples;
    for (int digit = 0; digit < 10; ++digit)
        for (const auto& sample : split.test[digit]) samples.push_back(&sample);

    std::vector<ClassificationResult> results(samples.size());
    parallel_for(samples.size(), threads,
                 [&](std::size_t i) { results[i] = classifier.classify(samples[i]->image); });

    EvalReport report;
    report.mode = mode;
    report.n_test = samples.size();
    report.config_fingerprint = model.fingerprint;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        report.confusion[samples[i]->label][results[i].predicted] += 1;
        if (results[i].uncertain) report.uncertain_count += 1;
    }
    if (report.n_test > 0) {
        std::size_t correct = 0;
        for (int d = 0; d < 10; ++d) correct += report.confusion[d][d];
        report.accuracy = static_cast<double>(correct) / static_cast<double>(report.n_test);
    }
    for (int d = 0; d < 10; ++d) {
        std::size_t row = 0;
        for (int p = 0; p < 10; ++p) row += report.confusion[d][p];
        if (row > 0)
            report.per_digit_accuracy[d] =
                static_cast<double>(report.confusion[d][d]) / static_cast<double>(row);
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<EvalReport> compare_modes(const DatasetSplit& split, const Model& model,
                                      const RunConfig& cfg, unsigned threads) {
    std::vector<EvalReport> reports;
    for (AblationMode mode : {AblationMode::SsimOnly, AblationMode::FuzzyOnly, AblationMode::RlOnly,
                              AblationMode::Full})
        reports.push_back(evaluate(mode, split, model, cfg, threads));
    return reports;
}

std::string report_to_json(const EvalReport& report) {
    json confusion = json::array();
    for (const auto& row : report.confusion) confusion.push_back(row);
    json per_digit = json::array();
    for (const auto& acc : report.per_digit_accuracy)
        per_digit.push_back(acc ? json(*acc) : json(nullptr));
    const json doc{{"mode", to_string(report.mode)},
                   {"n_test", report.n_test},
                   {"accuracy", report.accuracy ? json(*report.accuracy) : json(nullptr)},
                   {"confusion", std::move(confusion)},
                   {"uncertain_count", report.uncertain_count},
                   {"per_digit_accuracy", std::move(per_digit)},
                   {"config_fingerprint", report.config_fingerprint},
                   {"wall_time_seconds", report.wall_time_seconds}};
    return doc.dump(2);
}

EvalReport report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("report is not valid JSON: " + std::string(e.what()));
    }
    EvalReport report;
    try {
        report.mode = ablation_mode_from_string(doc.at("mode").get<std::string>());
        report.n_test = doc.at("n_test").get<std::size_t>();
        if (!doc.at("accuracy").is_null()) report.accuracy = doc.at("accuracy").get<double>();
        const auto& confusion = doc.at("confusion");
        for (int d = 0; d < 10; ++d)
            for (int p = 0; p < 10; ++p)
                report.confusion[d][p] = confusion.at(d).at(p).get<std::size_t>();
        report.uncertain_count = doc.at("uncertain_count").get<std::size_t>();
        const auto& per_digit = doc.at("per_digit_accuracy");
        for (int d = 0; d < 10; ++d)
            if (!per_digit.at(d).is_null()) report.per_digit_accuracy[d] = per_digit.at(d).get<double>();
        report.config_fingerprint = doc.at("config_fingerprint").get<std::string>();
        report.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    } catch (const json::exception& e) {
        throw FormatError("report field error: " + std::string(e.what()));
    }
    return report;
}

void write_report_json(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report file: " + path.string());
    out << report_to_json(report) << "\n";
}

EvalReport read_report_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open report file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return report_from_json(text);
}

void write_summary_csv(const std::vector<EvalReport>& reports, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write summary file: " + path.string());
    out << "mode,accuracy";
    for (int d = 0; d < 10; ++d) out << ",digit_" << d;
    out << "\n";
    for (const auto& report : reports) {
        out << to_string(report.mode) << ",";
        if (report.accuracy) out << *report.accuracy;
        for (int d = 0; d < 10; ++d) {
            out << ",";
            if (report.per_digit_accuracy[d]) out << *report.per_digit_accuracy[d];
        }
        out << "\n";
    }
}

void write_confusion_csv(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write confusion file: " + path.string());
    out << "true\\pred";
    for (int p = 0; p < 10; ++p) out << "," << p;
    out << "\n";
    for (int d = 0; d < 10; ++d) {
        out << d;
        for (int p = 0; p < 10; ++p) out << "," << report.confusion[d][p];
        out << "\n";
    }
}

} // namespace ssimrl
