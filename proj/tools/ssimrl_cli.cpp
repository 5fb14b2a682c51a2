// Command-line front end: train, classify, evaluate, report.

#include "ssimrl/eval.hpp"
#include "ssimrl/errors.hpp"
#include "ssimrl/idx.hpp"
#include "ssimrl/model_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    unsigned threads = 1;
};

ssimrl::RunConfig load_effective_config(const CommonOpts& opts) {
    ssimrl::RunConfig cfg = ssimrl::load_config(opts.config_path);
    if (opts.seed_override) cfg.seed = *opts.seed_override;
    return cfg;
}

ssimrl::DatasetSplit load_split(const ssimrl::RunConfig& cfg) {
    const auto images = ssimrl::load_idx_images(cfg.images);
    const auto labels = ssimrl::load_idx_labels(cfg.labels);
    const auto dataset = ssimrl::zip_dataset(images, labels);
    return ssimrl::split_dataset(dataset, cfg.split_ratio, cfg.per_digit_cap, cfg.seed);
}

int cmd_train(const CommonOpts& opts) {
    const ssimrl::RunConfig cfg = load_effective_config(opts);
    const ssimrl::DatasetSplit split = load_split(cfg);
    ssimrl::TemplateSet templates = ssimrl::load_templates(cfg.template_dir);

    auto pools = ssimrl::train_all(split, templates.images, cfg.selection, opts.threads);

    std::printf("digit  train ");
    for (int r = 1; r <= cfg.selection.rounds; ++r) std::printf(" round%-2d", r);
    std::printf(" total\n");
    for (int digit = 0; digit < 10; ++digit) {
        std::array<std::size_t, 64> per_round{};
        for (const auto& ex : pools[digit].selected) per_round[ex.round] += 1;
        std::printf("%5d  %5zu ", digit, split.train[digit].size());
        for (int r = 1; r <= cfg.selection.rounds; ++r) std::printf(" %7zu", per_round[r]);
        std::printf(" %5zu\n", pools[digit].selected.size());
    }

    ssimrl::Model model = ssimrl::build_model(std::move(pools), std::move(templates), cfg);
    fs::create_directories(cfg.output_dir);
    const fs::path model_path = fs::path(cfg.output_dir) / "model.json";
    ssimrl::save_model(model, model_path);
    std::printf("model written to %s (fingerprint %s)\n", model_path.c_str(),
                model.fingerprint.c_str());
    return 0;
}

int cmd_classify(const std::string& model_path, const std::string& image_path,
                 const std::string& mode_name) {
    const ssimrl::Model model = ssimrl::load_model(model_path);
    const ssimrl::GrayImage image = ssimrl::load_pgm(image_path);
    const ssimrl::AblationMode mode = ssimrl::ablation_mode_from_string(mode_name);

    const auto result =
        ssimrl::classify(image, model.pools, model.tables, mode, model.config.gamma,
                         model.config.selection.ssim, model.config.margin_threshold,
                         model.config.aggregate);

    json out{{"scores", result.scores},
             {"predicted", result.predicted},
             {"runner_up", result.runner_up},
             {"margin", result.margin},
             {"uncertain", result.uncertain}};
    std::cout << out.dump(2) << "\n";
    return result.uncertain ? 2 : 0;
}

std::vector<ssimrl::AblationMode> parse_modes(const std::string& csv) {
    std::vector<ssimrl::AblationMode> modes;
    if (csv.empty() || csv == "all") {
        return {ssimrl::AblationMode::SsimOnly, ssimrl::AblationMode::FuzzyOnly,
                ssimrl::AblationMode::RlOnly, ssimrl::AblationMode::Full};
    }
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) modes.push_back(ssimrl::ablation_mode_from_string(item));
    return modes;
}

void print_report_table(const std::vector<ssimrl::EvalReport>& reports) {
    std::printf("%-11s %9s %8s %10s\n", "mode", "accuracy", "n_test", "uncertain");
    for (const auto& report : reports) {
        if (report.accuracy)
            std::printf("%-11s %9.4f %8zu %10zu\n", ssimrl::to_string(report.mode).c_str(),
                        *report.accuracy, report.n_test, report.uncertain_count);
        else
            std::printf("%-11s %9s %8zu %10zu\n", ssimrl::to_string(report.mode).c_str(), "n/a",
                        report.n_test, report.uncertain_count);
    }
}

int cmd_evaluate(const CommonOpts& opts, const std::string& model_path, const std::string& modes_csv) {
    const ssimrl::RunConfig cfg = load_effective_config(opts);
    const ssimrl::Model model = ssimrl::load_model(model_path);
    const ssimrl::DatasetSplit split = load_split(cfg);
    const auto modes = parse_modes(modes_csv);

    std::vector<ssimrl::EvalReport> reports;
    fs::create_directories(cfg.output_dir);
    for (const auto mode : modes) {
        ssimrl::EvalReport report = ssimrl::evaluate(mode, split, model, cfg, opts.threads);
        const std::string stem = "report_" + ssimrl::to_string(mode);
        ssimrl::write_report_json(report, fs::path(cfg.output_dir) / (stem + ".json"));
        ssimrl::write_confusion_csv(report,
                                    fs::path(cfg.output_dir) / ("confusion_" + ssimrl::to_string(mode) + ".csv"));
        reports.push_back(std::move(report));
    }
    ssimrl::write_summary_csv(reports, fs::path(cfg.output_dir) / "summary.csv");
    print_report_table(reports);
    return 0;
}

int cmd_report(const std::vector<std::string>& paths, bool show_confusion) {
    std::vector<ssimrl::EvalReport> reports;
    for (const auto& path : paths) reports.push_back(ssimrl::read_report_json(path));
    print_report_table(reports);
    if (show_confusion) {
        for (const auto& report : reports) {
            std::printf("\nconfusion (%s), rows = true digit:\n",
                        ssimrl::to_string(report.mode).c_str());
            for (int d = 0; d < 10; ++d) {
                for (int p = 0; p < 10; ++p) std::printf("%5zu", report.confusion[d][p]);
                std::printf("\n");
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSIM exemplar-selection digit recognizer"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string model_path;
    std::string image_path;
    std::string modes_csv = "all";
    std::string classify_mode = "full";
    std::vector<std::string> report_paths;
    bool show_confusion = false;

    auto* train = app.add_subcommand("train", "select exemplars and write model.json");
    train->add_option("--config", opts.config_path, "run configuration JSON")->required();
    train->add_option("--seed", opts.seed_override, "override the config seed");
    train->add_option("--threads", opts.threads, "worker thread count");

    auto* classify = app.add_subcommand("classify", "classify one PGM image");
    classify->add_option("--model", model_path, "model.json from a train run")->required();
    classify->add_option("image", image_path, "28x28 binary PGM")->required();
    classify->add_option("--mode", classify_mode, "ablation mode (default full)");

    auto* evaluate = app.add_subcommand("evaluate", "run the ablation harness on the test split");
    evaluate->add_option("--model", model_path, "model.json from a train run")->required();
    evaluate->add_option("--config", opts.config_path, "run configuration JSON")->required();
    evaluate->add_option("--modes", modes_csv, "csv of modes, or 'all'");
    evaluate->add_option("--seed", opts.seed_override, "override the config seed");
    evaluate->add_option("--threads", opts.threads, "worker thread count");

    auto* report = app.add_subcommand("report", "pretty-print stored report JSON files");
    report->add_option("reports", report_paths, "report JSON files")->required();
    report->add_flag("--confusion", show_confusion, "also print confusion matrices");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(opts);
        if (classify->parsed()) return cmd_classify(model_path, image_path, classify_mode);
        if (evaluate->parsed()) return cmd_evaluate(opts, model_path, modes_csv);
        if (report->parsed()) return cmd_report(report_paths, show_confusion);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
