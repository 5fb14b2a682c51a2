#include "doctest.h"

#include "ssimrl/errors.hpp"
#include "ssimrl/eval.hpp"
#include "ssimrl/idx.hpp"
#include "ssimrl/image.hpp"
#include "ssimrl/model_io.hpp"
#include "ssimrl/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ssimrl;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "ssimrl_model_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_template_dir() {
    const fs::path dir = temp_dir() / "templates";
    const auto fonts = make_font_templates();
    for (int digit = 0; digit < 10; ++digit) {
        const fs::path sub = dir / std::to_string(digit);
        fs::create_directories(sub);
        for (std::size_t i = 0; i < fonts[digit].size(); ++i)
            save_pgm(fonts[digit][i], sub / ("font_" + std::to_string(i) + ".pgm"));
    }
    return dir;
}

struct Fixture {
    RunConfig cfg;
    DatasetSplit split;
    Model model;
};

// One small trained model shared by the eval tests; training it once keeps
// the suite fast.
const Fixture& fixture() {
    static const Fixture fx = [] {
        Fixture f;
        f.cfg.images = "unused.idx";
        f.cfg.labels = "unused.idx";
        f.cfg.template_dir = write_template_dir().string();
        f.cfg.seed = 5;
        f.cfg.baseline_train_cap = 6;

        const auto data = make_handwritten_samples(8, 5, HandwritingKnobs{});
        f.split = split_dataset(zip_dataset(data.images, data.labels), f.cfg.split_ratio,
                                f.cfg.per_digit_cap, f.cfg.seed);

        const TemplateSet templates = load_templates(f.cfg.template_dir);
        auto pools = train_all(f.split, templates.images, f.cfg.selection, 4);
        f.model = build_model(std::move(pools), templates, f.cfg);
        return f;
    }();
    return fx;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("run config serializes and parses losslessly") {
    RunConfig cfg;
    cfg.images = "imgs.idx";
    cfg.labels = "lbls.idx";
    cfg.template_dir = "tpl";
    cfg.split_ratio = 0.7;
    cfg.per_digit_cap = 250;
    cfg.seed = 99;
    cfg.selection.threshold = 0.42;
    cfg.selection.rounds = 4;
    cfg.selection.ssim.window_radius = 4;
    cfg.gamma = 0.9;
    cfg.margin_threshold = 0.02;
    cfg.aggregate = Aggregate::Max;
    cfg.baseline_train_cap = 30;
    cfg.output_dir = "out";

    CHECK(parse_config(serialize_config(cfg)) == cfg);

    const fs::path path = temp_dir() / "config.json";
    save_config(cfg, path);
    CHECK(load_config(path) == cfg);
}

TEST_CASE("config fingerprint is stable and sensitive") {
    RunConfig a;
    RunConfig b;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    CHECK(config_fingerprint(a).size() == 16);
    CHECK(config_fingerprint(a) == config_fingerprint(parse_config(serialize_config(a))));

    b.seed = 1;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    b = a;
    b.aggregate = Aggregate::Max;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    b = a;
    b.selection.threshold = 0.41;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
}

TEST_CASE("bad configs are rejected") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("{}"), ConfigError); // missing fields

    RunConfig cfg;
    std::string text = serialize_config(cfg);
    const auto at = text.find("\"mean\"");
    REQUIRE(at != std::string::npos);
    text.replace(at, 6, "\"median\"");
    CHECK_THROWS_AS(parse_config(text), ConfigError);

    CHECK_THROWS_AS(load_config(temp_dir() / "missing.json"), ConfigError);
}

TEST_CASE("template loading is per digit, sorted, and validated") {
    const fs::path dir = write_template_dir();
    const TemplateSet set = load_templates(dir);
    for (int digit = 0; digit < 10; ++digit) {
        CHECK(set.images[digit].size() == 10);
        REQUIRE(set.names[digit].size() == 10);
        CHECK(set.names[digit].front() == "font_0.pgm");
        CHECK(std::is_sorted(set.names[digit].begin(), set.names[digit].end()));
    }
    CHECK_THROWS_AS(load_templates(temp_dir() / "no_such_dir"), ConfigError);

    // A template dir with an empty digit folder is incomplete.
    const fs::path partial = temp_dir() / "partial_templates";
    for (int digit = 0; digit < 10; ++digit) fs::create_directories(partial / std::to_string(digit));
    CHECK_THROWS_AS(load_templates(partial), ConfigError);
}

TEST_CASE("model save/load round-trips bit-exactly") {
    const Fixture& fx = fixture();
    const fs::path path = temp_dir() / "model.json";
    save_model(fx.model, path);
    const Model loaded = load_model(path);

    CHECK(loaded.fingerprint == fx.model.fingerprint);
    CHECK(loaded.config == fx.model.config);
    for (int digit = 0; digit < 10; ++digit) {
        CHECK(loaded.font_names[digit] == fx.model.font_names[digit]);
        CHECK(loaded.pools[digit].fonts == fx.model.pools[digit].fonts);
        REQUIRE(loaded.pools[digit].selected.size() == fx.model.pools[digit].selected.size());
        for (std::size_t i = 0; i < loaded.pools[digit].selected.size(); ++i) {
            const Exemplar& a = loaded.pools[digit].selected[i];
            const Exemplar& b = fx.model.pools[digit].selected[i];
            CHECK(a.image == b.image); // base64 pixel round-trip, bit-exact
            CHECK(a.source_index == b.source_index);
            CHECK(a.round == b.round);
            CHECK(a.font_similarity == b.font_similarity);
        }
        CHECK(loaded.tables[digit] == fx.model.tables[digit]);
    }

    // A second save of the reloaded model reproduces the file byte for byte.
    const fs::path path2 = temp_dir() / "model2.json";
    save_model(loaded, path2);
    CHECK(read_file(path2) == read_file(path));
}

TEST_CASE("evaluate refuses a model trained under a different config") {
    const Fixture& fx = fixture();
    RunConfig other = fx.cfg;
    other.seed += 1;
    CHECK_THROWS_AS(evaluate(AblationMode::Full, fx.split, fx.model, other), StaleModelError);
}

TEST_CASE("evaluation reports are internally consistent") {
    const Fixture& fx = fixture();
    const EvalReport report = evaluate(AblationMode::Full, fx.split, fx.model, fx.cfg, 4);

    std::size_t n = 0;
    for (int d = 0; d < 10; ++d) n += fx.split.test[d].size();
    CHECK(report.mode == AblationMode::Full);
    CHECK(report.n_test == n);
    CHECK(report.config_fingerprint == fx.model.fingerprint);

    std::size_t total = 0, correct = 0;
    for (int d = 0; d < 10; ++d) {
        std::size_t row = 0;
        for (int p = 0; p < 10; ++p) row += report.confusion[d][p];
        CHECK(row == fx.split.test[d].size());
        total += row;
        correct += report.confusion[d][d];
        REQUIRE(report.per_digit_accuracy[d].has_value());
        CHECK(*report.per_digit_accuracy[d] ==
              doctest::Approx(static_cast<double>(report.confusion[d][d]) / row));
    }
    CHECK(total == n);
    REQUIRE(report.accuracy.has_value());
    CHECK(*report.accuracy == doctest::Approx(static_cast<double>(correct) / total));
    CHECK(report.uncertain_count <= n);
    CHECK(report.wall_time_seconds > 0.0);
}

TEST_CASE("a digit with no test samples reports no per-digit accuracy") {
    const Fixture& fx = fixture();
    DatasetSplit split = fx.split;
    split.test[3].clear();
    const EvalReport report = evaluate(AblationMode::RlOnly, split, fx.model, fx.cfg, 4);
    CHECK_FALSE(report.per_digit_accuracy[3].has_value());
    CHECK(report.per_digit_accuracy[0].has_value());
}

TEST_CASE("compare_modes runs the four ablations in fixed order") {
    const Fixture& fx = fixture();
    const auto reports = compare_modes(fx.split, fx.model, fx.cfg, 4);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].mode == AblationMode::SsimOnly);
    CHECK(reports[1].mode == AblationMode::FuzzyOnly);
    CHECK(reports[2].mode == AblationMode::RlOnly);
    CHECK(reports[3].mode == AblationMode::Full);
    for (const auto& r : reports) CHECK(r.n_test == reports[0].n_test);
}

TEST_CASE("evaluation is deterministic across thread counts") {
    const Fixture& fx = fixture();
    const EvalReport one = evaluate(AblationMode::Full, fx.split, fx.model, fx.cfg, 1);
    const EvalReport eight = evaluate(AblationMode::Full, fx.split, fx.model, fx.cfg, 8);
    CHECK(one.accuracy == eight.accuracy);
    CHECK(one.confusion == eight.confusion);
    CHECK(one.uncertain_count == eight.uncertain_count);
}

TEST_CASE("with gamma 1 and unit weights the full mode collapses onto rl_only") {
    const Fixture& fx = fixture();
    Model flat = fx.model;
    for (auto& table : flat.tables)
        for (auto& w : table.weights) w = 1.0;

    const EvalReport rl = evaluate(AblationMode::RlOnly, fx.split, fx.model, fx.cfg, 4);
    const EvalReport full = evaluate(AblationMode::Full, fx.split, flat, fx.cfg, 4);
    CHECK(full.accuracy == rl.accuracy);
    CHECK(full.confusion == rl.confusion);
    CHECK(full.uncertain_count == rl.uncertain_count);
    CHECK(full.per_digit_accuracy == rl.per_digit_accuracy);
}

TEST_CASE("report JSON round-trips field for field") {
    const Fixture& fx = fixture();
    const EvalReport report = evaluate(AblationMode::FuzzyOnly, fx.split, fx.model, fx.cfg, 4);
    const EvalReport back = report_from_json(report_to_json(report));
    CHECK(back.mode == report.mode);
    CHECK(back.n_test == report.n_test);
    CHECK(back.accuracy == report.accuracy);
    CHECK(back.confusion == report.confusion);
    CHECK(back.uncertain_count == report.uncertain_count);
    CHECK(back.per_digit_accuracy == report.per_digit_accuracy);
    CHECK(back.config_fingerprint == report.config_fingerprint);
    CHECK(back.wall_time_seconds == report.wall_time_seconds);

    const fs::path path = temp_dir() / "report.json";
    write_report_json(report, path);
    CHECK(read_report_json(path).confusion == report.confusion);

    CHECK_THROWS_AS(report_from_json("nope"), FormatError);
    CHECK_THROWS_AS(report_from_json("{}"), FormatError);
}

TEST_CASE("summary and confusion CSVs have the documented shape") {
    const Fixture& fx = fixture();
    const auto reports = compare_modes(fx.split, fx.model, fx.cfg, 4);

    const fs::path summary = temp_dir() / "summary.csv";
    write_summary_csv(reports, summary);
    std::ifstream in(summary);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "mode,accuracy,digit_0,digit_1,digit_2,digit_3,digit_4,digit_5,digit_6,digit_7,digit_8,"
          "digit_9");
    int rows = 0;
    std::string first_mode;
    while (std::getline(in, line)) {
        if (rows == 0) first_mode = line.substr(0, line.find(','));
        ++rows;
    }
    CHECK(rows == 4);
    CHECK(first_mode == "ssim_only");

    const fs::path confusion = temp_dir() / "confusion.csv";
    write_confusion_csv(reports[3], confusion);
    std::ifstream cin_file(confusion);
    REQUIRE(std::getline(cin_file, line));
    CHECK(line == "true\\pred,0,1,2,3,4,5,6,7,8,9");
    rows = 0;
    while (std::getline(cin_file, line)) ++rows;
    CHECK(rows == 10);
}
