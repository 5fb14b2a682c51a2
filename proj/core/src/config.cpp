#include "ssimrl/config.hpp"

#include "ssimrl/errors.hpp"
#include "ssimrl/image.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace ssimrl {
namespace {

using nlohmann::json;

std::string mode_name(SsimMode mode) {
    return mode == SsimMode::Global ? "global" : "windowed";
}

SsimMode mode_from_name(const std::string& name) {
    if (name == "global") return SsimMode::Global;
    if (name == "windowed") return SsimMode::Windowed;
    throw ConfigError("unknown ssim mode '" + name + "'");
}

json ssim_to_json(const SsimParams& p) {
    return json{{"dynamic_range", p.dynamic_range}, {"k1", p.k1},
                {"k2", p.k2},                       {"mode", mode_name(p.mode)},
                {"window_radius", p.window_radius}, {"window_sigma", p.window_sigma}};
}

SsimParams ssim_from_json(const json& j) {
    SsimParams p;
    p.dynamic_range = j.at("dynamic_range").get<double>();
    p.k1 = j.at("k1").get<double>();
    p.k2 = j.at("k2").get<double>();
    p.mode = mode_from_name(j.at("mode").get<std::string>());
    p.window_radius = j.at("window_radius").get<int>();
    p.window_sigma = j.at("window_sigma").get<double>();
    return p;
}

json config_to_json(const RunConfig& cfg) {
    return json{{"images", cfg.images},
                {"labels", cfg.labels},
                {"template_dir", cfg.template_dir},
                {"split_ratio", cfg.split_ratio},
                {"per_digit_cap", cfg.per_digit_cap},
                {"seed", cfg.seed},
                {"selection",
                 json{{"threshold", cfg.selection.threshold},
                      {"rounds", cfg.selection.rounds},
                      {"ssim", ssim_to_json(cfg.selection.ssim)}}},
                {"gamma", cfg.gamma},
                {"margin_threshold", cfg.margin_threshold},
                {"aggregate", cfg.aggregate == Aggregate::Max ? "max" : "mean"},
                {"baseline_train_cap", cfg.baseline_train_cap},
                {"output_dir", cfg.output_dir}};
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    cfg.images = j.at("images").get<std::string>();
    cfg.labels = j.at("labels").get<std::string>();
    cfg.template_dir = j.at("template_dir").get<std::string>();
    cfg.split_ratio = j.at("split_ratio").get<double>();
    cfg.per_digit_cap = j.at("per_digit_cap").get<std::size_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    const json& sel = j.at("selection");
    cfg.selection.threshold = sel.at("threshold").get<double>();
    cfg.selection.rounds = sel.at("rounds").get<int>();
    cfg.selection.ssim = ssim_from_json(sel.at("ssim"));
    cfg.gamma = j.at("gamma").get<double>();
    cfg.margin_threshold = j.at("margin_threshold").get<double>();
    const std::string agg = j.at("aggregate").get<std::string>();
    if (agg == "mean") cfg.aggregate = Aggregate::Mean;
    else if (agg == "max") cfg.aggregate = Aggregate::Max;
    else throw ConfigError("unknown aggregate '" + agg + "'");
    cfg.baseline_train_cap = j.at("baseline_train_cap").get<std::size_t>();
    cfg.output_dir = j.at("output_dir").get<std::string>();
    return cfg;
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    // nlohmann::json orders keys, so this form is canonical.
    return config_to_json(cfg).dump(2);
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

void save_config(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path.string());
    out << serialize_config(cfg) << "\n";
}

std::string config_fingerprint(const RunConfig& cfg) {
    const std::string canon = serialize_config(cfg);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

TemplateSet load_templates(const std::filesystem::path& template_dir) {
    TemplateSet set;
    for (int digit = 0; digit < 10; ++digit) {
        const std::filesystem::path dir = template_dir / std::to_string(digit);
        if (!std::filesystem::is_directory(dir))
            throw ConfigError("missing template directory " + dir.string());
        std::vector<std::string> names;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        if (names.empty()) throw ConfigError("no .pgm templates in " + dir.string());
        for (const auto& name : names) {
            set.images[digit].push_back(load_pgm(dir / name));
            set.names[digit].push_back(name);
        }
    }
    return set;
}

} // namespace ssimrl
