#pragma once

#include "ssimrl/classifier.hpp"
#include "ssimrl/selection.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace ssimrl {

/// Everything a run needs, serializable losslessly to and from JSON.
/// The serialized form is embedded verbatim in model.json and hashed into
/// the config fingerprint that ties models to the runs that made them.
struct RunConfig {
    std::string images;        // IDX image file
    std::string labels;        // IDX label file
    std::string template_dir;  // templates/<digit>/<font_id>.pgm
    double split_ratio = 0.8;
    std::size_t per_digit_cap = 1000;
    std::uint64_t seed = 0;
    SelectionConfig selection;
    double gamma = 1.0;
    double margin_threshold = 0.05;
    Aggregate aggregate = Aggregate::Mean;
    // Per-digit train subsample cap for the ssim_only / fuzzy_only modes
    // (they compare against every training sample); 0 means no cap.
    std::size_t baseline_train_cap = 0;
    std::string output_dir = ".";

    bool operator==(const RunConfig&) const = default;
};

std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& json_text);

RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

/// FNV-1a 64 over the canonical serialized config, rendered as 16 hex
/// digits. Stable across platforms.
std::string config_fingerprint(const RunConfig& cfg);

/// Load the 10 per-digit template lists from `templates/<digit>/*.pgm`,
/// sorted by file name. Also reports the file names for the model record.
struct TemplateSet {
    std::array<std::vector<GrayImage>, 10> images;
    std::array<std::vector<std::string>, 10> names;
};
TemplateSet load_templates(const std::filesystem::path& template_dir);

} // namespace ssimrl
