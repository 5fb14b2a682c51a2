#pragma once

#include "ssimrl/config.hpp"
#include "ssimrl/fuzzy.hpp"
#include "ssimrl/selection.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace ssimrl {

/// A trained model: the per-digit pools, their weight tables, and the run
/// configuration that produced them (embedded verbatim for fingerprinting).
/// A digit whose training selected nothing carries an empty weight table
/// and classification falls back to its fonts.
struct Model {
    std::array<ExemplarPool, 10> pools;
    std::array<FuzzyWeightTable, 10> tables;
    std::array<std::vector<std::string>, 10> font_names;
    RunConfig config;
    std::string fingerprint;
};

Model build_model(std::array<ExemplarPool, 10> pools, TemplateSet templates, RunConfig cfg);

/// model.json: fingerprint, embedded config, and per digit the font file
/// names, the exemplars {source_index, round, font_similarity, pixels
/// (base64 of the 784 raw bytes)}, and the weight table. Pixel round-trip
/// is bit-exact; fonts are reloaded from the config's template_dir.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

} // namespace ssimrl
