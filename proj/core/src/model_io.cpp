#include "ssimrl/model_io.hpp"

#include "ssimrl/errors.hpp"
#include "ssimrl/image.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace ssimrl {
namespace {

using nlohmann::json;

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

} // namespace

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back(kB64Alphabet[v & 63]);
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const std::uint32_t v = bytes[i] << 16;
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0) throw FormatError("base64: length not a multiple of 4");
    static const auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=') {
                if (i + 4 != text.size() || k < 2) throw FormatError("base64: misplaced padding");
                vals[k] = 0;
                ++pad;
            } else {
                if (pad > 0) throw FormatError("base64: data after padding");
                vals[k] = value_of(c);
                if (vals[k] < 0) throw FormatError(std::string("base64: bad character '") + c + "'");
            }
        }
        const std::uint32_t v = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
        out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
    return out;
}

Model build_model(std::array<ExemplarPool, 10> pools, TemplateSet templates, RunConfig cfg) {
    Model model;
    model.pools = std::move(pools);
    model.font_names = std::move(templates.names);
    model.fingerprint = config_fingerprint(cfg);
    model.config = std::move(cfg);
    for (int digit = 0; digit < 10; ++digit) {
        if (!model.pools[digit].selected.empty())
            model.tables[digit] = build_weight_table(model.pools[digit]);
        model.tables[digit].digit = digit;
    }
    return model;
}

void save_model(const Model& model, const std::filesystem::path& path) {
    json digits = json::array();
    for (int digit = 0; digit < 10; ++digit) {
        const auto& pool = model.pools[digit];
        const auto& table = model.tables[digit];
        json exemplars = json::array();
        for (const auto& ex : pool.selected) {
            exemplars.push_back(json{{"source_index", ex.source_index},
                                     {"round", ex.round},
                                     {"font_similarity", ex.font_similarity},
                                     {"pixels", base64_encode(ex.image.pixels)}});
        }
        digits.push_back(json{{"digit", digit},
                              {"fonts", model.font_names[digit]},
                              {"exemplars", std::move(exemplars)},
                              {"weight_table",
                               json{{"digit", table.digit},
                                    {"sim_min", table.sim_min},
                                    {"sim_max", table.sim_max},
                                    {"weights", table.weights}}}});
    }
    const json doc{{"fingerprint", model.fingerprint},
                   {"config", json::parse(serialize_config(model.config))},
                   {"digits", std::move(digits)}};

    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write model file: " + path.string());
    out << doc.dump(2) << "\n";
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("model file is not valid JSON: " + std::string(e.what()));
    }

    Model model;
    try {
        model.fingerprint = doc.at("fingerprint").get<std::string>();
        model.config = parse_config(doc.at("config").dump());

        const TemplateSet templates = load_templates(model.config.template_dir);

        for (const auto& entry : doc.at("digits")) {
            const int digit = entry.at("digit").get<int>();
            if (digit < 0 || digit > 9) throw FormatError("model: digit out of range");
            auto& pool = model.pools[digit];
            pool.digit = digit;
            model.font_names[digit] = entry.at("fonts").get<std::vector<std::string>>();
            if (model.font_names[digit] != templates.names[digit])
                throw ConfigError("model: template files for digit " + std::to_string(digit) +
                                  " do not match " + model.config.template_dir);
            pool.fonts = templates.images[digit];

            for (const auto& je : entry.at("exemplars")) {
                Exemplar ex;
                ex.digit = digit;
                ex.source_index = je.at("source_index").get<std::size_t>();
                ex.round = je.at("round").get<int>();
                ex.font_similarity = je.at("font_similarity").get<double>();
                auto bytes = base64_decode(je.at("pixels").get<std::string>());
                if (bytes.size() != 784)
                    throw FormatError("model: exemplar pixel payload is not 784 bytes");
                ex.image = GrayImage(28, 28);
                ex.image.pixels = std::move(bytes);
                pool.selected.push_back(std::move(ex));
            }

            const auto& jt = entry.at("weight_table");
            auto& table = model.tables[digit];
            table.digit = digit;
            table.sim_min = jt.at("sim_min").get<double>();
            table.sim_max = jt.at("sim_max").get<double>();
            table.weights = jt.at("weights").get<std::vector<double>>();
            if (table.weights.size() != pool.selected.size())
                throw FormatError("model: weight count does not match exemplar count for digit " +
                                  std::to_string(digit));
        }
    } catch (const json::exception& e) {
        throw FormatError("model field error: " + std::string(e.what()));
    }
    return model;
}

} // namespace ssimrl
