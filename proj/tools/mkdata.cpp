// Generates a synthetic desk-scale dataset: template PGMs plus IDX files,
// laid out so a config can point straight at them.

#include "ssimrl/idx.hpp"
#include "ssimrl/image.hpp"
#include "ssimrl/synthetic.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"synthetic digit dataset generator"};
    std::string out_dir = "data";
    int per_digit = 150;
    std::uint64_t seed = 1;
    double sloppy = 0.25;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--per-digit", per_digit, "samples per digit");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--sloppy", sloppy, "fraction of heavily distorted samples");
    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path root(out_dir);
        for (int digit = 0; digit < 10; ++digit)
            fs::create_directories(root / "templates" / std::to_string(digit));

        const auto fonts = ssimrl::make_font_templates();
        for (int digit = 0; digit < 10; ++digit)
            for (std::size_t f = 0; f < fonts[digit].size(); ++f)
                ssimrl::save_pgm(fonts[digit][f], root / "templates" / std::to_string(digit) /
                                                      (std::to_string(f) + ".pgm"));

        const auto data = ssimrl::make_handwritten_samples(per_digit, seed, sloppy);
        ssimrl::save_idx_images(data.images, root / "images.idx");
        ssimrl::save_idx_labels(data.labels, root / "labels.idx");
        std::printf("wrote %zu samples and %d x 10 templates under %s\n", data.images.size(), 10,
                    root.c_str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
