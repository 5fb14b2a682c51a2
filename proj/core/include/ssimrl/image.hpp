#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace ssimrl {

/// Row-major 8-bit grayscale raster. The pipeline only ever handles 28x28,
/// but the type carries its dimensions so the similarity code can check them.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::size_t size() const { return pixels.size(); }

    bool same_shape(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
    bool operator==(const GrayImage&) const = default;
};

struct LabeledImage {
    GrayImage image;
    int label = 0;              // digit in {0..9}
    std::size_t source_index = 0; // index in the originating dataset file
};

/// Read a binary PGM ("P5") file. Requires maxval 255 and 28x28 dimensions.
GrayImage load_pgm(const std::filesystem::path& path);

/// Write a binary PGM file; round-trips bit-exactly with load_pgm.
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

} // namespace ssimrl
