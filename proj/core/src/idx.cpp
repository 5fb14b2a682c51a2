#include "ssimrl/idx.hpp"

#include "ssimrl/errors.hpp"

#include <cstdint>
#include <fstream>

namespace ssimrl {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803; // 2051
constexpr std::uint32_t kLabelMagic = 0x00000801; // 2049

std::uint32_t read_be32(std::istream& in, const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw TruncationError(std::string("IDX: truncated ") + what);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    char b[4] = {char(v >> 24), char(v >> 16), char(v >> 8), char(v)};
    out.write(b, 4);
}

} // namespace

std::vector<GrayImage> load_idx_images(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open IDX image file: " + path.string());

    if (std::uint32_t magic = read_be32(in, "magic"); magic != kImageMagic)
        throw FormatError("IDX: bad image magic " + std::to_string(magic) + " in " + path.string());
    std::uint32_t count = read_be32(in, "count");
    std::uint32_t rows = read_be32(in, "rows");
    std::uint32_t cols = read_be32(in, "cols");
    if (rows != 28 || cols != 28)
        throw DimensionError("IDX: expected 28x28 records, got " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " in " + path.string());

    std::vector<GrayImage> images;
    images.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        GrayImage img(static_cast<int>(cols), static_cast<int>(rows));
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(img.pixels.size()));
        if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
            throw TruncationError("IDX: truncated image payload at record " + std::to_string(i) +
                                  " in " + path.string());
        images.push_back(std::move(img));
    }
    return images;
}

std::vector<int> load_idx_labels(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open IDX label file: " + path.string());

    if (std::uint32_t magic = read_be32(in, "magic"); magic != kLabelMagic)
        throw FormatError("IDX: bad label magic " + std::to_string(magic) + " in " + path.string());
    std::uint32_t count = read_be32(in, "count");

    std::vector<int> labels;
    labels.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        int c = in.get();
        if (c == EOF) throw TruncationError("IDX: truncated label payload in " + path.string());
        if (c > 9)
            throw LabelRangeError("IDX: label byte " + std::to_string(c) + " out of range at record " +
                                  std::to_string(i) + " in " + path.string());
        labels.push_back(c);
    }
    return labels;
}

void save_idx_images(const std::vector<GrayImage>& images, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write IDX image file: " + path.string());
    write_be32(out, kImageMagic);
    write_be32(out, static_cast<std::uint32_t>(images.size()));
    write_be32(out, 28);
    write_be32(out, 28);
    for (const auto& img : images) {
        if (img.width != 28 || img.height != 28)
            throw DimensionError("IDX: refusing to write non-28x28 image");
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    }
}

void save_idx_labels(const std::vector<int>& labels, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write IDX label file: " + path.string());
    write_be32(out, kLabelMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    for (int l : labels) {
        if (l < 0 || l > 9) throw LabelRangeError("IDX: refusing to write label " + std::to_string(l));
        out.put(static_cast<char>(l));
    }
}

std::vector<LabeledImage> zip_dataset(const std::vector<GrayImage>& images,
                                      const std::vector<int>& labels) {
    if (images.size() != labels.size())
        throw FormatError("dataset: image count " + std::to_string(images.size()) +
                          " != label count " + std::to_string(labels.size()));
    std::vector<LabeledImage> out;
    out.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        out.push_back(LabeledImage{images[i], labels[i], i});
    return out;
}

} // namespace ssimrl
