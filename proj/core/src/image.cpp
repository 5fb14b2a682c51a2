#include "ssimrl/image.hpp"

#include "ssimrl/errors.hpp"

#include <cctype>
#include <fstream>
#include <string>

namespace ssimrl {
namespace {

// Reads one whitespace-delimited token, skipping '#' comment lines as the
// PNM grammar allows between header fields.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            // skip
        } else {
            break;
        }
        c = in.get();
    }
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

int parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("PGM: bad ") + what + " field '" + tok + "'");
    }
}

} // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open PGM file: " + path.string());

    std::string magic = next_token(in);
    if (magic != "P5") throw FormatError("PGM: expected P5 magic, got '" + magic + "' in " + path.string());

    int width = parse_int(next_token(in), "width");
    int height = parse_int(next_token(in), "height");
    int maxval = parse_int(next_token(in), "maxval");
    if (maxval != 255)
        throw FormatError("PGM: maxval must be 255, got " + std::to_string(maxval) + " in " + path.string());
    if (width != 28 || height != 28)
        throw FormatError("PGM: expected 28x28, got " + std::to_string(width) + "x" +
                          std::to_string(height) + " in " + path.string());
    // The single whitespace byte after maxval was consumed by next_token.

    GrayImage img(width, height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw FormatError("PGM: truncated pixel payload in " + path.string());
    return img;
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write PGM file: " + path.string());
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw FormatError("PGM: write failed for " + path.string());
}

} // namespace ssimrl
