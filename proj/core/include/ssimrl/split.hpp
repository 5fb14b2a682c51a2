#pragma once

#include "ssimrl/image.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ssimrl {

/// splitmix64 stream. Chosen over std::mt19937 so that shuffles are
/// bit-identical across standard library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) via Lemire's multiply-shift.
    std::uint64_t bounded(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Derive an independent substream, used for per-digit shuffles.
    SplitMix64 split(std::uint64_t stream) const {
        SplitMix64 mixer(state_ ^ (0xa0761d6478bd642fULL * (stream + 1)));
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

struct DatasetSplit {
    std::array<std::vector<LabeledImage>, 10> train;
    std::array<std::vector<LabeledImage>, 10> test;
    std::uint64_t seed = 0;
};

/// Deterministic per-digit split: Fisher-Yates shuffle with a per-digit
/// substream of `seed`, cap to `per_digit_cap` samples, then the first
/// floor(ratio * n) go to train and the rest to test.
DatasetSplit split_dataset(const std::vector<LabeledImage>& images, double ratio,
                           std::size_t per_digit_cap, std::uint64_t seed);

} // namespace ssimrl
