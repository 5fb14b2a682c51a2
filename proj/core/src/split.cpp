#include "ssimrl/split.hpp"

#include "ssimrl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ssimrl {

DatasetSplit split_dataset(const std::vector<LabeledImage>& images, double ratio,
                           std::size_t per_digit_cap, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw RangeError("split ratio must be in (0,1), got " + std::to_string(ratio));
    if (per_digit_cap < 1) throw RangeError("per_digit_cap must be >= 1");

    std::array<std::vector<LabeledImage>, 10> by_digit;
    for (const auto& sample : images) by_digit[sample.label].push_back(sample);

    DatasetSplit split;
    split.seed = seed;
    SplitMix64 root(seed);
    for (int digit = 0; digit < 10; ++digit) {
        auto& samples = by_digit[digit];
        if (samples.empty())
            throw EmptyClassError("no samples for digit " + std::to_string(digit));

        SplitMix64 rng = root.split(static_cast<std::uint64_t>(digit));
        for (std::size_t i = samples.size() - 1; i > 0; --i)
            std::swap(samples[i], samples[rng.bounded(i + 1)]);

        std::size_t n = std::min(per_digit_cap, samples.size());
        std::size_t n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n)));
        split.train[digit].assign(samples.begin(), samples.begin() + n_train);
        split.test[digit].assign(samples.begin() + n_train, samples.begin() + n);
    }
    return split;
}

} // namespace ssimrl
