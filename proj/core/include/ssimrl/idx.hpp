#pragma once

#include "ssimrl/image.hpp"

#include <filesystem>
#include <vector>

namespace ssimrl {

/// Load an IDX image container (magic 0x00000803, big-endian header).
/// Every record must be 28x28; pixel bytes are preserved verbatim.
std::vector<GrayImage> load_idx_images(const std::filesystem::path& path);

/// Load an IDX label container (magic 0x00000801). Labels must be in {0..9}.
std::vector<int> load_idx_labels(const std::filesystem::path& path);

// Writers, used by tooling and tests to build datasets.
void save_idx_images(const std::vector<GrayImage>& images, const std::filesystem::path& path);
void save_idx_labels(const std::vector<int>& labels, const std::filesystem::path& path);

/// Zip images with labels into LabeledImage records carrying their index.
std::vector<LabeledImage> zip_dataset(const std::vector<GrayImage>& images,
                                      const std::vector<int>& labels);

} // namespace ssimrl
