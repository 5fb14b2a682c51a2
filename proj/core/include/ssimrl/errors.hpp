#pragma once

#include <stdexcept>
#include <string>

namespace ssimrl {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LabelRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPoolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KeyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StaleModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ssimrl
