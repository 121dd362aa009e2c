#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcv {

inline constexpr const char* kToolVersion = "0.1.0";

// Error taxonomy mirrors the CLI exit codes: config 2, input 3, compute 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad flags, bad config keys, inconsistent option combinations.
struct ConfigError : Error {
    using Error::Error;
};

// Unreadable files, malformed rows, unparseable timestamps.
struct InputError : Error {
    using Error::Error;
};

// Degenerate inputs to the statistics and clustering operations.
struct ComputeError : Error {
    using Error::Error;
};

// FNV-1a, 64-bit. Used for config and input digests in manifests and
// reports; stable across platforms and runs, which is all we need.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace tcv
