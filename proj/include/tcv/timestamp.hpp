#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tcv {

// Minute-resolution instant, stored as minutes since 1970-01-01 00:00.
// The textual form is "YYYY-MM-DD HH:MM" everywhere (files, reports).
struct Timestamp {
    std::int64_t minutes = 0;

    auto operator<=>(const Timestamp&) const = default;
};

// Parses "YYYY-MM-DD HH:MM". Throws InputError on any deviation
// (wrong length, non-digits, out-of-range fields, bad leap days).
Timestamp parse_timestamp(std::string_view text);

std::string format_timestamp(Timestamp t);

}  // namespace tcv
