#pragma once

#include <iosfwd>
#include <string>

#include "gwloc/integral_cache.hpp"

namespace gwloc::cli {

inline constexpr const char* kCacheHeader = "gwloc-integral-cache 1";

/// Reads a cache file into `cache`. A missing file is silently empty; an
/// unreadable, foreign-version or malformed file is reported on `warn` and
/// contributes nothing. Returns the number of entries loaded.
std::size_t load_cache(const std::string& path, IntegralCache& cache, std::ostream& warn);

/// Merges `cache` with whatever is currently on disk and replaces the file
/// atomically under an advisory lock, so concurrent writers lose nothing.
/// Failures are reported on `warn` and return false.
bool save_cache(const std::string& path, const IntegralCache& cache, std::ostream& warn);

/// Text encoding used by the cache file, one entry per line.
std::string encode_entry(const IntegralKey& key, const Rational& value);
bool decode_entry(const std::string& line, IntegralKey& key, Rational& value);

}  // namespace gwloc::cli
