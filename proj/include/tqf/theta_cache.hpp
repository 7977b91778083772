#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "tqf/enumerate.hpp"

namespace tqf {

// Cache key; doubles as the file header line:
//   dim n; gram <row-major integers>; upper N
std::string theta_cache_key(const QuadForm& f, i64 upper);

// Full file contents: header line, then "k <count>" per line, LF endings.
std::string theta_file_contents(const ThetaSeries& t);

// Parses file contents; nullopt on malformed input or header mismatch with
// the embedded gram/upper.
std::optional<ThetaSeries> parse_theta_file(const std::string& contents);

// Theta series store. In-memory map with insert-if-absent semantics, safe
// for concurrent use; optionally backed by a directory of one file per key.
class ThetaCache {
public:
    ThetaCache() = default;
    explicit ThetaCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    // Returns the cached series, loading or computing (and persisting) on miss.
    ThetaSeries get(const QuadForm& f, i64 upper, EnumBudget* budget = nullptr);

private:
    std::optional<std::filesystem::path> dir_;
    std::mutex mu_;
    std::map<std::string, ThetaSeries> mem_;

    std::filesystem::path file_for(const std::string& key) const;
};

}  // namespace tqf
