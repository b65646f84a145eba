// table_cache.hpp — on-disk cache of lambda tables keyed by (omega, tol).

#pragma once

#include <filesystem>
#include <optional>

#include "spinbath/partition.hpp"

namespace spinbath::cache {

// Cache file name inside `dir`: the key is omega printed to 12 significant
// digits plus the exact tol.
std::filesystem::path table_path(const std::filesystem::path& dir,
                                 double omega, double tol);

// Versioned little-endian binary record: magic, format version, omega, tol,
// entry count, cumulative mass, entries, FNV-1a checksum.  Written to a
// temporary file and renamed into place.
void save_table(const LambdaTable& table, const std::filesystem::path& path);

// nullopt when the file is missing, structurally invalid, fails its
// checksum, or carries a different (omega, tol) key.
std::optional<LambdaTable> load_table(const std::filesystem::path& path,
                                      double omega, double tol);

struct CachedTable {
    LambdaTable table;
    std::filesystem::path path;
    bool hit{false};
    bool rebuilt_corrupt{false}; // file existed but failed validation
};

// Loads the table for (omega, tol) from `dir`, building and storing it on a
// miss.  A corrupt file is rebuilt and overwritten.
CachedTable cache_lambda(double omega, double tol,
                         const std::filesystem::path& dir);

} // namespace spinbath::cache
