// table_cache.cpp

#include "spinbath/table_cache.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace spinbath::cache {

namespace {

constexpr char magic[4] = {'S', 'B', 'L', 'T'};
constexpr std::uint32_t format_version = 1;

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}

void put_f64(std::vector<unsigned char>& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(buf, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
}

double get_f64(const unsigned char* p) {
    const std::uint64_t bits = get_u64(p);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t size) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= data[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string key_string(double omega, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "w%.12g_tol%.12g", omega, tol);
    return buf;
}

} // namespace

std::filesystem::path table_path(const std::filesystem::path& dir,
                                 double omega, double tol) {
    return dir / ("lambda_" + key_string(omega, tol) + ".sblt");
}

void save_table(const LambdaTable& table, const std::filesystem::path& path) {
    std::vector<unsigned char> buf;
    buf.reserve(40 + 8 * table.entries.size() + 8);
    buf.insert(buf.end(), magic, magic + 4);
    put_u32(buf, format_version);
    put_f64(buf, table.omega);
    put_f64(buf, table.tol);
    put_u64(buf, table.entries.size());
    put_f64(buf, table.cumulative_mass);
    for (double e : table.entries) put_f64(buf, e);
    put_u64(buf, fnv1a(buf.data(), buf.size()));

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::filesystem::filesystem_error(
                "cannot open cache file for writing", tmp,
                std::make_error_code(std::errc::io_error));
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
        if (!out) {
            throw std::filesystem::filesystem_error(
                "short write to cache file", tmp,
                std::make_error_code(std::errc::io_error));
        }
    }
    std::filesystem::rename(tmp, path);
}

std::optional<LambdaTable> load_table(const std::filesystem::path& path,
                                      double omega, double tol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<unsigned char> buf(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 40 + 8) return std::nullopt;
    if (std::memcmp(buf.data(), magic, 4) != 0) return std::nullopt;
    if (get_u32(buf.data() + 4) != format_version) return std::nullopt;

    const std::uint64_t stored_sum = get_u64(buf.data() + buf.size() - 8);
    if (fnv1a(buf.data(), buf.size() - 8) != stored_sum) return std::nullopt;

    LambdaTable table;
    table.omega = get_f64(buf.data() + 8);
    table.tol = get_f64(buf.data() + 16);
    const std::uint64_t count = get_u64(buf.data() + 24);
    table.cumulative_mass = get_f64(buf.data() + 32);
    if (buf.size() != 40 + 8 * count + 8) return std::nullopt;
    if (key_string(table.omega, table.tol) != key_string(omega, tol)) {
        return std::nullopt;
    }
    table.entries.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        table.entries[i] = get_f64(buf.data() + 40 + 8 * i);
    }
    return table;
}

CachedTable cache_lambda(double omega, double tol,
                         const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    CachedTable result;
    result.path = table_path(dir, omega, tol);
    const bool existed = std::filesystem::exists(result.path);
    if (auto table = load_table(result.path, omega, tol)) {
        result.table = std::move(*table);
        result.hit = true;
        return result;
    }
    result.rebuilt_corrupt = existed;
    result.table = build_lambda_table(omega, tol);
    save_table(result.table, result.path);
    return result;
}

} // namespace spinbath::cache
