#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "prc/ingest.hpp"

namespace test_helpers {

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto base = std::filesystem::temp_directory_path();
        path_ = base / ("prckit_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Build an in-memory ScanSet with a shared x-axis 0,1,2,...
inline prc::ScanSet make_scan_set(const std::vector<std::vector<double>>& rows) {
    prc::ScanSet set;
    set.prefix = "scan";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        prc::ScanRecord rec;
        rec.scan_index = static_cast<long>(r) + 1;
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            rec.xs.push_back(static_cast<double>(i));
            rec.readouts.push_back(rows[r][i]);
        }
        set.records.push_back(std::move(rec));
    }
    return set;
}

/// Deterministic uniform draw in [0,1); engine stream only, so values are
/// identical across platforms.
inline double uniform01(std::mt19937& rng) {
    const std::uint64_t hi = rng();
    const std::uint64_t lo = rng();
    return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace test_helpers
