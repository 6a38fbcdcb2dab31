#include "prc/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "prc/errors.hpp"
#include "prc/text.hpp"

namespace prc {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, std::string_view delim) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(delim, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + delim.size();
    }
    return out;
}

/// First contiguous digit run after the prefix. nullopt if there is none.
std::optional<long> extract_index(std::string_view name, std::size_t prefix_len) {
    std::string_view rest = name.substr(prefix_len);
    std::size_t begin = 0;
    while (begin < rest.size() && !std::isdigit(static_cast<unsigned char>(rest[begin]))) ++begin;
    if (begin == rest.size()) return std::nullopt;
    std::size_t end = begin;
    while (end < rest.size() && std::isdigit(static_cast<unsigned char>(rest[end]))) ++end;
    long value = 0;
    auto res = std::from_chars(rest.data() + begin, rest.data() + end, value);
    if (res.ec != std::errc()) return std::nullopt;  // digit run overflows long
    return value;
}

std::vector<std::pair<std::filesystem::path, long>> discover_impl(
    const std::filesystem::path& dir, const std::string& prefix,
    const std::optional<std::string>& exclude_name) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw Error(Errc::io_error, "not a readable directory: " + dir.string());
    }
    std::map<long, fs::path> by_index;
    bool any_match = false;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0) continue;
        if (exclude_name && name == *exclude_name) continue;
        any_match = true;
        const auto idx = extract_index(name, prefix.size());
        if (!idx) {
            throw Error(Errc::no_index, "no integer index after prefix '" + prefix + "' in file: " + name);
        }
        auto [it, inserted] = by_index.emplace(*idx, entry.path());
        if (!inserted) {
            throw Error(Errc::ambiguous_index,
                        "files '" + it->second.filename().string() + "' and '" + name +
                            "' both map to scan index " + std::to_string(*idx));
        }
    }
    if (!any_match) {
        throw Error(Errc::empty_directory,
                    "no files matching prefix '" + prefix + "' in " + dir.string());
    }
    std::vector<std::pair<fs::path, long>> out;
    out.reserve(by_index.size());
    for (const auto& [idx, path] : by_index) out.emplace_back(path, idx);
    return out;
}

}  // namespace

std::vector<std::pair<std::filesystem::path, long>> discover_files(
    const std::filesystem::path& dir, const std::string& prefix) {
    return discover_impl(dir, prefix, std::nullopt);
}

ScanRecord parse_scan_file(const std::filesystem::path& path, const std::string& xs_col,
                           const std::string& readout_col, const std::string& delimiter) {
    if (delimiter.empty()) throw Error(Errc::bad_params, "delimiter must be non-empty");
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open: " + path.string());

    const auto at = [&](long line_no) { return path.string() + ":" + std::to_string(line_no); };

    std::string line;
    long line_no = 0;
    // Header = first non-blank line.
    std::size_t xs_idx = 0, readout_idx = 0, n_cols = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split(line, delimiter);
        n_cols = cells.size();
        bool found_xs = false, found_readout = false;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto cell = trim(cells[i]);
            if (!found_xs && cell == xs_col) {
                xs_idx = i;
                found_xs = true;
            }
            if (!found_readout && cell == readout_col) {
                readout_idx = i;
                found_readout = true;
            }
        }
        if (!found_xs) {
            throw Error(Errc::missing_column, "column '" + xs_col + "' not in header of " + at(line_no));
        }
        if (!found_readout) {
            throw Error(Errc::missing_column,
                        "column '" + readout_col + "' not in header of " + at(line_no));
        }
        have_header = true;
        break;
    }
    if (!have_header) throw Error(Errc::malformed_row, "no header line in " + path.string());

    ScanRecord rec;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split(line, delimiter);
        if (cells.size() != n_cols) {
            throw Error(Errc::malformed_row, at(line_no) + ": expected " + std::to_string(n_cols) +
                                                 " fields, got " + std::to_string(cells.size()));
        }
        double x = 0.0, r = 0.0;
        if (!parse_double(trim(cells[xs_idx]), x)) {
            throw Error(Errc::malformed_row,
                        at(line_no) + ": non-numeric '" + xs_col + "' value: '" +
                            std::string(trim(cells[xs_idx])) + "'");
        }
        if (!parse_double(trim(cells[readout_idx]), r)) {
            throw Error(Errc::malformed_row,
                        at(line_no) + ": non-numeric '" + readout_col + "' value: '" +
                            std::string(trim(cells[readout_idx])) + "'");
        }
        rec.xs.push_back(x);
        rec.readouts.push_back(r);
    }
    if (rec.xs.size() < 2) {
        throw Error(Errc::malformed_row,
                    path.string() + ": need at least 2 data rows, got " + std::to_string(rec.xs.size()));
    }
    for (std::size_t i = 1; i < rec.xs.size(); ++i) {
        if (!(rec.xs[i] > rec.xs[i - 1])) {
            throw Error(Errc::non_monotonic_xs,
                        path.string() + ": x-values not strictly increasing at sample " +
                            std::to_string(i));
        }
    }
    return rec;
}

ScanSet load_scan_set(const std::filesystem::path& dir, const std::string& prefix,
                      const std::string& xs_col, const std::string& readout_col,
                      const std::string& delimiter, const std::optional<std::string>& bg_fname) {
    const auto files = discover_impl(dir, prefix, bg_fname);

    ScanSet set;
    set.source_dir = dir;
    set.prefix = prefix;
    set.records.reserve(files.size());
    for (const auto& [path, index] : files) {
        ScanRecord rec = parse_scan_file(path, xs_col, readout_col, delimiter);
        rec.scan_index = index;
        if (!set.records.empty()) {
            const auto& ref = set.records.front().xs;
            if (rec.xs.size() != ref.size()) {
                throw Error(Errc::xs_mismatch,
                            path.filename().string() + ": " + std::to_string(rec.xs.size()) +
                                " samples, expected " + std::to_string(ref.size()));
            }
            for (std::size_t i = 0; i < ref.size(); ++i) {
                if (std::abs(rec.xs[i] - ref[i]) > 1e-12) {
                    throw Error(Errc::xs_mismatch, path.filename().string() +
                                                       ": x-axis differs at sample " +
                                                       std::to_string(i));
                }
            }
        }
        set.records.push_back(std::move(rec));
    }

    if (bg_fname) {
        const auto bg_path = dir / *bg_fname;
        if (!std::filesystem::is_regular_file(bg_path)) {
            throw Error(Errc::io_error, "background file not found: " + bg_path.string());
        }
        ScanRecord bg = parse_scan_file(bg_path, xs_col, readout_col, delimiter);
        const auto& ref = set.records.front().xs;
        if (bg.xs.size() != ref.size()) {
            throw Error(Errc::xs_mismatch, "background x-axis length differs from scans");
        }
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (std::abs(bg.xs[i] - ref[i]) > 1e-12) {
                throw Error(Errc::xs_mismatch,
                            "background x-axis differs at sample " + std::to_string(i));
            }
        }
        set.background = std::move(bg);
    }
    return set;
}

void write_scan_file(const std::filesystem::path& path, const std::vector<double>& xs,
                     const std::vector<double>& readouts, const std::string& xs_col,
                     const std::string& readout_col, const std::string& delimiter) {
    if (xs.size() != readouts.size()) {
        throw Error(Errc::length_mismatch, "write_scan_file: xs and readouts differ in length");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write: " + path.string());
    out << xs_col << delimiter << readout_col << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << format_double(xs[i]) << delimiter << format_double(readouts[i]) << '\n';
    }
    if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

}  // namespace prc
