#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prc {

/// One parsed measurement file: an independent variable (frequency, time)
/// and the measured readout, as parallel columns.
struct ScanRecord {
    long scan_index = 0;
    std::vector<double> xs;
    std::vector<double> readouts;
};

/// Ordered collection of scans sharing one x-axis, plus an optional
/// background record.
struct ScanSet {
    std::vector<ScanRecord> records;  // sorted by scan_index ascending
    std::optional<ScanRecord> background;
    std::filesystem::path source_dir;
    std::string prefix;
};

/// Every regular file whose basename starts with `prefix`, keyed by the first
/// unsigned-integer run after the prefix, sorted numerically (scan10 after
/// scan9, not after scan1).
std::vector<std::pair<std::filesystem::path, long>> discover_files(
    const std::filesystem::path& dir, const std::string& prefix);

/// Parse the two named columns of a delimited text file. The first non-blank
/// line is the header; extra columns are ignored; header matching is exact
/// after whitespace trimming. Error messages carry the path and the 1-based
/// physical line number.
ScanRecord parse_scan_file(const std::filesystem::path& path, const std::string& xs_col,
                           const std::string& readout_col, const std::string& delimiter);

/// Discover, parse, order and cross-check a whole directory. If bg_fname is
/// given it is parsed as the background and excluded from the records even
/// when its name matches the prefix.
ScanSet load_scan_set(const std::filesystem::path& dir, const std::string& prefix,
                      const std::string& xs_col, const std::string& readout_col,
                      const std::string& delimiter,
                      const std::optional<std::string>& bg_fname = std::nullopt);

/// Bundled writer for the same format; values round-trip bit-exactly through
/// parse_scan_file.
void write_scan_file(const std::filesystem::path& path, const std::vector<double>& xs,
                     const std::vector<double>& readouts, const std::string& xs_col,
                     const std::string& readout_col, const std::string& delimiter);

}  // namespace prc
