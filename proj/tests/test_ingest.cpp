#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <string>

#include "helpers.hpp"
#include "prc/errors.hpp"
#include "prc/ingest.hpp"

using namespace prc;
using test_helpers::TempDir;
using test_helpers::write_text;

namespace {

const std::string kTwoRows = "t\tVoltage\n0.0\t1.0\n1.0\t2.0\n";

void expect_code(Errc code, const std::function<void()>& fn) {
    try {
        fn();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == code);
    }
}

}  // namespace

TEST_CASE("discovery sorts numerically, not lexically") {
    TempDir tmp;
    write_text(tmp.path() / "scan10.txt", kTwoRows);
    write_text(tmp.path() / "scan1.txt", kTwoRows);
    write_text(tmp.path() / "scan2.txt", kTwoRows);
    const auto files = discover_files(tmp.path(), "scan");
    REQUIRE(files.size() == 3);
    CHECK(files[0].second == 1);
    CHECK(files[1].second == 2);
    CHECK(files[2].second == 10);
    CHECK(files[2].first.filename() == "scan10.txt");
}

TEST_CASE("discovery filters on the prefix") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", kTwoRows);
    write_text(tmp.path() / "run1.txt", kTwoRows);
    const auto files = discover_files(tmp.path(), "scan");
    REQUIRE(files.size() == 1);
    CHECK(files[0].first.filename() == "scan1.txt");
}

TEST_CASE("discovery scales to 500 scans") {
    TempDir tmp;
    for (int i = 1; i <= 500; ++i) {
        write_text(tmp.path() / ("scan" + std::to_string(i) + ".txt"), "");
    }
    const auto files = discover_files(tmp.path(), "scan");
    REQUIRE(files.size() == 500);
    CHECK(files.front().second == 1);
    CHECK(files.back().second == 500);
}

TEST_CASE("discovery error paths") {
    TempDir tmp;
    expect_code(Errc::empty_directory, [&] { discover_files(tmp.path(), "scan"); });

    write_text(tmp.path() / "scan1.txt", kTwoRows);
    write_text(tmp.path() / "scan01.dat", kTwoRows);
    expect_code(Errc::ambiguous_index, [&] { discover_files(tmp.path(), "scan"); });

    TempDir tmp2;
    write_text(tmp2.path() / "scanX.txt", kTwoRows);
    expect_code(Errc::no_index, [&] { discover_files(tmp2.path(), "scan"); });
}

TEST_CASE("parse reads the named columns") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", "t\tVoltage\n0.0\t1.787651\n0.1\t1.826460\n");
    const auto rec = parse_scan_file(tmp.path() / "scan1.txt", "t", "Voltage", "\t");
    CHECK(rec.xs == std::vector<double>{0.0, 0.1});
    CHECK(rec.readouts == std::vector<double>{1.787651, 1.826460});
}

TEST_CASE("parse supports comma delimiters and extra columns") {
    TempDir tmp;
    write_text(tmp.path() / "s.txt", "Frequency,Spectra,junk\n1.0,-3.5e-2,9\n2.0,4.0,9\n");
    const auto rec = parse_scan_file(tmp.path() / "s.txt", "Frequency", "Spectra", ",");
    CHECK(rec.xs == std::vector<double>{1.0, 2.0});
    CHECK(rec.readouts == std::vector<double>{-3.5e-2, 4.0});
}

TEST_CASE("parse reports malformed rows with 1-based line numbers") {
    TempDir tmp;
    write_text(tmp.path() / "s.txt", "t\tVoltage\n0\t1.0\n1\t2.0\n2\tabc\n3\t4.0\n");
    try {
        parse_scan_file(tmp.path() / "s.txt", "t", "Voltage", "\t");
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::malformed_row);
        const std::string msg = e.what();
        CHECK(msg.find("s.txt:4") != std::string::npos);
    }
}

TEST_CASE("parse error paths") {
    TempDir tmp;
    write_text(tmp.path() / "cols.txt", "a\tb\n1\t2\n3\t4\n");
    expect_code(Errc::missing_column,
                [&] { parse_scan_file(tmp.path() / "cols.txt", "t", "b", "\t"); });

    write_text(tmp.path() / "short.txt", "t\tV\n1\t2\n");
    expect_code(Errc::malformed_row, [&] { parse_scan_file(tmp.path() / "short.txt", "t", "V", "\t"); });

    write_text(tmp.path() / "fields.txt", "t\tV\n1\t2\n3\n");
    expect_code(Errc::malformed_row,
                [&] { parse_scan_file(tmp.path() / "fields.txt", "t", "V", "\t"); });

    write_text(tmp.path() / "mono.txt", "t\tV\n1\t2\n1\t3\n");
    expect_code(Errc::non_monotonic_xs,
                [&] { parse_scan_file(tmp.path() / "mono.txt", "t", "V", "\t"); });
}

TEST_CASE("parse tolerates CRLF and blank trailing lines") {
    TempDir tmp;
    write_text(tmp.path() / "s.txt", "t\tV\r\n0\t1\r\n1\t2\r\n\r\n\n");
    const auto rec = parse_scan_file(tmp.path() / "s.txt", "t", "V", "\t");
    CHECK(rec.xs == std::vector<double>{0.0, 1.0});
}

TEST_CASE("load_scan_set assembles and cross-checks") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", "t\tV\n0\t1\n1\t2\n");
    write_text(tmp.path() / "scan2.txt", "t\tV\n0\t3\n1\t4\n");
    write_text(tmp.path() / "scan3.txt", "t\tV\n0\t5\n1\t6\n");
    const auto set = load_scan_set(tmp.path(), "scan", "t", "V", "\t");
    REQUIRE(set.records.size() == 3);
    CHECK_FALSE(set.background.has_value());
    CHECK(set.records[0].scan_index == 1);
    CHECK(set.records[2].readouts == std::vector<double>{5.0, 6.0});
}

TEST_CASE("background is parsed and excluded from records") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", "t\tV\n0\t1\n1\t2\n");
    write_text(tmp.path() / "scan2.txt", "t\tV\n0\t3\n1\t4\n");
    // Background whose name also matches the scan prefix.
    write_text(tmp.path() / "scan99_bg.txt", "t\tV\n0\t0.5\n1\t0.5\n");
    const auto set = load_scan_set(tmp.path(), "scan", "t", "V", "\t", "scan99_bg.txt");
    REQUIRE(set.records.size() == 2);
    REQUIRE(set.background.has_value());
    CHECK(set.background->readouts == std::vector<double>{0.5, 0.5});
}

TEST_CASE("mismatched x-axes are rejected") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", "t\tV\n0\t1\n1\t2\n");
    write_text(tmp.path() / "scan2.txt", "t\tV\n0.5\t3\n1.5\t4\n");
    expect_code(Errc::xs_mismatch, [&] { load_scan_set(tmp.path(), "scan", "t", "V", "\t"); });
}

TEST_CASE("missing background file is an error") {
    TempDir tmp;
    write_text(tmp.path() / "scan1.txt", "t\tV\n0\t1\n1\t2\n");
    expect_code(Errc::io_error,
                [&] { load_scan_set(tmp.path(), "scan", "t", "V", "\t", "bg.txt"); });
}

TEST_CASE("loading is deterministic") {
    TempDir tmp;
    for (int i : {7, 3, 11, 1, 9}) {
        write_text(tmp.path() / ("scan" + std::to_string(i) + ".txt"),
                   "t\tV\n0\t" + std::to_string(i) + "\n1\t" + std::to_string(i + 1) + "\n");
    }
    const auto a = load_scan_set(tmp.path(), "scan", "t", "V", "\t");
    const auto b = load_scan_set(tmp.path(), "scan", "t", "V", "\t");
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].scan_index == b.records[i].scan_index);
        CHECK(a.records[i].readouts == b.records[i].readouts);
        if (i > 0) CHECK(a.records[i].scan_index > a.records[i - 1].scan_index);
    }
}

TEST_CASE("writer and parser round-trip bit-exactly") {
    TempDir tmp;
    std::mt19937 rng(2024);
    std::vector<double> xs, readouts;
    double x = -5.0;
    for (int i = 0; i < 200; ++i) {
        x += test_helpers::uniform01(rng) + 1e-9;
        xs.push_back(x);
        readouts.push_back(test_helpers::uniform_in(rng, -1e6, 1e6) / 3.0);
    }
    readouts[0] = 1.0 / 3.0;
    readouts[1] = 2.5e-300;
    const auto path = tmp.path() / "scan1.txt";
    write_scan_file(path, xs, readouts, "t", "Voltage", "\t");
    const auto rec = parse_scan_file(path, "t", "Voltage", "\t");
    CHECK(rec.xs == xs);
    CHECK(rec.readouts == readouts);
}
