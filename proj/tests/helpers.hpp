#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hammerstein/spaces.hpp"

namespace test_helpers {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline hammerstein::GridVector random_vector(std::mt19937_64& rng, std::size_t dim,
                                             double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> unif(lo, hi);
    std::vector<double> c(dim);
    for (auto& ci : c) ci = unif(rng);
    return hammerstein::GridVector(std::move(c));
}

/// Self-cleaning scratch directory for CLI output tests.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("hammerstein_test_" + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

inline std::vector<std::string> split_csv_row(const std::string& row) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(row);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!row.empty() && row.back() == ',') cells.push_back("");
    return cells;
}

} // namespace test_helpers
