#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace auvctl {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

/// Aligned input/output sequences sampled on a uniform grid, as persisted by
/// the data-collection runs (columns t, u0..u{m-1}, y0..y{p-1}).
struct Dataset {
    double h = 0.0;
    Eigen::MatrixXd u; // T x m
    Eigen::MatrixXd y; // T x p

    std::string to_csv() const;
    void write_csv(const std::filesystem::path& file) const;
    static Dataset read_csv(const std::filesystem::path& file);
};

} // namespace auvctl
