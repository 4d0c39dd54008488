#pragma once

#include "mcs/losses.hpp"
#include "mcs/matrix.hpp"

#include <span>
#include <string>
#include <vector>

namespace mcs {

struct NamedMatrix {
    Matrix values;
    std::vector<std::string> names;
};

/// Parses a CSV with a mandatory header row and numeric body. Errors cite the
/// offending line and column. Accepts CRLF line endings and surrounding
/// whitespace in cells.
NamedMatrix read_named_matrix(const std::string& path);

/// Single-column CSV (header + values).
std::vector<double> read_series(const std::string& path);

/// Loss matrix from CSV: header row of unique model names, n >= 2 finite rows.
LossMatrix read_loss_csv(const std::string& path);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_full(double v);

void write_named_matrix(const std::string& path, const Matrix& values,
                        const std::vector<std::string>& names);

void write_series(const std::string& path, std::span<const double> values,
                  const std::string& name);

}  // namespace mcs
