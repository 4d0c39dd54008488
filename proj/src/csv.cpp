#include "mcs/csv.hpp"

#include "mcs/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace mcs {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(pos)));
            break;
        }
        fields.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t line_no,
                  std::size_t col_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw invalid_input(path + ": non-numeric cell at line " + std::to_string(line_no) +
                            ", column " + std::to_string(col_no));
    }
    return value;
}

}  // namespace

NamedMatrix read_named_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input(path + ": cannot open file");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> names;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        names = split_fields(line);
        break;
    }
    if (names.empty()) throw invalid_input(path + ": missing header row");
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c].empty())
            throw invalid_input(path + ": empty header name in column " + std::to_string(c + 1));
        for (std::size_t other = 0; other < c; ++other) {
            if (names[other] == names[c])
                throw invalid_input(path + ": duplicate header name '" + names[c] + "'");
        }
    }

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != names.size()) {
            throw invalid_input(path + ": ragged row at line " + std::to_string(line_no) +
                                " (expected " + std::to_string(names.size()) + " fields, got " +
                                std::to_string(fields.size()) + ")");
        }
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            row[c] = parse_cell(fields[c], path, line_no, c + 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw invalid_input(path + ": no data rows after the header");

    NamedMatrix out;
    out.values = Matrix::from_rows(rows);
    out.names = std::move(names);
    return out;
}

std::vector<double> read_series(const std::string& path) {
    const NamedMatrix m = read_named_matrix(path);
    if (m.values.cols() != 1)
        throw invalid_input(path + ": expected a single column, got " +
                            std::to_string(m.values.cols()));
    return m.values.col(0);
}

LossMatrix read_loss_csv(const std::string& path) {
    NamedMatrix m = read_named_matrix(path);
    try {
        return LossMatrix::create(std::move(m.values), std::move(m.names));
    } catch (const invalid_input& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

std::string format_full(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw numeric_error("format_full: conversion failed");
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input(path + ": cannot open file for writing");
    return out;
}

}  // namespace

void write_named_matrix(const std::string& path, const Matrix& values,
                        const std::vector<std::string>& names) {
    if (names.size() != values.cols())
        throw invalid_input("write_named_matrix: header size does not match columns");
    std::ostringstream body;
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (c) body << ',';
        body << names[c];
    }
    body << '\n';
    for (std::size_t r = 0; r < values.rows(); ++r) {
        for (std::size_t c = 0; c < values.cols(); ++c) {
            if (c) body << ',';
            body << format_full(values(r, c));
        }
        body << '\n';
    }
    auto out = open_out(path);
    out << body.str();
    if (!out) throw numeric_error(path + ": write failed");
}

void write_series(const std::string& path, std::span<const double> values,
                  const std::string& name) {
    Matrix m(values.size(), 1);
    for (std::size_t r = 0; r < values.size(); ++r) m(r, 0) = values[r];
    write_named_matrix(path, m, {name});
}

}  // namespace mcs
