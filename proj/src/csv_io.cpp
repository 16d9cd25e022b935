#include "fbrht/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fbrht {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, long row, std::size_t col) {
    const auto fail = [&](const char* what) {
        throw std::runtime_error("row " + std::to_string(row) + ", column " +
                                 std::to_string(col + 1) + ": " + what + " ('" + cell + "')");
    };
    if (cell.empty()) fail("empty cell");
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) fail("not a number");
    if (!std::isfinite(v)) fail("not finite");
    return v;
}

} // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_line(line);
    if (header.empty() || header[0] != "label")
        throw std::runtime_error(path + ": first header column must be 'label'");
    const std::size_t width = header.size();
    if (width < 2) throw std::runtime_error(path + ": no feature columns");

    std::vector<double> labels;
    std::vector<std::vector<double>> rows;
    long row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != width)
            throw std::runtime_error(path + ": row " + std::to_string(row_no) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(width));
        const double y = parse_cell(cells[0], row_no, 0);
        if (y != 0.0 && y != 1.0)
            throw std::runtime_error(path + ": row " + std::to_string(row_no) +
                                     ": label must be 0 or 1, got " + cells[0]);
        labels.push_back(y);
        std::vector<double> feats(width - 1);
        for (std::size_t c = 1; c < width; ++c) {
            try {
                feats[c - 1] = parse_cell(cells[c], row_no, c);
            } catch (const std::runtime_error& e) {
                throw std::runtime_error(path + ": " + e.what());
            }
        }
        rows.push_back(std::move(feats));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");

    Dataset d;
    d.X.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
    d.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        d.y[static_cast<Eigen::Index>(i)] = labels[i];
        for (std::size_t j = 0; j + 1 < width; ++j)
            d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    for (std::size_t c = 1; c < width; ++c) d.feature_names.push_back(header[c]);
    d.feature_ids.resize(width - 1);
    for (std::size_t j = 0; j + 1 < width; ++j) d.feature_ids[j] = static_cast<int>(j) + 1;
    return d;
}

void save_csv(const Dataset& data, const std::string& path) {
    Dataset labeled = data;
    ensure_feature_labels(labeled);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "label";
    for (const auto& name : labeled.feature_names) out << ',' << name;
    out << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        out << (data.y[i] == 1.0 ? '1' : '0');
        for (Eigen::Index j = 0; j < data.p(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data.X(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace fbrht
