#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fbrht::report {

/// "1,57,140" for table cells and log lines.
std::string join_ids(const std::vector<int>& ids);

/// Fixed-precision number for text tables; infinities print as Inf.
std::string fmt(double v, int precision = 3);

std::string hex64(std::uint64_t v);

/// JSON value for a metric that may be infinite (JSON has no Inf literal).
nlohmann::json metric_json(double v);

/// Line-delimited JSON records with stable (alphabetical) key order.
class JsonlWriter {
public:
    explicit JsonlWriter(const std::string& path);
    void write(const nlohmann::json& record);

private:
    std::ofstream out_;
    std::string path_;
};

/// Left-aligned fixed-width text table.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> headers);
    void add_row(std::vector<std::string> cells);
    void render(std::ostream& out) const;

private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace fbrht::report
