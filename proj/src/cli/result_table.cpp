#include "ltt/cli.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ltt::cli {
namespace {

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

void ResultTable::validate() const {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw std::invalid_argument("result table: row length differs from column count");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("result table: non-finite value");
    }
}

std::string to_csv(const ResultTable& table) {
    table.validate();
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + full_precision(row[i]);
        out += "\n";
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    table.validate();
    nlohmann::ordered_json j;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.metadata) {
        // Echoed configs are stored as JSON, everything else as text.
        auto parsed = nlohmann::ordered_json::parse(v, nullptr, false);
        meta[k] = (k == "config" && !parsed.is_discarded()) ? parsed : nlohmann::ordered_json(v);
    }
    j["metadata"] = meta;
    return j.dump(2) + "\n";
}

ResultTable parse_csv(std::string_view text) {
    ResultTable t;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        auto cells = split(line);
        if (header) {
            t.columns = std::move(cells);
            header = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            char* stop = nullptr;
            const double v = std::strtod(c.c_str(), &stop);
            if (stop == c.c_str() || *stop != '\0') throw std::invalid_argument("csv: bad number '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    t.validate();
    return t;
}

void write_table(const ResultTable& table, const std::string& path, OutputFormat format) {
    namespace fs = std::filesystem;
    const std::string body = format == OutputFormat::csv ? to_csv(table) : to_json(table);
    const fs::path target(path);
    fs::path dir = target.parent_path();
    if (dir.empty()) dir = ".";
    std::random_device rd;
    const fs::path tmp = dir / (target.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << body;
        out.close();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

}  // namespace ltt::cli
