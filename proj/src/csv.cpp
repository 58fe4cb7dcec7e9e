#include "gsscm/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gsscm/errors.hpp"

namespace gsscm {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_cell(const std::string& cell, double& value) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
    if (begin == end) return false;
    const auto result = std::from_chars(begin, end, value);
    return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

CsvData read_csv(std::istream& input) {
    CsvData data;
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_number = 0;
    bool first_content_line = true;
    std::size_t width = 0;

    while (std::getline(input, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        const auto cells = split_row(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        std::size_t bad_column = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_cell(cells[c], row[c])) {
                numeric = false;
                bad_column = c;
                break;
            }
        }

        if (!numeric) {
            if (first_content_line) {
                data.header = cells;  // a single header row is allowed
                first_content_line = false;
                width = cells.size();
                continue;
            }
            throw DataError("malformed-csv", "non-numeric cell at row " +
                                                 std::to_string(line_number) + ", column " +
                                                 std::to_string(bad_column + 1));
        }
        if (first_content_line) {
            width = cells.size();
            first_content_line = false;
        } else if (cells.size() != width) {
            throw DataError("malformed-csv", "row " + std::to_string(line_number) + " has " +
                                                 std::to_string(cells.size()) +
                                                 " cells, expected " + std::to_string(width));
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw DataError("empty-input", "no data rows");
    data.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return data;
}

CsvData read_csv_file(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw DataError("missing-file", "cannot open '" + path + "'");
    return read_csv(input);
}

void write_csv(std::ostream& out, const Matrix& values, const std::vector<std::string>& header) {
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out << ',';
            out << header[j];
        }
        out << '\n';
    }
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j) out << ',';
            out << format_double(values(i, j));
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Matrix& values,
                    const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw DataError("missing-file", "cannot open '" + path + "' for writing");
    write_csv(out, values, header);
}

}  // namespace gsscm
