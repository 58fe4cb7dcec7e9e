#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsscm/location.hpp"

namespace gsscm {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

struct CsvData {
    Matrix values;
    std::vector<std::string> header;  // empty when the file had none
};

/// Comma-separated numeric matrix, '.' decimal point, rows are observations.
/// A single leading header row is detected by its first line not parsing as
/// numbers. Ragged rows or non-numeric cells raise DataError("malformed-csv")
/// naming the row and column.
CsvData read_csv(std::istream& input);
CsvData read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const Matrix& values,
               const std::vector<std::string>& header = {});
void write_csv_file(const std::string& path, const Matrix& values,
                    const std::vector<std::string>& header = {});

}  // namespace gsscm
