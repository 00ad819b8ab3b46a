#include "hyplab/csv.hpp"

#include <cstdio>

namespace hyplab {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& cols) { row_raw(cols); }

void CsvWriter::row(const std::vector<double>& vals) {
    std::vector<std::string> cells;
    cells.reserve(vals.size());
    for (double v : vals) cells.push_back(csv_num(v));
    row_raw(cells);
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        os_ << cells[i];
    }
    os_ << "\n";
}

} // namespace hyplab
