#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace hyplab {

// Fixed-format CSV emission: 17 significant digits for doubles so that
// reruns diff byte-for-byte.
std::string csv_num(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void comment(const std::string& text);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& vals);
    // Mixed row: already formatted cells.
    void row_raw(const std::vector<std::string>& cells);

  private:
    std::ostream& os_;
};

} // namespace hyplab
