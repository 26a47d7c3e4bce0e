#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace rdos {

/// Locale-independent numeric formatting: 17 significant digits, '.'
/// decimal separator.
std::string format_double(double x);

/// CSV emitter with a fixed header, '\n' line endings, UTF-8. Same rows in,
/// same bytes out.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& field(double x);
    CsvWriter& field(std::uint64_t x);
    CsvWriter& field(const std::string& x);
    void end_row();

  private:
    std::ofstream out_;
    std::size_t columns_;
    std::size_t current_ = 0;

    void separator();
};

} // namespace rdos
