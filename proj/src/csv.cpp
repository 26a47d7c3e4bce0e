#include "rdos/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace rdos {

std::string format_double(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::separator() {
    if (current_ > 0) out_ << ',';
    ++current_;
}

CsvWriter& CsvWriter::field(double x) {
    separator();
    out_ << format_double(x);
    return *this;
}

CsvWriter& CsvWriter::field(std::uint64_t x) {
    separator();
    out_ << x;
    return *this;
}

CsvWriter& CsvWriter::field(const std::string& x) {
    separator();
    out_ << x;
    return *this;
}

void CsvWriter::end_row() {
    if (current_ != columns_) {
        throw std::logic_error("csv row does not match the header width");
    }
    out_ << '\n';
    current_ = 0;
}

} // namespace rdos
