// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revhawk Contributors

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace revhawk {

/// Streaming reader for RFC 4180 style delimited text. Quoted fields may
/// contain the delimiter, doubled quotes and line breaks.
class CsvReader {
public:
    explicit CsvReader(std::istream& in, char delimiter = ',');

    /// Reads the next record. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

    /// 1-based physical line where the last returned record started.
    std::size_t record_line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    char delim_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
    bool first_ = true;
};

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace revhawk
