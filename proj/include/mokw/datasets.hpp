#pragma once

// Numeric data ingestion and the two embedded reference samples.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mokw/errors.hpp"

namespace mokw {

struct Dataset {
    std::string name;
    std::vector<double> values;
    /// "embedded" or the file path.
    std::string source;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Reals separated by commas and/or whitespace, any line layout.
std::vector<double> parse_values(std::string_view text);

/// The listing text of "nicotine" (346 values) or "carbon" (100 values).
std::string_view embedded_text(std::string_view name);
Dataset embedded_dataset(std::string_view name);

/// An embedded name or a path to a text file. Empty files are rejected.
Dataset ingest(std::string_view source);

}  // namespace mokw
