#include "mokw/datasets.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mokw {

namespace {

// Reference listings, verbatim.
constexpr std::string_view kNicotine =
    "1.3, 1.0, 1.2, 0.9, 1.1, 0.8, 0.5, 1.0, 0.7, 0.5, 1.7, 1.1, 0.8, 0.5, 1.2, 0.8, 1.1, 0.9, 1.2, "
    "0.9, 0.8, 0.6, 0.3, 0.8, 0.6, 0.4, 1.1, 1.1, 0.2, 0.8, 0.5, 1.1, 0.1, 0.8, 1.7, 1.0, 0.8, 1.0, "
    "0.8, 1.0, 0.2, 0.8, 0.4, 1.0, 0.2, 0.8, 1.4, 0.8, 0.5, 1.1, 0.9, 1.3, 0.9, 0.4, 1.4, 0.9, 0.5, "
    "1.7, 0.9, 0.8, 0.8, 1.2, 0.9, 0.8, 0.5, 1.0, 0.6, 0.1, 0.2, 0.5, 0.1, 0.1, 0.9, 0.6, 0.9, 0.6, "
    "1.2, 1.5, 1.1, 1.4, 1.2, 1.7, 1.4, 1.0, 0.7, 0.4, 0.9, 0.7, 0.8, 0.7, 0.4, 0.9, 0.6, 0.4, 1.2, "
    "2.0, 0.7, 0.5, 0.9, 0.5, 0.9, 0.7, 0.9, 0.7, 0.4, 1.0, 0.7, 0.9, 0.7, 0.5, 1.3, 0.9, 0.8, 1.0, "
    "0.7, 0.7, 0.6, 0.8, 1.1, 0.9, 0.9, 0.8, 0.8, 0.7, 0.7, 0.4, 0.5, 0.4, 0.9, 0.9, 0.7, 1.0, 1.0, "
    "0.7, 1.3, 1.0, 1.1, 1.1, 0.9, 1.1, 0.8, 1.0, 0.7, 1.6, 0.8, 0.6, 0.8, 0.6, 1.2, 0.9, 0.6, 0.8, "
    "1.0, 0.5, 0.8, 1.0, 1.1, 0.8, 0.8, 0.5, 1.1, 0.8, 0.9, 1.1, 0.8, 1.2, 1.1, 1.2, 1.1, 1.2, 0.2, "
    "0.5, 0.7, 0.2, 0.5, 0.6, 0.1, 0.4, 0.6, 0.2, 0.5, 1.1, 0.8, 0.6, 1.1, 0.9, 0.6, 0.3, 0.9, 0.8, "
    "0.8, 0.6, 0.4, 1.2, 1.3, 1.0, 0.6, 1.2, 0.9, 1.2, 0.9, 0.5, 0.8, 1.0, 0.7, 0.9, 1.0, 0.1, 0.2, "
    "0.1, 0.1, 1.1, 1.0, 1.1, 0.7, 1.1, 0.7, 1.8, 1.2, 0.9, 1.7, 1.2, 1.3, 1.2, 0.9, 0.7, 0.7, 1.2, "
    "1.0, 0.9, 1.6, 0.8, 0.8, 1.1, 1.1, 0.8, 0.6, 1.0, 0.8, 1.1, 0.8, 0.5, 1.5, 1.1, 0.8, 0.6, 1.1, "
    "0.8, 1.1, 0.8, 1.5, 1.1, 0.8, 0.4, 1.0, 0.8, 1.4, 0.9, 0.9, 1.0, 0.9, 1.3, 0.8, 1.0, 0.5, 1.0, "
    "0.7, 0.5, 1.4, 1.2, 0.9, 1.1, 0.9, 1.1, 1.0, 0.9, 1.2, 0.9, 1.2, 0.9, 0.5, 0.9, 0.7, 0.3, 1.0, "
    "0.6, 1.0, 0.9, 1.0, 1.1, 0.8, 0.5, 1.1, 0.8, 1.2, 0.8, 0.5, 1.5, 1.5, 1.0, 0.8, 1.0, 0.5, 1.7, "
    "0.3, 0.6, 0.6, 0.4, 0.5, 0.5, 0.7, 0.4, 0.5, 0.8, 0.5, 1.3, 0.9, 1.3, 0.9, 0.5, 1.2, 0.9, 1.1, "
    "0.9, 0.5, 0.7, 0.5, 1.1, 1.1, 0.5, 0.8, 0.6, 1.2, 0.8, 0.4, 1.3, 0.8, 0.5, 1.2, 0.7, 0.5, 0.9, "
    "1.3, 0.8, 1.2, 0.9";

constexpr std::string_view kCarbon =
    "3.70, 2.74, 2.73, 2.50, 3.60, 3.11, 3.27, 2.87, 1.47, 3.11, 4.42, 2.40, 3.15, 2.67, 3.31, 2.81, "
    "0.98, 5.56, 5.08, 0.39, 1.57, 3.19, 4.90, 2.93, 2.85, 2.77, 2.76, 1.73, 2.48, 3.68, 1.08, 3.22, "
    "3.75, 3.22, 2.56, 2.17, 4.91, 1.59, 1.18, 2.48, 2.03, 1.69, 2.43, 3.39, 3.56, 2.83, 3.68, 2.00, "
    "3.51, 0.85, 1.61, 3.28, 2.95, 2.81, 3.15, 1.92, 1.84, 1.22, 2.17, 1.61, 2.12, 3.09, 2.97, 4.20, "
    "2.35, 1.41, 1.59, 1.12, 1.69, 2.79, 1.89, 1.87, 3.39, 3.33, 2.55, 3.68, 3.19, 1.71, 1.25, 4.70, "
    "2.88, 2.96, 2.55, 2.59, 2.97, 1.57, 2.17, 4.38, 2.03, 2.82, 2.53, 3.31, 2.38, 1.36, 0.81, 1.17, "
    "1.84, 1.80, 2.05, 3.65";

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

std::string_view embedded_text(std::string_view name) {
    if (name == "nicotine") return kNicotine;
    if (name == "carbon") return kCarbon;
    throw DomainError("no embedded dataset named '" + std::string(name) + "'");
}

std::vector<double> parse_values(std::string_view text) {
    std::vector<double> out;
    std::size_t line = 1, col = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (is_separator(c)) {
            if (c == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_separator(text[j])) ++j;
        const std::string token(text.substr(i, j - i));
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || token.empty())
            throw ParseError("not a number: '" + token + "'", line, col);
        if (!std::isfinite(v) || errno == ERANGE) throw ParseError("value out of range: '" + token + "'", line, col);
        out.push_back(v);
        col += j - i;
        i = j;
    }
    return out;
}

Dataset embedded_dataset(std::string_view name) {
    return {std::string(name), parse_values(embedded_text(name)), "embedded"};
}

Dataset ingest(std::string_view source) {
    if (source == "nicotine" || source == "carbon") return embedded_dataset(source);
    std::ifstream in{std::string(source)};
    if (!in) throw DomainError("cannot open data file '" + std::string(source) + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Dataset d{std::filesystem::path(source).stem().string(), parse_values(ss.str()), std::string(source)};
    if (d.values.empty()) throw DomainError("data file '" + std::string(source) + "' contains no values");
    return d;
}

}  // namespace mokw
