#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "perron/types.hpp"

namespace perron {

/// Input that does not parse. Line and column are one-based; 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

enum class MatrixFormat { matrix_market, json };

/// Matrix Market: array or coordinate; real, integer, complex or pattern;
/// general, symmetric, skew-symmetric or hermitian.
Matrix read_matrix_market(const std::string& text);
/// Dense JSON: {"n": N, "rows": [[entry, ...], ...]} with each entry a number
/// or a pair [re, im].
Matrix read_json_matrix(const std::string& text);
/// Picks the reader from the first non-blank character ('%' or '{').
Matrix read_matrix(const std::string& text);
/// Vector: Matrix Market n x 1 array or a JSON array of entries.
Vector read_vector(const std::string& text);

/// Array format, `real` when every imaginary part is zero, else `complex`.
/// Values are written in shortest round-trip form.
std::string write_matrix_market(const Matrix& m);
std::string write_json_matrix(const Matrix& m);
std::string write_matrix(const Matrix& m, MatrixFormat format);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

/// Complex literal `a`, `bi`, `a+bi` or `a-bi` (no spaces); `i` alone is 1i.
Scalar parse_complex(const std::string& text);
std::string format_complex(Scalar z);

std::string read_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace perron
