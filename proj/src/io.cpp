#include "perron/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace perron {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what : what),
      message_(what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<Token> split_line(const std::string& line, std::size_t lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), lineno, start + 1});
    }
    return out;
}

double parse_number(const Token& tok) {
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec == std::errc::result_out_of_range)
        throw ParseError("number '" + tok.text + "' is out of range", tok.line, tok.column);
    if (res.ec != std::errc() || res.ptr != last)
        throw ParseError("expected a number, found '" + tok.text + "'", tok.line, tok.column);
    return value;
}

long long parse_integer(const Token& tok) {
    long long value = 0;
    const auto res = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size())
        throw ParseError("expected an integer, found '" + tok.text + "'", tok.line, tok.column);
    return value;
}

}  // namespace

Matrix read_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty input", 1, 1);
    ++lineno;
    const auto head = split_line(line, lineno);
    if (head.size() != 5 || lower(head[0].text) != "%%matrixmarket" || lower(head[1].text) != "matrix")
        throw ParseError("expected header '%%MatrixMarket matrix <format> <field> <symmetry>'", 1, 1);
    const std::string format = lower(head[2].text), field = lower(head[3].text), symmetry = lower(head[4].text);
    if (format != "array" && format != "coordinate")
        throw ParseError("unsupported format '" + head[2].text + "'", 1, head[2].column);
    if (field != "real" && field != "integer" && field != "complex" && field != "pattern" && field != "double")
        throw ParseError("unsupported field '" + head[3].text + "'", 1, head[3].column);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" && symmetry != "hermitian")
        throw ParseError("unsupported symmetry '" + head[4].text + "'", 1, head[4].column);
    if (field == "pattern" && format == "array") throw ParseError("pattern field requires coordinate format", 1, head[3].column);
    if (symmetry == "hermitian" && field != "complex")
        throw ParseError("hermitian symmetry requires the complex field", 1, head[4].column);
    const bool complex = field == "complex";

    std::vector<Token> tokens;
    std::vector<Token> size_line;
    std::size_t size_lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '%') continue;
        auto toks = split_line(line, lineno);
        if (size_line.empty()) {
            size_line = std::move(toks);
            size_lineno = lineno;
        } else {
            tokens.insert(tokens.end(), toks.begin(), toks.end());
        }
    }
    if (size_line.empty()) throw ParseError("missing size line", lineno + 1, 1);
    const std::size_t want = format == "array" ? 2 : 3;
    if (size_line.size() != want)
        throw ParseError("size line must hold " + std::to_string(want) + " integers", size_lineno, size_line.front().column);
    const long long rows = parse_integer(size_line[0]);
    const long long cols = parse_integer(size_line[1]);
    if (rows < 0 || cols < 0) throw ParseError("negative dimension", size_lineno, size_line[0].column);
    if (rows != cols)
        throw ParseError("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) + ", expected a square matrix",
                         size_lineno, size_line[1].column);
    if (symmetry != "general" && rows != cols) throw ParseError("symmetric storage requires a square matrix", size_lineno, 1);
    const auto n = static_cast<Eigen::Index>(rows);
    Matrix m = Matrix::Zero(n, n);
    const std::size_t per = complex ? 2 : (field == "pattern" ? 0 : 1);
    std::size_t pos = 0;
    auto next = [&](const char* what) -> const Token& {
        if (pos >= tokens.size()) throw ParseError(std::string("unexpected end of input, expected ") + what, lineno + 1, 1);
        return tokens[pos++];
    };
    auto read_value = [&]() -> Scalar {
        if (per == 0) return Scalar(1.0);
        const Token& re = next("a value");
        if (field == "integer") return Scalar(static_cast<double>(parse_integer(re)));
        const double a = parse_number(re);
        if (!complex) return Scalar(a);
        return Scalar(a, parse_number(next("an imaginary part")));
    };
    auto place = [&](Eigen::Index i, Eigen::Index j, Scalar v, const Token& at) {
        if (symmetry != "general" && j > i)
            throw ParseError("entry above the diagonal in " + symmetry + " storage", at.line, at.column);
        if (symmetry == "skew-symmetric" && i == j) throw ParseError("diagonal entry in skew-symmetric storage", at.line, at.column);
        m(i, j) = v;
        if (i == j) return;
        if (symmetry == "symmetric") m(j, i) = v;
        if (symmetry == "skew-symmetric") m(j, i) = -v;
        if (symmetry == "hermitian") m(j, i) = std::conj(v);
    };

    if (format == "array") {
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = (symmetry == "general" ? 0 : j + (symmetry == "skew-symmetric" ? 1 : 0)); i < n; ++i) {
                const Token& at = pos < tokens.size() ? tokens[pos] : Token{"", lineno + 1, 1};
                place(i, j, read_value(), at);
            }
    } else {
        const long long nnz = parse_integer(size_line[2]);
        if (nnz < 0) throw ParseError("negative entry count", size_lineno, size_line[2].column);
        for (long long e = 0; e < nnz; ++e) {
            const Token& ti = next("a row index");
            const Token& tj = next("a column index");
            const long long i = parse_integer(ti), j = parse_integer(tj);
            if (i < 1 || i > rows) throw ParseError("row index " + ti.text + " out of range", ti.line, ti.column);
            if (j < 1 || j > cols) throw ParseError("column index " + tj.text + " out of range", tj.line, tj.column);
            place(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1), read_value(), ti);
        }
    }
    if (pos < tokens.size())
        throw ParseError("unexpected trailing data '" + tokens[pos].text + "'", tokens[pos].line, tokens[pos].column);
    return m;
}

namespace {

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string what = e.what();
        const auto cut = what.find("; ");
        throw ParseError("invalid JSON: " + (cut == std::string::npos ? what : what.substr(cut + 2)), line, col);
    }
}

Scalar json_entry(const nlohmann::json& e, const std::string& where) {
    if (e.is_number()) return Scalar(e.get<double>());
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Scalar(e[0].get<double>(), e[1].get<double>());
    throw ParseError(where + ": entry must be a number or a pair [re, im]", 0, 0);
}

nlohmann::json json_of(Scalar z) {
    if (z.imag() == 0.0) return z.real();
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

Matrix read_json_matrix(const std::string& text) {
    const nlohmann::json j = parse_json(text);
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw ParseError("JSON matrix must be an object with a \"rows\" array", 1, 1);
    const auto& rows = j["rows"];
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(n)))
        throw ParseError("\"n\" disagrees with the number of rows (" + std::to_string(n) + ")", 1, 1);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(row.is_array() ? row.size() : 0) +
                                 " entries, expected " + std::to_string(n) + " (matrix must be square)",
                             0, 0);
        for (Eigen::Index c = 0; c < n; ++c)
            m(i, c) = json_entry(row[static_cast<std::size_t>(c)],
                                 "row " + std::to_string(i + 1) + ", column " + std::to_string(c + 1));
    }
    return m;
}

Matrix read_matrix(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input", 1, 1);
    if (text[first] == '%') return read_matrix_market(text);
    if (text[first] == '{') return read_json_matrix(text);
    const auto [line, col] = line_column(text, first);
    throw ParseError("unrecognized matrix format (expected Matrix Market or JSON)", line, col);
}

Vector read_vector(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty input", 1, 1);
    if (text[first] == '[') {
        const nlohmann::json j = parse_json(text);
        Vector v(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i)
            v(static_cast<Eigen::Index>(i)) = json_entry(j[i], "entry " + std::to_string(i + 1));
        return v;
    }
    if (text[first] != '%') throw ParseError("unrecognized vector format (expected Matrix Market or JSON array)", 1, 1);
    // Matrix Market n x 1 array: reuse the token reader by checking the size line.
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    const auto head = split_line(line, 1);
    if (head.size() < 4 || lower(head[2].text) != "array")
        throw ParseError("vector files must use the Matrix Market array format", 1, 1);
    const bool complex = lower(head[3].text) == "complex";
    std::vector<Token> tokens;
    std::size_t lineno = 1;
    std::vector<Token> size_line;
    while (std::getline(in, line)) {
        ++lineno;
        const auto f = line.find_first_not_of(" \t\r");
        if (f == std::string::npos || line[f] == '%') continue;
        auto toks = split_line(line, lineno);
        if (size_line.empty()) size_line = toks;
        else tokens.insert(tokens.end(), toks.begin(), toks.end());
    }
    if (size_line.size() != 2) throw ParseError("size line must hold 2 integers", lineno, 1);
    const long long rows = parse_integer(size_line[0]), cols = parse_integer(size_line[1]);
    if (cols != 1) throw ParseError("vector must have exactly one column", size_line[1].line, size_line[1].column);
    const std::size_t per = complex ? 2 : 1;
    if (tokens.size() != static_cast<std::size_t>(rows) * per)
        throw ParseError("expected " + std::to_string(rows * static_cast<long long>(per)) + " values, found " +
                             std::to_string(tokens.size()),
                         lineno, 1);
    Vector v(static_cast<Eigen::Index>(rows));
    for (long long i = 0; i < rows; ++i) {
        const double re = parse_number(tokens[static_cast<std::size_t>(i) * per]);
        const double im = complex ? parse_number(tokens[static_cast<std::size_t>(i) * per + 1]) : 0.0;
        v(static_cast<Eigen::Index>(i)) = Scalar(re, im);
    }
    return v;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string write_matrix_market(const Matrix& m) {
    const bool real = (m.imag().array() == 0.0).all();
    std::string out = std::string("%%MatrixMarket matrix array ") + (real ? "real" : "complex") + " general\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            out += format_double(m(i, j).real());
            if (!real) out += " " + format_double(m(i, j).imag());
            out += "\n";
        }
    return out;
}

std::string write_json_matrix(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json_of(m(i, j)));
        rows.push_back(row);
    }
    nlohmann::json j;
    j["n"] = m.rows();
    j["rows"] = rows;
    return j.dump() + "\n";
}

std::string write_matrix(const Matrix& m, MatrixFormat format) {
    return format == MatrixFormat::json ? write_json_matrix(m) : write_matrix_market(m);
}

Scalar parse_complex(const std::string& text) {
    auto bad = [&]() -> ParseError {
        return ParseError("invalid complex number '" + text + "' (grammar: a, bi, a+bi, a-bi)", 0, 0);
    };
    if (text.empty()) throw bad();
    auto number = [&](std::string s, bool imag_unit) -> double {
        if (imag_unit && (s.empty() || s == "+")) return 1.0;
        if (imag_unit && s == "-") return -1.0;
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        if (s.empty()) throw bad();
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw bad();
        return v;
    };
    if (text.back() != 'i') return Scalar(number(text, false), 0.0);
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Scalar(0.0, number(body, true));
    return Scalar(number(body.substr(0, split), false), number(body.substr(split), true));
}

std::string format_complex(Scalar z) {
    return format_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + format_double(std::fabs(z.imag())) + "i";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(std::hash<std::string>{}(path + content) & 0xffffff);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace perron
