#include "wpinv/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace wpinv::io {

MatrixFormat format_for(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? MatrixFormat::Csv : MatrixFormat::Json;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ParseError("matrix object needs rows, cols and data");
  }
  const auto& rows_j = j.at("rows");
  const auto& cols_j = j.at("cols");
  if (!rows_j.is_number_unsigned() || !cols_j.is_number_unsigned()) {
    throw ParseError("rows and cols must be nonnegative integers");
  }
  const auto rows = rows_j.get<Eigen::Index>();
  const auto cols = cols_j.get<Eigen::Index>();
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ParseError("data must hold rows*cols entries");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    const auto& cell = data[static_cast<std::size_t>(k)];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
      throw ParseError("entry " + std::to_string(k) + " is not a [re, im] pair");
    }
    const Complex z(cell[0].get<double>(), cell[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParseError("entry " + std::to_string(k) + " is not finite");
    }
    m(k / cols, k % cols) = z;
  }
  return m;
}

CMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

namespace {

double parse_real(std::string_view text, std::string_view cell) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  // from_chars rejects a leading '+'; the cell grammar allows it only on the
  // imaginary part, which the caller strips.
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("bad number in cell '" + std::string(cell) + "'");
  }
  return value;
}

}  // namespace

Complex parse_complex_cell(std::string_view cell) {
  if (cell.empty()) throw ParseError("empty cell");
  if (cell.back() != 'i') return {parse_real(cell, cell), 0.0};
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t p = cell.size() - 1; p > 0; --p) {
    const char c = cell[p];
    if ((c == '+' || c == '-') && cell[p - 1] != 'e' && cell[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) throw ParseError("bad complex cell '" + std::string(cell) + "'");
  const double re = parse_real(cell.substr(0, split), cell);
  const std::string_view im_text = cell.substr(split + 1, cell.size() - split - 2);
  if (!im_text.empty() && (im_text.front() == '+' || im_text.front() == '-')) {
    throw ParseError("bad complex cell '" + std::string(cell) + "'");
  }
  const double im = parse_real(im_text, cell);
  return {re, cell[split] == '-' ? -im : im};
}

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_complex_cell(Complex z) {
  std::string out = shortest(z.real());
  if (z.imag() == 0.0) return out;
  out += std::signbit(z.imag()) ? '-' : '+';
  out += shortest(std::abs(z.imag()));
  out += 'i';
  return out;
}

CMatrix parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<Complex> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell =
          line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      try {
        row.push_back(parse_complex_cell(cell));
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.detail());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " cells, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no rows");
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string write_json_matrix(const CMatrix& m) { return matrix_to_json(m).dump() + "\n"; }

std::string write_csv_matrix(const CMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_complex_cell(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CMatrix read_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return format_for(path) == MatrixFormat::Csv ? parse_csv_matrix(text) : parse_json_matrix(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail());
  }
}

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << (format_for(path) == MatrixFormat::Csv ? write_csv_matrix(m) : write_json_matrix(m));
}

}  // namespace wpinv::io
