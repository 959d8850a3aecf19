#pragma once

// The "kippen-matrix v1" text format.
//
//   # comments start with '#'
//   kippen-matrix v1
//   mode exact            (exact | float)
//   field gaussian        (rational | gaussian | sqrt(N); exact mode only)
//   size 4 4
//   0, 1/2, 0, -1/5
//   ...
//
// Entries in a row are separated by commas, or by whitespace when the row
// has no comma. Exact entries follow the scalar grammar; float entries are
// decimals with an optional imaginary part ("0.5", "-0.25+1e-3i", "2i").

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "kippen/matrix.hpp"
#include "kippen/scalar.hpp"
#include "kippen/spectral.hpp"

namespace kippen {

enum class MatrixMode { exact, floating };

struct MatrixFile {
  int version = 1;
  MatrixMode mode = MatrixMode::exact;
  FieldDescriptor field = FieldDescriptor::gaussian();
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::string>> entries;  ///< raw entry text
  Matrix<Quad> exact;                             ///< filled in exact mode
  CMat numeric;                                   ///< filled in both modes

  bool square() const { return rows == cols; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos) {
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  } else {
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
  }
  return out;
}

inline double parse_real(std::string_view s, std::size_t offset) {
  std::string t(s);
  if (t.empty()) throw ParseError("empty number", offset);
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ParseError("bad float '" + t + "'", offset);
  return v;
}

}  // namespace detail

/// Splits a float entry into its real and imaginary decimal texts ("" for 0).
inline std::pair<std::string, std::string> split_float_entry(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty entry", 0);
  if (s.back() != 'i') return {s, ""};
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
  std::string im = cut == std::string::npos ? body : body.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im.erase(0, 1);
  if (re.empty()) re = "0";
  return {re, im};
}

/// Parses a float entry: real, imaginary ("2i", "-i") or "a+bi".
inline cplx parse_float_entry(std::string_view text) {
  auto [re, im] = split_float_entry(text);
  return {detail::parse_real(re, 0), im.empty() ? 0.0 : detail::parse_real(im, 0)};
}

inline std::string to_string(const FieldDescriptor& f) {
  switch (f.kind) {
    case FieldDescriptor::Kind::rational: return "rational";
    case FieldDescriptor::Kind::gaussian: return "gaussian";
    case FieldDescriptor::Kind::quadratic: return "sqrt(" + std::to_string(f.radicand) + ")";
  }
  return "gaussian";
}

inline FieldDescriptor parse_field(const std::string& s) {
  if (s == "rational") return FieldDescriptor::rational();
  if (s == "gaussian") return FieldDescriptor::gaussian();
  if (s.rfind("sqrt(", 0) == 0 && s.size() > 6 && s.back() == ')') {
    long n = std::stol(s.substr(5, s.size() - 6));
    return FieldDescriptor::quadratic(n);
  }
  throw ParseError("unknown field '" + s + "'", 0);
}

/// Parses the text of a matrix file. ParseError offsets are byte offsets
/// into `text`.
inline MatrixFile parse_matrix_file(std::string_view text) {
  MatrixFile f;
  std::size_t pos = 0;
  bool have_version = false, have_size = false;
  std::vector<std::pair<std::string, std::size_t>> body;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    std::size_t line_at = pos;
    pos = nl + 1;
    std::size_t hash = raw.find('#');
    std::string line = detail::trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string key;
    is >> key;
    if (!have_version) {
      std::string v;
      is >> v;
      if (key != "kippen-matrix" || v != "v1") throw ParseError("expected header 'kippen-matrix v1'", line_at);
      have_version = true;
      continue;
    }
    if (!have_size && key == "mode") {
      std::string m;
      is >> m;
      if (m == "exact") f.mode = MatrixMode::exact;
      else if (m == "float") f.mode = MatrixMode::floating;
      else throw ParseError("unknown mode '" + m + "'", line_at);
      continue;
    }
    if (!have_size && key == "field") {
      std::string fd;
      is >> fd;
      try {
        f.field = parse_field(fd);
      } catch (const std::exception&) {
        throw ParseError("unknown field '" + fd + "'", line_at);
      }
      continue;
    }
    if (!have_size && key == "size") {
      long r = -1, c = -1;
      if (!(is >> r >> c) || r <= 0 || c <= 0) throw ParseError("bad size line", line_at);
      f.rows = static_cast<std::size_t>(r);
      f.cols = static_cast<std::size_t>(c);
      have_size = true;
      continue;
    }
    if (!have_size) throw ParseError("expected 'size R C' before the rows", line_at);
    body.emplace_back(line, line_at);
  }
  if (!have_version) throw ParseError("missing header 'kippen-matrix v1'", 0);
  if (!have_size) throw ParseError("missing size line", text.size());
  if (body.size() != f.rows) throw ParseError("expected " + std::to_string(f.rows) + " rows, found " + std::to_string(body.size()), text.size());
  f.numeric = CMat(static_cast<Eigen::Index>(f.rows), static_cast<Eigen::Index>(f.cols));
  if (f.mode == MatrixMode::exact) f.exact = Matrix<Quad>(f.rows, f.cols);
  for (std::size_t i = 0; i < f.rows; ++i) {
    auto cells = detail::split_row(body[i].first);
    if (cells.size() != f.cols) {
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) + " entries, expected " +
                           std::to_string(f.cols),
                       body[i].second);
    }
    for (std::size_t j = 0; j < f.cols; ++j) {
      const auto ei = static_cast<Eigen::Index>(i), ej = static_cast<Eigen::Index>(j);
      try {
        if (f.mode == MatrixMode::exact) {
          f.exact(i, j) = parse_scalar(cells[j], f.field);
          f.numeric(ei, ej) = to_complex(f.exact(i, j));
        } else {
          f.numeric(ei, ej) = parse_float_entry(cells[j]);
        }
      } catch (const ParseError& e) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") '" + cells[j] +
                             "': " + e.what(),
                         body[i].second);
      }
    }
    f.entries.push_back(std::move(cells));
  }
  return f;
}

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_file(ss.str());
}

/// The exact Gaussian matrix of a file. Float files are accepted only with
/// `allow_float`, each decimal text read as its exact rational value.
inline Matrix<Gaussian> exact_gaussian(const MatrixFile& f, bool allow_float = false) {
  Matrix<Gaussian> m(f.rows, f.cols);
  if (f.mode == MatrixMode::floating) {
    if (!allow_float) throw Error("float matrix file needs --float");
    for (std::size_t i = 0; i < f.rows; ++i)
      for (std::size_t j = 0; j < f.cols; ++j) {
        auto [re, im] = split_float_entry(f.entries[i][j]);
        m(i, j) = Gaussian(parse_decimal_exact(re), im.empty() ? Rational(0) : parse_decimal_exact(im));
      }
    return m;
  }
  for (std::size_t i = 0; i < f.rows; ++i)
    for (std::size_t j = 0; j < f.cols; ++j) {
      if (f.exact(i, j).radicand() != 0 && !f.exact(i, j).b().is_zero())
        throw RadicandMismatch("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is not a Gaussian rational");
      m(i, j) = f.exact(i, j).a();
    }
  return m;
}

template <class K>
std::string format_matrix_file(const Matrix<K>& m, FieldDescriptor field = FieldDescriptor::gaussian()) {
  std::ostringstream os;
  os << "kippen-matrix v1\nmode exact\nfield " << to_string(field) << "\nsize " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << '\n';
  }
  return os.str();
}

inline std::string format_matrix_file(const CMat& m) {
  std::ostringstream os;
  os << "kippen-matrix v1\nmode float\nsize " << m.rows() << ' ' << m.cols() << '\n';
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      cplx z = m(i, j);
      os << (j ? ", " : "") << z.real();
      if (z.imag() != 0) os << (z.imag() < 0 ? "" : "+") << z.imag() << 'i';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kippen
