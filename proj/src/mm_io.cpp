#include "bse/mm_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bse::mm {

namespace {

const char* symmetry_token(Symmetry sym) {
  switch (sym) {
    case Symmetry::General: return "general";
    case Symmetry::Symmetric: return "symmetric";
    default: return "hermitian";
  }
}

// 17 significant digits: the shortest representation that round-trips every
// double through text exactly.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Header {
  bool coordinate = false;
  bool complex_field = false;
  bool integer_field = false;
  Symmetry sym = Symmetry::General;
};

class LineReader {
 public:
  explicit LineReader(const std::string& path) : in_(path), path_(path) {
    if (!in_) throw IoError("cannot open " + path);
  }

  // Next line that is neither blank nor a comment; false at end of file.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (first_content_) {
        first_content_ = false;
        return true;  // header line, even though it starts with %
      }
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '%') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << path_ << ":" << line_no_ << ": " << what;
    throw ParseError(os.str(), line_no_);
  }

  long line_no() const { return line_no_; }

 private:
  std::ifstream in_;
  std::string path_;
  long line_no_ = 0;
  bool first_content_ = true;
};

Header parse_header(LineReader& reader) {
  std::string line;
  if (!reader.next(line)) reader.fail("empty file");
  std::istringstream is(line);
  std::string banner, object, format, field, symmetry;
  is >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") reader.fail("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") reader.fail("unsupported object '" + object + "'");

  Header h;
  const std::string fmt_l = lower(format);
  if (fmt_l == "coordinate") {
    h.coordinate = true;
  } else if (fmt_l != "array") {
    reader.fail("unsupported format '" + format + "'");
  }

  const std::string field_l = lower(field);
  if (field_l == "complex") {
    h.complex_field = true;
  } else if (field_l == "integer") {
    h.integer_field = true;
  } else if (field_l != "real") {
    reader.fail("unsupported field '" + field + "'");
  }

  const std::string sym_l = lower(symmetry);
  if (sym_l == "general") {
    h.sym = Symmetry::General;
  } else if (sym_l == "symmetric") {
    h.sym = Symmetry::Symmetric;
  } else if (sym_l == "hermitian") {
    h.sym = Symmetry::Hermitian;
  } else {
    reader.fail("unsupported symmetry '" + symmetry + "'");
  }
  return h;
}

double parse_double(LineReader& reader, const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') reader.fail("malformed numeric value '" + token + "'");
  return value;
}

Complex parse_value(LineReader& reader, std::istringstream& is, const Header& h) {
  std::string tok_re;
  if (!(is >> tok_re)) reader.fail("missing value");
  const double re = parse_double(reader, tok_re);
  if (!h.complex_field) return Complex(re, 0.0);
  std::string tok_im;
  if (!(is >> tok_im)) reader.fail("missing imaginary part");
  return Complex(re, parse_double(reader, tok_im));
}

void expect_line_end(LineReader& reader, std::istringstream& is) {
  std::string extra;
  if (is >> extra) reader.fail("trailing token '" + extra + "'");
}

Matrix read_impl(const std::string& path, bool* was_complex) {
  LineReader reader(path);
  const Header h = parse_header(reader);
  if (was_complex) *was_complex = h.complex_field;

  std::string line;
  if (!reader.next(line)) reader.fail("missing size line");
  std::istringstream sizes(line);
  long rows = 0, cols = 0, declared_nnz = 0;
  if (!(sizes >> rows >> cols)) reader.fail("malformed size line");
  if (h.coordinate && !(sizes >> declared_nnz)) reader.fail("coordinate size line needs nnz");
  expect_line_end(reader, sizes);
  if (rows < 1 || cols < 1) reader.fail("matrix dimensions must be positive");
  if (h.sym != Symmetry::General && rows != cols) {
    reader.fail("symmetric/hermitian matrices must be square");
  }

  Matrix m = Matrix::Zero(rows, cols);

  if (h.coordinate) {
    for (long e = 0; e < declared_nnz; ++e) {
      if (!reader.next(line)) reader.fail("file ends before all declared entries are read");
      std::istringstream is(line);
      long i = 0, j = 0;
      if (!(is >> i >> j)) reader.fail("malformed coordinate entry");
      if (i < 1 || i > rows || j < 1 || j > cols) reader.fail("index out of range");
      if (h.sym != Symmetry::General && j > i) {
        reader.fail("symmetric/hermitian coordinate entries must lie on or below the diagonal");
      }
      const Complex v = parse_value(reader, is, h);
      expect_line_end(reader, is);
      m(i - 1, j - 1) = v;
    }
  } else {
    const bool packed = h.sym != Symmetry::General;
    for (long j = 0; j < cols; ++j) {
      for (long i = packed ? j : 0; i < rows; ++i) {
        if (!reader.next(line)) {
          reader.fail("file ends before all declared entries are read");
        }
        std::istringstream is(line);
        const Complex v = parse_value(reader, is, h);
        expect_line_end(reader, is);
        m(i, j) = v;
      }
    }
  }
  if (reader.next(line)) reader.fail("unexpected content after the declared entries");

  if (h.sym == Symmetry::Symmetric) {
    for (long j = 0; j < cols; ++j)
      for (long i = j + 1; i < rows; ++i) m(j, i) = m(i, j);
  } else if (h.sym == Symmetry::Hermitian) {
    for (long j = 0; j < cols; ++j)
      for (long i = j + 1; i < rows; ++i) m(j, i) = std::conj(m(i, j));
  }
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

void write_complex(const std::string& path, const Matrix& m, Symmetry sym) {
  if (sym != Symmetry::General && m.rows() != m.cols()) {
    throw DimensionMismatch("symmetric/hermitian output requires a square matrix");
  }
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix array complex " << symmetry_token(sym) << "\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = sym == Symmetry::General ? 0 : j; i < m.rows(); ++i) {
      out << fmt(m(i, j).real()) << " " << fmt(m(i, j).imag()) << "\n";
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

void write_real(const std::string& path, const RealMatrix& m, Symmetry sym) {
  if (sym == Symmetry::Hermitian) sym = Symmetry::Symmetric;
  if (sym != Symmetry::General && m.rows() != m.cols()) {
    throw DimensionMismatch("symmetric output requires a square matrix");
  }
  std::ofstream out = open_out(path);
  out << "%%MatrixMarket matrix array real " << symmetry_token(sym) << "\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = sym == Symmetry::General ? 0 : j; i < m.rows(); ++i) {
      out << fmt(m(i, j)) << "\n";
    }
  }
  if (!out) throw IoError("write failed for " + path);
}

Matrix read_complex(const std::string& path) { return read_impl(path, nullptr); }

RealMatrix read_real(const std::string& path) {
  bool was_complex = false;
  const Matrix m = read_impl(path, &was_complex);
  if (was_complex) {
    throw ParseError(path + ": expected a real-valued file, found complex field", 1);
  }
  return m.real();
}

}  // namespace bse::mm
