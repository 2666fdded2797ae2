#include "isotori/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace isotori {

namespace {

bool is_digits(const std::string& s, std::size_t begin, std::size_t end) {
  if (begin >= end) return false;
  for (std::size_t i = begin; i < end; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Splits the stream into whitespace tokens, dropping comment lines.
std::vector<std::string> tokens(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(tok);
  }
  return out;
}

long parse_count(const std::string& tok, const char* what) {
  if (!is_digits(tok, 0, tok.size()) || tok.size() > 6)
    throw FormatError(std::string("invalid ") + what + " '" + tok + "'");
  return std::stol(tok);
}

}  // namespace

Rat parse_rational(const std::string& token) {
  std::size_t start = (!token.empty() && (token[0] == '-' || token[0] == '+')) ? 1 : 0;
  const std::size_t slash = token.find('/');
  if (slash == std::string::npos) {
    if (!is_digits(token, start, token.size())) throw FormatError("invalid entry '" + token + "'");
    return Rat(Int(token.substr(start)) * (token[0] == '-' ? -1 : 1));
  }
  if (!is_digits(token, start, slash) || !is_digits(token, slash + 1, token.size()))
    throw FormatError("invalid entry '" + token + "'");
  Int num(token.substr(start, slash - start));
  Int den(token.substr(slash + 1));
  if (den == 0) throw FormatError("zero denominator in '" + token + "'");
  if (token[0] == '-') num = -num;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

RatMatrix read_matrix(std::istream& in) {
  const auto toks = tokens(in);
  if (toks.size() < 2) throw FormatError("missing '<rows> <cols>' header");
  const long rows = parse_count(toks[0], "row count");
  const long cols = parse_count(toks[1], "column count");
  const std::size_t expected = static_cast<std::size_t>(rows * cols);
  if (toks.size() - 2 != expected)
    throw FormatError("expected " + std::to_string(expected) + " entries, found " +
                      std::to_string(toks.size() - 2));
  RatMatrix m(rows, cols);
  std::size_t k = 2;
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = parse_rational(toks[k++]);
  return m;
}

RatMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const RatMatrix& m, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).get_str();
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const IntMatrix& m, const std::string& comment) {
  write_matrix(out, to_rat(m), comment);
}

std::string format_matrix(const RatMatrix& m, const std::string& comment) {
  std::ostringstream os;
  write_matrix(os, m, comment);
  return os.str();
}

}  // namespace isotori
