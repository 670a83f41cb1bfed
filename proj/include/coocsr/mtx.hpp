#pragma once

// Matrix Market coordinate files ("%%MatrixMarket matrix coordinate real general").
// Only general real/integer matrices are accepted; symmetric, pattern and
// complex variants are rejected rather than expanded so that the entry list,
// duplicates included, is exactly what the file says.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "coocsr/coo.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"
#include "coocsr/text.hpp"

namespace coocsr {

struct MtxHeader {
  std::string object;
  std::string format;
  std::string field;
  std::string symmetry;
  Index rows = 0;
  Index cols = 0;
  Index nnz = 0;
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::ranges::transform(out, out.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

inline bool blank(std::string_view line) {
  return std::ranges::all_of(line, [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; });
}

}  // namespace detail

/// Parses a Matrix Market coordinate file. Indices are shifted to 0-based and
/// entries are kept in file order.
template <Scalar T>
CooMatrix<T> parse_mtx(std::string_view text, MtxHeader* header_out = nullptr) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "empty input");

  MtxHeader hdr;
  {
    const auto toks = split_tokens(lines[0]);
    if (toks.empty() || toks[0].text != "%%MatrixMarket") throw ParseError(1, 1, "missing %%MatrixMarket banner");
    if (toks.size() != 5) throw ParseError(1, 0, "banner needs object, format, field and symmetry");
    hdr.object = detail::lower(toks[1].text);
    hdr.format = detail::lower(toks[2].text);
    hdr.field = detail::lower(toks[3].text);
    hdr.symmetry = detail::lower(toks[4].text);
    if (hdr.object != "matrix") throw UnsupportedVariant("object '" + hdr.object + "' is not supported");
    if (hdr.format != "coordinate") throw UnsupportedVariant("format '" + hdr.format + "' is not supported");
    if (hdr.field != "real" && hdr.field != "integer")
      throw UnsupportedVariant("field '" + hdr.field + "' is not supported");
    if (hdr.symmetry != "general") throw UnsupportedVariant("symmetry '" + hdr.symmetry + "' is not supported");
  }
  const bool integer_field = hdr.field == "integer";

  std::size_t ln = 1;
  while (ln < lines.size() && (lines[ln].starts_with('%') || detail::blank(lines[ln]))) ++ln;
  if (ln >= lines.size()) throw ParseError(lines.size() + 1, 0, "missing size line");
  {
    const auto toks = split_tokens(lines[ln]);
    if (toks.size() != 3) throw ParseError(ln + 1, 0, "size line needs rows, cols and nnz");
    Index* dst[3] = {&hdr.rows, &hdr.cols, &hdr.nnz};
    for (std::size_t t = 0; t < 3; ++t) {
      const auto v = parse_integer<Index>(toks[t].text);
      if (!v || *v < 0) throw ParseError(ln + 1, toks[t].column, "expected a non-negative integer");
      *dst[t] = *v;
    }
  }
  ++ln;

  CooMatrix<T> coo{hdr.rows, hdr.cols, {}};
  coo.entries.reserve(static_cast<std::size_t>(std::min<Index>(hdr.nnz, 1 << 24)));
  for (; ln < lines.size(); ++ln) {
    const auto line = lines[ln];
    if (line.starts_with('%') || detail::blank(line)) continue;
    const std::size_t lineno = ln + 1;
    if (static_cast<Index>(coo.entries.size()) == hdr.nnz)
      throw ParseError(lineno, 0, "more entries than the declared " + std::to_string(hdr.nnz));
    const auto toks = split_tokens(line);
    if (toks.size() != 3) throw ParseError(lineno, 0, "entry needs row, column and value");
    const auto i = parse_integer<Index>(toks[0].text);
    if (!i) throw ParseError(lineno, toks[0].column, "bad row index");
    const auto j = parse_integer<Index>(toks[1].text);
    if (!j) throw ParseError(lineno, toks[1].column, "bad column index");
    T value{};
    if (integer_field) {
      const auto v = parse_integer<long long>(toks[2].text);
      if (!v) throw ParseError(lineno, toks[2].column, "bad integer value");
      value = static_cast<T>(*v);
    } else {
      const auto v = parse_scalar<T>(toks[2].text);
      if (!v) throw ParseError(lineno, toks[2].column, "bad real value");
      value = *v;
    }
    if (*i < 1 || *i > hdr.rows || *j < 1 || *j > hdr.cols)
      throw BoundsError(lineno, "entry (" + std::to_string(*i) + "," + std::to_string(*j) + ") outside " +
                                    std::to_string(hdr.rows) + "x" + std::to_string(hdr.cols));
    coo.entries.push_back({{*i - 1, *j - 1}, value});
  }
  if (static_cast<Index>(coo.entries.size()) != hdr.nnz)
    throw ParseError(lines.size() + 1, 0, "expected " + std::to_string(hdr.nnz) + " entries, found " +
                                            std::to_string(coo.entries.size()));
  if (!coo_wellformed(coo)) throw NotWellFormed("parsed COO matrix is not well-formed");
  if (header_out) *header_out = hdr;
  return coo;
}

/// Writes entries in their current order, 1-based, values in shortest
/// round-trip form.
template <Scalar T>
std::string write_mtx(const CooMatrix<T>& coo) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += std::to_string(coo.rows) + " " + std::to_string(coo.cols) + " " + std::to_string(coo.entries.size()) + "\n";
  for (const auto& e : coo.entries) {
    out += std::to_string(e.coord.row + 1);
    out += ' ';
    out += std::to_string(e.coord.col + 1);
    out += ' ';
    out += format_scalar(e.value);
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace coocsr
