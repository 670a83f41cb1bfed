#pragma once

// Canonical text form of a CSR matrix:
//
//   %%CsrDocument 1 binary64
//   <rows> <cols> <nnz>
//   row_ptr
//   <rows+1 integers>
//   col_ind
//   <nnz integers>
//   vals
//   <nnz scalars, shortest round-trip>
//
// Sequences are single-space separated on one line (an empty line when
// empty) and every line ends in '\n'. Reading then writing a canonical
// document reproduces it byte for byte.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coocsr/csr.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"
#include "coocsr/text.hpp"

namespace coocsr {

inline constexpr std::string_view csr_document_magic = "%%CsrDocument";
inline constexpr int csr_document_version = 1;

template <Scalar T>
std::string write_csr_document(const CsrMatrix<T>& csr) {
  std::string out;
  out += csr_document_magic;
  out += " " + std::to_string(csr_document_version) + " ";
  out += to_string(format_of<T>);
  out += '\n';
  out += std::to_string(csr.rows()) + " " + std::to_string(csr.cols) + " " + std::to_string(csr.nnz()) + "\n";

  auto join = [&](const auto& seq, auto fmt) {
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (k) out += ' ';
      out += fmt(seq[k]);
    }
    out += '\n';
  };
  out += "row_ptr\n";
  join(csr.row_ptr, [](Index v) { return std::to_string(v); });
  out += "col_ind\n";
  join(csr.col_ind, [](Index v) { return std::to_string(v); });
  out += "vals\n";
  join(csr.vals, [](T v) { return format_scalar(v); });
  return out;
}

/// Scalar format named in a document's first line.
inline ScalarFormat csr_document_format(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "empty CSR document");
  const auto toks = split_tokens(lines[0]);
  if (toks.size() != 3 || toks[0].text != csr_document_magic)
    throw ParseError(1, 1, "expected '%%CsrDocument <version> <format>'");
  if (toks[1].text != std::to_string(csr_document_version))
    throw ParseError(1, toks[1].column, "unsupported document version");
  if (toks[2].text == "binary64") return ScalarFormat::binary64;
  if (toks[2].text == "binary32") return ScalarFormat::binary32;
  throw ParseError(1, toks[2].column, "unknown scalar format");
}

/// Parses a document. Only the layout is validated here; use
/// csr_wellformed_report for the structural invariants.
template <Scalar T>
CsrMatrix<T> read_csr_document(std::string_view text) {
  if (csr_document_format(text) != format_of<T>)
    throw ParseError(1, 0, "document scalar format is not " + std::string(to_string(format_of<T>)));
  const auto lines = split_lines(text);
  if (lines.size() < 8) throw ParseError(lines.size() + 1, 0, "truncated CSR document");
  if (lines.size() > 8) throw ParseError(9, 0, "trailing content after vals");

  const auto dims = split_tokens(lines[1]);
  if (dims.size() != 3) throw ParseError(2, 0, "expected rows, cols and nnz");
  Index hdr[3];
  for (std::size_t t = 0; t < 3; ++t) {
    const auto v = parse_integer<Index>(dims[t].text);
    if (!v || *v < 0) throw ParseError(2, dims[t].column, "expected a non-negative integer");
    hdr[t] = *v;
  }
  const auto [rows, cols, nnz] = hdr;

  auto expect_label = [&](std::size_t idx, std::string_view label) {
    if (lines[idx] != label) throw ParseError(idx + 1, 1, "expected '" + std::string(label) + "'");
  };
  auto read_indices = [&](std::size_t idx, Index count) {
    const auto toks = split_tokens(lines[idx]);
    if (static_cast<Index>(toks.size()) != count)
      throw ParseError(idx + 1, 0, "expected " + std::to_string(count) + " values, found " + std::to_string(toks.size()));
    std::vector<Index> out;
    out.reserve(toks.size());
    for (const auto& t : toks) {
      const auto v = parse_integer<Index>(t.text);
      if (!v) throw ParseError(idx + 1, t.column, "bad integer");
      out.push_back(*v);
    }
    return out;
  };

  CsrMatrix<T> csr;
  csr.cols = cols;
  expect_label(2, "row_ptr");
  csr.row_ptr = read_indices(3, rows + 1);
  expect_label(4, "col_ind");
  csr.col_ind = read_indices(5, nnz);
  expect_label(6, "vals");
  const auto toks = split_tokens(lines[7]);
  if (static_cast<Index>(toks.size()) != nnz)
    throw ParseError(8, 0, "expected " + std::to_string(nnz) + " values, found " + std::to_string(toks.size()));
  csr.vals.reserve(toks.size());
  for (const auto& t : toks) {
    const auto v = parse_scalar<T>(t.text);
    if (!v) throw ParseError(8, t.column, "bad scalar");
    csr.vals.push_back(*v);
  }
  return csr;
}

}  // namespace coocsr
