#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "superop.hpp"

namespace qci {

// Text formats.
//
// Channel file:              Density file:
//   dims <din> <dout>          dim <d>
//   block <k> <l>              <d rows of d entries>
//   <dout rows of dout entries>
//   ... one group per (k, l), each exactly once, any order
//
// Entries are complex numbers written like 1, -0.5, 2i, or 0.5-0.25i.
// Channel files are parsed without physics checks so that broken channels
// can still be audited; density files are validated on load.

inline bool parse_double_full(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

inline bool parse_complex_token(const std::string& token, complex& out) {
  std::string body = token;
  const bool has_i = !body.empty() && (body.back() == 'i' || body.back() == 'I');
  if (has_i) body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    const char c = body[p];
    if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (!has_i) {
    if (split != std::string::npos || !parse_double_full(body, re)) return false;
  } else if (split == std::string::npos) {
    if (!parse_double_full(body, im)) return false;
  } else {
    if (!parse_double_full(body.substr(0, split), re) || !parse_double_full(body.substr(split), im))
      return false;
  }
  out = complex(re, im);
  return true;
}

inline std::string format_complex(complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

namespace io_detail {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.clear();
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return true;
  }

  std::vector<std::string> require(const std::string& what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) throw ParseError(line_no + 1, "unexpected end of file, expected " + what);
    if (tokens.empty()) throw ParseError(line_no, "blank line, expected " + what);
    return tokens;
  }
};

inline Eigen::Index parse_index(LineReader& r, const std::string& tok, Eigen::Index lo, Eigen::Index hi,
                                const std::string& what) {
  double v = 0.0;
  if (!parse_double_full(tok, v) || v != static_cast<Eigen::Index>(v))
    throw ParseError(r.line_no, "'" + tok + "' is not an integer " + what);
  const auto n = static_cast<Eigen::Index>(v);
  if (n < lo || n > hi)
    throw ParseError(r.line_no, what + " " + tok + " out of range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
  return n;
}

inline CMatrix parse_matrix(LineReader& r, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    std::vector<std::string> tokens = r.require("a matrix row");
    if (static_cast<Eigen::Index>(tokens.size()) != cols)
      throw ParseError(r.line_no, "expected " + std::to_string(cols) + " entries, got " +
                                      std::to_string(tokens.size()));
    for (Eigen::Index j = 0; j < cols; ++j) {
      complex z;
      if (!parse_complex_token(tokens[j], z))
        throw ParseError(r.line_no, "'" + tokens[j] + "' is not a complex number");
      m(i, j) = z;
    }
  }
  return m;
}

inline void expect_eof(LineReader& r) {
  std::vector<std::string> tokens;
  while (r.next(tokens))
    if (!tokens.empty()) throw ParseError(r.line_no, "trailing content after the last block");
}

}  // namespace io_detail

inline Superoperator read_channel(std::istream& in) {
  io_detail::LineReader r{in};
  std::vector<std::string> head = r.require("'dims <din> <dout>'");
  if (head.size() != 3 || head[0] != "dims")
    throw ParseError(r.line_no, "expected 'dims <din> <dout>'");
  const Eigen::Index din = io_detail::parse_index(r, head[1], 1, 256, "input dimension");
  const Eigen::Index dout = io_detail::parse_index(r, head[2], 1, 256, "output dimension");

  std::vector<CMatrix> blocks(static_cast<std::size_t>(din * din));
  std::vector<bool> seen(blocks.size(), false);
  for (Eigen::Index b = 0; b < din * din; ++b) {
    std::vector<std::string> tag = r.require("'block <k> <l>'");
    if (tag.size() != 3 || tag[0] != "block") throw ParseError(r.line_no, "expected 'block <k> <l>'");
    const Eigen::Index k = io_detail::parse_index(r, tag[1], 0, din - 1, "block row index");
    const Eigen::Index l = io_detail::parse_index(r, tag[2], 0, din - 1, "block column index");
    if (seen[k * din + l])
      throw ParseError(r.line_no, "block " + std::to_string(k) + " " + std::to_string(l) + " given twice");
    seen[k * din + l] = true;
    blocks[k * din + l] = io_detail::parse_matrix(r, dout, dout);
  }
  io_detail::expect_eof(r);
  return Superoperator::from_blocks_unchecked(std::move(blocks), din, dout);
}

inline Superoperator read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open '" + path + "'");
  return read_channel(in);
}

inline void write_channel(std::ostream& out, const Superoperator& s) {
  const Superoperator c = s.canonical();
  out << "dims " << c.dim_in() << " " << c.dim_out() << "\n";
  for (Eigen::Index k = 0; k < c.dim_in(); ++k)
    for (Eigen::Index l = 0; l < c.dim_in(); ++l) {
      out << "block " << k << " " << l << "\n";
      const CMatrix& b = c.block(k, l);
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) out << (j ? " " : "") << format_complex(b(i, j));
        out << "\n";
      }
    }
}

inline DensityMatrix read_density(std::istream& in, double tol = strict_tol) {
  io_detail::LineReader r{in};
  std::vector<std::string> head = r.require("'dim <d>'");
  if (head.size() != 2 || head[0] != "dim") throw ParseError(r.line_no, "expected 'dim <d>'");
  const Eigen::Index d = io_detail::parse_index(r, head[1], 1, 4096, "dimension");
  CMatrix m = io_detail::parse_matrix(r, d, d);
  io_detail::expect_eof(r);
  return DensityMatrix(std::move(m), tol);
}

inline DensityMatrix read_density_file(const std::string& path, double tol = strict_tol) {
  std::ifstream in(path);
  if (!in) fail(Errc::io, "cannot open '" + path + "'");
  return read_density(in, tol);
}

inline void write_density(std::ostream& out, const DensityMatrix& rho) {
  out << "dim " << rho.dim() << "\n";
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j)
      out << (j ? " " : "") << format_complex(rho.mat()(i, j));
    out << "\n";
  }
}

}  // namespace qci
