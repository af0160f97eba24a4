#pragma once

#include <stdexcept>
#include <string>

namespace qci {

// Failure categories shared across the library. Constructors of checked
// types throw; report-style routines (check_cp_tp) never do.
enum class Errc {
  not_square,
  not_hermitian,
  no_convergence,
  dim_mismatch,
  not_psd,
  bloch_norm_exceeded,
  not_unitary,
  not_projector,
  not_povm,
  projectors_overlap,
  not_orthonormal,
  not_trace_preserving,
  cp_violated,
  domain,
  parse,
  io,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_square: return "not_square";
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::no_convergence: return "no_convergence";
    case Errc::dim_mismatch: return "dim_mismatch";
    case Errc::not_psd: return "not_psd";
    case Errc::bloch_norm_exceeded: return "bloch_norm_exceeded";
    case Errc::not_unitary: return "not_unitary";
    case Errc::not_projector: return "not_projector";
    case Errc::not_povm: return "not_povm";
    case Errc::projectors_overlap: return "projectors_overlap";
    case Errc::not_orthonormal: return "not_orthonormal";
    case Errc::not_trace_preserving: return "not_trace_preserving";
    case Errc::cp_violated: return "cp_violated";
    case Errc::domain: return "domain";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failures carry the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(Errc::parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace qci
