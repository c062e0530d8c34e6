#pragma once

#include <stdexcept>
#include <string>

namespace imploder {

// Failure codes surfaced across the library. The CLI maps these to exit
// code 2 together with a machine-readable JSON object on stderr.
enum class Errc {
  NoConvergence,
  Resource,
  NotParabolic,
  Degenerate,
  NotInBasin,
  OutOfDomain,
  Overflow,
  Pole,
  Ambiguous,
  NoFixedPoint,
  NoN0,
  Io,
  Usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace imploder
