#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace opuckit {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Error categories; each maps to a distinct process exit code in the CLI.
enum class errc {
  parse = 2,         // malformed input file / unknown field
  precondition = 3,  // contract violated by caller data
  degenerate = 4,    // numerically degenerate configuration (boundary zeros, singular moments)
  numeric = 5,       // ill-conditioned solve, failed convergence
  io = 6,            // file system problems
  internal = 7,      // consistency check failed inside the library
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

inline bool is_pow2(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

inline double sqr(double x) noexcept { return x * x; }

}  // namespace opuckit
