#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

enum class ErrorCode {
  domain,               // argument outside the mathematical domain
  config,               // inconsistent parameters (degree bounds, N0, ...)
  divergent_moment,     // c_q with n - 5 - 2q <= 1
  slow_convergence,     // series requested where it converges too slowly
  not_converged,        // quadrature budget exhausted
  no_real_root,         // negative discriminant in the a0 construction
  degenerate_dimension  // Weyl space is trivial for m <= 3
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blowup
