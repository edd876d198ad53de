#pragma once

#include <stdexcept>
#include <string>

namespace esfv {

// Error categories aligned with the process exit-code contract:
// 2 = configuration, 3 = runtime admissibility, 4 = property failure, 5 = io.
enum class errc : int {
  config = 2,
  runtime = 3,
  property = 4,
  io = 5,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace esfv
