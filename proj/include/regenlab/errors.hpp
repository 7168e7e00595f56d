#pragma once

#include <stdexcept>
#include <string>

namespace regenlab {

enum class Errc {
  InvalidParams,
  TooManyBlocks,
  InvalidHistory,
  Infeasible,
  UnusableEdge,
  TooLarge,
  DegenerateAllocation,
  BadConfig,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace regenlab
