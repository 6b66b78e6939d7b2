#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinstat {

struct CoincidentPoints : std::invalid_argument {
  std::size_t first;
  std::size_t second;
  CoincidentPoints(std::size_t i, std::size_t j)
      : std::invalid_argument("coincident points at indices " + std::to_string(i) + " and " +
                              std::to_string(j)),
        first(i),
        second(j) {}
};

struct ZeroVector : std::invalid_argument {
  ZeroVector() : std::invalid_argument("zero vector has no chart representative") {}
};

struct AmbiguousWinding : std::invalid_argument {
  explicit AmbiguousWinding(const std::string& what) : std::invalid_argument(what) {}
};

struct NotInvolutive : std::domain_error {
  explicit NotInvolutive(const std::string& what = "boundary condition is not involutive")
      : std::domain_error(what) {}
};

struct NonIntegerLambda : std::domain_error {
  NonIntegerLambda() : std::domain_error("lambda must be an integer in three dimensions") {}
};

struct GridMismatch : std::invalid_argument {
  explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct AsymmetricGrid : std::invalid_argument {
  explicit AsymmetricGrid(const std::string& what = "z grid is not symmetric about 0")
      : std::invalid_argument(what) {}
};

struct InvalidLabel : std::invalid_argument {
  explicit InvalidLabel(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyOverlap : std::invalid_argument {
  explicit EmptyOverlap(const std::string& what = "spectrum windows do not overlap")
      : std::invalid_argument(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaMismatch : std::runtime_error {
  explicit SchemaMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinstat
