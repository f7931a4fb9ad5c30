#pragma once

#include <stdexcept>
#include <string>

namespace rcis {

struct DenominatorZeroOnGrid : std::runtime_error {
  explicit DenominatorZeroOnGrid(const std::string& what) : std::runtime_error(what) {}
};

struct RootFindingFailure : std::runtime_error {
  explicit RootFindingFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroOnUnitCircle : std::runtime_error {
  explicit ZeroOnUnitCircle(const std::string& what) : std::runtime_error(what) {}
};

struct UnstablePlant : std::runtime_error {
  explicit UnstablePlant(const std::string& what) : std::runtime_error(what) {}
};

struct AlgebraicLoop : std::runtime_error {
  explicit AlgebraicLoop(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParameters : std::runtime_error {
  explicit InvalidParameters(const std::string& what) : std::runtime_error(what) {}
};

struct PreviewExceedsBuffer : std::runtime_error {
  explicit PreviewExceedsBuffer(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateFrequency : std::runtime_error {
  explicit DuplicateFrequency(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooCoarse : std::runtime_error {
  explicit GridTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
  explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SingularReturnDifference : std::runtime_error {
  explicit SingularReturnDifference(const std::string& what) : std::runtime_error(what) {}
};

struct NominalDesignInfeasible : std::runtime_error {
  explicit NominalDesignInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct DesignExhausted : std::runtime_error {
  explicit DesignExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct IllPosedLoop : std::runtime_error {
  explicit IllPosedLoop(const std::string& what) : std::runtime_error(what) {}
};

struct TooFewStamps : std::runtime_error {
  explicit TooFewStamps(const std::string& what) : std::runtime_error(what) {}
};

struct HorizonTooShort : std::runtime_error {
  explicit HorizonTooShort(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rcis
