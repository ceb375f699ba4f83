#pragma once

#include <stdexcept>

namespace cqsl {

// Base class for every failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct TraceDeviation : Error { using Error::Error; };
struct EigenFailure : Error { using Error::Error; };
struct DegenerateState : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct ValidationFailure : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct EigenTrackingFailure : Error { using Error::Error; };
struct SingularInput : Error { using Error::Error; };
struct ZeroSpeed : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace cqsl
