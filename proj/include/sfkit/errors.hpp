#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfkit {

enum class ErrorCode {
    // data / ingestion
    FileNotFound,
    ParseError,
    NonMonotonicTimestamps,
    NonPositivePrice,
    MissingVolume,
    SeriesTooShort,
    InsufficientTailData,
    InsufficientData,
    InsufficientRange,
    CheckpointOutOfRange,
    NoOnsets,
    // numerical
    ZeroVariance,
    DegenerateRegression,
    DegenerateAbscissae,
    LengthMismatch,
    NonPositiveMeanReturn,
    NonPositiveCorrelationInRange,
    OptimizerDidNotConverge,
    DidNotConverge,
    SingularNormalEquations,
    NonFiniteResidual,
    NotPowerOfTwo,
    InvalidParameters,
    // configuration
    ConfigInvalid,
};

// Exit-code buckets used by the CLI: 2 config, 3 data, 4 numerical.
enum class ErrorClass { Config = 2, Data = 3, Numerical = 4 };

constexpr ErrorClass error_class(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigInvalid:
            return ErrorClass::Config;
        case ErrorCode::FileNotFound:
        case ErrorCode::ParseError:
        case ErrorCode::NonMonotonicTimestamps:
        case ErrorCode::NonPositivePrice:
        case ErrorCode::MissingVolume:
        case ErrorCode::SeriesTooShort:
        case ErrorCode::InsufficientTailData:
        case ErrorCode::InsufficientData:
        case ErrorCode::InsufficientRange:
        case ErrorCode::CheckpointOutOfRange:
        case ErrorCode::NoOnsets:
            return ErrorClass::Data;
        default:
            return ErrorClass::Numerical;
    }
}

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorClass cls() const noexcept { return error_class(code_); }

private:
    ErrorCode code_;
};

}  // namespace sfkit
