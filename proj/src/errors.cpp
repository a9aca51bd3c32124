#include "sfkit/errors.hpp"

namespace sfkit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
        case ErrorCode::NonPositivePrice: return "NonPositivePrice";
        case ErrorCode::MissingVolume: return "MissingVolume";
        case ErrorCode::SeriesTooShort: return "SeriesTooShort";
        case ErrorCode::InsufficientTailData: return "InsufficientTailData";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::InsufficientRange: return "InsufficientRange";
        case ErrorCode::CheckpointOutOfRange: return "CheckpointOutOfRange";
        case ErrorCode::NoOnsets: return "NoOnsets";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::DegenerateRegression: return "DegenerateRegression";
        case ErrorCode::DegenerateAbscissae: return "DegenerateAbscissae";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonPositiveMeanReturn: return "NonPositiveMeanReturn";
        case ErrorCode::NonPositiveCorrelationInRange: return "NonPositiveCorrelationInRange";
        case ErrorCode::OptimizerDidNotConverge: return "OptimizerDidNotConverge";
        case ErrorCode::DidNotConverge: return "DidNotConverge";
        case ErrorCode::SingularNormalEquations: return "SingularNormalEquations";
        case ErrorCode::NonFiniteResidual: return "NonFiniteResidual";
        case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
        case ErrorCode::InvalidParameters: return "InvalidParameters";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "UnknownError";
}

}  // namespace sfkit
