#pragma once

#include <stdexcept>
#include <string>

namespace dmr {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDenominator : EngineError {
    explicit ZeroDenominator(const std::string& m) : EngineError("ZeroDenominator: " + m) {}
};
struct DivisionByZero : EngineError {
    explicit DivisionByZero(const std::string& m) : EngineError("DivisionByZero: " + m) {}
};
struct PoleAtPoint : EngineError {
    explicit PoleAtPoint(const std::string& m) : EngineError("PoleAtPoint: " + m) {}
};
struct ParseError : EngineError {
    explicit ParseError(const std::string& m) : EngineError("ParseError: " + m) {}
};
struct NotExact : EngineError {
    explicit NotExact(const std::string& m) : EngineError("NotExact: " + m) {}
};
struct MissingFlow : EngineError {
    explicit MissingFlow(const std::string& m) : EngineError("MissingFlow: " + m) {}
};
struct NotInSpace : EngineError {
    explicit NotInSpace(const std::string& m) : EngineError("NotInSpace: " + m) {}
};
struct TruncationMismatch : EngineError {
    explicit TruncationMismatch(const std::string& m) : EngineError("TruncationMismatch: " + m) {}
};
struct NonSmallArgument : EngineError {
    explicit NonSmallArgument(const std::string& m) : EngineError("NonSmallArgument: " + m) {}
};
struct ImaginarySpeed : EngineError {
    explicit ImaginarySpeed(const std::string& m) : EngineError("ImaginarySpeed: " + m) {}
};
struct ZeroDispersion : EngineError {
    explicit ZeroDispersion(const std::string& m) : EngineError("ZeroDispersion: " + m) {}
};
struct UnremovableSecularity : EngineError {
    explicit UnremovableSecularity(const std::string& m) : EngineError("UnremovableSecularity: " + m) {}
};
struct Eps7Unsatisfied : EngineError {
    explicit Eps7Unsatisfied(const std::string& m) : EngineError("Eps7Unsatisfied: " + m) {}
};
struct UncoveredVariable : EngineError {
    explicit UncoveredVariable(const std::string& m) : EngineError("UncoveredVariable: " + m) {}
};

} // namespace dmr
