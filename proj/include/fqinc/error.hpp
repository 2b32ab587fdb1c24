#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqinc {

/// Failure categories raised by the library. The CLI maps these to exit codes.
enum class ErrorKind {
    NonPrimeP,
    ReducibleModulus,
    DivisionByZero,
    IndexOutOfRange,
    DimensionMismatch,
    MixedOrders,
    InvalidFamily,
    InvalidRange,
    EvenCharacteristic,
    SingularMatrix,
    TooLarge,
    FormulaMismatch,
    AnnihilationFailed,
    MultiplicityMismatch,
    EigenvectorMismatch,
    PreconditionFailed,
    ParseError,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonPrimeP: return "NonPrimeP";
        case ErrorKind::ReducibleModulus: return "ReducibleModulus";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::MixedOrders: return "MixedOrders";
        case ErrorKind::InvalidFamily: return "InvalidFamily";
        case ErrorKind::InvalidRange: return "InvalidRange";
        case ErrorKind::EvenCharacteristic: return "EvenCharacteristic";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::FormulaMismatch: return "FormulaMismatch";
        case ErrorKind::AnnihilationFailed: return "AnnihilationFailed";
        case ErrorKind::MultiplicityMismatch: return "MultiplicityMismatch";
        case ErrorKind::EigenvectorMismatch: return "EigenvectorMismatch";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace fqinc
