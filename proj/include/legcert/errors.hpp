// include/legcert/errors.hpp — error taxonomy shared by all modules.

#pragma once

#include <stdexcept>
#include <string>

namespace legcert {

enum class Errc {
    NonPositiveGenerator,
    GeneratorOutOfRange,
    NotAKnot,
    OddParityViolation,
    ParseError,
    EulerViolation,
    MultiComponent,
    UnlabeledUnboundedFace,
    InconsistentWinding,
    UnknownCrossing,
    TbMinusOne,
    Infeasible,
    UnboundedRequest,
    BudgetExceeded,
    NotBraidClosure,
    NoRsftDisk,
    LayoutFailure,
    BadCertificate,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPositiveGenerator: return "NonPositiveGenerator";
        case Errc::GeneratorOutOfRange: return "GeneratorOutOfRange";
        case Errc::NotAKnot: return "NotAKnot";
        case Errc::OddParityViolation: return "OddParityViolation";
        case Errc::ParseError: return "ParseError";
        case Errc::EulerViolation: return "EulerViolation";
        case Errc::MultiComponent: return "MultiComponent";
        case Errc::UnlabeledUnboundedFace: return "UnlabeledUnboundedFace";
        case Errc::InconsistentWinding: return "InconsistentWinding";
        case Errc::UnknownCrossing: return "UnknownCrossing";
        case Errc::TbMinusOne: return "TbMinusOne";
        case Errc::Infeasible: return "Infeasible";
        case Errc::UnboundedRequest: return "UnboundedRequest";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NotBraidClosure: return "NotBraidClosure";
        case Errc::NoRsftDisk: return "NoRsftDisk";
        case Errc::LayoutFailure: return "LayoutFailure";
        case Errc::BadCertificate: return "BadCertificate";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace legcert
