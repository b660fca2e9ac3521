#ifndef ARITHTHETA_ERRORS_HPP
#define ARITHTHETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ariththeta {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MixedProduct : Error {
    explicit MixedProduct(const std::string& m) : Error("mixed product: " + m) {}
};

struct NonPositive : Error {
    explicit NonPositive(const std::string& m) : Error("non-positive argument: " + m) {}
};

struct NotFundamental : Error {
    explicit NotFundamental(const std::string& m) : Error("not a fundamental discriminant: " + m) {}
};

struct PrecisionUnreachable : Error {
    explicit PrecisionUnreachable(const std::string& m) : Error("precision unreachable: " + m) {}
};

struct SingularGram : Error {
    explicit SingularGram(const std::string& m) : Error("singular Gram matrix: " + m) {}
};

struct IsotropicVector : Error {
    explicit IsotropicVector(const std::string& m) : Error("isotropic vector: " + m) {}
};

struct UnsupportedPlace : Error {
    explicit UnsupportedPlace(const std::string& m) : Error("unsupported place: " + m) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& m) : Error("not positive definite: " + m) {}
};

struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& m) : Error("enumeration bound exceeded: " + m) {}
};

struct SupportOverflow : Error {
    explicit SupportOverflow(const std::string& m) : Error("support outside finite model: " + m) {}
};

struct NonconvergentTail : Error {
    explicit NonconvergentTail(const std::string& m) : Error("nonconvergent geometric tail: " + m) {}
};

struct ZeroFirstComponent : Error {
    explicit ZeroFirstComponent(const std::string& m) : Error("first component is zero: " + m) {}
};

struct HigherOrderPole : Error {
    explicit HigherOrderPole(const std::string& m) : Error("pole of order > 1: " + m) {}
};

struct AmbiguousPlace : Error {
    explicit AmbiguousPlace(const std::string& m) : Error("more than one place contributes: " + m) {}
};

struct UnknownSuite : Error {
    explicit UnknownSuite(const std::string& m) : Error("unknown suite: " + m) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error("domain error: " + m) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error("parse error: " + m) {}
};

struct NotFree : Error {
    explicit NotFree(const std::string& m) : Error("module admits no free basis: " + m) {}
};

}  // namespace ariththeta

#endif
