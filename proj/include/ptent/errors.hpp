#ifndef PTENT_ERRORS_HPP
#define PTENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptent {

// Every failure mode gets its own type so callers can react selectively,
// plus a stable code string so the CLI can print machine-parsable errors.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define PTENT_DEFINE_ERROR(NAME)                                     \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& msg) : Error(#NAME, msg) {} \
    }

PTENT_DEFINE_ERROR(InvalidParams);
PTENT_DEFINE_ERROR(RealityConditionViolated);
PTENT_DEFINE_ERROR(NotBrokenRegime);
PTENT_DEFINE_ERROR(SingularEta);
PTENT_DEFINE_ERROR(NotADensityMatrix);
PTENT_DEFINE_ERROR(NonNormalizedState);
PTENT_DEFINE_ERROR(InvalidWeights);
PTENT_DEFINE_ERROR(LabelMismatch);
PTENT_DEFINE_ERROR(UnsupportedTruncation);
PTENT_DEFINE_ERROR(StepSizeTooLarge);

#undef PTENT_DEFINE_ERROR

} // namespace ptent

#endif
