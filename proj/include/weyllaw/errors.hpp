#pragma once

#include <stdexcept>
#include <string>

namespace wl {

// Every error raised by the library derives from Error; `kind()` names the
// condition so the CLI can report it with module context.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define WL_DEFINE_ERROR(Name)                                              \
    struct Name : Error {                                                  \
        explicit Name(const std::string& w) : Error(#Name, w) {}           \
    };

WL_DEFINE_ERROR(LengthMismatch)
WL_DEFINE_ERROR(SingularParameter)
WL_DEFINE_ERROR(NonConvergent)
WL_DEFINE_ERROR(NearSingular)
WL_DEFINE_ERROR(PreconditionViolated)
WL_DEFINE_ERROR(TruncationTooCoarse)
WL_DEFINE_ERROR(SingularMatrix)
WL_DEFINE_ERROR(ScaleExceeded)
WL_DEFINE_ERROR(DivisibilityViolation)
WL_DEFINE_ERROR(FactorizationTooLarge)
WL_DEFINE_ERROR(RootPrecisionLoss)
WL_DEFINE_ERROR(AssertionFailed)
WL_DEFINE_ERROR(BadPlace)
WL_DEFINE_ERROR(Unstable)
WL_DEFINE_ERROR(TailTooLarge)
WL_DEFINE_ERROR(ConfigInvalid)

#undef WL_DEFINE_ERROR

}  // namespace wl
