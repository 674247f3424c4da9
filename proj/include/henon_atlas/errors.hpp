#pragma once

#include <stdexcept>
#include <string>

namespace henon {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HENON_DEFINE_ERROR(Name)                                 \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

// Orbit left every bounded region (non-finite arithmetic or escape radius).
HENON_DEFINE_ERROR(Escape);
HENON_DEFINE_ERROR(NotInvertible);
HENON_DEFINE_ERROR(DegenerateFamily);
HENON_DEFINE_ERROR(NotAFixedPoint);
HENON_DEFINE_ERROR(NoRealFixedPoints);
HENON_DEFINE_ERROR(SingularLinearPart);
HENON_DEFINE_ERROR(InvalidPolynomial);
HENON_DEFINE_ERROR(NotASaddle31);
HENON_DEFINE_ERROR(AssumptionViolated);
HENON_DEFINE_ERROR(NoUnstableDirection);
HENON_DEFINE_ERROR(NoStableDirection);
HENON_DEFINE_ERROR(WrongSplitting);
HENON_DEFINE_ERROR(InvalidConfig);
HENON_DEFINE_ERROR(IOFailure);
HENON_DEFINE_ERROR(UnknownPreset);

#undef HENON_DEFINE_ERROR

// Run-spec parse failure; carries the offending file and line.
class SpecParseError : public Error {
public:
    SpecParseError(const std::string& file, int line, const std::string& msg)
        : Error(file + ":" + std::to_string(line) + ": " + msg), file_(file), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }

private:
    std::string file_;
    int line_;
};

} // namespace henon
