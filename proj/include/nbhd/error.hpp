#pragma once

#include <stdexcept>
#include <string>

namespace nbhd {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NBHD_DEFINE_ERROR(Name)                                              \
    class Name : public ::nbhd::Error {                                      \
    public:                                                                  \
        explicit Name(const std::string& what) : ::nbhd::Error(#Name ": " + what) {} \
    }

NBHD_DEFINE_ERROR(NonInvertibleSubstitution);
NBHD_DEFINE_ERROR(DimensionMismatch);
NBHD_DEFINE_ERROR(NotUnipotent);
NBHD_DEFINE_ERROR(NotAdapted);
NBHD_DEFINE_ERROR(InvalidAlgebra);
NBHD_DEFINE_ERROR(SectionNotValued);
NBHD_DEFINE_ERROR(NotMaurerCartan);
NBHD_DEFINE_ERROR(NotFlat);
NBHD_DEFINE_ERROR(NotClosed);
NBHD_DEFINE_ERROR(NotOLinear);
NBHD_DEFINE_ERROR(FrameMismatch);
NBHD_DEFINE_ERROR(UnsupportedSheaf);
NBHD_DEFINE_ERROR(UnsupportedOrder);
NBHD_DEFINE_ERROR(ParseError);
NBHD_DEFINE_ERROR(SchemaVersionError);
NBHD_DEFINE_ERROR(UnknownScenario);
NBHD_DEFINE_ERROR(ValidationError);

#undef NBHD_DEFINE_ERROR

/// Error raised inside a pipeline stage, tagged with the stage name.
class StageError : public Error {
public:
    StageError(const std::string& stage, const std::string& what)
        : Error("stage '" + stage + "': " + what), stage_(stage) {}
    [[nodiscard]] const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace nbhd
