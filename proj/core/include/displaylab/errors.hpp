#pragma once
#include <stdexcept>
#include <string>

namespace dlab {

enum class Errc {
    LevelTooLarge,
    RingMismatch,
    LengthMismatch,
    LengthTooShort,
    NotInI,
    NotInIdeal,
    NotUnit,
    InvalidParabolic,
    ShapeMismatch,
    LevelMismatch,
    SearchSpaceTooLarge,
    NotNilpotent,
    NoSolution,
    NotSameReduction,
    DegenerateInterpolation,
    SampleAtPole,
    WidthMismatch,
    RankMismatch,
    PeriodMismatch,
    UnsupportedBase,
    WeightOutOfRange,
    NotUnitary,
    InvalidMultidegree,
    InsufficientLevel,
    WidthExceedsP,
    IterationLeavesParabolic,
    EvenSubset,
    InsufficientPrecision,
    NotFiniteField,
    TotalMismatch,
    TranslationMultidegree,
    InvalidArgument,
    ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace dlab
