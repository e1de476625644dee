#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilgen {

enum class Errc {
    DimensionMismatch,
    NotAlternating,
    BadPrime,
    BadPartial,
    BadEmbedding,
    TooLarge,
    BadBase,
    PreconditionFailed,
    NotApplicable,
    TooSmall,
    ParseError,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; `line()` is nonzero only for
// errors raised while parsing text input.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::size_t line = 0);

    Errc code() const noexcept { return code_; }
    std::size_t line() const noexcept { return line_; }

private:
    Errc code_;
    std::size_t line_;
};

} // namespace nilgen
