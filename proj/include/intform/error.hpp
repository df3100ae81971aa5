#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intform {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands that do not share a variable list, chart or generator table.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Pullbacks outside the supported class (non-monomial even images,
/// non-invertible leading coefficient of a delta argument, ...).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A linear map produced a term outside its codomain window.
class WindowOverflow : public Error {
public:
    using Error::Error;
};

class NotTopForm : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace intform
