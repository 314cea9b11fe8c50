#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace msymp {

enum class Errc {
    SyntaxError,
    UnboundSymbol,
    NotPolynomial,
    DivisionByZero,
    ChartMismatch,
    DegreeMismatch,
    NoInverse,
    InverseCheckFailed,
    VerticalConditionViolated,
    NotInNormalForm,
    NotClosed,
    HomotopyNotPolynomial,
    NotCartan,
    OrderMismatch,
    MissingTheta,
    InvalidArgument,
};

const char* errc_name(Errc c);

class MsympError : public std::runtime_error {
public:
    MsympError(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    MsympError(Errc code, std::string message, size_t position, std::string expected)
        : std::runtime_error(std::move(message)),
          code_(code),
          position_(position),
          expected_(std::move(expected)) {}

    Errc code() const { return code_; }
    size_t position() const { return position_; }       // syntax errors: byte offset
    const std::string& expected() const { return expected_; }

    // NotInNormalForm carries the offending term texts.
    std::vector<std::string> terms;

private:
    Errc code_;
    size_t position_ = 0;
    std::string expected_;
};

}  // namespace msymp
