#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropcurve {

// Domain or input error: bad arguments, violated preconditions.
class TropError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed file content. `position` is a byte offset when known.
class ParseError : public TropError {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : TropError(what), position_(position) {}
    std::size_t position() const { return position_; }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t position_;
};

}  // namespace tropcurve
