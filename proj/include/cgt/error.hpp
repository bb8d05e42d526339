#pragma once

#include <stdexcept>
#include <string>

namespace cgt {

// Malformed or out-of-contract input. The CLI maps this to exit code 1.
class InputError : public std::runtime_error
{
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured state, pile or cell bound was exceeded. The CLI maps this to exit code 2.
class BoundExceeded : public std::runtime_error
{
public:
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cgt
