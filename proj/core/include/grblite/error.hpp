#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace grblite {

/// Every failure in the library surfaces as this exception type.
class Error : public std::runtime_error {
public:
    explicit Error(std::string message) : std::runtime_error(std::move(message)) {}
};

namespace detail {

template <class... Parts>
[[noreturn]] void fail(const Parts&... parts) {
    std::ostringstream out;
    (out << ... << parts);
    throw Error(out.str());
}

template <class... Parts>
void require(bool condition, const Parts&... parts) {
    if (!condition) {
        fail(parts...);
    }
}

} // namespace detail
} // namespace grblite
