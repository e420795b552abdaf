#pragma once

#include <stdexcept>
#include <string>

namespace latsym {

/// Base class for all errors thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent user input (files, site lists, values).
class input_error : public error {
public:
    explicit input_error(const std::string& what) : error(what) {}
};

/// A mathematical precondition of an operation is violated
/// (e.g. evaluation at a pole, a non-cospectral pair, a search bound).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

/// A floating-point quality gate failed (residual above tolerance).
class numerical_error : public error {
public:
    explicit numerical_error(const std::string& what) : error(what) {}
};

namespace detail {

inline void require_input(bool ok, const std::string& msg) {
    if (!ok) throw input_error(msg);
}

inline void require_pre(bool ok, const std::string& msg) {
    if (!ok) throw precondition_error(msg);
}

/// Internal consistency check; failures indicate a bug, not bad input.
inline void check(bool ok, const std::string& msg) {
    if (!ok) throw std::logic_error("internal error: " + msg);
}

} // namespace detail
} // namespace latsym
