#pragma once

#include <stdexcept>
#include <string>

namespace ieldtm {

/// Base class of every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition (orders, widths, bounds, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// The Taylor recurrence divides by a zero diffusion coefficient.
class SingularRecurrence : public Error {
public:
    using Error::Error;
};

/// A continuity set was requested on a side of an element without a neighbour.
class NoNeighbor : public Error {
public:
    using Error::Error;
};

/// The collocation system has fewer equations than unknowns.
class UnderdeterminedSystem : public Error {
public:
    using Error::Error;
};

/// The Picard loop hit its iteration cap.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double last_change, int iterations)
        : Error(what), last_change_(last_change), iterations_(iterations) {}

    [[nodiscard]] double last_change() const noexcept { return last_change_; }
    [[nodiscard]] int iterations() const noexcept { return iterations_; }

private:
    double last_change_;
    int iterations_;
};

#define IELDTM_REQUIRE(cond, ExceptionType, msg)                               \
    do {                                                                       \
        if (!(cond)) throw ExceptionType(msg);                                 \
    } while (false)

} // namespace ieldtm
