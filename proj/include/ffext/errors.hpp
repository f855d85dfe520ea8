#ifndef FFEXT_ERRORS_HPP
#define FFEXT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffext {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A hypothesis of the called operation does not hold (m does not divide q-1, zero input, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// The prime divides the argument of a symbol whose caller required it not to.
class RamifiedOrInvalid : public Error {
   public:
    using Error::Error;
};

/// ord_P(D) < 0: the Hasse symbol is undefined.
class PoleAtP : public Error {
   public:
    using Error::Error;
};

class BudgetExceeded : public Error {
   public:
    BudgetExceeded(unsigned long long requested, unsigned long long budget)
        : Error("enumeration of " + std::to_string(requested) + " polynomials exceeds budget " +
                std::to_string(budget)),
          requested_(requested),
          budget_(budget) {}

    unsigned long long requested() const noexcept { return requested_; }
    unsigned long long budget() const noexcept { return budget_; }

   private:
    unsigned long long requested_;
    unsigned long long budget_;
};

/// The extension is not geometric, so the requested density statement does not apply.
class NonGeometric : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position_(pos) {}

    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

/// A runtime-checked invariant failed. Always a bug.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace ffext

#endif  // FFEXT_ERRORS_HPP
