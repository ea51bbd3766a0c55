#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "safecoal/types.hpp"

namespace safecoal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two components were built over different alphabets.
class AlphabetMismatch : public Error {
  public:
    using Error::Error;
};

/// A word set or language that must be prefix-free is not.
///
/// When a witness is known, `shorter` is a member of the language and a
/// proper prefix of the member `longer`.
class NotPrefixFree : public Error {
  public:
    NotPrefixFree(const std::string& what, Word shorter = {}, Word longer = {})
        : Error(what), shorter(std::move(shorter)), longer(std::move(longer)) {}

    Word shorter;
    Word longer;
};

/// The empty word was found where only nonempty violation words are allowed.
class EpsilonViolation : public Error {
  public:
    using Error::Error;
};

/// An enumerator-backed computation ran out of budget before deciding.
class BudgetExhausted : public Error {
  public:
    using Error::Error;
};

}  // namespace safecoal
