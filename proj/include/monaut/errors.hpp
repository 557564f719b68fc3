#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monaut {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbol or word does not have the width required by the operation.
class WidthMismatchError : public Error {
public:
    using Error::Error;
};

/// Two automata that must share a signature do not (names compared in order).
class SignatureMismatchError : public Error {
public:
    using Error::Error;
};

/// A state id is not declared by the automaton it is used with.
class UnknownStateError : public Error {
public:
    using Error::Error;
};

/// A variable name is not part of the signature in scope.
class UnknownVariableError : public Error {
public:
    using Error::Error;
};

/// A variable name is already present in the signature.
class DuplicateVariableError : public Error {
public:
    using Error::Error;
};

/// A requested reordering is not a permutation of the existing variables.
class InvalidPermutationError : public Error {
public:
    using Error::Error;
};

/// A first-order variable was required but a second-order one was given.
class NotFirstOrderError : public Error {
public:
    using Error::Error;
};

/// A widget was requested for a subset state without accepting members.
class NoAcceptingMemberError : public Error {
public:
    using Error::Error;
};

/// The empty word belongs to a language that must not contain it.
class EpsilonInLanguageError : public Error {
public:
    using Error::Error;
};

/// An automaton violates a structural invariant at construction time.
class MalformedAutomatonError : public Error {
public:
    using Error::Error;
};

/// A lasso word is not a valid encoding of an interpretation.
class InvalidEncodingError : public Error {
public:
    InvalidEncodingError(std::string track, const std::string& what)
        : Error(what), track_(std::move(track)) {}

    const std::string& track() const { return track_; }

private:
    std::string track_;
};

/// Formula text could not be parsed; `position` is a 0-based byte offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& what)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_ = 0;
};

/// A variable use violates scoping rules: rebound in scope, used both free
/// and bound, malformed, or of the wrong kind for its position.
class ScopeError : public Error {
public:
    using Error::Error;
};

/// A `.aut` file does not follow the text automaton format.
class AutFormatError : public Error {
public:
    AutFormatError(std::size_t line, const std::string& what)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

}  // namespace monaut
