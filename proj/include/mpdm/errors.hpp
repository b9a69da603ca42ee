#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpdm {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or malformed domain objects (bad PMF, negative counts, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A bit word or symbol sequence has the wrong length for the codec at hand.
class LengthError : public Error {
public:
    using Error::Error;
};

// A sequence does not have the composition the operation requires.
class CompositionMismatch : public Error {
public:
    using Error::Error;
};

// A sequence is well-formed but lies outside the 2^k words the codec addresses.
class UnaddressableSequence : public Error {
public:
    using Error::Error;
};

// A sequence's composition is not part of the codebook.
class UnknownComposition : public Error {
public:
    using Error::Error;
};

// A serialized codebook or frame could not be parsed. `offset` is the byte
// position where parsing stopped, when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t offset = npos)
        : Error(offset == npos ? what : what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Payload bytes fail their checksum.
class IntegrityError : public ParseError {
public:
    using ParseError::ParseError;
};

// A numerical routine could not produce a trustworthy result
// (optimizer bracket failure, non-finite integrand, infeasible rate algebra).
class ComputeError : public Error {
public:
    using Error::Error;
};

}  // namespace mpdm
