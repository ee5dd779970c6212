#ifndef SHUTTERFORGE_ERROR_HPP
#define SHUTTERFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace shutterforge {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree, or a shape violates an operation contract.
class ShapeError : public Error
{
public:
  using Error::Error;
};

/// An index or window falls outside its container.
class BoundsError : public Error
{
public:
  using Error::Error;
};

/// A scalar argument violates its precondition.
class ArgumentError : public Error
{
public:
  using Error::Error;
};

/// Malformed serialized data. Carries the byte offset of the problem.
class FormatError : public Error
{
public:
  FormatError(const std::string& what, std::size_t offset)
    : Error(what + " (at byte offset " + std::to_string(offset) + ")")
    , message_(what)
    , offset_(offset)
  {
  }

  /// Message without the offset suffix.
  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }

private:
  std::string message_;
  std::size_t offset_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

/// Non-finite or otherwise invalid numeric input.
class NumericError : public Error
{
public:
  using Error::Error;
};

/// A multi-step pipeline cannot run on the data it was given.
class PipelineError : public Error
{
public:
  using Error::Error;
};

/// A metric has no admissible samples to average over.
class DegenerateInputError : public Error
{
public:
  using Error::Error;
};

class IngestError : public Error
{
public:
  using Error::Error;
};

/// A dataset manifest violates its schema or invariants.
class ManifestError : public Error
{
public:
  using Error::Error;
};

}  // namespace shutterforge

#endif  // SHUTTERFORGE_ERROR_HPP
