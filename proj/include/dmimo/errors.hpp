#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dmimo {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration; carries the offending field path (e.g. "budget.T").
class ConfigError : public Error
{
  public:
    ConfigError(std::string field, const std::string& message)
        : Error(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

class DomainError : public Error
{
  public:
    using Error::Error;
};

// Beamformer cannot be built (degenerate channel, too few antennas).
class PrecoderError : public Error
{
  public:
    using Error::Error;
};

// Iterative solver failure or a result that violates theory.
class NumericalError : public Error
{
  public:
    using Error::Error;
};

// A drop failed inside a campaign; wraps the original message.
class DropError : public Error
{
  public:
    DropError(std::uint64_t drop_id, const std::string& message)
        : Error("drop " + std::to_string(drop_id) + ": " + message), drop_id_(drop_id)
    {
    }

    std::uint64_t drop_id() const noexcept { return drop_id_; }

  private:
    std::uint64_t drop_id_;
};

class InsufficientSamplesError : public Error
{
  public:
    using Error::Error;
};

} // namespace dmimo
