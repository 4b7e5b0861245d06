#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace transit_hl {

// Seconds since midnight of the service day. Values above 86400 are legal
// (overnight service), negative values only appear in mirrored timetables.
using Time = std::int64_t;

using StopId = std::uint32_t;
using VertexId = std::uint32_t;
using TripId = std::uint32_t;
using RouteId = std::uint32_t;
using ConnectionId = std::uint32_t;

// Large enough that kInfinity + kInfinity does not overflow.
inline constexpr Time kInfinity = std::numeric_limits<Time>::max() / 4;
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

inline constexpr bool reachable(Time t) { return t < kInfinity; }

// Walking speed used for every distance -> time conversion (4 km/h).
inline constexpr double kWalkingSpeedMetersPerSecond = 4000.0 / 3600.0;

// Raised for malformed or inconsistent input. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string &file, std::size_t line, const std::string &what)
        : InputError(file + ":" + std::to_string(line) + ": " + what),
          file_(file), line_(line) {}
    const std::string &file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class DanglingReferenceError : public InputError {
public:
    using InputError::InputError;
};

class InvalidTimeError : public InputError {
public:
    using InputError::InputError;
};

class CorruptFileError : public InputError {
public:
    using InputError::InputError;
};

class VersionMismatchError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace transit_hl
