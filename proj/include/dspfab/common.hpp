#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dspfab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : Error { using Error::Error; };
struct FormatMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct HorizonTooSmall : Error { using Error::Error; };
struct OddLength : Error { using Error::Error; };
struct TooShort : Error { using Error::Error; };
struct BadLength : Error { using Error::Error; };
struct UnsupportedSize : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct AlreadyConfigured : Error { using Error::Error; };
struct NotConfigured : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct PoolExhausted : Error {
  PoolExhausted(const std::string& type, int needed_, int available_)
      : Error("pool exhausted: " + type + " needs " + std::to_string(needed_) +
              ", available " + std::to_string(available_)),
        cm_type(type), needed(needed_), available(available_) {}
  std::string cm_type;
  int needed;
  int available;
};

// Saturation is a counted event, not an error.
struct SaturationCounter {
  std::uint64_t events = 0;
};

}  // namespace dspfab
