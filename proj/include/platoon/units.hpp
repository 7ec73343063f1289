#ifndef PLATOON_UNITS_HPP
#define PLATOON_UNITS_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace platoon {

// Error codes cover every failure mode the library reports. The CLI maps
// them onto distinct process exit codes.
enum class ErrorCode {
  UnknownNode,
  Unreachable,
  BadPath,
  BadShares,
  BadParams,
  MixedHub,
  CapExceeded,
  Infeasible,
  TooLarge,
  StaleSolution,
  UndefinedGain,
  Io,
  Schema,
  InvariantViolation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// All simulation time is kept in integer microseconds so event ordering,
// feasibility windows and serialized results are exact and reproducible
// across platforms. 1 hour = 3.6e9 us.
constexpr std::int64_t kMicrosPerHour = 3'600'000'000LL;
constexpr std::int64_t kMicrosPerMinute = 60'000'000LL;
constexpr std::int64_t kMicrosPerSecond = 1'000'000LL;

struct Duration {
  std::int64_t us = 0;

  static Duration hours(double h) {
    return Duration{static_cast<std::int64_t>(std::llround(h * kMicrosPerHour))};
  }
  static Duration minutes(double m) {
    return Duration{static_cast<std::int64_t>(std::llround(m * kMicrosPerMinute))};
  }
  static Duration seconds(double s) {
    return Duration{static_cast<std::int64_t>(std::llround(s * kMicrosPerSecond))};
  }

  double to_hours() const { return static_cast<double>(us) / kMicrosPerHour; }
  double to_seconds() const { return static_cast<double>(us) / kMicrosPerSecond; }

  Duration operator+(Duration o) const { return Duration{us + o.us}; }
  Duration operator-(Duration o) const { return Duration{us - o.us}; }
  Duration& operator+=(Duration o) { us += o.us; return *this; }
  Duration& operator-=(Duration o) { us -= o.us; return *this; }
  auto operator<=>(const Duration&) const = default;
};

struct TimePoint {
  std::int64_t us = 0;

  static TimePoint at_hours(double h) {
    return TimePoint{static_cast<std::int64_t>(std::llround(h * kMicrosPerHour))};
  }

  double to_hours() const { return static_cast<double>(us) / kMicrosPerHour; }

  TimePoint operator+(Duration d) const { return TimePoint{us + d.us}; }
  TimePoint operator-(Duration d) const { return TimePoint{us - d.us}; }
  Duration operator-(TimePoint o) const { return Duration{us - o.us}; }
  auto operator<=>(const TimePoint&) const = default;
};

// Currency in integer micro-dollars. Solver objectives and the Pareto floor
// constraints compare sums of these values, so no floating point is allowed
// anywhere in profit arithmetic.
struct Money {
  std::int64_t micros = 0;

  static Money dollars(double d) {
    return Money{static_cast<std::int64_t>(std::llround(d * 1e6))};
  }
  double to_dollars() const { return static_cast<double>(micros) / 1e6; }

  Money operator+(Money o) const { return Money{micros + o.micros}; }
  Money operator-(Money o) const { return Money{micros - o.micros}; }
  Money operator-() const { return Money{-micros}; }
  Money& operator+=(Money o) { micros += o.micros; return *this; }
  Money& operator-=(Money o) { micros -= o.micros; return *this; }
  auto operator<=>(const Money&) const = default;
};

// (value * num) / den with ties rounded to even, computed in 128-bit
// intermediates. den must be positive.
inline std::int64_t mul_div_half_even(std::int64_t value, std::int64_t num,
                                      std::int64_t den) {
  if (den <= 0) throw Error(ErrorCode::BadParams, "mul_div_half_even: den <= 0");
  __int128 prod = static_cast<__int128>(value) * num;
  bool negative = prod < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-prod)
                                   : static_cast<unsigned __int128>(prod);
  unsigned __int128 d = static_cast<unsigned __int128>(den);
  unsigned __int128 q = mag / d;
  unsigned __int128 r = mag % d;
  if (2 * r > d || (2 * r == d && (q & 1) != 0)) q += 1;
  __int128 signed_q = negative ? -static_cast<__int128>(q) : static_cast<__int128>(q);
  return static_cast<std::int64_t>(signed_q);
}

inline Money mul_div_half_even(Money m, std::int64_t num, std::int64_t den) {
  return Money{mul_div_half_even(m.micros, num, den)};
}

// Dollars with two decimals, half-even at the cent, e.g. "-2.38".
std::string format_dollars(Money m);

}  // namespace platoon

#endif  // PLATOON_UNITS_HPP
