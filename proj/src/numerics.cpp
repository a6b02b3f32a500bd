#include "dspfab/numerics.hpp"

#include <cmath>
#include <string>

namespace dspfab {

double QFormat::lsb() const { return std::ldexp(1.0, -fraction_bits); }

void validate_format(QFormat f) {
  if (f.integer_bits < 1 || f.fraction_bits < 0 ||
      f.integer_bits + f.fraction_bits > 32) {
    throw Error("invalid Q format Q" + std::to_string(f.integer_bits) + "." +
                std::to_string(f.fraction_bits));
  }
}

double FixedPoint::value() const { return std::ldexp(static_cast<double>(raw), -format.fraction_bits); }

double WideAccumulator::value() const { return std::ldexp(static_cast<double>(raw), -fraction_bits); }

FixedPoint make_fixed(std::int32_t raw, QFormat f) {
  validate_format(f);
  if (raw < f.min_raw() || raw > f.max_raw()) {
    throw OverflowError("raw " + std::to_string(raw) + " does not fit Q" +
                        std::to_string(f.integer_bits) + "." +
                        std::to_string(f.fraction_bits));
  }
  return FixedPoint{raw, f};
}

FixedPoint quantize(double value, QFormat f) {
  validate_format(f);
  const double limit = std::ldexp(1.0, f.integer_bits - 1);
  if (!(std::fabs(value) < limit)) {
    throw OverflowError("value " + std::to_string(value) + " out of range for Q" +
                        std::to_string(f.integer_bits) + "." +
                        std::to_string(f.fraction_bits));
  }
  const double scaled = std::ldexp(value, f.fraction_bits);
  const double rounded = scaled >= 0.0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  const auto raw = static_cast<std::int64_t>(rounded);
  if (raw < f.min_raw() || raw > f.max_raw()) {
    throw OverflowError("value " + std::to_string(value) + " rounds outside Q" +
                        std::to_string(f.integer_bits) + "." +
                        std::to_string(f.fraction_bits));
  }
  return FixedPoint{static_cast<std::int32_t>(raw), f};
}

namespace {

void require_same_format(const FixedPoint& a, const FixedPoint& b) {
  if (!(a.format == b.format)) {
    throw FormatMismatch("operands must share a Q format");
  }
}

}  // namespace

FixedPoint fx_add(FixedPoint a, FixedPoint b) {
  require_same_format(a, b);
  const std::int64_t sum = std::int64_t{a.raw} + b.raw;
  if (sum < a.format.min_raw() || sum > a.format.max_raw()) {
    throw OverflowError("fx_add wraps");
  }
  return FixedPoint{static_cast<std::int32_t>(sum), a.format};
}

FixedPoint fx_sub(FixedPoint a, FixedPoint b) {
  require_same_format(a, b);
  const std::int64_t diff = std::int64_t{a.raw} - b.raw;
  if (diff < a.format.min_raw() || diff > a.format.max_raw()) {
    throw OverflowError("fx_sub wraps");
  }
  return FixedPoint{static_cast<std::int32_t>(diff), a.format};
}

WideAccumulator fx_mul(FixedPoint a, FixedPoint b) {
  return WideAccumulator{std::int64_t{a.raw} * b.raw,
                         a.format.fraction_bits + b.format.fraction_bits};
}

WideAccumulator acc_add(WideAccumulator a, WideAccumulator b) {
  if (a.fraction_bits != b.fraction_bits) {
    throw FormatMismatch("accumulator fractions differ");
  }
  return WideAccumulator{a.raw + b.raw, a.fraction_bits};
}

WideAccumulator acc_sub(WideAccumulator a, WideAccumulator b) {
  if (a.fraction_bits != b.fraction_bits) {
    throw FormatMismatch("accumulator fractions differ");
  }
  return WideAccumulator{a.raw - b.raw, a.fraction_bits};
}

std::int64_t round_shift_half_away(std::int64_t v, int shift) {
  if (shift <= 0) return v;
  const std::int64_t half = std::int64_t{1} << (shift - 1);
  if (v >= 0) return (v + half) >> shift;
  return -((-v + half) >> shift);
}

FixedPoint renormalize(WideAccumulator acc, QFormat target, SaturationCounter* sat) {
  validate_format(target);
  const int shift = acc.fraction_bits - target.fraction_bits;
  std::int64_t r;
  if (shift >= 0) {
    r = round_shift_half_away(acc.raw, shift);
  } else {
    r = acc.raw << (-shift);
  }
  if (r > target.max_raw()) {
    r = target.max_raw();
    if (sat) ++sat->events;
  } else if (r < target.min_raw()) {
    r = target.min_raw();
    if (sat) ++sat->events;
  }
  return FixedPoint{static_cast<std::int32_t>(r), target};
}

ComplexFixed make_complex(FixedPoint re, FixedPoint im) {
  if (!(re.format == im.format)) {
    throw FormatMismatch("complex parts must share a format");
  }
  return ComplexFixed{re, im};
}

}  // namespace dspfab
