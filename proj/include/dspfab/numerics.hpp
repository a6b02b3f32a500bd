#pragma once

#include <cstdint>

#include "dspfab/common.hpp"

namespace dspfab {

// Qm.n fixed point: m integer bits (sign included), n fraction bits.
// Represented value is raw / 2^n, exactly.
struct QFormat {
  int integer_bits;
  int fraction_bits;

  constexpr int total_bits() const { return integer_bits + fraction_bits; }
  constexpr std::int32_t max_raw() const {
    return static_cast<std::int32_t>((std::int64_t{1} << (total_bits() - 1)) - 1);
  }
  constexpr std::int32_t min_raw() const {
    return static_cast<std::int32_t>(-(std::int64_t{1} << (total_bits() - 1)));
  }
  double lsb() const;

  friend constexpr bool operator==(const QFormat&, const QFormat&) = default;
};

void validate_format(QFormat f);  // integer_bits >= 1, fraction_bits >= 0, total <= 32

// Datapath formats. Samples on DA paths are 8-bit so each one feeds a LUT
// pair as two nibble addresses; Q2.6 makes +/-1.0 exactly representable,
// which the impulse and constant-input checks rely on.
inline constexpr QFormat kCoeffFormat{1, 15};    // filter taps, transform constants
inline constexpr QFormat kSampleFormat{2, 6};    // DA-path samples (FIR/IIR/DWT/DCT in)
inline constexpr QFormat kFilterOutFormat{1, 15};
inline constexpr QFormat kTwiddleFormat{2, 13};  // |cos +- sin| can reach sqrt(2)
inline constexpr QFormat kFftInFormat{2, 13};
inline constexpr QFormat kFftWorkFormat{8, 16};  // stage registers, 2 guard bits over out
inline constexpr QFormat kFftOutFormat{6, 10};   // must hold the N=16 DC spike
inline constexpr QFormat kDctOutFormat{2, 13};

struct FixedPoint {
  std::int32_t raw = 0;
  QFormat format{1, 15};

  double value() const;
};

// Range-checked construction from a raw integer.
FixedPoint make_fixed(std::int32_t raw, QFormat f);

// Round half away from zero; OverflowError when the rounded raw does not fit.
FixedPoint quantize(double value, QFormat f);

struct WideAccumulator {
  std::int64_t raw = 0;
  int fraction_bits = 0;

  double value() const;
};

FixedPoint fx_add(FixedPoint a, FixedPoint b);  // exact; OverflowError on wrap
FixedPoint fx_sub(FixedPoint a, FixedPoint b);
WideAccumulator fx_mul(FixedPoint a, FixedPoint b);  // always exact, fractions summed

WideAccumulator acc_add(WideAccumulator a, WideAccumulator b);
WideAccumulator acc_sub(WideAccumulator a, WideAccumulator b);

// Round half away from zero at bit `shift`, shift >= 0.
std::int64_t round_shift_half_away(std::int64_t v, int shift);

// Round to the target fraction width, then saturate to the target range.
FixedPoint renormalize(WideAccumulator acc, QFormat target,
                       SaturationCounter* sat = nullptr);

struct ComplexFixed {
  FixedPoint re, im;  // same format
};

ComplexFixed make_complex(FixedPoint re, FixedPoint im);

}  // namespace dspfab
