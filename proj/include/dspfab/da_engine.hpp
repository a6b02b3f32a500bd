#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "dspfab/numerics.hpp"

namespace dspfab::da {

// One 16-entry lookup table replacing a multiplier for one nibble of the
// sample. The low table weights its address as an unsigned nibble, the high
// table as a two's-complement nibble (-8..7), so a signed 8-bit sample is
// exactly low[x & 0xF] + 16 * high[x >> 4].
enum class LutRole { low_nibble, high_nibble };

struct DaLut {
  std::array<std::int64_t, 16> entries{};
  LutRole role = LutRole::low_nibble;
  FixedPoint coefficient;
};

struct CoefficientUnit {
  DaLut low;
  DaLut high;

  const FixedPoint& coefficient() const { return low.coefficient; }
};

int signed_nibble(unsigned addr);  // two's complement of a 4-bit address

CoefficientUnit build_unit(FixedPoint coefficient);  // coefficient in Q1.15

// Exact coefficient * sample via two table lookups, one shift by 4, one add.
// The sample must fit in 8 bits.
WideAccumulator eval_unit(const CoefficientUnit& unit, FixedPoint sample);

// Same tables, wider samples: middle nibbles route through the unsigned low
// table, the top nibble through the signed high table. Exact for any width.
WideAccumulator eval_unit_wide(const CoefficientUnit& unit, std::int64_t sample_raw,
                               int sample_fraction_bits);

// Exact dot product over a balanced binary adder tree (ties broken left).
// L units use L-1 tree adders on top of the L intra-unit combine adders.
WideAccumulator da_dot(std::span<const CoefficientUnit> units,
                       std::span<const FixedPoint> samples);

struct DaCensus {
  int luts;
  int adders;
  int registers;
};

constexpr DaCensus fir_census(int taps) {
  return DaCensus{2 * taps, taps + (taps - 1), taps};
}

}  // namespace dspfab::da
