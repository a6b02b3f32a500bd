#include "dspfab/da_engine.hpp"

#include <string>

namespace dspfab::da {

int signed_nibble(unsigned addr) {
  const int a = static_cast<int>(addr & 0xFu);
  return a >= 8 ? a - 16 : a;
}

CoefficientUnit build_unit(FixedPoint coefficient) {
  if (!(coefficient.format == kCoeffFormat)) {
    throw FormatMismatch("coefficients are Q1.15");
  }
  CoefficientUnit unit;
  unit.low.role = LutRole::low_nibble;
  unit.low.coefficient = coefficient;
  unit.high.role = LutRole::high_nibble;
  unit.high.coefficient = coefficient;
  for (unsigned a = 0; a < 16; ++a) {
    unit.low.entries[a] = std::int64_t{coefficient.raw} * static_cast<int>(a);
    unit.high.entries[a] = std::int64_t{coefficient.raw} * signed_nibble(a);
  }
  return unit;
}

WideAccumulator eval_unit(const CoefficientUnit& unit, FixedPoint sample) {
  if (sample.format.total_bits() > 8) {
    throw FormatMismatch("DA samples are 8-bit");
  }
  const auto bits = static_cast<std::uint8_t>(sample.raw);
  const std::int64_t low = unit.low.entries[bits & 0xFu];
  const std::int64_t high = unit.high.entries[(bits >> 4) & 0xFu];
  return WideAccumulator{low + (high << 4),
                         unit.coefficient().format.fraction_bits +
                             sample.format.fraction_bits};
}

WideAccumulator eval_unit_wide(const CoefficientUnit& unit, std::int64_t sample_raw,
                               int sample_fraction_bits) {
  std::int64_t acc = 0;
  std::int64_t rest = sample_raw;
  int shift = 0;
  while (rest < -8 || rest > 7) {
    acc += unit.low.entries[static_cast<unsigned>(rest) & 0xFu] << shift;
    rest >>= 4;
    shift += 4;
  }
  acc += unit.high.entries[static_cast<unsigned>(rest) & 0xFu] << shift;
  return WideAccumulator{acc, unit.coefficient().format.fraction_bits +
                                  sample_fraction_bits};
}

namespace {

std::int64_t tree_sum(std::span<const CoefficientUnit> units,
                      std::span<const FixedPoint> samples, std::size_t lo,
                      std::size_t hi) {
  if (hi - lo == 1) {
    return eval_unit(units[lo], samples[lo]).raw;
  }
  const std::size_t mid = lo + (hi - lo + 1) / 2;  // ties broken left
  return tree_sum(units, samples, lo, mid) + tree_sum(units, samples, mid, hi);
}

}  // namespace

WideAccumulator da_dot(std::span<const CoefficientUnit> units,
                       std::span<const FixedPoint> samples) {
  if (units.size() != samples.size()) {
    throw LengthMismatch("da_dot: " + std::to_string(units.size()) + " units vs " +
                         std::to_string(samples.size()) + " samples");
  }
  if (units.empty()) {
    throw LengthMismatch("da_dot: empty operands");
  }
  const int frac = units[0].coefficient().format.fraction_bits +
                   samples[0].format.fraction_bits;
  return WideAccumulator{tree_sum(units, samples, 0, units.size()), frac};
}

}  // namespace dspfab::da
