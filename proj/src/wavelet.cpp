#include "dspfab/wavelet.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dspfab::wavelet {

namespace {

std::int64_t raw_sum(const std::vector<FixedPoint>& taps) {
  std::int64_t s = 0;
  for (const auto& t : taps) s += t.raw;
  return s;
}

}  // namespace

DilationPair::DilationPair(std::vector<FixedPoint> lowpass_taps,
                           std::vector<FixedPoint> highpass_taps)
    : lowpass(std::move(lowpass_taps)), highpass(std::move(highpass_taps)) {
  if (lowpass.length() != 8 || highpass.length() != 8) {
    throw BadLength("dilation pair is 8 taps per branch");
  }
  const auto sqrt2_raw = static_cast<std::int64_t>(
      std::llround(std::sqrt(2.0) * std::ldexp(1.0, kCoeffFormat.fraction_bits)));
  if (std::llabs(raw_sum(lowpass.taps) - sqrt2_raw) > 8) {
    throw Error("lowpass column sum is not sqrt(2) within 8 LSB");
  }
  if (std::llabs(raw_sum(highpass.taps)) > 8) {
    throw Error("highpass column sum is not 0 within 8 LSB");
  }
}

DilationPair daubechies8() {
  static const double l0[8] = {0.2304, 0.7148, 0.6309, -0.0280,
                               -0.1870, 0.0308, 0.0329, -0.0106};
  static const double h0[8] = {-0.0106, -0.0329, 0.0308, 0.1870,
                               -0.0280, -0.6309, 0.7148, -0.2304};
  std::vector<FixedPoint> low, high;
  for (double v : l0) low.push_back(quantize(v, kCoeffFormat));
  for (double v : h0) high.push_back(quantize(v, kCoeffFormat));
  return DilationPair{std::move(low), std::move(high)};
}

DecimatorState::DecimatorState(std::size_t taps) : fir(taps) {}

std::optional<FixedPoint> decimate_step(const filter::FirSpec& taps,
                                        DecimatorState& state, FixedPoint x,
                                        SaturationCounter* sat) {
  const FixedPoint y = filter::fir_step(taps, state.fir, x, kDwtOutFormat, sat);
  if (state.phase == 0) {
    state.held = y;
    state.phase = 1;
    return std::nullopt;
  }
  state.phase = 0;
  auto out = state.held;
  state.held.reset();
  return out;
}

LevelOutput dwt_level(const DilationPair& pair, std::span<const FixedPoint> input,
                      SaturationCounter* sat) {
  if (input.size() % 2 != 0) {
    throw OddLength("DWT level needs an even input length");
  }
  if (input.size() < 8) {
    throw TooShort("DWT level needs at least 8 samples");
  }
  LevelOutput out;
  out.approx.reserve(input.size() / 2);
  out.detail.reserve(input.size() / 2);
  DecimatorState low_state{pair.lowpass.length()};
  DecimatorState high_state{pair.highpass.length()};
  for (const auto& x : input) {
    if (auto a = decimate_step(pair.lowpass, low_state, x, sat)) {
      out.approx.push_back(*a);
    }
    if (auto d = decimate_step(pair.highpass, high_state, x, sat)) {
      out.detail.push_back(*d);
    }
  }
  return out;
}

PyramidOutput dwt_pyramid(const DilationPair& pair, std::span<const FixedPoint> input,
                          int levels, SaturationCounter* sat) {
  if (levels < 1) {
    throw BadLength("pyramid needs at least one level");
  }
  const std::size_t denom = std::size_t{1} << levels;
  if (input.size() % denom != 0 || input.size() / denom < 8) {
    throw BadLength("input length must be divisible by 2^levels with >= 8 left");
  }
  PyramidOutput out;
  std::vector<FixedPoint> current{input.begin(), input.end()};
  for (int j = 0; j < levels; ++j) {
    LevelOutput level = dwt_level(pair, current, sat);
    current = level.approx;
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace dspfab::wavelet
