#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dspfab/filter_bank.hpp"
#include "dspfab/numerics.hpp"

namespace dspfab::wavelet {

inline constexpr QFormat kDwtOutFormat = kSampleFormat;  // levels feed levels

// Scaling (lowpass) and wavelet (highpass) 8-tap dilation pair. Construction
// checks the column sums: sum(l0) near sqrt(2), sum(h0) near 0, both within
// 8 coefficient LSBs.
struct DilationPair {
  DilationPair(std::vector<FixedPoint> lowpass_taps,
               std::vector<FixedPoint> highpass_taps);

  filter::FirSpec lowpass;
  filter::FirSpec highpass;
};

DilationPair daubechies8();

// 8-tap FIR + keep-every-second-sample, gated by a 1-bit counter. The counter
// starts at 0; the FIR advances every sample and the even-indexed output is
// released when the counter wraps 1 -> 0, i.e. on the 2nd, 4th, ... input.
struct DecimatorState {
  explicit DecimatorState(std::size_t taps);

  filter::FirState fir;
  int phase = 0;
  std::optional<FixedPoint> held;
};

std::optional<FixedPoint> decimate_step(const filter::FirSpec& taps,
                                        DecimatorState& state, FixedPoint x,
                                        SaturationCounter* sat = nullptr);

struct LevelOutput {
  std::vector<FixedPoint> approx;
  std::vector<FixedPoint> detail;
};

LevelOutput dwt_level(const DilationPair& pair, std::span<const FixedPoint> input,
                      SaturationCounter* sat = nullptr);

struct PyramidOutput {
  std::vector<LevelOutput> levels;
};

// Mallat recursion: level j+1 consumes level j's approximation.
PyramidOutput dwt_pyramid(const DilationPair& pair, std::span<const FixedPoint> input,
                          int levels, SaturationCounter* sat = nullptr);

}  // namespace dspfab::wavelet
