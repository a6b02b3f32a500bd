#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dspfab/numerics.hpp"

namespace dspfab::fourier {

// One stored triple per angle: cos - sin, cos + sin, cos. The sums are formed
// from the independently quantized cos/sin raws, so the 3-multiplier product
// equals the 4-multiplier product exactly in wide integers.
struct TwiddleEntry {
  FixedPoint c_minus_s;
  FixedPoint c_plus_s;
  FixedPoint c;

  std::int32_t sin_raw() const { return c_plus_s.raw - c.raw; }
};

TwiddleEntry make_twiddle(double theta, QFormat format = kTwiddleFormat);

// Census anchor for one butterfly: the complex multiplier contributes
// 1 adder + 2 subtractors + 3 multipliers, the combine stage 1 complex adder
// + 1 complex subtractor.
struct ButterflyUnit {
  static constexpr int kAdders = 2;
  static constexpr int kSubtractors = 3;
  static constexpr int kMultipliers = 3;
};

struct FftPlan {
  int n = 16;
  int stages = 4;
  int butterflies_per_stage = 8;
  std::array<TwiddleEntry, 8> twiddles{};  // W_16^k, k = 0..7
  bool scale_each_stage = false;  // optional unconditional /2 per stage
  bool scale_select = false;      // s2: reserved for chaining two 16-point passes

  static FftPlan make();
};

// In-place radix-2 schedule shared by the behavioral path and the fabric
// netlist: butterfly b at stage s reads/writes positions (k, k + 2^s).
int fft_pair_top(int stage, int butterfly);
int fft_twiddle_index(int stage, int butterfly);
int bit_reverse4(int i);

// Multiplier invocations are counted, not trusted; 3 per complex_mul3 call.
std::uint64_t multiplier_invocations();
void reset_multiplier_invocations();

// Exact wide products of Eq-style 3-multiplier complex rotation.
void complex_mul3_exact(const ComplexFixed& z, const TwiddleEntry& w,
                        WideAccumulator& out_re, WideAccumulator& out_im);

ComplexFixed complex_mul3(const ComplexFixed& z, const TwiddleEntry& w,
                          QFormat out_format, SaturationCounter* sat = nullptr);

// DIT butterfly (top + w*bottom, top - w*bottom); outputs keep the top format.
std::pair<ComplexFixed, ComplexFixed> butterfly(const ComplexFixed& top,
                                                const ComplexFixed& bottom,
                                                const TwiddleEntry& w,
                                                SaturationCounter* sat = nullptr);

// Direct O(n^2) sum in doubles, then quantized: the reference for fft16.
std::vector<ComplexFixed> dft_naive(std::span<const ComplexFixed> x, std::size_t n,
                                    QFormat out_format = kFftOutFormat);

// 16-point transform over 8 butterfly units reused across 4 stages;
// bit-reversed load, natural output order, Q2.13 in, Q6.10 out.
std::array<ComplexFixed, 16> fft16(const FftPlan& plan,
                                   std::span<const ComplexFixed> x,
                                   SaturationCounter* sat = nullptr);

// Exact-arithmetic mode: wide intermediates, no per-stage rounding. Used by
// the linearity checks; fraction grows by the twiddle width per stage.
struct WideCplx {
  __int128 re = 0;
  __int128 im = 0;
  int fraction_bits = 0;
};
std::array<WideCplx, 16> fft16_exact(const FftPlan& plan,
                                     std::span<const ComplexFixed> x);

}  // namespace dspfab::fourier
