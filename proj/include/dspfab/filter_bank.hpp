#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dspfab/da_engine.hpp"
#include "dspfab/numerics.hpp"

namespace dspfab::filter {

inline constexpr std::size_t kMaxTaps = 16;

// Coefficient set for a streaming FIR. Zero taps are accepted; the LUT pair
// per tap is built once at construction.
struct FirSpec {
  explicit FirSpec(std::vector<FixedPoint> taps);

  std::vector<FixedPoint> taps;                 // Q1.15
  std::vector<da::CoefficientUnit> units;

  std::size_t length() const { return taps.size(); }
};

// Ring of the most recent input samples, zero before the stream start.
class FirState {
 public:
  explicit FirState(std::size_t length, QFormat sample_format = kSampleFormat);

  void push(FixedPoint x);
  FixedPoint history(std::size_t k) const;  // x[n-k]
  std::size_t length() const { return length_; }
  QFormat sample_format() const { return format_; }

 private:
  std::array<FixedPoint, kMaxTaps> ring_{};
  std::size_t length_ = 0;
  std::size_t head_ = 0;
  QFormat format_{2, 6};
};

FixedPoint fir_step(const FirSpec& spec, FirState& state, FixedPoint x,
                    QFormat out_format = kFilterOutFormat,
                    SaturationCounter* sat = nullptr);

// a[0..L-1] feed-forward, b[1..L-1] feedback (stored from index 1).
// Stability is the caller's problem; sum|b| >= 1 only raises the warning flag.
struct IirSpec {
  IirSpec(std::vector<FixedPoint> forward_taps, std::vector<FixedPoint> feedback_taps);

  FirSpec forward;
  std::vector<FixedPoint> feedback;
  std::vector<da::CoefficientUnit> feedback_units;
  bool feedback_gain_warning = false;

  std::size_t length() const { return forward.length(); }
};

struct IirState {
  explicit IirState(const IirSpec& spec);

  FirState x_history;
  FirState y_history;
};

// Forward FIR + feedback FIR + one combining adder; the output is requantized
// to the 8-bit sample format before it re-enters the feedback delay line.
FixedPoint iir_step(const IirSpec& spec, IirState& state, FixedPoint x,
                    QFormat out_format = kFilterOutFormat,
                    SaturationCounter* sat = nullptr);

// Truncated feed-forward equivalent obtained by back-substituting the
// feedback terms; horizon in [spec length, kMaxTaps].
FirSpec expand_feedback(const IirSpec& spec, std::size_t horizon);

}  // namespace dspfab::filter
