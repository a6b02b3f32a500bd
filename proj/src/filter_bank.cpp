#include "dspfab/filter_bank.hpp"

#include <cmath>
#include <string>

namespace dspfab::filter {

FirSpec::FirSpec(std::vector<FixedPoint> taps_in) : taps(std::move(taps_in)) {
  if (taps.empty() || taps.size() > kMaxTaps) {
    throw BadLength("FIR length must be 1.." + std::to_string(kMaxTaps));
  }
  units.reserve(taps.size());
  for (const auto& c : taps) {
    units.push_back(da::build_unit(c));
  }
}

FirState::FirState(std::size_t length, QFormat sample_format)
    : length_(length), format_(sample_format) {
  if (length == 0 || length > kMaxTaps) {
    throw BadLength("delay line length must be 1.." + std::to_string(kMaxTaps));
  }
  ring_.fill(FixedPoint{0, sample_format});
}

void FirState::push(FixedPoint x) {
  if (!(x.format == format_)) {
    throw FormatMismatch("delay line sample format mismatch");
  }
  head_ = (head_ + length_ - 1) % length_;
  ring_[head_] = x;
}

FixedPoint FirState::history(std::size_t k) const {
  return ring_[(head_ + k) % length_];
}

namespace {

WideAccumulator fir_accumulate(const std::vector<da::CoefficientUnit>& units,
                               const FirState& state) {
  std::array<FixedPoint, kMaxTaps> window;
  for (std::size_t k = 0; k < units.size(); ++k) {
    window[k] = state.history(k);
  }
  return da::da_dot(std::span{units.data(), units.size()},
                    std::span{window.data(), units.size()});
}

}  // namespace

FixedPoint fir_step(const FirSpec& spec, FirState& state, FixedPoint x,
                    QFormat out_format, SaturationCounter* sat) {
  if (state.length() != spec.length()) {
    throw LengthMismatch("FIR state length mismatch");
  }
  state.push(x);
  return renormalize(fir_accumulate(spec.units, state), out_format, sat);
}

IirSpec::IirSpec(std::vector<FixedPoint> forward_taps,
                 std::vector<FixedPoint> feedback_taps)
    : forward(std::move(forward_taps)), feedback(std::move(feedback_taps)) {
  if (feedback.size() != forward.length() - 1) {
    throw BadLength("feedback length must be forward length - 1");
  }
  double gain = 0.0;
  feedback_units.reserve(feedback.size());
  for (const auto& b : feedback) {
    feedback_units.push_back(da::build_unit(b));
    gain += std::fabs(b.value());
  }
  feedback_gain_warning = gain >= 1.0;
}

IirState::IirState(const IirSpec& spec)
    : x_history(spec.length()),
      y_history(spec.length() > 1 ? spec.length() - 1 : 1) {}

FixedPoint iir_step(const IirSpec& spec, IirState& state, FixedPoint x,
                    QFormat out_format, SaturationCounter* sat) {
  state.x_history.push(x);
  WideAccumulator acc = fir_accumulate(spec.forward.units, state.x_history);
  if (!spec.feedback.empty()) {
    acc = acc_add(acc, fir_accumulate(spec.feedback_units, state.y_history));
  }
  const FixedPoint y = renormalize(acc, out_format, sat);
  if (!spec.feedback.empty()) {
    // y re-enters the 8-bit DA datapath, so it is requantized like an input.
    const FixedPoint y_fb = renormalize(
        WideAccumulator{y.raw, y.format.fraction_bits},
        state.y_history.sample_format(), sat);
    state.y_history.push(y_fb);
  }
  return y;
}

FirSpec expand_feedback(const IirSpec& spec, std::size_t horizon) {
  if (horizon < spec.length()) {
    throw HorizonTooSmall("horizon must be at least the IIR length");
  }
  if (horizon > kMaxTaps) {
    throw BadLength("horizon exceeds the 16-tap FIR capacity");
  }
  // Impulse response of the recursion, then requantized to tap format.
  std::vector<double> g(horizon, 0.0);
  for (std::size_t n = 0; n < horizon; ++n) {
    double acc = n < spec.forward.taps.size() ? spec.forward.taps[n].value() : 0.0;
    for (std::size_t m = 1; m <= spec.feedback.size() && m <= n; ++m) {
      acc += spec.feedback[m - 1].value() * g[n - m];
    }
    g[n] = acc;
  }
  std::vector<FixedPoint> taps;
  taps.reserve(horizon);
  for (double v : g) {
    taps.push_back(quantize(v, kCoeffFormat));
  }
  return FirSpec{std::move(taps)};
}

}  // namespace dspfab::filter
