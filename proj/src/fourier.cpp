#include "dspfab/fourier.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace dspfab::fourier {

namespace {
thread_local std::uint64_t g_mul_invocations = 0;

std::int64_t counted_mul(std::int64_t a, std::int64_t b) {
  ++g_mul_invocations;
  return a * b;
}
}  // namespace

std::uint64_t multiplier_invocations() { return g_mul_invocations; }
void reset_multiplier_invocations() { g_mul_invocations = 0; }

TwiddleEntry make_twiddle(double theta, QFormat format) {
  const FixedPoint c = quantize(std::cos(theta), format);
  const FixedPoint s = quantize(std::sin(theta), format);
  TwiddleEntry w;
  w.c = c;
  w.c_minus_s = make_fixed(c.raw - s.raw, format);
  w.c_plus_s = make_fixed(c.raw + s.raw, format);
  return w;
}

FftPlan FftPlan::make() {
  FftPlan plan;
  for (int k = 0; k < 8; ++k) {
    plan.twiddles[static_cast<std::size_t>(k)] =
        make_twiddle(-2.0 * std::numbers::pi * k / 16.0);
  }
  return plan;
}

int fft_pair_top(int stage, int butterfly) {
  const int h = 1 << stage;
  return (butterfly / h) * 2 * h + (butterfly % h);
}

int fft_twiddle_index(int stage, int butterfly) {
  const int h = 1 << stage;
  return (butterfly % h) * (8 >> stage);
}

int bit_reverse4(int i) {
  int r = 0;
  for (int b = 0; b < 4; ++b) {
    r = (r << 1) | ((i >> b) & 1);
  }
  return r;
}

void complex_mul3_exact(const ComplexFixed& z, const TwiddleEntry& w,
                        WideAccumulator& out_re, WideAccumulator& out_im) {
  // R = (cos - sin) b + cos (a - b), I = (cos + sin) a - cos (a - b),
  // with a = Re(z), b = Im(z). Three multiplies, diff shared.
  const std::int64_t a = z.re.raw;
  const std::int64_t b = z.im.raw;
  const std::int64_t diff = a - b;
  const std::int64_t p_cms_b = counted_mul(w.c_minus_s.raw, b);
  const std::int64_t p_c_diff = counted_mul(w.c.raw, diff);
  const std::int64_t p_cps_a = counted_mul(w.c_plus_s.raw, a);
  const int frac = z.re.format.fraction_bits + w.c.format.fraction_bits;
  out_re = WideAccumulator{p_cms_b + p_c_diff, frac};
  out_im = WideAccumulator{p_cps_a - p_c_diff, frac};
}

ComplexFixed complex_mul3(const ComplexFixed& z, const TwiddleEntry& w,
                          QFormat out_format, SaturationCounter* sat) {
  WideAccumulator re, im;
  complex_mul3_exact(z, w, re, im);
  return ComplexFixed{renormalize(re, out_format, sat),
                      renormalize(im, out_format, sat)};
}

std::pair<ComplexFixed, ComplexFixed> butterfly(const ComplexFixed& top,
                                                const ComplexFixed& bottom,
                                                const TwiddleEntry& w,
                                                SaturationCounter* sat) {
  WideAccumulator prod_re, prod_im;
  complex_mul3_exact(bottom, w, prod_re, prod_im);
  const int tw_frac = w.c.format.fraction_bits;
  const QFormat fmt = top.re.format;
  const std::int64_t top_re = std::int64_t{top.re.raw} << tw_frac;
  const std::int64_t top_im = std::int64_t{top.im.raw} << tw_frac;
  const int frac = fmt.fraction_bits + tw_frac;
  ComplexFixed sum{renormalize(WideAccumulator{top_re + prod_re.raw, frac}, fmt, sat),
                   renormalize(WideAccumulator{top_im + prod_im.raw, frac}, fmt, sat)};
  ComplexFixed dif{renormalize(WideAccumulator{top_re - prod_re.raw, frac}, fmt, sat),
                   renormalize(WideAccumulator{top_im - prod_im.raw, frac}, fmt, sat)};
  return {sum, dif};
}

std::vector<ComplexFixed> dft_naive(std::span<const ComplexFixed> x, std::size_t n,
                                    QFormat out_format) {
  if (x.size() != n) {
    throw LengthMismatch("dft_naive: expected " + std::to_string(n) + " samples");
  }
  std::vector<ComplexFixed> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const double theta = -2.0 * std::numbers::pi * static_cast<double>(k * m) /
                           static_cast<double>(n);
      acc += std::complex<double>{x[m].re.value(), x[m].im.value()} *
             std::complex<double>{std::cos(theta), std::sin(theta)};
    }
    out.push_back(ComplexFixed{quantize(acc.real(), out_format),
                               quantize(acc.imag(), out_format)});
  }
  return out;
}

std::array<ComplexFixed, 16> fft16(const FftPlan& plan,
                                   std::span<const ComplexFixed> x,
                                   SaturationCounter* sat) {
  if (x.size() != 16) {
    throw LengthMismatch("fft16 expects exactly 16 samples");
  }
  // Widen to the working format; the shift is exact.
  const int widen = kFftWorkFormat.fraction_bits - x[0].re.format.fraction_bits;
  std::array<ComplexFixed, 16> a;
  for (int i = 0; i < 16; ++i) {
    const auto& src = x[static_cast<std::size_t>(bit_reverse4(i))];
    a[static_cast<std::size_t>(i)] =
        ComplexFixed{FixedPoint{src.re.raw << widen, kFftWorkFormat},
                     FixedPoint{src.im.raw << widen, kFftWorkFormat}};
  }
  for (int s = 0; s < plan.stages; ++s) {
    const int h = 1 << s;
    std::array<ComplexFixed, 16> next = a;
    for (int b = 0; b < plan.butterflies_per_stage; ++b) {
      const int top = fft_pair_top(s, b);
      const int bot = top + h;
      const auto& w = plan.twiddles[static_cast<std::size_t>(fft_twiddle_index(s, b))];
      auto [u, v] = butterfly(a[static_cast<std::size_t>(top)],
                              a[static_cast<std::size_t>(bot)], w, sat);
      if (plan.scale_each_stage) {
        u.re.raw = static_cast<std::int32_t>(round_shift_half_away(u.re.raw, 1));
        u.im.raw = static_cast<std::int32_t>(round_shift_half_away(u.im.raw, 1));
        v.re.raw = static_cast<std::int32_t>(round_shift_half_away(v.re.raw, 1));
        v.im.raw = static_cast<std::int32_t>(round_shift_half_away(v.im.raw, 1));
      }
      next[static_cast<std::size_t>(top)] = u;
      next[static_cast<std::size_t>(bot)] = v;
    }
    a = next;
  }
  std::array<ComplexFixed, 16> out;
  for (int i = 0; i < 16; ++i) {
    const auto& v = a[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = ComplexFixed{
        renormalize(WideAccumulator{v.re.raw, kFftWorkFormat.fraction_bits},
                    kFftOutFormat, sat),
        renormalize(WideAccumulator{v.im.raw, kFftWorkFormat.fraction_bits},
                    kFftOutFormat, sat)};
  }
  return out;
}

std::array<WideCplx, 16> fft16_exact(const FftPlan& plan,
                                     std::span<const ComplexFixed> x) {
  if (x.size() != 16) {
    throw LengthMismatch("fft16_exact expects exactly 16 samples");
  }
  const int tw_frac = kTwiddleFormat.fraction_bits;
  std::array<WideCplx, 16> a;
  for (int i = 0; i < 16; ++i) {
    const auto& src = x[static_cast<std::size_t>(bit_reverse4(i))];
    a[static_cast<std::size_t>(i)] =
        WideCplx{src.re.raw, src.im.raw, src.re.format.fraction_bits};
  }
  for (int s = 0; s < plan.stages; ++s) {
    const int h = 1 << s;
    std::array<WideCplx, 16> next = a;
    for (int b = 0; b < plan.butterflies_per_stage; ++b) {
      const int top = fft_pair_top(s, b);
      const int bot = top + h;
      const auto& w = plan.twiddles[static_cast<std::size_t>(fft_twiddle_index(s, b))];
      const WideCplx& t = a[static_cast<std::size_t>(top)];
      const WideCplx& z = a[static_cast<std::size_t>(bot)];
      const __int128 diff = z.re - z.im;
      const __int128 p_re = static_cast<__int128>(w.c_minus_s.raw) * z.im +
                            static_cast<__int128>(w.c.raw) * diff;
      const __int128 p_im = static_cast<__int128>(w.c_plus_s.raw) * z.re -
                            static_cast<__int128>(w.c.raw) * diff;
      const __int128 t_re = t.re << tw_frac;
      const __int128 t_im = t.im << tw_frac;
      const int frac = t.fraction_bits + tw_frac;
      next[static_cast<std::size_t>(top)] = WideCplx{t_re + p_re, t_im + p_im, frac};
      next[static_cast<std::size_t>(bot)] = WideCplx{t_re - p_re, t_im - p_im, frac};
    }
    a = next;
  }
  return a;
}

}  // namespace dspfab::fourier
