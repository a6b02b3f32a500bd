#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Deliberately naive double-precision references. These share no code with
// the fixed-point paths they check; keep it that way.
namespace dspfab::oracle {

struct ToleranceSpec {
  double max_abs_lsb = 0.0;    // per-sample bound in output LSBs
  double relative_energy = 0.0;
};

// Zero-padded convolution, output length len(x) + len(taps) - 1.
std::vector<double> conv_direct(const std::vector<double>& taps,
                                const std::vector<double>& x);

// y[n] = sum_l a[l] x[n-l] + sum_m b[m] y[n-m], b indexed from 1.
std::vector<double> iir_direct(const std::vector<double>& a,
                               const std::vector<double>& b,
                               const std::vector<double>& x);

// X[k] = sum_n x[n] e^{-j 2 pi k n / N}.
std::vector<std::complex<double>> dft_direct(
    const std::vector<std::complex<double>>& x);

// Y[k] = (2/N) C_k sum_n y[n] cos((2n+1) k pi / (2N)), C_0 = 1/sqrt(2).
std::vector<double> dct_direct(const std::vector<double>& x);

// One analysis level: filter (zero-padded), keep even-indexed outputs.
struct DwtLevel {
  std::vector<double> approx;
  std::vector<double> detail;
};
DwtLevel dwt_direct(const std::vector<double>& lowpass,
                    const std::vector<double>& highpass,
                    const std::vector<double>& x);

}  // namespace dspfab::oracle
