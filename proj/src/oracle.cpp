#include "dspfab/oracle.hpp"

#include <cmath>
#include <numbers>

namespace dspfab::oracle {

std::vector<double> conv_direct(const std::vector<double>& taps,
                                const std::vector<double>& x) {
  if (taps.empty() || x.empty()) return {};
  std::vector<double> y(x.size() + taps.size() - 1, 0.0);
  for (std::size_t n = 0; n < y.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) {
      if (n >= k && n - k < x.size()) acc += taps[k] * x[n - k];
    }
    y[n] = acc;
  }
  return y;
}

std::vector<double> iir_direct(const std::vector<double>& a,
                               const std::vector<double>& b,
                               const std::vector<double>& x) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
      if (n >= l) acc += a[l] * x[n - l];
    }
    for (std::size_t m = 1; m <= b.size(); ++m) {
      if (n >= m) acc += b[m - 1] * y[n - m];
    }
    y[n] = acc;
  }
  return y;
}

std::vector<std::complex<double>> dft_direct(
    const std::vector<std::complex<double>>& x) {
  const auto n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) {
      const double theta = -2.0 * std::numbers::pi * static_cast<double>(k * m) /
                           static_cast<double>(n);
      acc += x[m] * std::complex<double>{std::cos(theta), std::sin(theta)};
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> dct_direct(const std::vector<double>& x) {
  const auto n = x.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = k == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      acc += x[m] * std::cos((2.0 * static_cast<double>(m) + 1.0) *
                             static_cast<double>(k) * std::numbers::pi /
                             (2.0 * static_cast<double>(n)));
    }
    out[k] = 2.0 / static_cast<double>(n) * ck * acc;
  }
  return out;
}

DwtLevel dwt_direct(const std::vector<double>& lowpass,
                    const std::vector<double>& highpass,
                    const std::vector<double>& x) {
  DwtLevel level;
  auto decimate = [&x](const std::vector<double>& taps) {
    std::vector<double> out;
    out.reserve(x.size() / 2);
    for (std::size_t n = 0; n < x.size(); n += 2) {
      double acc = 0.0;
      for (std::size_t k = 0; k < taps.size(); ++k) {
        if (n >= k) acc += taps[k] * x[n - k];
      }
      out.push_back(acc);
    }
    return out;
  };
  level.approx = decimate(lowpass);
  level.detail = decimate(highpass);
  return level;
}

}  // namespace dspfab::oracle
