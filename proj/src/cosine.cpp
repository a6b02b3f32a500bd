#include "dspfab/cosine.hpp"

#include <cmath>
#include <numbers>

namespace dspfab::cosine {

namespace {

// Angle arguments are odd multiples of pi/32; the constant index by that
// multiple, reduced to [0, 16].
constexpr int kLetterByM[17] = {
    -1,  // m = 0 is the literal 1
    7, 3, 8, 1, 9, 4, 10, 0, 11, 5, 12, 2, 13, 6, 14,
    -2,  // m = 16 is cos(pi/2) = 0, never produced by the decomposition
};

SymEntry reduce_angle(int m) {
  int sign = 1;
  m %= 64;
  if (m < 0) m += 64;
  if (m > 32) m = 64 - m;
  if (m > 16) {
    sign = -1;
    m = 32 - m;
  }
  if (kLetterByM[m] == -2) {
    throw Error("decomposition produced cos(pi/2)");
  }
  return SymEntry{kLetterByM[m], sign};
}

double sym_value(const DctConstants& constants, const SymEntry& e) {
  const double mag = e.letter < 0 ? 1.0 : constants.analytic[static_cast<std::size_t>(e.letter)];
  return e.sign * mag;
}

struct PrintedBlocks {
  std::array<std::array<SymEntry, 4>, 4> even_even;
  std::array<std::array<SymEntry, 4>, 4> even_odd;
  std::array<std::array<SymEntry, 4>, 8> odd_left;
  std::array<std::array<SymEntry, 4>, 8> odd_right;
};

// The published constant blocks, kept as data to diff against the derivation.
PrintedBlocks printed_blocks() {
  constexpr int A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7, I = 8,
                J = 9, K = 10, L = 11, M = 12, N = 13, O = 14;
  auto p = [](int letter) { return SymEntry{letter, 1}; };
  auto m = [](int letter) { return SymEntry{letter, -1}; };
  PrintedBlocks blocks;
  blocks.even_even = {{{p(A), p(A), p(A), p(A)},
                       {p(B), p(C), m(C), m(B)},
                       {p(A), m(A), m(A), p(A)},
                       {p(C), m(B), p(B), m(C)}}};
  blocks.even_odd = {{{p(D), p(E), p(F), p(G)},
                      {p(E), m(G), m(D), m(F)},
                      {p(F), m(G), p(D), p(E)},
                      {p(G), m(F), p(D), m(E)}}};
  blocks.odd_left = {{{p(H), p(I), p(J), p(K)},
                      {p(I), p(L), p(O), m(M)},
                      {p(J), p(O), m(K), m(I)},
                      {p(K), m(M), m(I), p(O)},
                      {p(L), m(J), m(N), p(H)},
                      {p(M), m(H), p(L), p(N)},
                      {p(N), m(K), p(H), m(J)},
                      {p(O), m(N), p(M), m(L)}}};
  blocks.odd_right = {{{p(L), p(M), p(N), p(O)},
                       {m(J), m(H), m(K), m(N)},
                       {m(N), p(L), p(H), p(M)},
                       {p(H), p(N), m(J), m(L)},
                       {m(O), m(I), p(M), p(K)},
                       {m(I), p(K), p(O), m(J)},
                       {p(M), p(O), m(L), p(I)},
                       {p(K), m(J), p(I), m(H)}}};
  return blocks;
}

}  // namespace

DctConstants DctConstants::make() {
  DctConstants c;
  const double pi = std::numbers::pi;
  const double angles[15] = {pi / 4,       pi / 8,       3 * pi / 8,  pi / 16,
                             3 * pi / 16,  5 * pi / 16,  7 * pi / 16, pi / 32,
                             3 * pi / 32,  5 * pi / 32,  7 * pi / 32, 9 * pi / 32,
                             11 * pi / 32, 13 * pi / 32, 15 * pi / 32};
  for (std::size_t i = 0; i < 15; ++i) {
    c.analytic[i] = std::cos(angles[i]);
    c.quantized[i] = quantize(c.analytic[i], kCoeffFormat);
  }
  return c;
}

std::string SymEntry::to_string() const {
  std::string s = sign < 0 ? "-" : "";
  s += letter < 0 ? '1' : DctConstants::letter(letter);
  return s;
}

DctDecomposition derive_decomposition(int n) {
  if (n != 16) {
    throw UnsupportedSize("only the 16-point decomposition is supported");
  }
  DctDecomposition d;
  d.constants = DctConstants::make();

  // Rows Y_{4j} act on ss_c = (x_c + x_{15-c}) + (x_{7-c} + x_{8+c});
  // the DC row folds C_0 = 1/sqrt(2), turning its 1-entries into A.
  for (int j = 0; j < 4; ++j) {
    for (int c = 0; c < 4; ++c) {
      SymEntry e = reduce_angle(4 * j * (2 * c + 1));
      if (j == 0) e.letter = 0;  // 1 * (1/sqrt(2)) = cos(pi/4)
      d.even_even_sym[j][c] = e;
    }
  }
  // Rows Y_{2(2j+1)} act on ds_c = (x_c + x_{15-c}) - (x_{7-c} + x_{8+c}).
  for (int j = 0; j < 4; ++j) {
    for (int c = 0; c < 4; ++c) {
      d.even_odd_sym[j][c] = reduce_angle(2 * (2 * j + 1) * (2 * c + 1));
    }
  }
  // Odd rows Y_{2r+1} act on d_c = x_c - x_{15-c}, split in column halves.
  for (int r = 0; r < 8; ++r) {
    const int k = 2 * r + 1;
    for (int c = 0; c < 4; ++c) {
      d.odd_left_sym[r][c] = reduce_angle(k * (2 * c + 1));
      d.odd_right_sym[r][c] = reduce_angle(k * (2 * (c + 4) + 1));
    }
  }

  const double scale = 2.0 / 16.0;
  auto fill = [&](const auto& sym, auto& dbl, auto& q, auto& units) {
    for (std::size_t r = 0; r < sym.size(); ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        dbl[r][c] = sym_value(d.constants, sym[r][c]);
        q[r][c] = quantize(scale * dbl[r][c], kCoeffFormat);
        units[r][c] = da::build_unit(q[r][c]);
      }
    }
  };
  fill(d.even_even_sym, d.even_even, d.even_even_q, d.even_even_units);
  fill(d.even_odd_sym, d.even_odd, d.even_odd_q, d.even_odd_units);
  fill(d.odd_left_sym, d.odd_left, d.odd_left_q, d.odd_left_units);
  fill(d.odd_right_sym, d.odd_right, d.odd_right_q, d.odd_right_units);

  const PrintedBlocks printed = printed_blocks();
  auto diff = [&](const char* name, const auto& derived, const auto& pr) {
    for (std::size_t r = 0; r < derived.size(); ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        if (!(derived[r][c] == pr[r][c])) {
          d.printed_mismatches.push_back(MatrixDiff{name, static_cast<int>(r),
                                                    static_cast<int>(c),
                                                    derived[r][c], pr[r][c]});
        }
      }
    }
  };
  diff("even_even", d.even_even_sym, printed.even_even);
  diff("even_odd", d.even_odd_sym, printed.even_odd);
  diff("odd_left", d.odd_left_sym, printed.odd_left);
  diff("odd_right", d.odd_right_sym, printed.odd_right);
  return d;
}

std::array<std::array<double, 16>, 16> DctDecomposition::dense() const {
  std::array<std::array<double, 16>, 16> m{};
  const double scale = 2.0 / 16.0;
  // Pre-stage maps: ss/ds from sums s_i = x_i + x_{15-i}, d_i = x_i - x_{15-i}.
  for (int j = 0; j < 4; ++j) {
    for (int c = 0; c < 4; ++c) {
      const double ee = scale * even_even[j][c];
      const double eo = scale * even_odd[j][c];
      for (int x : {c, 15 - c, 7 - c, 8 + c}) {
        m[4 * j][x] += ee;
      }
      m[2 * (2 * j + 1)][c] += eo;
      m[2 * (2 * j + 1)][15 - c] += eo;
      m[2 * (2 * j + 1)][7 - c] -= eo;
      m[2 * (2 * j + 1)][8 + c] -= eo;
    }
  }
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double ol = scale * odd_left[r][c];
      const double orr = scale * odd_right[r][c];
      m[2 * r + 1][c] += ol;
      m[2 * r + 1][15 - c] -= ol;
      m[2 * r + 1][c + 4] += orr;
      m[2 * r + 1][11 - c] -= orr;
    }
  }
  return m;
}

std::array<WideAccumulator, 16> dct16_acc(const DctDecomposition& d,
                                          std::span<const std::int64_t> raws,
                                          int in_fraction_bits) {
  if (raws.size() != 16) {
    throw LengthMismatch("dct16 expects exactly 16 samples");
  }
  std::int64_t s[8], diff[8], ss[4], ds[4];
  for (int i = 0; i < 8; ++i) {
    s[i] = raws[i] + raws[15 - i];
    diff[i] = raws[i] - raws[15 - i];
  }
  for (int i = 0; i < 4; ++i) {
    ss[i] = s[i] + s[7 - i];
    ds[i] = s[i] - s[7 - i];
  }
  const int frac = kCoeffFormat.fraction_bits + in_fraction_bits;
  std::array<WideAccumulator, 16> out;
  for (auto& acc : out) acc = WideAccumulator{0, frac};
  for (int j = 0; j < 4; ++j) {
    std::int64_t ee = 0, eo = 0;
    for (int c = 0; c < 4; ++c) {
      ee += da::eval_unit_wide(d.even_even_units[j][c], ss[c], in_fraction_bits).raw;
      eo += da::eval_unit_wide(d.even_odd_units[j][c], ds[c], in_fraction_bits).raw;
    }
    out[4 * j].raw = ee;
    out[2 * (2 * j + 1)].raw = eo;
  }
  for (int r = 0; r < 8; ++r) {
    std::int64_t left = 0, right = 0;
    for (int c = 0; c < 4; ++c) {
      left += da::eval_unit_wide(d.odd_left_units[r][c], diff[c], in_fraction_bits).raw;
      right += da::eval_unit_wide(d.odd_right_units[r][c], diff[c + 4], in_fraction_bits).raw;
    }
    out[2 * r + 1].raw = left + right;
  }
  return out;
}

std::array<FixedPoint, 16> dct16(const DctDecomposition& d,
                                 std::span<const FixedPoint> input,
                                 SaturationCounter* sat) {
  if (input.size() != 16) {
    throw LengthMismatch("dct16 expects exactly 16 samples");
  }
  std::array<std::int64_t, 16> raws;
  for (std::size_t i = 0; i < 16; ++i) raws[i] = input[i].raw;
  const auto accs = dct16_acc(d, raws, input[0].format.fraction_bits);
  std::array<FixedPoint, 16> out;
  for (std::size_t k = 0; k < 16; ++k) {
    out[k] = renormalize(accs[k], kDctOutFormat, sat);
  }
  return out;
}

Block16 dct2d(const DctDecomposition& d, const Block16& block,
              SaturationCounter* sat) {
  const int in_frac = block[0][0].format.fraction_bits;
  // Row pass at full accumulator width.
  std::array<std::array<std::int64_t, 16>, 16> mid;
  int mid_frac = 0;
  for (std::size_t r = 0; r < 16; ++r) {
    std::array<std::int64_t, 16> raws;
    for (std::size_t c = 0; c < 16; ++c) raws[c] = block[r][c].raw;
    const auto accs = dct16_acc(d, raws, in_frac);
    mid_frac = accs[0].fraction_bits;
    for (std::size_t c = 0; c < 16; ++c) mid[r][c] = accs[c].raw;
  }
  Block16 out;
  for (std::size_t c = 0; c < 16; ++c) {
    std::array<std::int64_t, 16> raws;
    for (std::size_t r = 0; r < 16; ++r) raws[r] = mid[r][c];
    const auto accs = dct16_acc(d, raws, mid_frac);
    for (std::size_t r = 0; r < 16; ++r) {
      out[r][c] = renormalize(accs[r], kDctOutFormat, sat);
    }
  }
  return out;
}

std::vector<std::vector<FixedPoint>> dct2d(
    const DctDecomposition& d, const std::vector<std::vector<FixedPoint>>& block,
    SaturationCounter* sat) {
  if (block.size() != 16) {
    throw ShapeMismatch("block must be 16x16");
  }
  Block16 b;
  for (std::size_t r = 0; r < 16; ++r) {
    if (block[r].size() != 16) {
      throw ShapeMismatch("block must be 16x16");
    }
    for (std::size_t c = 0; c < 16; ++c) b[r][c] = block[r][c];
  }
  const Block16 res = dct2d(d, b, sat);
  std::vector<std::vector<FixedPoint>> out(16, std::vector<FixedPoint>(16));
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) out[r][c] = res[r][c];
  }
  return out;
}

std::array<std::int64_t, 16> serial_row_table(
    const std::array<FixedPoint, 4>& row_constants) {
  std::array<std::int64_t, 16> table{};
  for (unsigned addr = 0; addr < 16; ++addr) {
    std::int64_t acc = 0;
    for (unsigned j = 0; j < 4; ++j) {
      if (addr & (1u << j)) acc += row_constants[j].raw;
    }
    table[addr] = acc;
  }
  return table;
}

}  // namespace dspfab::cosine
