#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dspfab/da_engine.hpp"
#include "dspfab/numerics.hpp"

namespace dspfab::cosine {

// The fifteen constants cos(pi/4) .. cos(15 pi/32), indexed 0..14 as A..O.
struct DctConstants {
  std::array<double, 15> analytic{};
  std::array<FixedPoint, 15> quantized{};  // Q1.15

  static DctConstants make();
  static char letter(int index) { return static_cast<char>('A' + index); }
};

// Signed reference to one constant; letter -1 is the literal 1 that only
// appears in the DC row before the C_0 fold.
struct SymEntry {
  int letter = -1;
  int sign = 1;

  std::string to_string() const;
  friend bool operator==(const SymEntry&, const SymEntry&) = default;
};

struct MatrixDiff {
  std::string block;
  int row = 0;
  int col = 0;
  SymEntry derived;
  SymEntry printed;
};

// Even/odd index decomposition of the 16-point transform: a butterfly
// pre-stage (x_i +- x_{15-i}, then s_i +- s_{7-i} on the even path) feeding
// four constant blocks. Matrices are generated from the transform definition;
// the published blocks are compared against the derivation, not adopted.
struct DctDecomposition {
  DctConstants constants;

  std::array<std::array<SymEntry, 4>, 4> even_even_sym{};   // rows Y0,Y4,Y8,Y12
  std::array<std::array<SymEntry, 4>, 4> even_odd_sym{};    // rows Y2,Y6,Y10,Y14
  std::array<std::array<SymEntry, 4>, 8> odd_left_sym{};    // rows Y1..Y15 odd
  std::array<std::array<SymEntry, 4>, 8> odd_right_sym{};

  // C_k folded (the DC row carries 1/sqrt(2)); 2/N is not folded here so the
  // entries line up with the published letters.
  std::array<std::array<double, 4>, 4> even_even{};
  std::array<std::array<double, 4>, 4> even_odd{};
  std::array<std::array<double, 4>, 8> odd_left{};
  std::array<std::array<double, 4>, 8> odd_right{};

  // Storage actually used by the datapath: 2/N and C_k folded, quantized.
  std::array<std::array<FixedPoint, 4>, 4> even_even_q{};
  std::array<std::array<FixedPoint, 4>, 4> even_odd_q{};
  std::array<std::array<FixedPoint, 4>, 8> odd_left_q{};
  std::array<std::array<FixedPoint, 4>, 8> odd_right_q{};

  std::array<std::array<da::CoefficientUnit, 4>, 4> even_even_units;
  std::array<std::array<da::CoefficientUnit, 4>, 4> even_odd_units;
  std::array<std::array<da::CoefficientUnit, 4>, 8> odd_left_units;
  std::array<std::array<da::CoefficientUnit, 4>, 8> odd_right_units;

  std::vector<MatrixDiff> printed_mismatches;

  // Full 16x16 double matrix (2/N folded) assembled from the blocks plus
  // pre-stage; double-precision reference of the decomposition.
  std::array<std::array<double, 16>, 16> dense() const;
};

DctDecomposition derive_decomposition(int n);  // UnsupportedSize unless n == 16

// Row outputs as exact wide accumulators; input raws carry in_fraction_bits.
std::array<WideAccumulator, 16> dct16_acc(const DctDecomposition& d,
                                          std::span<const std::int64_t> raws,
                                          int in_fraction_bits);

std::array<FixedPoint, 16> dct16(const DctDecomposition& d,
                                 std::span<const FixedPoint> input,
                                 SaturationCounter* sat = nullptr);

using Block16 = std::array<std::array<FixedPoint, 16>, 16>;

// Rows then columns; intermediates stay at accumulator width, one final
// quantization after the column pass.
Block16 dct2d(const DctDecomposition& d, const Block16& block,
              SaturationCounter* sat = nullptr);

// Vector front end for file I/O; ShapeMismatch unless 16x16.
std::vector<std::vector<FixedPoint>> dct2d(
    const DctDecomposition& d, const std::vector<std::vector<FixedPoint>>& block,
    SaturationCounter* sat = nullptr);

// 16-entry table for a bit-serial row engine: table[addr] = sum of the row
// constants whose address bit is set.
std::array<std::int64_t, 16> serial_row_table(
    const std::array<FixedPoint, 4>& row_constants);

}  // namespace dspfab::cosine
