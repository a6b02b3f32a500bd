#include <string>

#include "fabric_internal.hpp"

namespace dspfab::fabric {

namespace {

class Builder {
 public:
  explicit Builder(ConfigMode mode) { netlist_.mode = mode; }

  int add(CmType type, Width width, std::string label) {
    NetNode node;
    node.id = static_cast<int>(netlist_.nodes.size());
    node.type = type;
    node.width = width;
    node.label = std::move(label);
    netlist_.nodes.push_back(std::move(node));
    return netlist_.nodes.back().id;
  }

  NetNode& at(int id) { return netlist_.nodes[static_cast<std::size_t>(id)]; }

  void edge(int from, int to, int port = 0, int lshift = 0, int from_comp = 0,
            int to_comp = 0) {
    netlist_.edges.push_back(NetEdge{from, to, port, lshift, from_comp, to_comp});
  }

  void input(const std::string& name) {
    netlist_.io.push_back(IoPort{name, true, -1});
  }

  void output(const std::string& name, int node) {
    netlist_.io.push_back(IoPort{name, false, node});
  }

  Netlist take() { return std::move(netlist_); }

 private:
  Netlist netlist_;
};

// 16-tap DA filter slice: delay chain, LUT pair + combine adder per tap,
// balanced tree. Returns the tree root (wide, no output shift applied).
struct FirBlock {
  std::vector<int> delay_regs;
  int root = -1;
};

int build_tree(Builder& b, const std::vector<int>& leaves, std::size_t lo,
               std::size_t hi, const std::string& prefix) {
  if (hi - lo == 1) return leaves[lo];
  const std::size_t mid = lo + (hi - lo + 1) / 2;  // ties broken left
  const int left = build_tree(b, leaves, lo, mid, prefix);
  const int right = build_tree(b, leaves, mid, hi, prefix);
  const int add = b.add(CmType::Adder, Width::Real,
                        prefix + "_t" + std::to_string(lo) + "_" + std::to_string(hi));
  b.edge(left, add, 0);
  b.edge(right, add, 1);
  return add;
}

FirBlock build_fir_block(Builder& b, const std::vector<FixedPoint>& taps,
                         std::size_t width, int source, const std::string& prefix) {
  FirBlock block;
  int prev = source;
  for (std::size_t k = 0; k < width; ++k) {
    const int reg = b.add(CmType::Register, Width::Real,
                          prefix + "_x" + std::to_string(k));
    b.edge(prev, reg, 0);
    block.delay_regs.push_back(reg);
    prev = reg;
  }
  std::vector<int> unit_outs;
  for (std::size_t k = 0; k < width; ++k) {
    const FixedPoint coeff =
        k < taps.size() ? taps[k] : FixedPoint{0, kCoeffFormat};
    const auto unit = da::build_unit(coeff);
    const int lo = b.add(CmType::Lut, Width::Real, prefix + "_lut_lo" + std::to_string(k));
    b.at(lo).table = unit.low.entries;
    b.at(lo).addressing = LutAddressing::NibbleLow;
    const int hi = b.add(CmType::Lut, Width::Real, prefix + "_lut_hi" + std::to_string(k));
    b.at(hi).table = unit.high.entries;
    b.at(hi).addressing = LutAddressing::NibbleHigh;
    b.edge(block.delay_regs[k], lo, 0);
    b.edge(block.delay_regs[k], hi, 0);
    const int combine = b.add(CmType::Adder, Width::Real,
                              prefix + "_u" + std::to_string(k));
    b.edge(lo, combine, 0);
    b.edge(hi, combine, 1, /*lshift=*/4);
    unit_outs.push_back(combine);
  }
  block.root = build_tree(b, unit_outs, 0, unit_outs.size(), prefix);
  return block;
}

Netlist build_fir(const filter::FirSpec& spec) {
  Builder b{ConfigMode::FIR};
  b.input("in");
  const int gate = b.add(CmType::Mux2, Width::Real, "in_gate");
  b.at(gate).select = SelectSource::Const0;
  b.edge(-1, gate, 0);
  FirBlock fir = build_fir_block(b, spec.taps, filter::kMaxTaps, gate, "fir");
  auto& root = b.at(fir.root);
  root.out_shift = kCoeffFormat.fraction_bits + kSampleFormat.fraction_bits -
                   kFilterOutFormat.fraction_bits;
  root.saturate = true;
  root.sat_format = kFilterOutFormat;
  b.output("out", fir.root);
  Netlist netlist = b.take();
  netlist.meta.input_mux = gate;
  netlist.meta.output_node = fir.root;
  return netlist;
}

Netlist build_iir(const filter::IirSpec& spec) {
  Builder b{ConfigMode::IIR};
  b.input("in");
  const int gate = b.add(CmType::Mux2, Width::Real, "in_gate");
  b.at(gate).select = SelectSource::Const0;
  b.edge(-1, gate, 0);
  FirBlock fwd = build_fir_block(b, spec.forward.taps, filter::kMaxTaps, gate, "fwd");

  // Feedback delay chain is fed by the requantizer built below; patch the
  // first edge afterwards.
  FirBlock fb = build_fir_block(b, spec.feedback, filter::kMaxTaps - 1, gate, "fb");

  const int combine = b.add(CmType::Adder, Width::Real, "combine");
  b.edge(fwd.root, combine, 0);
  b.edge(fb.root, combine, 1);
  auto& comb = b.at(combine);
  comb.out_shift = kCoeffFormat.fraction_bits + kSampleFormat.fraction_bits -
                   kFilterOutFormat.fraction_bits;
  comb.saturate = true;
  comb.sat_format = kFilterOutFormat;

  // The output re-enters the 8-bit DA path; the rounding bias of that
  // requantization is this adder.
  const int requant = b.add(CmType::Adder, Width::Real, "fb_requant");
  b.edge(combine, requant, 0);
  auto& rq = b.at(requant);
  rq.out_shift = kFilterOutFormat.fraction_bits - kSampleFormat.fraction_bits;
  rq.saturate = true;
  rq.sat_format = kSampleFormat;

  Netlist netlist = b.take();
  for (auto& e : netlist.edges) {
    if (e.to == fb.delay_regs.front() && e.from == gate) {
      e.from = requant;
    }
  }
  netlist.io.push_back(IoPort{"out", false, combine});
  netlist.meta.input_mux = gate;
  netlist.meta.output_node = combine;
  netlist.meta.fb_requant = requant;
  return netlist;
}

Netlist build_dwt(const wavelet::DilationPair& pair) {
  Builder b{ConfigMode::DWT};
  b.input("in");
  const int counter = b.add(CmType::Counter1, Width::Real, "phase");
  auto branch = [&](const std::vector<FixedPoint>& taps, const std::string& prefix) {
    FirBlock block = build_fir_block(b, taps, taps.size(), -1, prefix);
    auto& root = b.at(block.root);
    root.out_shift = kCoeffFormat.fraction_bits + kSampleFormat.fraction_bits -
                     wavelet::kDwtOutFormat.fraction_bits;
    root.saturate = true;
    root.sat_format = wavelet::kDwtOutFormat;
    const int hold = b.add(CmType::Register, Width::Real, prefix + "_hold");
    b.at(hold).reg_kind = RegisterKind::CounterGated;
    b.edge(block.root, hold, 0);
    b.edge(counter, hold, 1);
    return hold;
  };
  const int low_hold = branch(pair.lowpass.taps, "low");
  const int high_hold = branch(pair.highpass.taps, "high");
  b.output("approx", low_hold);
  b.output("detail", high_hold);
  Netlist netlist = b.take();
  netlist.meta.counter = counter;
  netlist.meta.approx_reg = low_hold;
  netlist.meta.detail_reg = high_hold;
  CmCounts single;
  single[CmType::Counter1] = 1;  // shared by the pair
  single[CmType::Lut] = 16;
  single[CmType::Adder] = 15;
  single[CmType::Register] = 9;
  netlist.meta.dwt_single = single;
  return netlist;
}

Netlist build_fft(const fourier::FftPlan& plan) {
  Builder b{ConfigMode::FFT};
  for (int i = 0; i < 16; ++i) b.input("in" + std::to_string(i));

  NetMeta meta;
  const int widen =
      kFftWorkFormat.fraction_bits - kFftInFormat.fraction_bits;
  for (int r = 0; r < 16; ++r) {
    const int re = b.add(CmType::Register, Width::Real,
                         "state" + std::to_string(r) + "_re");
    const int im = b.add(CmType::Register, Width::Real,
                         "state" + std::to_string(r) + "_im");
    b.at(re).reg_kind = RegisterKind::Manual;
    b.at(im).reg_kind = RegisterKind::Manual;
    meta.state_re[static_cast<std::size_t>(r)] = re;
    meta.state_im[static_cast<std::size_t>(r)] = im;
    const int src = fourier::bit_reverse4(r);
    meta.load_map[static_cast<std::size_t>(r)] = src;
    b.edge(-1 - src, re, 0, widen, 1, 0);
    b.edge(-1 - src, im, 0, widen, 2, 0);
  }

  for (int unit = 0; unit < 8; ++unit) {
    const std::string p = "bf" + std::to_string(unit);
    const int mux_top = b.add(CmType::Mux4, Width::Cplx, p + "_sel_top");
    const int mux_bot = b.add(CmType::Mux4, Width::Cplx, p + "_sel_bot");
    b.at(mux_top).select = SelectSource::Stage;
    b.at(mux_bot).select = SelectSource::Stage;
    for (int s = 0; s < 4; ++s) {
      const int top = fourier::fft_pair_top(s, unit);
      const int bot = top + (1 << s);
      b.edge(meta.state_re[static_cast<std::size_t>(top)], mux_top, s, 0, 0, 1);
      b.edge(meta.state_im[static_cast<std::size_t>(top)], mux_top, s, 0, 0, 2);
      b.edge(meta.state_re[static_cast<std::size_t>(bot)], mux_bot, s, 0, 0, 1);
      b.edge(meta.state_im[static_cast<std::size_t>(bot)], mux_bot, s, 0, 0, 2);
    }
    const int diff = b.add(CmType::Subtractor, Width::Real, p + "_diff");
    b.edge(mux_bot, diff, 0, 0, 1, 0);
    b.edge(mux_bot, diff, 1, 0, 2, 0);
    const int mul_cms = b.add(CmType::Multiplier, Width::Real, p + "_mul_cms");
    const int mul_c = b.add(CmType::Multiplier, Width::Real, p + "_mul_c");
    const int mul_cps = b.add(CmType::Multiplier, Width::Real, p + "_mul_cps");
    for (int s = 0; s < 4; ++s) {
      const auto& w = plan.twiddles[static_cast<std::size_t>(
          fourier::fft_twiddle_index(s, unit))];
      b.at(mul_cms).coeff_by_stage[static_cast<std::size_t>(s)] = w.c_minus_s.raw;
      b.at(mul_c).coeff_by_stage[static_cast<std::size_t>(s)] = w.c.raw;
      b.at(mul_cps).coeff_by_stage[static_cast<std::size_t>(s)] = w.c_plus_s.raw;
    }
    b.edge(mux_bot, mul_cms, 0, 0, 2, 0);  // (cos - sin) * b
    b.edge(diff, mul_c, 0);                // cos * (a - b)
    b.edge(mux_bot, mul_cps, 0, 0, 1, 0);  // (cos + sin) * a
    const int add_r = b.add(CmType::Adder, Width::Real, p + "_prod_re");
    b.edge(mul_cms, add_r, 0);
    b.edge(mul_c, add_r, 1);
    const int sub_i = b.add(CmType::Subtractor, Width::Real, p + "_prod_im");
    b.edge(mul_cps, sub_i, 0);
    b.edge(mul_c, sub_i, 1);

    const int tw_frac = kTwiddleFormat.fraction_bits;
    const int cadd = b.add(CmType::Adder, Width::Cplx, p + "_sum");
    b.edge(mux_top, cadd, 0, tw_frac, 0, 0);
    b.edge(add_r, cadd, 1, 0, 0, 1);
    b.edge(sub_i, cadd, 1, 0, 0, 2);
    const int csub = b.add(CmType::Subtractor, Width::Cplx, p + "_dif");
    b.edge(mux_top, csub, 0, tw_frac, 0, 0);
    b.edge(add_r, csub, 1, 0, 0, 1);
    b.edge(sub_i, csub, 1, 0, 0, 2);
    for (int node : {cadd, csub}) {
      auto& nn = b.at(node);
      nn.out_shift = tw_frac;
      nn.saturate = true;
      nn.sat_format = kFftWorkFormat;
    }

    const int latch_t = b.add(CmType::Register, Width::Cplx, p + "_latch_t");
    const int latch_b = b.add(CmType::Register, Width::Cplx, p + "_latch_b");
    b.at(latch_t).reg_kind = RegisterKind::Manual;
    b.at(latch_b).reg_kind = RegisterKind::Manual;
    b.edge(cadd, latch_t, 0);
    b.edge(csub, latch_b, 0);
    for (int s = 0; s < 4; ++s) {
      const int top = fourier::fft_pair_top(s, unit);
      const int bot = top + (1 << s);
      meta.writeback[static_cast<std::size_t>(s)][static_cast<std::size_t>(top)] =
          latch_t;
      meta.writeback[static_cast<std::size_t>(s)][static_cast<std::size_t>(bot)] =
          latch_b;
    }
  }

  // Two 8:1 output serializer trees over the state registers.
  auto serializer = [&](int base, const std::string& prefix) {
    std::array<int, 4> level0;
    for (int i = 0; i < 4; ++i) {
      const int m = b.add(CmType::Mux2, Width::Cplx,
                          prefix + "_l0_" + std::to_string(i));
      b.at(m).select = SelectSource::OutBit0;
      for (int half = 0; half < 2; ++half) {
        const int state = base + 2 * i + half;
        b.edge(meta.state_re[static_cast<std::size_t>(state)], m, half, 0, 0, 1);
        b.edge(meta.state_im[static_cast<std::size_t>(state)], m, half, 0, 0, 2);
      }
      level0[static_cast<std::size_t>(i)] = m;
    }
    std::array<int, 2> level1;
    for (int i = 0; i < 2; ++i) {
      const int m = b.add(CmType::Mux2, Width::Cplx,
                          prefix + "_l1_" + std::to_string(i));
      b.at(m).select = SelectSource::OutBit1;
      b.edge(level0[static_cast<std::size_t>(2 * i)], m, 0);
      b.edge(level0[static_cast<std::size_t>(2 * i + 1)], m, 1);
      level1[static_cast<std::size_t>(i)] = m;
    }
    const int root = b.add(CmType::Mux2, Width::Cplx, prefix + "_root");
    b.at(root).select = SelectSource::OutBit2;
    b.edge(level1[0], root, 0);
    b.edge(level1[1], root, 1);
    return root;
  };
  meta.ser_root_low = serializer(0, "ser_lo");
  meta.ser_root_high = serializer(8, "ser_hi");
  b.output("out_lo", meta.ser_root_low);
  b.output("out_hi", meta.ser_root_high);

  Netlist netlist = b.take();
  netlist.meta = meta;
  return netlist;
}

Netlist build_dct() {
  const cosine::DctDecomposition decomp = cosine::derive_decomposition(16);
  Builder b{ConfigMode::DCT};
  for (int i = 0; i < 16; ++i) b.input("in" + std::to_string(i));

  NetMeta meta;
  meta.serial_bits = 10;  // Q2.6 inputs grow to 10 bits after two add levels
  meta.acc_fraction_bits =
      kCoeffFormat.fraction_bits + kSampleFormat.fraction_bits;

  std::array<int, 8> sums, diffs;
  for (int i = 0; i < 8; ++i) {
    sums[static_cast<std::size_t>(i)] =
        b.add(CmType::Adder, Width::Real, "pre_s" + std::to_string(i));
    b.edge(-1 - i, sums[static_cast<std::size_t>(i)], 0);
    b.edge(-1 - (15 - i), sums[static_cast<std::size_t>(i)], 1);
    diffs[static_cast<std::size_t>(i)] =
        b.add(CmType::Subtractor, Width::Real, "pre_d" + std::to_string(i));
    b.edge(-1 - i, diffs[static_cast<std::size_t>(i)], 0);
    b.edge(-1 - (15 - i), diffs[static_cast<std::size_t>(i)], 1);
  }
  std::array<int, 4> ss, ds;
  for (int i = 0; i < 4; ++i) {
    ss[static_cast<std::size_t>(i)] =
        b.add(CmType::Adder, Width::Real, "pre_ss" + std::to_string(i));
    b.edge(sums[static_cast<std::size_t>(i)], ss[static_cast<std::size_t>(i)], 0);
    b.edge(sums[static_cast<std::size_t>(7 - i)], ss[static_cast<std::size_t>(i)], 1);
    ds[static_cast<std::size_t>(i)] =
        b.add(CmType::Subtractor, Width::Real, "pre_ds" + std::to_string(i));
    b.edge(sums[static_cast<std::size_t>(i)], ds[static_cast<std::size_t>(i)], 0);
    b.edge(sums[static_cast<std::size_t>(7 - i)], ds[static_cast<std::size_t>(i)], 1);
  }
  // The even path is a level deeper, so it is pipelined behind registers.
  std::array<int, 4> p_ss, p_ds;
  for (int i = 0; i < 4; ++i) {
    p_ss[static_cast<std::size_t>(i)] =
        b.add(CmType::Register, Width::Real, "pipe_ss" + std::to_string(i));
    b.edge(ss[static_cast<std::size_t>(i)], p_ss[static_cast<std::size_t>(i)], 0);
    p_ds[static_cast<std::size_t>(i)] =
        b.add(CmType::Register, Width::Real, "pipe_ds" + std::to_string(i));
    b.edge(ds[static_cast<std::size_t>(i)], p_ds[static_cast<std::size_t>(i)], 0);
  }

  // Bit-serial row engine: 16-entry LUT + shift-accumulate, subtract on the
  // sign cycle. Returns the accumulator register.
  auto engine = [&](const std::array<FixedPoint, 4>& row,
                    const std::array<int, 4>& srcs, const std::string& prefix) {
    const int lut = b.add(CmType::Lut, Width::Real, prefix + "_lut");
    b.at(lut).table = cosine::serial_row_table(row);
    b.at(lut).addressing = LutAddressing::BitSerial4;
    for (int j = 0; j < 4; ++j) {
      b.edge(srcs[static_cast<std::size_t>(j)], lut, j);
    }
    const int acc = b.add(CmType::Register, Width::Real, prefix + "_acc");
    b.at(acc).serial_acc = true;
    const int add = b.add(CmType::Adder, Width::Real, prefix + "_add");
    b.edge(acc, add, 0, /*lshift=*/1);
    b.edge(lut, add, 1);
    const int sub = b.add(CmType::Subtractor, Width::Real, prefix + "_sub");
    b.edge(acc, sub, 0, /*lshift=*/1);
    b.edge(lut, sub, 1);
    b.edge(add, acc, 0);
    b.edge(sub, acc, 1);
    return acc;
  };

  for (int j = 0; j < 4; ++j) {
    const int acc_ee = engine(decomp.even_even_q[static_cast<std::size_t>(j)], p_ss,
                              "ee" + std::to_string(j));
    meta.row_out[static_cast<std::size_t>(4 * j)] = acc_ee;
    meta.acc_regs.push_back(acc_ee);
    const int acc_eo = engine(decomp.even_odd_q[static_cast<std::size_t>(j)], p_ds,
                              "eo" + std::to_string(j));
    meta.row_out[static_cast<std::size_t>(2 * (2 * j + 1))] = acc_eo;
    meta.acc_regs.push_back(acc_eo);
  }
  const std::array<int, 4> d_left = {diffs[0], diffs[1], diffs[2], diffs[3]};
  const std::array<int, 4> d_right = {diffs[4], diffs[5], diffs[6], diffs[7]};
  for (int r = 0; r < 8; ++r) {
    const int acc_l = engine(decomp.odd_left_q[static_cast<std::size_t>(r)], d_left,
                             "ol" + std::to_string(r));
    const int acc_r = engine(decomp.odd_right_q[static_cast<std::size_t>(r)], d_right,
                             "or" + std::to_string(r));
    meta.acc_regs.push_back(acc_l);
    meta.acc_regs.push_back(acc_r);
    const int comb = b.add(CmType::Adder, Width::Real, "odd" + std::to_string(r));
    b.edge(acc_l, comb, 0);
    b.edge(acc_r, comb, 1);
    meta.row_out[static_cast<std::size_t>(2 * r + 1)] = comb;
  }

  // Output stage: eight 2:1 muxes emit the even-indexed rows, then the odd.
  static constexpr int kEvenOrder[8] = {0, 4, 8, 12, 2, 6, 10, 14};
  static constexpr int kOddOrder[8] = {1, 3, 5, 7, 9, 11, 13, 15};
  for (int p = 0; p < 8; ++p) {
    const int m = b.add(CmType::Mux2, Width::Real, "out_mux" + std::to_string(p));
    b.at(m).select = SelectSource::OutBit0;
    b.edge(meta.row_out[static_cast<std::size_t>(kEvenOrder[p])], m, 0);
    b.edge(meta.row_out[static_cast<std::size_t>(kOddOrder[p])], m, 1);
    meta.out_mux[static_cast<std::size_t>(p)] = m;
    b.output("out" + std::to_string(p), m);
  }

  Netlist netlist = b.take();
  netlist.meta = meta;
  return netlist;
}

}  // namespace

Netlist detail_build(ConfigMode mode, const ModeSpec& spec) {
  switch (mode) {
    case ConfigMode::FIR:
      if (const auto* cfg = std::get_if<FirConfig>(&spec)) {
        return build_fir(cfg->spec);
      }
      break;
    case ConfigMode::IIR:
      if (const auto* cfg = std::get_if<IirConfig>(&spec)) {
        return build_iir(cfg->spec);
      }
      break;
    case ConfigMode::DWT:
      if (const auto* cfg = std::get_if<DwtConfig>(&spec)) {
        return build_dwt(cfg->pair);
      }
      break;
    case ConfigMode::FFT:
      if (const auto* cfg = std::get_if<FftConfig>(&spec)) {
        return build_fft(cfg->plan);
      }
      break;
    case ConfigMode::DCT:
      if (std::get_if<DctConfig>(&spec)) {
        return build_dct();
      }
      break;
  }
  throw Error("configuration parameters do not match the mode");
}

}  // namespace dspfab::fabric
