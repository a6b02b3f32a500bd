#include <algorithm>
#include <vector>

#include "fabric_internal.hpp"

namespace dspfab::fabric {

namespace {

struct Value {
  std::int64_t re = 0;
  std::int64_t im = 0;
};

// Synchronous interpreter over the node graph: registers and the 1-bit
// counter are the only state; everything else settles combinationally in
// topological order. Drivers sequence ticks and control selects per mode.
class Machine {
 public:
  explicit Machine(const Netlist& nl) : nl_(nl) {
    values_.resize(nl.nodes.size());
    state_.resize(nl.nodes.size());
    in_edges_.resize(nl.nodes.size());
    for (const auto& e : nl_.edges) {
      in_edges_[static_cast<std::size_t>(e.to)].push_back(&e);
    }
    build_order();
  }

  // Control lines driven by the decoder/sequencer, not part of the census.
  int stage = 0;
  int out_index = 0;
  int serial_bit = 0;
  bool msb_cycle = false;
  bool serial_enable = false;  // accumulate-enable for the bit-serial rows

  std::vector<Value> external;
  SaturationCounter sat;

  void comb_eval() {
    for (int id : order_) {
      eval_node(id);
    }
  }

  // Clock edge: registers capture from the last settle, the counter toggles.
  void latch_all() {
    std::vector<Value> next;
    next.reserve(nl_.nodes.size());
    for (const auto& n : nl_.nodes) {
      next.push_back(state_[static_cast<std::size_t>(n.id)]);
    }
    for (const auto& n : nl_.nodes) {
      if (n.type == CmType::Register && n.reg_kind != RegisterKind::Manual) {
        if (n.reg_kind == RegisterKind::CounterGated && counter_ != 1) continue;
        if (n.serial_acc && !serial_enable) continue;
        const int port = n.serial_acc ? (msb_cycle ? 1 : 0) : 0;
        next[static_cast<std::size_t>(n.id)] = gather(n.id, port);
      }
    }
    state_ = std::move(next);
    counter_ ^= 1;
  }

  void load_register(int id, Value v) { state_[static_cast<std::size_t>(id)] = v; }

  Value reg_value(int id) const { return state_[static_cast<std::size_t>(id)]; }
  Value value(int id) const { return values_[static_cast<std::size_t>(id)]; }
  int counter_bit() const { return counter_; }

 private:
  void build_order() {
    const auto n = nl_.nodes.size();
    auto is_state = [&](int id) {
      const auto t = nl_.nodes[static_cast<std::size_t>(id)].type;
      return t == CmType::Register || t == CmType::Counter1;
    };
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& e : nl_.edges) {
      if (e.from >= 0 && !is_state(e.from) && !is_state(e.to)) {
        out[static_cast<std::size_t>(e.from)].push_back(e.to);
        ++indeg[static_cast<std::size_t>(e.to)];
      }
    }
    std::vector<int> queue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_state(static_cast<int>(i)) && indeg[i] == 0) {
        queue.push_back(static_cast<int>(i));
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int cur = queue[head];
      order_.push_back(cur);
      for (int succ : out[static_cast<std::size_t>(cur)]) {
        if (--indeg[static_cast<std::size_t>(succ)] == 0) {
          queue.push_back(succ);
        }
      }
    }
  }

  std::int64_t shifted_round(std::int64_t v, const NetNode& n) const {
    return round_shift_half_away(v, n.out_shift);
  }

  std::int64_t saturated(std::int64_t v, const NetNode& n) {
    if (!n.saturate) return v;
    if (v > n.sat_format.max_raw()) {
      ++sat.events;
      return n.sat_format.max_raw();
    }
    if (v < n.sat_format.min_raw()) {
      ++sat.events;
      return n.sat_format.min_raw();
    }
    return v;
  }

  Value source_value(const NetEdge& e) const {
    Value v;
    if (e.from < 0) {
      v = external[static_cast<std::size_t>(-1 - e.from)];
    } else {
      const auto& src = nl_.nodes[static_cast<std::size_t>(e.from)];
      v = (src.type == CmType::Register || src.type == CmType::Counter1)
              ? state_[static_cast<std::size_t>(e.from)]
              : values_[static_cast<std::size_t>(e.from)];
      if (src.type == CmType::Counter1) v = Value{counter_, 0};
    }
    if (e.from_component == 1) v = Value{v.re, 0};
    if (e.from_component == 2) v = Value{v.im, 0};
    v.re <<= e.lshift;
    v.im <<= e.lshift;
    return v;
  }

  Value gather(int id, int port) const {
    Value acc;
    for (const auto* e : in_edges_[static_cast<std::size_t>(id)]) {
      if (e->to_port != port) continue;
      const Value v = source_value(*e);
      if (e->to_component == 2) {
        acc.im = v.re;
      } else if (e->to_component == 1) {
        acc.re = v.re;
      } else {
        acc = v;
      }
    }
    return acc;
  }

  int select_of(const NetNode& n) const {
    switch (n.select) {
      case SelectSource::Const0: return 0;
      case SelectSource::Stage: return stage;
      case SelectSource::OutBit0: return out_index & 1;
      case SelectSource::OutBit1: return (out_index >> 1) & 1;
      case SelectSource::OutBit2: return (out_index >> 2) & 1;
    }
    return 0;
  }

  void eval_node(int id) {
    const auto& n = nl_.nodes[static_cast<std::size_t>(id)];
    Value out;
    switch (n.type) {
      case CmType::Adder: {
        const Value a = gather(id, 0);
        const Value b = gather(id, 1);
        out = Value{a.re + b.re, a.im + b.im};
        break;
      }
      case CmType::Subtractor: {
        const Value a = gather(id, 0);
        const Value b = gather(id, 1);
        out = Value{a.re - b.re, a.im - b.im};
        break;
      }
      case CmType::Multiplier: {
        const Value a = gather(id, 0);
        out = Value{n.coeff_by_stage[static_cast<std::size_t>(stage)] * a.re, 0};
        break;
      }
      case CmType::Lut: {
        unsigned addr = 0;
        if (n.addressing == LutAddressing::BitSerial4) {
          for (int j = 0; j < 4; ++j) {
            addr |= static_cast<unsigned>((gather(id, j).re >> serial_bit) & 1) << j;
          }
        } else {
          const auto bits = static_cast<std::uint8_t>(gather(id, 0).re);
          addr = n.addressing == LutAddressing::NibbleLow ? (bits & 0xFu)
                                                          : ((bits >> 4) & 0xFu);
        }
        out = Value{n.table[addr], 0};
        break;
      }
      case CmType::Mux2:
      case CmType::Mux4:
        out = gather(id, select_of(n));
        break;
      case CmType::Register:
      case CmType::Counter1:
        return;  // state, read via reg_value
    }
    out.re = saturated(shifted_round(out.re, n), n);
    out.im = saturated(shifted_round(out.im, n), n);
    values_[static_cast<std::size_t>(id)] = out;
  }

  const Netlist& nl_;
  std::vector<Value> values_;
  std::vector<Value> state_;
  std::vector<std::vector<const NetEdge*>> in_edges_;
  std::vector<int> order_;
  int counter_ = 0;
};

StreamResult run_filter_stream(const Netlist& nl, std::span<const FixedPoint> inputs) {
  Machine m{nl};
  m.external.resize(1);
  StreamResult result;
  result.out.reserve(inputs.size());
  const QFormat out_fmt = nl.mode == ConfigMode::FIR || nl.mode == ConfigMode::IIR
                              ? kFilterOutFormat
                              : wavelet::kDwtOutFormat;
  std::size_t tick = 0;
  for (const auto& x : inputs) {
    if (!(x.format == kSampleFormat)) {
      throw ArityMismatch("stream samples must be in the 8-bit sample format");
    }
    m.external[0] = Value{x.raw, 0};
    m.comb_eval();
    m.latch_all();
    m.comb_eval();
    if (nl.mode == ConfigMode::DWT) {
      if (tick % 2 == 1) {  // counter wrapped 1 -> 0 at this edge
        result.out.push_back(FixedPoint{
            static_cast<std::int32_t>(m.reg_value(nl.meta.approx_reg).re), out_fmt});
        result.detail.push_back(FixedPoint{
            static_cast<std::int32_t>(m.reg_value(nl.meta.detail_reg).re), out_fmt});
      }
    } else {
      result.out.push_back(FixedPoint{
          static_cast<std::int32_t>(m.value(nl.meta.output_node).re), out_fmt});
    }
    ++tick;
  }
  result.saturation_events = m.sat.events;
  return result;
}

StreamResult run_dct_blocks(const Netlist& nl, std::span<const FixedPoint> inputs) {
  if (inputs.size() % 16 != 0 || inputs.empty()) {
    throw ArityMismatch("DCT consumes blocks of 16 samples");
  }
  Machine m{nl};
  m.external.resize(16);
  StreamResult result;
  result.out.reserve(inputs.size());
  for (std::size_t base = 0; base < inputs.size(); base += 16) {
    for (std::size_t i = 0; i < 16; ++i) {
      const auto& x = inputs[base + i];
      if (!(x.format == kSampleFormat)) {
        throw ArityMismatch("DCT samples must be in the 8-bit sample format");
      }
      m.external[i] = Value{x.raw, 0};
    }
    for (int acc : nl.meta.acc_regs) m.load_register(acc, Value{});
    m.serial_enable = false;
    m.comb_eval();
    m.latch_all();  // pipeline registers capture the even-path pre-stage
    m.serial_enable = true;
    for (int t = nl.meta.serial_bits - 1; t >= 0; --t) {
      m.serial_bit = t;
      m.msb_cycle = t == nl.meta.serial_bits - 1;
      m.comb_eval();
      m.latch_all();
    }
    m.serial_enable = false;
    m.comb_eval();  // settle odd-row combiners and the output muxes
    std::array<std::int64_t, 16> row_raw;
    for (int phase = 0; phase < 2; ++phase) {
      m.out_index = phase;
      m.comb_eval();
      static constexpr int kEvenOrder[8] = {0, 4, 8, 12, 2, 6, 10, 14};
      static constexpr int kOddOrder[8] = {1, 3, 5, 7, 9, 11, 13, 15};
      for (int p = 0; p < 8; ++p) {
        const int y = phase == 0 ? kEvenOrder[p] : kOddOrder[p];
        row_raw[static_cast<std::size_t>(y)] =
            m.value(nl.meta.out_mux[static_cast<std::size_t>(p)]).re;
      }
    }
    for (std::size_t k = 0; k < 16; ++k) {
      result.out.push_back(renormalize(
          WideAccumulator{row_raw[k], nl.meta.acc_fraction_bits}, kDctOutFormat,
          &m.sat));
    }
  }
  result.saturation_events = m.sat.events;
  return result;
}

ComplexResult run_fft_blocks(const Netlist& nl, std::span<const ComplexFixed> inputs) {
  if (inputs.size() % 16 != 0 || inputs.empty()) {
    throw ArityMismatch("FFT consumes blocks of 16 complex samples");
  }
  Machine m{nl};
  m.external.resize(16);
  ComplexResult result;
  result.out.reserve(inputs.size());
  const int widen = kFftWorkFormat.fraction_bits - kFftInFormat.fraction_bits;
  // Latch node -> its combine source, resolved once.
  std::vector<int> latch_source(nl.nodes.size(), -1);
  for (const auto& e : nl.edges) {
    if (e.from >= 0 && e.to_port == 0 &&
        nl.nodes[static_cast<std::size_t>(e.to)].type == CmType::Register &&
        nl.nodes[static_cast<std::size_t>(e.to)].reg_kind == RegisterKind::Manual &&
        nl.nodes[static_cast<std::size_t>(e.to)].width == Width::Cplx) {
      latch_source[static_cast<std::size_t>(e.to)] = e.from;
    }
  }
  for (std::size_t base = 0; base < inputs.size(); base += 16) {
    for (int r = 0; r < 16; ++r) {
      const auto& src =
          inputs[base + static_cast<std::size_t>(
                            nl.meta.load_map[static_cast<std::size_t>(r)])];
      if (!(src.re.format == kFftInFormat)) {
        throw ArityMismatch("FFT samples must be in the transform input format");
      }
      m.load_register(nl.meta.state_re[static_cast<std::size_t>(r)],
                      Value{std::int64_t{src.re.raw} << widen, 0});
      m.load_register(nl.meta.state_im[static_cast<std::size_t>(r)],
                      Value{std::int64_t{src.im.raw} << widen, 0});
    }
    for (int s = 0; s < 4; ++s) {
      m.stage = s;
      m.comb_eval();
      // Butterfly output latches capture, then the stage writeback.
      std::array<Value, 16> next;
      for (int r = 0; r < 16; ++r) {
        const int latch = nl.meta.writeback[static_cast<std::size_t>(s)]
                                           [static_cast<std::size_t>(r)];
        const bool is_top =
            fourier::fft_pair_top(s, /*butterfly=*/0) >= 0 &&
            nl.nodes[static_cast<std::size_t>(latch)].label.ends_with("_latch_t");
        (void)is_top;
        // The latch node holds the combine value computed this stage.
        const auto* src_edge = [&]() -> const NetEdge* {
          for (const auto& e : nl.edges) {
            if (e.to == latch && e.to_port == 0) return &e;
          }
          return nullptr;
        }();
        next[static_cast<std::size_t>(r)] = m.value(src_edge->from);
      }
      for (int r = 0; r < 16; ++r) {
        m.load_register(nl.meta.state_re[static_cast<std::size_t>(r)],
                        Value{next[static_cast<std::size_t>(r)].re, 0});
        m.load_register(nl.meta.state_im[static_cast<std::size_t>(r)],
                        Value{next[static_cast<std::size_t>(r)].im, 0});
      }
    }
    for (int i = 0; i < 16; ++i) {
      m.out_index = i & 7;
      m.comb_eval();
      const int root = i < 8 ? nl.meta.ser_root_low : nl.meta.ser_root_high;
      const Value v = m.value(root);
      result.out.push_back(ComplexFixed{
          renormalize(WideAccumulator{v.re, kFftWorkFormat.fraction_bits},
                      kFftOutFormat, &m.sat),
          renormalize(WideAccumulator{v.im, kFftWorkFormat.fraction_bits},
                      kFftOutFormat, &m.sat)});
    }
  }
  result.saturation_events = m.sat.events;
  return result;
}

}  // namespace

StreamResult execute(const Netlist& netlist, std::span<const FixedPoint> inputs) {
  switch (netlist.mode) {
    case ConfigMode::FIR:
    case ConfigMode::IIR:
    case ConfigMode::DWT:
      if (inputs.empty()) throw ArityMismatch("empty input stream");
      return run_filter_stream(netlist, inputs);
    case ConfigMode::DCT:
      return run_dct_blocks(netlist, inputs);
    case ConfigMode::FFT:
      throw ArityMismatch("FFT takes complex samples");
  }
  throw ArityMismatch("unknown mode");
}

ComplexResult execute(const Netlist& netlist, std::span<const ComplexFixed> inputs) {
  if (netlist.mode != ConfigMode::FFT) {
    throw ArityMismatch("complex streams drive the FFT configuration only");
  }
  return run_fft_blocks(netlist, inputs);
}

}  // namespace dspfab::fabric
