#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dspfab/cosine.hpp"
#include "dspfab/filter_bank.hpp"
#include "dspfab/fourier.hpp"
#include "dspfab/numerics.hpp"
#include "dspfab/wavelet.hpp"

namespace dspfab::fabric {

enum class ConfigMode { FIR, IIR, DCT, FFT, DWT };

const char* mode_name(ConfigMode mode);
ConfigMode mode_from_name(std::string_view name);  // ParseError on unknown
inline constexpr std::array<ConfigMode, 5> kAllModes = {
    ConfigMode::FIR, ConfigMode::IIR, ConfigMode::DCT, ConfigMode::FFT,
    ConfigMode::DWT};

// One-hot C1..C5 selection; all-zero is idle.
struct ControlWord {
  std::array<int, 5> bits{};

  std::string to_string() const;
  bool one_hot() const;
};

ControlWord decode(ConfigMode mode);

enum class CmType {
  Counter1,
  Adder,
  Lut,
  Subtractor,
  Register,
  Mux2,
  Mux4,
  Multiplier,
};
inline constexpr std::array<CmType, 8> kCmTypes = {
    CmType::Counter1, CmType::Adder,    CmType::Lut,  CmType::Subtractor,
    CmType::Register, CmType::Mux2,     CmType::Mux4, CmType::Multiplier};

const char* cm_name(CmType type);

struct CmCounts {
  std::array<int, 8> counts{};

  int& operator[](CmType t) { return counts[static_cast<std::size_t>(t)]; }
  int at(CmType t) const { return counts[static_cast<std::size_t>(t)]; }
  friend bool operator==(const CmCounts&, const CmCounts&) = default;
};

// Fixed pool: the combined census of all five functions plus the per-mode
// register/mux maxima.
struct CmPool {
  CmCounts total;
  CmCounts used;
  bool active = false;
  ConfigMode active_mode = ConfigMode::FIR;

  static CmPool standard();
  CmCounts free() const;
};

enum class Width { Real, Cplx };
enum class LutAddressing { NibbleLow, NibbleHigh, BitSerial4 };
enum class RegisterKind { Plain, CounterGated, Manual };
enum class SelectSource { Const0, Stage, OutBit0, OutBit1, OutBit2 };

struct NetNode {
  int id = 0;
  CmType type = CmType::Adder;
  Width width = Width::Real;
  std::string label;

  // Type-specific configuration.
  std::array<std::int64_t, 16> table{};            // Lut
  LutAddressing addressing = LutAddressing::NibbleLow;
  std::array<std::int32_t, 4> coeff_by_stage{};    // Multiplier constant input
  int out_shift = 0;                               // rounding shift at the output
  bool saturate = false;
  QFormat sat_format{1, 15};
  RegisterKind reg_kind = RegisterKind::Plain;
  bool serial_acc = false;  // register fed by the add/sub accumulator pair
  SelectSource select = SelectSource::Const0;
};

// from < 0 names external input port (-1 - from); shifts are free wiring.
// Components: 0 = full width, 1 = real part, 2 = imaginary part.
struct NetEdge {
  int from = 0;
  int to = 0;
  int to_port = 0;
  int lshift = 0;
  int from_component = 0;
  int to_component = 0;
};

struct IoPort {
  std::string name;
  bool is_input = false;
  int node = -1;  // inputs: -1 (external index named by order); outputs: source node
};

struct NetMeta {
  // FIR / IIR / DWT streaming datapaths
  int input_mux = -1;
  int output_node = -1;
  int fb_requant = -1;
  int counter = -1;
  int approx_reg = -1;
  int detail_reg = -1;
  CmCounts dwt_single;  // per-decimator census, counter shared

  // FFT
  std::array<int, 16> state_re{};
  std::array<int, 16> state_im{};
  std::array<std::array<int, 16>, 4> writeback{};  // [stage][state] = latch node
  std::array<int, 16> load_map{};                  // state <- input index
  int ser_root_low = -1;
  int ser_root_high = -1;

  // DCT
  int serial_bits = 0;
  std::vector<int> acc_regs;
  std::array<int, 16> row_out{};   // Y index -> readout node
  std::array<int, 8> out_mux{};
  int acc_fraction_bits = 0;
};

struct Netlist {
  ConfigMode mode = ConfigMode::FIR;
  std::vector<NetNode> nodes;
  std::vector<NetEdge> edges;
  std::vector<IoPort> io;
  NetMeta meta;

  CmCounts census() const;
  std::string export_text() const;
  // Acyclic up to registers, everything reachable from an input (the 1-bit
  // counter is clock-driven and counts as a root), widths consistent.
  void validate() const;
};

struct FirConfig { filter::FirSpec spec; };
struct IirConfig { filter::IirSpec spec; };
struct DwtConfig { wavelet::DilationPair pair; };
struct FftConfig { fourier::FftPlan plan; };
struct DctConfig {};
using ModeSpec =
    std::variant<FirConfig, IirConfig, DwtConfig, FftConfig, DctConfig>;

// Builds the full fixed-size structure for the mode (shorter filters run with
// zero taps), allocates CMs atomically, marks the pool active.
Netlist configure(CmPool& pool, ConfigMode mode, const ModeSpec& spec);

void release(CmPool& pool);  // NotConfigured when idle

struct StreamResult {
  std::vector<FixedPoint> out;
  std::vector<FixedPoint> detail;  // DWT highpass branch
  std::uint64_t saturation_events = 0;
};

struct ComplexResult {
  std::vector<ComplexFixed> out;
  std::uint64_t saturation_events = 0;
};

// Synchronous structural evaluation of the configured netlist; bit-identical
// to the behavioral kernel for the same inputs.
StreamResult execute(const Netlist& netlist, std::span<const FixedPoint> inputs);
ComplexResult execute(const Netlist& netlist, std::span<const ComplexFixed> inputs);

struct ResourceRow {
  CmType type = CmType::Adder;
  int used = 0;
  int pool = 0;
  std::optional<int> paper;  // empty when the printed cell is a dash
  bool match = false;
};

struct ResourceReport {
  ConfigMode mode = ConfigMode::FIR;
  std::vector<ResourceRow> rows;
  std::vector<std::string> notes;
  bool all_match = false;
};

// Published per-mode block counts (dash cells absent).
std::optional<int> paper_expected(ConfigMode mode, CmType type);

ResourceReport account(const Netlist& netlist, const CmPool& pool);

}  // namespace dspfab::fabric
