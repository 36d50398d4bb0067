#pragma once

#include <array>
#include <span>

#include "greenmo/signal.hpp"
#include "greenmo/types.hpp"

namespace greenmo {

// 802.11-style 64-point OFDM numerology.
struct OfdmConfig {
    static constexpr int kFftSize = 64;
    static constexpr int kDataSubcarriers = 48;
    static constexpr int kPilotSubcarriers = 4;
    static constexpr int kNullSubcarriers = 12;
    static constexpr int kUsedSubcarriers = kDataSubcarriers + kPilotSubcarriers;
    static constexpr int kBitsPerSymbol = 4;  // QAM-16
    static constexpr int kCodedBitsPerOfdmSymbol = kDataSubcarriers * kBitsPerSymbol;
    static constexpr int kInfoBitsPerOfdmSymbol = kCodedBitsPerOfdmSymbol / 2;  // rate 1/2

    int cp_len = 16;
    double user_bandwidth_hz = 10e6;
    int payload_symbols = 16;
    int lts_reps = 2;

    int symbol_len() const { return kFftSize + cp_len; }
    double symbol_duration_s() const { return symbol_len() / user_bandwidth_hz; }
    /// Information rate of one error-free user: B * (48/64) * 4 * 1/2 * (64/80).
    double info_rate_bps() const { return kInfoBitsPerOfdmSymbol / symbol_duration_s(); }
    void check() const;
};

// Subcarrier maps in natural DFT order (index = signed bin mod 64).
const std::array<int, OfdmConfig::kDataSubcarriers>& data_bins();
const std::array<int, OfdmConfig::kPilotSubcarriers>& pilot_bins();
const std::array<int, OfdmConfig::kUsedSubcarriers>& used_bins();
/// Long training sequence value on natural-order bin k (0 on null bins).
double lts_value(int bin);
double pilot_value(int pilot_index);

// Rate-1/2, constraint-length-7 convolutional code, generators 133/171 octal.
// The encoder appends six zero tail bits; the decoder expects a terminated
// codeword and strips the tail.
inline constexpr int kConvTailBits = 6;
Bits conv_encode(std::span<const std::uint8_t> bits);
/// Hard-decision Viterbi. Throws on odd length or on a codeword shorter than the tail.
Bits viterbi_decode(std::span<const std::uint8_t> coded);

/// Gray-coded 16-QAM with unit average energy (levels +-1, +-3 over sqrt(10)).
CVec qam16_map(std::span<const std::uint8_t> bits);
Bits qam16_demap(std::span<const cplx> symbols);

// Block interleaver over one OFDM symbol's coded bits (first 802.11a permutation).
Bits interleave(std::span<const std::uint8_t> bits);
Bits deinterleave(std::span<const std::uint8_t> bits);

/// One OFDM symbol (cp + body) from 64 natural-order bins, scaled so unit-energy
/// bins on all 52 used subcarriers give unit mean sample power.
CVec ofdm_modulate(std::span<const cplx> bins, int cp_len);
/// Inverse of ofdm_modulate for one symbol (drops the cyclic prefix).
CVec ofdm_demodulate(std::span<const cplx> symbol, int cp_len);
/// Splits a stream into symbols and demodulates each; length must be a multiple of the symbol length.
std::vector<CVec> ofdm_demodulate_stream(std::span<const cplx> stream, int cp_len);

/// Multi-user uplink frame. Layout in OFDM symbols:
///   [LTS rep 0: user 0..K-1][LTS rep 1: user 0..K-1]...[payload 0..P-1]
/// Each user transmits its LTS only in its own slot; payload symbols overlap in time.
struct OfdmFrame {
    OfdmConfig cfg;
    int users = 0;
    int num_payload_symbols = 0;
    std::vector<Bits> payload;              // information bits as supplied
    std::vector<std::size_t> payload_len;   // unpadded length per user
    std::vector<int> lts_slot;              // slot index per user within each LTS repetition
    std::vector<std::vector<CVec>> data_symbols;  // [user][payload symbol][48] transmitted QAM points
    std::vector<SampleStream> tx_streams;

    int total_symbols() const { return cfg.lts_reps * users + num_payload_symbols; }
    int lts_symbol(int user, int rep) const { return rep * users + lts_slot[static_cast<std::size_t>(user)]; }
    int payload_symbol(int p) const { return cfg.lts_reps * users + p; }
    double airtime_s() const { return total_symbols() * cfg.symbol_duration_s(); }
    double payload_airtime_s() const { return num_payload_symbols * cfg.symbol_duration_s(); }
};

/// Payload capacity in information bits for a frame of the given payload length.
std::size_t payload_capacity_bits(int payload_symbols);

/// Encodes, interleaves, maps and frames each user's payload. Payloads shorter than
/// the frame capacity are zero-padded; the frame is sized to the longest payload.
OfdmFrame build_frame(const OfdmConfig& cfg, const std::vector<Bits>& payloads);

/// Decodes one user's equalized data symbols ([payload symbol][48]) back to payload bits.
Bits recover_bits(const std::vector<CVec>& equalized, std::size_t payload_len);

}  // namespace greenmo
