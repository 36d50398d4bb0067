#include "greenmo/waveform.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace greenmo {

void OfdmConfig::check() const {
    if (cp_len < 0 || cp_len > kFftSize) throw Error("OfdmConfig: cp_len out of range");
    if (!(user_bandwidth_hz > 0.0)) throw Error("OfdmConfig: user bandwidth must be positive");
    if (payload_symbols < 1) throw Error("OfdmConfig: need at least one payload symbol");
    if (lts_reps < 1) throw Error("OfdmConfig: need at least one LTS repetition");
}

namespace {

constexpr int natural(int signed_index) { return (signed_index + OfdmConfig::kFftSize) % OfdmConfig::kFftSize; }

// L-LTF on signed bins -26..26.
constexpr std::array<int, 53> kLts = {1, 1,  -1, -1, 1,  1,  -1, 1,  -1, 1,  1,  1,  1, 1, 1, -1, -1, 1,
                                      1, -1, 1,  -1, 1,  1,  1,  1,  0,  1,  -1, -1, 1, 1, -1, 1, -1, 1,
                                      -1, -1, -1, -1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, 1, 1, 1};

constexpr std::array<int, 4> kPilotSigned = {-21, -7, 7, 21};
constexpr std::array<double, 4> kPilotValues = {1.0, 1.0, 1.0, -1.0};

struct BinTables {
    std::array<int, OfdmConfig::kDataSubcarriers> data{};
    std::array<int, OfdmConfig::kPilotSubcarriers> pilot{};
    std::array<int, OfdmConfig::kUsedSubcarriers> used{};
    BinTables() {
        int d = 0, u = 0;
        for (int s = -26; s <= 26; ++s) {
            if (s == 0) continue;
            used[static_cast<std::size_t>(u++)] = natural(s);
            if (std::find(kPilotSigned.begin(), kPilotSigned.end(), s) == kPilotSigned.end())
                data[static_cast<std::size_t>(d++)] = natural(s);
        }
        for (std::size_t i = 0; i < pilot.size(); ++i) pilot[i] = natural(kPilotSigned[i]);
    }
};

const BinTables& tables() {
    static const BinTables t;
    return t;
}

constexpr unsigned kG0 = 0133;
constexpr unsigned kG1 = 0171;
constexpr int kStates = 64;

inline std::uint8_t parity(unsigned v) { return static_cast<std::uint8_t>(std::popcount(v) & 1); }

// Register holds the current input in bit 6 and the previous six inputs below it.
inline unsigned shift_in(unsigned state, std::uint8_t bit) { return (static_cast<unsigned>(bit) << 6) | state; }

constexpr double kQamScale = 0.31622776601683794;  // 1/sqrt(10)

double gray_level(std::uint8_t b0, std::uint8_t b1) {
    // 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
    if (b0 == 0) return b1 == 0 ? -3.0 : -1.0;
    return b1 == 0 ? 3.0 : 1.0;
}

void level_bits(double v, std::uint8_t& b0, std::uint8_t& b1) {
    const double x = v / kQamScale;
    if (x < -2.0) { b0 = 0; b1 = 0; }
    else if (x < 0.0) { b0 = 0; b1 = 1; }
    else if (x < 2.0) { b0 = 1; b1 = 1; }
    else { b0 = 1; b1 = 0; }
}

std::size_t interleave_index(std::size_t k, std::size_t ncbps) { return (ncbps / 16) * (k % 16) + k / 16; }

}  // namespace

const std::array<int, OfdmConfig::kDataSubcarriers>& data_bins() { return tables().data; }
const std::array<int, OfdmConfig::kPilotSubcarriers>& pilot_bins() { return tables().pilot; }
const std::array<int, OfdmConfig::kUsedSubcarriers>& used_bins() { return tables().used; }

double lts_value(int bin) {
    const int s = signed_bin(static_cast<std::size_t>(bin), OfdmConfig::kFftSize);
    if (s < -26 || s > 26) return 0.0;
    return kLts[static_cast<std::size_t>(s + 26)];
}

double pilot_value(int pilot_index) { return kPilotValues.at(static_cast<std::size_t>(pilot_index)); }

Bits conv_encode(std::span<const std::uint8_t> bits) {
    Bits out;
    out.reserve(2 * (bits.size() + kConvTailBits));
    unsigned state = 0;
    auto push = [&](std::uint8_t b) {
        const unsigned reg = shift_in(state, b & 1u);
        out.push_back(parity(reg & kG0));
        out.push_back(parity(reg & kG1));
        state = reg >> 1;
    };
    for (auto b : bits) push(b);
    for (int i = 0; i < kConvTailBits; ++i) push(0);
    return out;
}

Bits viterbi_decode(std::span<const std::uint8_t> coded) {
    if (coded.size() % 2 != 0) throw Error("viterbi_decode: coded length must be even");
    const std::size_t steps = coded.size() / 2;
    if (steps < static_cast<std::size_t>(kConvTailBits)) throw Error("viterbi_decode: codeword shorter than the tail");

    // Precompute branch outputs for (state, input).
    std::array<std::array<std::uint8_t, 2>, kStates> branch{};
    for (unsigned s = 0; s < kStates; ++s)
        for (std::uint8_t b = 0; b < 2; ++b) {
            const unsigned reg = shift_in(s, b);
            branch[s][b] = static_cast<std::uint8_t>((parity(reg & kG0) << 1) | parity(reg & kG1));
        }

    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    std::array<int, kStates> metric;
    metric.fill(kInf);
    metric[0] = 0;
    // decision[t][next_state] = previous state
    std::vector<std::array<std::uint8_t, kStates>> decision(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        const unsigned rx = (static_cast<unsigned>(coded[2 * t] & 1u) << 1) | (coded[2 * t + 1] & 1u);
        std::array<int, kStates> next;
        next.fill(kInf);
        for (unsigned s = 0; s < kStates; ++s) {
            if (metric[s] >= kInf) continue;
            for (std::uint8_t b = 0; b < 2; ++b) {
                const unsigned ns = shift_in(s, b) >> 1;
                const int m = metric[s] + std::popcount(branch[s][b] ^ rx);
                // Strict comparison with ascending s keeps tie-breaks deterministic.
                if (m < next[ns]) {
                    next[ns] = m;
                    decision[t][ns] = static_cast<std::uint8_t>(s);
                }
            }
        }
        metric = next;
    }

    Bits decoded(steps);
    unsigned state = 0;  // zero-tail termination
    for (std::size_t t = steps; t-- > 0;) {
        decoded[t] = static_cast<std::uint8_t>((state >> 5) & 1u);
        state = decision[t][state];
    }
    decoded.resize(steps - kConvTailBits);
    return decoded;
}

CVec qam16_map(std::span<const std::uint8_t> bits) {
    if (bits.size() % 4 != 0) throw Error("qam16_map: bit count must be a multiple of 4");
    CVec out(bits.size() / 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto* b = bits.data() + 4 * i;
        out[i] = cplx(gray_level(b[0] & 1u, b[1] & 1u), gray_level(b[2] & 1u, b[3] & 1u)) * kQamScale;
    }
    return out;
}

Bits qam16_demap(std::span<const cplx> symbols) {
    Bits out(symbols.size() * 4);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        level_bits(symbols[i].real(), out[4 * i], out[4 * i + 1]);
        level_bits(symbols[i].imag(), out[4 * i + 2], out[4 * i + 3]);
    }
    return out;
}

Bits interleave(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    if (n % 16 != 0) throw Error("interleave: block length must be a multiple of 16");
    Bits out(n);
    for (std::size_t k = 0; k < n; ++k) out[interleave_index(k, n)] = bits[k];
    return out;
}

Bits deinterleave(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    if (n % 16 != 0) throw Error("deinterleave: block length must be a multiple of 16");
    Bits out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = bits[interleave_index(k, n)];
    return out;
}

CVec ofdm_modulate(std::span<const cplx> bins, int cp_len) {
    constexpr int n = OfdmConfig::kFftSize;
    if (bins.size() != static_cast<std::size_t>(n)) throw Error("ofdm_modulate: need 64 bins");
    CVec body = idft(bins);
    const double scale = n / std::sqrt(static_cast<double>(OfdmConfig::kUsedSubcarriers));
    for (auto& v : body) v *= scale;
    CVec sym;
    sym.reserve(static_cast<std::size_t>(n + cp_len));
    sym.insert(sym.end(), body.end() - cp_len, body.end());
    sym.insert(sym.end(), body.begin(), body.end());
    return sym;
}

CVec ofdm_demodulate(std::span<const cplx> symbol, int cp_len) {
    constexpr int n = OfdmConfig::kFftSize;
    if (symbol.size() != static_cast<std::size_t>(n + cp_len)) throw Error("ofdm_demodulate: wrong symbol length");
    CVec bins = dft(symbol.subspan(static_cast<std::size_t>(cp_len)));
    const double scale = std::sqrt(static_cast<double>(OfdmConfig::kUsedSubcarriers)) / n;
    for (auto& v : bins) v *= scale;
    return bins;
}

std::vector<CVec> ofdm_demodulate_stream(std::span<const cplx> stream, int cp_len) {
    const std::size_t len = static_cast<std::size_t>(OfdmConfig::kFftSize + cp_len);
    if (stream.size() % len != 0) throw Error("ofdm_demodulate_stream: length is not a whole number of symbols");
    std::vector<CVec> out;
    out.reserve(stream.size() / len);
    for (std::size_t s = 0; s < stream.size(); s += len) out.push_back(ofdm_demodulate(stream.subspan(s, len), cp_len));
    return out;
}

std::size_t payload_capacity_bits(int payload_symbols) {
    return static_cast<std::size_t>(payload_symbols) * OfdmConfig::kInfoBitsPerOfdmSymbol - kConvTailBits;
}

OfdmFrame build_frame(const OfdmConfig& cfg, const std::vector<Bits>& payloads) {
    cfg.check();
    if (payloads.empty()) throw Error("build_frame: need at least one user");
    OfdmFrame frame;
    frame.cfg = cfg;
    frame.users = static_cast<int>(payloads.size());
    frame.payload = payloads;

    std::size_t longest = 0;
    for (const auto& p : payloads) longest = std::max(longest, p.size());
    const std::size_t per_sym = OfdmConfig::kInfoBitsPerOfdmSymbol;
    frame.num_payload_symbols = static_cast<int>(std::max<std::size_t>(1, (longest + kConvTailBits + per_sym - 1) / per_sym));
    const std::size_t capacity = payload_capacity_bits(frame.num_payload_symbols);

    constexpr int n = OfdmConfig::kFftSize;
    const std::size_t sym_len = static_cast<std::size_t>(cfg.symbol_len());
    const std::size_t total = static_cast<std::size_t>(frame.total_symbols()) * sym_len;

    for (int u = 0; u < frame.users; ++u) {
        frame.lts_slot.push_back(u);
        frame.payload_len.push_back(payloads[static_cast<std::size_t>(u)].size());

        Bits padded = payloads[static_cast<std::size_t>(u)];
        padded.resize(capacity, 0);
        const Bits coded = conv_encode(padded);

        CVec stream(total, cplx{});
        auto place = [&](int symbol_index, const CVec& bins) {
            const CVec sym = ofdm_modulate(bins, cfg.cp_len);
            std::copy(sym.begin(), sym.end(), stream.begin() + static_cast<std::ptrdiff_t>(symbol_index * sym_len));
        };

        CVec lts_bins(n, cplx{});
        for (int b : used_bins()) lts_bins[static_cast<std::size_t>(b)] = lts_value(b);
        for (int r = 0; r < cfg.lts_reps; ++r) place(frame.lts_symbol(u, r), lts_bins);

        std::vector<CVec> user_symbols;
        for (int p = 0; p < frame.num_payload_symbols; ++p) {
            const auto first = coded.begin() + static_cast<std::ptrdiff_t>(p) * OfdmConfig::kCodedBitsPerOfdmSymbol;
            const Bits block = interleave(Bits(first, first + OfdmConfig::kCodedBitsPerOfdmSymbol));
            const CVec points = qam16_map(block);
            CVec bins(n, cplx{});
            for (std::size_t i = 0; i < points.size(); ++i) bins[static_cast<std::size_t>(data_bins()[i])] = points[i];
            for (int i = 0; i < OfdmConfig::kPilotSubcarriers; ++i)
                bins[static_cast<std::size_t>(pilot_bins()[static_cast<std::size_t>(i)])] = pilot_value(i);
            place(frame.payload_symbol(p), bins);
            user_symbols.push_back(points);
        }
        frame.data_symbols.push_back(std::move(user_symbols));
        frame.tx_streams.emplace_back(std::move(stream), cfg.user_bandwidth_hz);
    }
    return frame;
}

Bits recover_bits(const std::vector<CVec>& equalized, std::size_t payload_len) {
    Bits coded;
    coded.reserve(equalized.size() * OfdmConfig::kCodedBitsPerOfdmSymbol);
    for (const auto& sym : equalized) {
        if (sym.size() != static_cast<std::size_t>(OfdmConfig::kDataSubcarriers))
            throw Error("recover_bits: need 48 data symbols per OFDM symbol");
        const Bits block = deinterleave(qam16_demap(sym));
        coded.insert(coded.end(), block.begin(), block.end());
    }
    Bits decoded = viterbi_decode(coded);
    if (payload_len > decoded.size()) throw Error("recover_bits: payload longer than the frame");
    decoded.resize(payload_len);
    return decoded;
}

}  // namespace greenmo
