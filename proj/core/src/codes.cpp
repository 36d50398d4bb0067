#include "greenmo/codes.hpp"

#include "greenmo/signal.hpp"

namespace greenmo {

std::vector<SwitchCode> generate_codes(int num_slots) {
    if (num_slots < 1) throw Error("generate_codes: need at least one slot");
    std::vector<SwitchCode> codes;
    codes.reserve(static_cast<std::size_t>(num_slots));
    for (int i = 0; i < num_slots; ++i) {
        SwitchCode c{num_slots, i, Bits(static_cast<std::size_t>(num_slots), 0)};
        c.bits[static_cast<std::size_t>(i)] = 1;
        codes.push_back(std::move(c));
    }
    return codes;
}

CVec code_spectrum(const SwitchCode& code, std::size_t num_samples) {
    if (code.num_slots < 1 || code.bits.size() != static_cast<std::size_t>(code.num_slots))
        throw Error("code_spectrum: malformed code");
    if (num_samples == 0 || num_samples % static_cast<std::size_t>(code.num_slots) != 0)
        throw Error("code_spectrum: length must be a positive multiple of the slot count");
    CVec seq(num_samples);
    for (std::size_t n = 0; n < num_samples; ++n) seq[n] = static_cast<double>(code.at(n));
    return dft(seq);
}

Eigen::MatrixXcd PhaseMatrix::exponentiated() const {
    return entries.unaryExpr([](double p) { return std::polar(1.0, -p); });
}

PhaseMatrix phase_matrix(int num_slots) {
    if (num_slots < 1) throw Error("phase_matrix: order must be positive");
    PhaseMatrix p{num_slots, Eigen::MatrixXd(num_slots, num_slots)};
    for (int i = 0; i < num_slots; ++i)
        for (int j = 0; j < num_slots; ++j)
            p.entries(i, j) = 2.0 * kPi * i * j / num_slots;
    return p;
}

Bits superpose(std::span<const SwitchCode> codes) {
    if (codes.empty()) throw Error("superpose: no codes");
    const int k = codes.front().num_slots;
    Bits out(static_cast<std::size_t>(k), 0);
    for (const auto& c : codes) {
        if (c.num_slots != k) throw Error("superpose: codes must share the slot count");
        if (out[static_cast<std::size_t>(c.phase_index)] != 0)
            throw Error("superpose: duplicate phase index");
        for (std::size_t n = 0; n < out.size(); ++n) out[n] += c.bits[n];
    }
    return out;
}

}  // namespace greenmo
