#include "greenmo/switch_matrix.hpp"

namespace greenmo {

SwitchMatrix::SwitchMatrix(int antennas, int slots) : antennas_(antennas), slots_(slots) {
    if (antennas < 1 || slots < 1) throw Error("SwitchMatrix: dimensions must be positive");
    entries_.assign(static_cast<std::size_t>(antennas) * static_cast<std::size_t>(slots), 0);
}

SwitchMatrix::SwitchMatrix(int antennas, int slots, Bits row_major) : SwitchMatrix(antennas, slots) {
    if (row_major.size() != entries_.size()) throw Error("SwitchMatrix: entry count mismatch");
    for (auto& v : row_major)
        if (v > 1) throw Error("SwitchMatrix: entries must be 0 or 1");
    entries_ = std::move(row_major);
}

SwitchMatrix SwitchMatrix::identity(int antennas, int slots) {
    SwitchMatrix s(antennas, slots);
    for (int k = 0; k < slots; ++k) s.set(k % antennas, k, true);
    return s;
}

int SwitchMatrix::column_weight(int slot) const {
    int w = 0;
    for (int m = 0; m < antennas_; ++m) w += at(m, slot);
    return w;
}

void SwitchMatrix::check() const {
    for (int k = 0; k < slots_; ++k)
        if (column_weight(k) == 0) throw Error("SwitchMatrix: virtual chain " + std::to_string(k) + " has no antenna");
}

Eigen::MatrixXd SwitchMatrix::as_matrix() const {
    Eigen::MatrixXd s(antennas_, slots_);
    for (int m = 0; m < antennas_; ++m)
        for (int k = 0; k < slots_; ++k) s(m, k) = at(m, k);
    return s;
}

std::string SwitchMatrix::to_hex() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    const int digits = (slots_ + 3) / 4;
    std::string out;
    out.reserve(static_cast<std::size_t>(antennas_ * digits));
    for (int m = 0; m < antennas_; ++m) {
        for (int d = digits - 1; d >= 0; --d) {
            unsigned nibble = 0;
            for (int b = 0; b < 4; ++b) {
                const int k = 4 * d + b;
                if (k < slots_ && at(m, k)) nibble |= 1u << b;
            }
            out.push_back(kDigits[nibble]);
        }
    }
    return out;
}

SwitchMatrix SwitchMatrix::from_hex(std::string_view hex, int antennas, int slots) {
    SwitchMatrix s(antennas, slots);
    const int digits = (slots + 3) / 4;
    if (hex.size() != static_cast<std::size_t>(antennas * digits)) throw Error("SwitchMatrix::from_hex: wrong length");
    for (int m = 0; m < antennas; ++m) {
        for (int d = 0; d < digits; ++d) {
            const char c = hex[static_cast<std::size_t>(m * digits + d)];
            unsigned nibble;
            if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
            else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A' + 10);
            else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
            else throw Error("SwitchMatrix::from_hex: invalid digit");
            const int base = 4 * (digits - 1 - d);
            for (int b = 0; b < 4; ++b) {
                if (!(nibble & (1u << b))) continue;
                if (base + b >= slots) throw Error("SwitchMatrix::from_hex: bit beyond slot count");
                s.set(m, base + b, true);
            }
        }
    }
    return s;
}

}  // namespace greenmo
