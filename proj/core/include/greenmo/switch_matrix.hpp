#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "greenmo/types.hpp"

namespace greenmo {

/// M x K binary antenna-to-slot assignment. Row m is the drive sequence of
/// antenna m over the K slots; column k lists the antennas combined into
/// virtual chain k. Every column must have at least one antenna.
class SwitchMatrix {
public:
    SwitchMatrix() = default;
    SwitchMatrix(int antennas, int slots);
    SwitchMatrix(int antennas, int slots, Bits row_major);

    /// First min(M, K) antennas on the diagonal; remaining columns reuse antenna k mod M.
    static SwitchMatrix identity(int antennas, int slots);

    int antennas() const { return antennas_; }
    int slots() const { return slots_; }
    std::uint8_t at(int antenna, int slot) const { return entries_[idx(antenna, slot)]; }
    void set(int antenna, int slot, bool on) { entries_[idx(antenna, slot)] = on ? 1 : 0; }
    int column_weight(int slot) const;

    /// Throws if any column is empty.
    void check() const;
    Eigen::MatrixXd as_matrix() const;

    /// Control word: one group of ceil(K/4) hex digits per antenna row, antenna 0 first;
    /// within a row column 0 is the least significant bit. For K <= 4 this is one
    /// hex digit per antenna.
    std::string to_hex() const;
    static SwitchMatrix from_hex(std::string_view hex, int antennas, int slots);

    bool operator==(const SwitchMatrix&) const = default;

private:
    std::size_t idx(int m, int k) const {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(slots_) + static_cast<std::size_t>(k);
    }

    int antennas_ = 0;
    int slots_ = 0;
    Bits entries_;
};

}  // namespace greenmo
