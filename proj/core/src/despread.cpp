#include "greenmo/despread.hpp"

#include "greenmo/codes.hpp"

namespace greenmo {

namespace {

std::size_t chain_length(const SampleStream& y, int k) {
    if (k < 1) throw Error("despread: K must be >= 1");
    y.check();
    if (y.size() % static_cast<std::size_t>(k) != 0) throw Error("despread: stream length must be divisible by K");
    return y.size() / static_cast<std::size_t>(k);
}

}  // namespace

std::vector<CVec> time_slice(const SampleStream& y, int k) {
    const std::size_t ns = chain_length(y, k);
    std::vector<CVec> chains(static_cast<std::size_t>(k), CVec(ns));
    for (std::size_t n = 0; n < ns; ++n)
        for (int c = 0; c < k; ++c)
            chains[static_cast<std::size_t>(c)][n] = y.samples[n * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
    return chains;
}

CVec interleave_chains(const std::vector<CVec>& chains) {
    if (chains.empty()) throw Error("interleave_chains: no chains");
    const std::size_t ns = chains.front().size();
    const std::size_t k = chains.size();
    CVec y(ns * k);
    for (std::size_t c = 0; c < k; ++c) {
        if (chains[c].size() != ns) throw Error("interleave_chains: chains differ in length");
        for (std::size_t n = 0; n < ns; ++n) y[n * k + c] = chains[c][n];
    }
    return y;
}

VirtualChainSet time_despread(const SampleStream& y, int k) {
    auto sliced = time_slice(y, k);
    const double rate = y.rate_hz / k;
    VirtualChainSet out;
    for (int c = 0; c < k; ++c) {
        const double delay = static_cast<double>(c) / k;
        out.chains.emplace_back(fractional_delay(sliced[static_cast<std::size_t>(c)], delay), rate);
        out.slot_of_chain.push_back(c);
    }
    return out;
}

Eigen::MatrixXcd spectrum_zones(const SampleStream& y, int k) {
    const std::size_t ns = chain_length(y, k);
    const std::size_t len = y.size();
    const CVec wide = dft(y.samples);
    Eigen::MatrixXcd zones(k, static_cast<Eigen::Index>(ns));
    for (std::size_t m = 0; m < len; ++m) {
        const std::size_t q = m % ns;
        const long long s = signed_bin(q, ns);
        const long long zone = ((static_cast<long long>(m) - s) / static_cast<long long>(ns)) % k;
        zones(static_cast<Eigen::Index>((zone + k) % k), static_cast<Eigen::Index>(q)) = wide[m];
    }
    return zones;
}

namespace detail {

VirtualChainSet freq_despread_signed(const SampleStream& y, int k, int sign) {
    const Eigen::MatrixXcd zones = spectrum_zones(y, k);
    const PhaseMatrix p = phase_matrix(k);
    // Inverse of the zone mixing exp(-jP): conj(exp(-jP)) / K (P is symmetric).
    const Eigen::MatrixXcd mix =
        p.entries.unaryExpr([sign](double v) { return std::polar(1.0, -sign * v); }) / static_cast<double>(k);
    const Eigen::MatrixXcd chain_spectra = mix * zones;

    VirtualChainSet out;
    const double rate = y.rate_hz / k;
    for (int c = 0; c < k; ++c) {
        CVec row(static_cast<std::size_t>(chain_spectra.cols()));
        for (Eigen::Index q = 0; q < chain_spectra.cols(); ++q) row[static_cast<std::size_t>(q)] = chain_spectra(c, q);
        out.chains.emplace_back(idft(row), rate);
        out.slot_of_chain.push_back(c);
    }
    return out;
}

}  // namespace detail

VirtualChainSet freq_despread(const SampleStream& y, int k) { return detail::freq_despread_signed(y, k, -1); }

}  // namespace greenmo
