#include "greenmo/metrics.hpp"

#include <algorithm>

namespace greenmo {

namespace {

double ratio_db(double signal, double impairment) {
    if (impairment <= 0.0) return signal > 0.0 ? kSinrCapDb : -kSinrCapDb;
    if (signal <= 0.0) return -kSinrCapDb;
    return std::min(kSinrCapDb, linear_to_db(signal / impairment));
}

}  // namespace

double sinr_from_row(std::span<const cplx> p_row, int user, double noise_power) {
    if (user < 0 || static_cast<std::size_t>(user) >= p_row.size()) throw Error("sinr_from_row: user out of range");
    double interference = noise_power;
    for (std::size_t j = 0; j < p_row.size(); ++j)
        if (static_cast<int>(j) != user) interference += std::norm(p_row[j]);
    return ratio_db(std::norm(p_row[static_cast<std::size_t>(user)]), interference);
}

std::vector<double> sinr_db(const CombinerMatrix& v, const EffectiveChannel& heff_true,
                            std::span<const double> chain_bin_noise) {
    if (heff_true.matrices.empty()) throw Error("sinr_db: empty channel");
    const int users = heff_true.users();
    const int chains = heff_true.chains();
    if (chain_bin_noise.size() != static_cast<std::size_t>(chains)) throw Error("sinr_db: need noise per chain");
    std::vector<double> sig(static_cast<std::size_t>(users), 0.0), imp(static_cast<std::size_t>(users), 0.0);
    for (int bin : data_bins()) {
        const auto vi = std::find(v.bins.begin(), v.bins.end(), bin);
        if (vi == v.bins.end()) throw Error("sinr_db: combiner lacks a data bin");
        const auto vpos = static_cast<std::size_t>(vi - v.bins.begin());
        if (v.erased[vpos]) continue;
        const Eigen::MatrixXcd& vb = v.v[vpos];
        const Eigen::MatrixXcd p = vb * heff_true.matrices[heff_true.position(bin)];
        for (int i = 0; i < users; ++i) {
            double noise = 0.0;
            for (int c = 0; c < chains; ++c) noise += std::norm(vb(i, c)) * chain_bin_noise[static_cast<std::size_t>(c)];
            sig[static_cast<std::size_t>(i)] += std::norm(p(i, i));
            double inter = 0.0;
            for (int j = 0; j < users; ++j)
                if (j != i) inter += std::norm(p(i, j));
            imp[static_cast<std::size_t>(i)] += inter + noise;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(users));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ratio_db(sig[i], imp[i]);
    return out;
}

double capacity_bps(std::span<const double> sinr_db, double bandwidth_hz) {
    double total = 0.0;
    for (double s : sinr_db) total += bandwidth_hz * std::log2(1.0 + db_to_linear(s));
    return total;
}

GoodputBer goodput_and_ber(const std::vector<Bits>& recovered, const std::vector<Bits>& sent, const OfdmConfig& cfg) {
    if (recovered.size() != sent.size()) throw Error("goodput_and_ber: user count mismatch");
    GoodputBer out;
    std::size_t errors = 0, total = 0;
    for (std::size_t u = 0; u < sent.size(); ++u) {
        if (recovered[u].size() != sent[u].size()) throw Error("goodput_and_ber: payload length mismatch");
        std::size_t e = 0;
        for (std::size_t i = 0; i < sent[u].size(); ++i) e += (recovered[u][i] & 1u) != (sent[u][i] & 1u);
        errors += e;
        total += sent[u].size();
        if (e == 0) ++out.users_ok;
    }
    out.ber = total > 0 ? static_cast<double>(errors) / static_cast<double>(total) : 0.0;
    out.goodput_bps = out.users_ok * cfg.info_rate_bps();
    return out;
}

double evm_pct(const UserSymbols& equalized, const std::vector<std::vector<CVec>>& reference) {
    if (equalized.size() != reference.size()) throw Error("evm_pct: user count mismatch");
    double err = 0.0, ref = 0.0;
    for (std::size_t u = 0; u < reference.size(); ++u) {
        if (equalized[u].size() != reference[u].size()) throw Error("evm_pct: symbol count mismatch");
        for (std::size_t p = 0; p < reference[u].size(); ++p)
            for (std::size_t d = 0; d < reference[u][p].size(); ++d) {
                err += std::norm(equalized[u][p][d] - reference[u][p][d]);
                ref += std::norm(reference[u][p][d]);
            }
    }
    return ref > 0.0 ? 100.0 * std::sqrt(err / ref) : 0.0;
}

}  // namespace greenmo
