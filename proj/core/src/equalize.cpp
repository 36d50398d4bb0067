#include "greenmo/equalize.hpp"

#include <algorithm>

#include "greenmo/linalg.hpp"

namespace greenmo {

ChainGrids demodulate_chains(std::span<const SampleStream> chains, int cp_len) {
    ChainGrids grids;
    grids.reserve(chains.size());
    for (const auto& c : chains) grids.push_back(ofdm_demodulate_stream(c.samples, cp_len));
    return grids;
}

std::size_t EffectiveChannel::position(int bin) const {
    const auto it = std::find(bins.begin(), bins.end(), bin);
    if (it == bins.end()) throw Error("EffectiveChannel: bin not present");
    return static_cast<std::size_t>(it - bins.begin());
}

void EffectiveChannel::check() const {
    if (bins.size() != matrices.size()) throw Error("EffectiveChannel: bin/matrix count mismatch");
    for (const auto& m : matrices) {
        if (!m.allFinite()) throw Error("EffectiveChannel: non-finite entry");
        if (m.rows() != chains() || m.cols() != users()) throw Error("EffectiveChannel: inconsistent shapes");
    }
}

EffectiveChannel estimate_channel(const ChainGrids& grids, const OfdmFrame& frame) {
    if (grids.empty()) throw Error("estimate_channel: no chains");
    const int needed = frame.total_symbols();
    for (const auto& g : grids)
        if (static_cast<int>(g.size()) < needed) throw Error("estimate_channel: chain misses LTS slots");
    if (static_cast<int>(frame.lts_slot.size()) != frame.users) throw Error("estimate_channel: missing LTS slot schedule");

    const auto chains = static_cast<Eigen::Index>(grids.size());
    EffectiveChannel est;
    for (int bin : used_bins()) {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(chains, frame.users);
        const double ref = lts_value(bin);
        for (int u = 0; u < frame.users; ++u)
            for (int r = 0; r < frame.cfg.lts_reps; ++r) {
                const auto sym = static_cast<std::size_t>(frame.lts_symbol(u, r));
                for (Eigen::Index c = 0; c < chains; ++c)
                    h(c, u) += grids[static_cast<std::size_t>(c)][sym][static_cast<std::size_t>(bin)] / ref;
            }
        est.bins.push_back(bin);
        est.matrices.push_back(h / static_cast<double>(frame.cfg.lts_reps));
    }
    return est;
}

EffectiveChannel estimate_channel(std::span<const SampleStream> chains, const OfdmFrame& frame) {
    return estimate_channel(demodulate_chains(chains, frame.cfg.cp_len), frame);
}

EffectiveChannel true_effective_channel(const ChannelSet& chan, const ChainModel& model) {
    if (model.combining.rows() != chan.antennas()) throw Error("true_effective_channel: antenna count mismatch");
    EffectiveChannel heff;
    for (int bin : used_bins()) {
        if (bin >= chan.bins()) throw Error("true_effective_channel: channel has too few subcarriers");
        heff.bins.push_back(bin);
        heff.matrices.push_back(model.combining.transpose() * chan.matrix(bin).transpose());
    }
    return heff;
}

CombinerMatrix zf_combiner(const EffectiveChannel& heff, double rank_tolerance) {
    CombinerMatrix out{CombinerMethod::zf, heff.bins, {}, {}};
    for (const auto& h : heff.matrices) {
        if (has_full_column_rank(h, rank_tolerance)) {
            out.v.push_back(pseudo_inverse(h, rank_tolerance));
            out.erased.push_back(false);
        } else {
            out.v.push_back(Eigen::MatrixXcd::Zero(h.cols(), h.rows()));
            out.erased.push_back(true);
        }
    }
    return out;
}

CombinerMatrix nullspace_combiner(const EffectiveChannel& heff, double rank_tolerance) {
    CombinerMatrix out{CombinerMethod::nullspace, heff.bins, {}, {}};
    for (const auto& h : heff.matrices) {
        const Eigen::Index chains = h.rows(), users = h.cols();
        Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(users, chains);
        bool erased = false;
        const double scale = h.norm();
        for (Eigen::Index i = 0; i < users && !erased; ++i) {
            Eigen::VectorXcd n;
            if (users == 1) {
                n = h.col(0);
            } else {
                Eigen::MatrixXcd others(chains, users - 1);
                for (Eigen::Index j = 0, c = 0; j < users; ++j)
                    if (j != i) others.col(c++) = h.col(j);
                const Eigen::MatrixXcd basis = left_null_space(others, rank_tolerance);
                if (basis.cols() == 0) {
                    erased = true;
                    break;
                }
                n = basis * (basis.adjoint() * h.col(i));
            }
            const cplx gain = n.dot(h.col(i));
            if (!(std::abs(gain) > rank_tolerance * scale * scale)) {
                erased = true;
                break;
            }
            v.row(i) = n.adjoint() / gain;
        }
        if (erased) v.setZero();
        out.v.push_back(std::move(v));
        out.erased.push_back(erased);
    }
    return out;
}

UserSymbols apply_combiner(const ChainGrids& grids, const CombinerMatrix& v, const OfdmFrame& frame) {
    if (grids.empty()) throw Error("apply_combiner: no chains");
    const auto chains = static_cast<Eigen::Index>(grids.size());
    UserSymbols out(static_cast<std::size_t>(frame.users),
                    std::vector<CVec>(static_cast<std::size_t>(frame.num_payload_symbols),
                                      CVec(OfdmConfig::kDataSubcarriers)));
    std::vector<std::size_t> pos;
    for (int bin : data_bins()) {
        const auto it = std::find(v.bins.begin(), v.bins.end(), bin);
        if (it == v.bins.end()) throw Error("apply_combiner: combiner lacks a data bin");
        pos.push_back(static_cast<std::size_t>(it - v.bins.begin()));
    }
    Eigen::VectorXcd y(chains);
    for (int p = 0; p < frame.num_payload_symbols; ++p) {
        const auto sym = static_cast<std::size_t>(frame.payload_symbol(p));
        for (std::size_t d = 0; d < pos.size(); ++d) {
            const auto& vb = v.v[pos[d]];
            if (vb.cols() != chains || vb.rows() != frame.users) throw Error("apply_combiner: combiner shape mismatch");
            const auto bin = static_cast<std::size_t>(data_bins()[d]);
            for (Eigen::Index c = 0; c < chains; ++c) y(c) = grids[static_cast<std::size_t>(c)].at(sym)[bin];
            const Eigen::VectorXcd x = vb * y;
            for (int u = 0; u < frame.users; ++u) out[static_cast<std::size_t>(u)][static_cast<std::size_t>(p)][d] = x(u);
        }
    }
    return out;
}

UserSymbols zf_combine(const ChainGrids& grids, const EffectiveChannel& heff, const OfdmFrame& frame) {
    return apply_combiner(grids, zf_combiner(heff), frame);
}

UserSymbols nullspace_combine(const ChainGrids& grids, const EffectiveChannel& heff, const OfdmFrame& frame) {
    return apply_combiner(grids, nullspace_combiner(heff), frame);
}

double bin_noise_variance(double sample_var) {
    return sample_var * OfdmConfig::kUsedSubcarriers / static_cast<double>(OfdmConfig::kFftSize);
}

}  // namespace greenmo
