#include "greenmo/frontend.hpp"

#include <algorithm>

namespace greenmo {

double FrontendConfig::noise_variance() const {
    if (!snr_db) return 0.0;
    return signal_power / db_to_linear(*snr_db);
}

void FrontendConfig::check() const {
    if (!(insertion_loss_db >= 0.0)) throw Error("FrontendConfig: insertion loss must be >= 0 dB");
    if (oversample_factor < 1) throw Error("FrontendConfig: oversample factor must be >= 1");
    if (!(signal_power > 0.0)) throw Error("FrontendConfig: signal power must be positive");
    if (snr_db && !std::isfinite(*snr_db)) throw Error("FrontendConfig: SNR must be finite");
    if (quantizer_bits && (*quantizer_bits < 1 || *quantizer_bits > 24))
        throw Error("FrontendConfig: quantizer bits must be in [1, 24]");
}

namespace {

void check_streams(std::span<const SampleStream> antennas) {
    if (antennas.empty()) throw Error("frontend: no antenna streams");
    const auto len = antennas.front().size();
    const double rate = antennas.front().rate_hz;
    for (const auto& a : antennas) {
        if (a.size() != len) throw Error("frontend: antenna streams differ in length");
        if (a.rate_hz != rate) throw Error("frontend: antenna streams differ in rate");
    }
}

Eigen::MatrixXcd partial_mask(Eigen::MatrixXcd w) {
    const auto m = w.rows(), k = w.cols();
    if (m % k != 0) throw Error("capture_hybrid: partially-connected mode needs M divisible by K");
    const auto block = m / k;
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < k; ++c)
            if (r / block != c) w(r, c) = 0.0;
    return w;
}

}  // namespace

CVec quantize(std::span<const cplx> x, int bits) {
    if (bits < 1) throw Error("quantize: need at least one bit");
    double peak = 0.0;
    for (const auto& v : x) peak = std::max({peak, std::abs(v.real()), std::abs(v.imag())});
    CVec out(x.begin(), x.end());
    if (peak == 0.0) return out;
    const double levels = std::ldexp(1.0, bits);
    const double step = 2.0 * peak / levels;
    auto q = [&](double v) {
        double idx = std::floor(v / step);
        idx = std::clamp(idx, -levels / 2.0, levels / 2.0 - 1.0);
        return (idx + 0.5) * step;
    };
    for (auto& v : out) v = {q(v.real()), q(v.imag())};
    return out;
}

SampleStream capture_switched(std::span<const SampleStream> antennas, const SwitchMatrix& s,
                              const FrontendConfig& cfg, Rng& rng) {
    cfg.check();
    check_streams(antennas);
    s.check();
    const int m_count = static_cast<int>(antennas.size());
    const int k = s.slots();
    if (s.antennas() != m_count) throw Error("capture_switched: switch matrix rows must match antenna count");
    if (k != cfg.oversample_factor) throw Error("capture_switched: switch matrix columns must equal the oversample factor");

    const std::size_t len = antennas.front().size() * static_cast<std::size_t>(k);
    const double amp = cfg.insertion_amplitude();
    const double sigma2 = cfg.noise_variance();

    std::vector<CVec> wide(static_cast<std::size_t>(m_count));
    for (int m = 0; m < m_count; ++m) {
        bool used = false;
        for (int slot = 0; slot < k; ++slot) used = used || s.at(m, slot);
        if (used) wide[static_cast<std::size_t>(m)] = upsample_bandlimited(antennas[static_cast<std::size_t>(m)].samples, k);
    }

    CVec y(len, cplx{});
    for (std::size_t n = 0; n < len; ++n) {
        const int slot = static_cast<int>(n % static_cast<std::size_t>(k));
        cplx acc{};
        for (int m = 0; m < m_count; ++m) {
            if (!s.at(m, slot)) continue;
            cplx v = wide[static_cast<std::size_t>(m)][n];
            if (sigma2 > 0.0 && cfg.noise_point == NoisePoint::antenna) v += rng.complex_normal(sigma2);
            acc += v;
        }
        acc *= amp;
        if (sigma2 > 0.0 && cfg.noise_point == NoisePoint::combiner) acc += rng.complex_normal(sigma2 * amp * amp);
        y[n] = acc;
    }
    if (cfg.quantizer_bits) y = quantize(y, *cfg.quantizer_bits);
    return SampleStream(std::move(y), antennas.front().rate_hz * k);
}

std::vector<SampleStream> capture_physical(std::span<const SampleStream> antennas, int num_chains,
                                           const FrontendConfig& cfg, Rng& rng) {
    cfg.check();
    check_streams(antennas);
    if (num_chains < 1 || num_chains > static_cast<int>(antennas.size()))
        throw Error("capture_physical: chain count must be in [1, M]");
    const double sigma2 = cfg.noise_variance();
    std::vector<SampleStream> out;
    out.reserve(static_cast<std::size_t>(num_chains));
    for (int c = 0; c < num_chains; ++c) {
        Rng chain_rng = rng.split(static_cast<std::uint64_t>(c));
        out.push_back(add_awgn(antennas[static_cast<std::size_t>(c)], sigma2, chain_rng));
    }
    rng.next_u64();  // advance the parent so repeated captures differ
    return out;
}

std::vector<SampleStream> capture_hybrid(std::span<const SampleStream> antennas, const Eigen::MatrixXcd& weights,
                                         HybridMode mode, const FrontendConfig& cfg, Rng& rng) {
    cfg.check();
    check_streams(antennas);
    const auto m_count = static_cast<Eigen::Index>(antennas.size());
    if (weights.rows() != m_count) throw Error("capture_hybrid: weight rows must match antenna count");
    if (weights.cols() < 1) throw Error("capture_hybrid: need at least one chain");
    for (Eigen::Index r = 0; r < weights.rows(); ++r)
        for (Eigen::Index c = 0; c < weights.cols(); ++c) {
            const double mag = std::abs(weights(r, c));
            if (mag != 0.0 && std::abs(mag - 1.0) > 1e-9) throw Error("capture_hybrid: nonzero weights must be unit modulus");
        }
    const Eigen::MatrixXcd w = mode == HybridMode::partially ? partial_mask(weights) : weights;

    const std::size_t len = antennas.front().size();
    const double sigma2 = cfg.noise_variance();
    std::span<const SampleStream> src = antennas;
    std::vector<SampleStream> with_noise;
    if (sigma2 > 0.0) {
        with_noise.reserve(antennas.size());
        for (std::size_t m = 0; m < antennas.size(); ++m) with_noise.push_back(add_awgn(antennas[m], sigma2, rng));
        src = with_noise;
    }

    std::vector<SampleStream> out;
    out.reserve(static_cast<std::size_t>(w.cols()));
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
        CVec chain(len, cplx{});
        for (Eigen::Index m = 0; m < m_count; ++m) {
            const cplx g = w(m, c);
            if (g == cplx{}) continue;
            const auto& a = src[static_cast<std::size_t>(m)].samples;
            for (std::size_t n = 0; n < len; ++n) chain[n] += g * a[n];
        }
        out.emplace_back(std::move(chain), antennas.front().rate_hz);
    }
    return out;
}

Eigen::MatrixXcd hybrid_weights(const Eigen::MatrixXcd& h_ref, int chains, HybridMode mode) {
    if (chains < 1 || h_ref.rows() < 1) throw Error("hybrid_weights: need users and chains");
    Eigen::MatrixXcd w(h_ref.cols(), chains);
    for (int c = 0; c < chains; ++c) {
        const auto u = c % h_ref.rows();
        for (Eigen::Index m = 0; m < h_ref.cols(); ++m) {
            const cplx h = h_ref(u, m);
            w(m, c) = std::abs(h) > 0.0 ? std::conj(h) / std::abs(h) : cplx{1.0, 0.0};
        }
    }
    return mode == HybridMode::partially ? partial_mask(w) : w;
}

ChainModel switched_model(const SwitchMatrix& s, const FrontendConfig& cfg) {
    const double amp = cfg.insertion_amplitude();
    const double sigma2 = cfg.noise_variance() * amp * amp;
    ChainModel model{s.as_matrix().cast<cplx>() * amp, {}};
    for (int k = 0; k < s.slots(); ++k)
        model.noise_var.push_back(cfg.noise_point == NoisePoint::antenna ? sigma2 * s.column_weight(k) : sigma2);
    return model;
}

ChainModel physical_model(int antennas, int num_chains, const FrontendConfig& cfg) {
    ChainModel model{Eigen::MatrixXcd::Zero(antennas, num_chains), {}};
    for (int c = 0; c < num_chains; ++c) {
        model.combining(c, c) = 1.0;
        model.noise_var.push_back(cfg.noise_variance());
    }
    return model;
}

ChainModel hybrid_model(const Eigen::MatrixXcd& weights, HybridMode mode, const FrontendConfig& cfg) {
    ChainModel model{mode == HybridMode::partially ? partial_mask(weights) : weights, {}};
    for (Eigen::Index c = 0; c < model.combining.cols(); ++c) {
        model.noise_var.push_back(cfg.noise_variance() * model.combining.col(c).squaredNorm());
    }
    return model;
}

}  // namespace greenmo
