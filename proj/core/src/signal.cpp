#include "greenmo/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace greenmo {

SampleStream::SampleStream(CVec s, double rate) : samples(std::move(s)), rate_hz(rate) { check(); }

void SampleStream::check() const {
    if (samples.empty()) throw Error("SampleStream: no samples");
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) throw Error("SampleStream: rate must be positive");
    for (const auto& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("SampleStream: non-finite sample");
    }
}

namespace {

// FFTW planning is not thread-safe; execution on a finished plan is.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mu_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<fftw_complex> in(n), out(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.data(), out.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr) throw Error("dft: FFTW planning failed");
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

CVec transform(std::span<const cplx> x, int sign) {
    if (x.empty()) throw Error("dft: empty input");
    const std::size_t n = x.size();
    fftw_plan p = plan_cache().get(n, sign);
    CVec in(x.begin(), x.end());
    CVec out(n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

CVec dft(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }

CVec idft(std::span<const cplx> x) {
    CVec out = transform(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

int signed_bin(std::size_t k, std::size_t n) {
    const auto ki = static_cast<long long>(k);
    const auto ni = static_cast<long long>(n);
    return static_cast<int>(ki >= (ni + 1) / 2 ? ki - ni : ki);
}

std::size_t fftshift_index(std::size_t i, std::size_t n) { return (i + n / 2) % n; }

CVec fftshift(std::span<const cplx> x) {
    CVec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[fftshift_index(i, x.size())];
    return out;
}

CVec fractional_delay(std::span<const cplx> x, double delay_samples) {
    if (!std::isfinite(delay_samples)) throw Error("fractional_delay: non-finite delay");
    if (x.empty()) throw Error("fractional_delay: empty input");
    const std::size_t n = x.size();
    if (std::abs(delay_samples) >= static_cast<double>(n) / 2.0 && n > 1)
        throw Error("fractional_delay: |delay| must be below half the length");
    if (delay_samples == 0.0) return CVec(x.begin(), x.end());
    CVec spec = dft(x);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_bin(k, n)) / static_cast<double>(n);
        spec[k] *= std::polar(1.0, -2.0 * kPi * f * delay_samples);
    }
    return idft(spec);
}

SampleStream fractional_delay(const SampleStream& x, double delay_samples) {
    return SampleStream(fractional_delay(std::span<const cplx>(x.samples), delay_samples), x.rate_hz);
}

CVec upsample_bandlimited(std::span<const cplx> x, int factor) {
    if (factor < 1) throw Error("upsample_bandlimited: factor must be >= 1");
    if (factor == 1) return CVec(x.begin(), x.end());
    const std::size_t n = x.size();
    const std::size_t len = n * static_cast<std::size_t>(factor);
    const CVec spec = dft(x);
    CVec wide(len, cplx{});
    for (std::size_t k = 0; k < n; ++k) {
        const long long s = signed_bin(k, n);
        const auto pos = static_cast<std::size_t>((s + static_cast<long long>(len)) % static_cast<long long>(len));
        wide[pos] = spec[k] * static_cast<double>(factor);
    }
    return idft(wide);
}

SampleStream add_awgn(const SampleStream& x, double noise_power, Rng& rng) {
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power))
        throw Error("add_awgn: noise power must be finite and non-negative");
    SampleStream out = x;
    if (noise_power == 0.0) return out;
    for (auto& v : out.samples) v += rng.complex_normal(noise_power);
    return out;
}

double mean_power(std::span<const cplx> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

}  // namespace greenmo
