#include "greenmo/channel.hpp"

#include <optional>

namespace greenmo {

ChannelSet::ChannelSet(int users, int antennas, int bins, double carrier_hz, double subcarrier_spacing_hz)
    : users_(users), antennas_(antennas), bins_(bins), carrier_hz_(carrier_hz), spacing_hz_(subcarrier_spacing_hz) {
    if (users < 1 || antennas < 1 || bins < 1) throw Error("ChannelSet: dimensions must be positive");
    gains_.assign(static_cast<std::size_t>(users) * static_cast<std::size_t>(antennas) * static_cast<std::size_t>(bins),
                  cplx{});
}

Eigen::MatrixXcd ChannelSet::matrix(int bin) const {
    if (bin < 0 || bin >= bins_) throw Error("ChannelSet::matrix: bin out of range");
    Eigen::MatrixXcd h(users_, antennas_);
    for (int u = 0; u < users_; ++u)
        for (int m = 0; m < antennas_; ++m) h(u, m) = at(u, m, bin);
    return h;
}

void ChannelSet::check() const {
    for (const auto& g : gains_)
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) throw Error("ChannelSet: non-finite gain");
}

ChannelSet rayleigh(int users, int antennas, int bins, Rng& rng, int taps, double carrier_hz,
                    double subcarrier_spacing_hz) {
    if (taps < 1) throw Error("rayleigh: taps must be >= 1");
    if (taps == 1) {
        ChannelSet chan(users, antennas, bins, carrier_hz, subcarrier_spacing_hz);
        for (int u = 0; u < users; ++u)
            for (int m = 0; m < antennas; ++m) {
                const cplx g = rng.complex_normal(1.0);
                for (int f = 0; f < bins; ++f) chan.at(u, m, f) = g;
            }
        return chan;
    }
    std::vector<CVec> ir(static_cast<std::size_t>(users) * static_cast<std::size_t>(antennas));
    for (auto& link : ir) {
        link.resize(static_cast<std::size_t>(taps));
        for (auto& g : link) g = rng.complex_normal(1.0 / taps);
    }
    return from_taps(users, antennas, bins, ir, carrier_hz, subcarrier_spacing_hz);
}

ChannelSet from_taps(int users, int antennas, int bins, std::span<const CVec> taps, double carrier_hz,
                     double subcarrier_spacing_hz) {
    ChannelSet chan(users, antennas, bins, carrier_hz, subcarrier_spacing_hz);
    if (taps.size() != static_cast<std::size_t>(users) * static_cast<std::size_t>(antennas))
        throw Error("from_taps: need one impulse response per link");
    for (int u = 0; u < users; ++u)
        for (int m = 0; m < antennas; ++m) {
            const CVec& ir = taps[static_cast<std::size_t>(u * antennas + m)];
            for (int f = 0; f < bins; ++f) {
                cplx acc{};
                for (std::size_t l = 0; l < ir.size(); ++l)
                    acc += ir[l] * std::polar(1.0, -2.0 * kPi * f * static_cast<double>(l) / bins);
                chan.at(u, m, f) = acc;
            }
        }
    return chan;
}

RoomScene RoomScene::rectangular(double room_x_m, double room_y_m, double gamma) {
    RoomScene s;
    s.room_x_m = room_x_m;
    s.room_y_m = room_y_m;
    const Vec2 c00{0, 0}, c10{room_x_m, 0}, c11{room_x_m, room_y_m}, c01{0, room_y_m};
    s.walls = {{c00, c10, gamma}, {c10, c11, gamma}, {c11, c01, gamma}, {c01, c00, gamma}};
    s.ap = {room_x_m / 2.0, room_y_m / 2.0};
    return s;
}

namespace {

bool strictly_inside(const RoomScene& s, Vec2 p) {
    return p.x > 0.0 && p.x < s.room_x_m && p.y > 0.0 && p.y < s.room_y_m;
}

double dist(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Vec2 reflect(Vec2 p, const Wall& w) {
    const double dx = w.b.x - w.a.x, dy = w.b.y - w.a.y;
    const double len2 = dx * dx + dy * dy;
    const double t = ((p.x - w.a.x) * dx + (p.y - w.a.y) * dy) / len2;
    const Vec2 foot{w.a.x + t * dx, w.a.y + t * dy};
    return {2.0 * foot.x - p.x, 2.0 * foot.y - p.y};
}

// Point where segment p->q crosses the wall, if it does.
std::optional<Vec2> crossing(Vec2 p, Vec2 q, const Wall& w) {
    const double rx = q.x - p.x, ry = q.y - p.y;
    const double sx = w.b.x - w.a.x, sy = w.b.y - w.a.y;
    const double denom = rx * sy - ry * sx;
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const double qpx = w.a.x - p.x, qpy = w.a.y - p.y;
    const double t = (qpx * sy - qpy * sx) / denom;
    const double u = (qpx * ry - qpy * rx) / denom;
    constexpr double eps = 1e-12;
    if (t <= eps || t >= 1.0 - eps || u < -eps || u > 1.0 + eps) return std::nullopt;
    return Vec2{p.x + t * rx, p.y + t * ry};
}

}  // namespace

void RoomScene::check() const {
    if (!(room_x_m > 0.0) || !(room_y_m > 0.0)) throw Error("RoomScene: room dimensions must be positive");
    if (!strictly_inside(*this, ap)) throw Error("RoomScene: AP must be inside the room");
    for (const auto& u : users)
        if (!strictly_inside(*this, u)) throw Error("RoomScene: user outside the room");
    for (const auto& o : antenna_offsets)
        if (!strictly_inside(*this, {ap.x + o.x, ap.y + o.y})) throw Error("RoomScene: antenna outside the room");
    for (const auto& w : walls) {
        if (dist(w.a, w.b) <= 0.0) throw Error("RoomScene: zero-length wall");
        if (w.gamma < 0.0 || w.gamma > 1.0) throw Error("RoomScene: reflection coefficient outside [0, 1]");
    }
}

std::vector<Vec2> ula_offsets(int antennas, double spacing_m) {
    std::vector<Vec2> out(static_cast<std::size_t>(antennas));
    const double centre = (antennas - 1) / 2.0;
    for (int m = 0; m < antennas; ++m) out[static_cast<std::size_t>(m)] = {(m - centre) * spacing_m, 0.0};
    return out;
}

std::vector<PropagationPath> trace_paths(const RoomScene& scene, Vec2 src, Vec2 dst, int max_reflections) {
    if (max_reflections < 0 || max_reflections > 2) throw Error("trace_paths: max_reflections must be 0, 1 or 2");
    if (dist(src, dst) < 1e-9) throw Error("trace_paths: degenerate geometry (endpoints coincide)");
    std::vector<PropagationPath> paths{{dist(src, dst), 0, 1.0}};
    const auto& walls = scene.walls;
    if (max_reflections >= 1) {
        for (const auto& w : walls) {
            const Vec2 img = reflect(src, w);
            if (crossing(dst, img, w)) paths.push_back({dist(dst, img), 1, w.gamma});
        }
    }
    if (max_reflections >= 2) {
        // src -> w1 -> w2 -> dst
        for (std::size_t i = 0; i < walls.size(); ++i) {
            const Vec2 img1 = reflect(src, walls[i]);
            for (std::size_t j = 0; j < walls.size(); ++j) {
                if (i == j) continue;
                const Vec2 img2 = reflect(img1, walls[j]);
                const auto p2 = crossing(dst, img2, walls[j]);
                if (!p2) continue;
                if (!crossing(*p2, img1, walls[i])) continue;
                paths.push_back({dist(dst, img2), 2, walls[i].gamma * walls[j].gamma});
            }
        }
    }
    return paths;
}

ChannelSet ray_trace(const RoomScene& scene, int bins, int max_reflections, double carrier_hz,
                     double subcarrier_spacing_hz) {
    scene.check();
    if (scene.users.empty()) throw Error("ray_trace: no users");
    if (scene.antenna_offsets.empty()) throw Error("ray_trace: no antennas");
    const int users = static_cast<int>(scene.users.size());
    const int antennas = static_cast<int>(scene.antenna_offsets.size());
    ChannelSet chan(users, antennas, bins, carrier_hz, subcarrier_spacing_hz);
    for (int u = 0; u < users; ++u) {
        for (int m = 0; m < antennas; ++m) {
            const auto& off = scene.antenna_offsets[static_cast<std::size_t>(m)];
            const Vec2 ant{scene.ap.x + off.x, scene.ap.y + off.y};
            const auto paths = trace_paths(scene, scene.users[static_cast<std::size_t>(u)], ant, max_reflections);
            for (int f = 0; f < bins; ++f) {
                const double freq = carrier_hz + signed_bin(static_cast<std::size_t>(f), static_cast<std::size_t>(bins)) *
                                                     subcarrier_spacing_hz;
                cplx acc{};
                for (const auto& p : paths)
                    acc += std::polar(p.gamma_product / p.length_m, -2.0 * kPi * freq * p.length_m / kSpeedOfLight);
                chan.at(u, m, f) = acc;
            }
        }
    }
    return chan;
}

void normalize_per_user(ChannelSet& chan) {
    for (int u = 0; u < chan.users(); ++u) {
        double p = 0.0;
        for (int m = 0; m < chan.antennas(); ++m)
            for (int f = 0; f < chan.bins(); ++f) p += std::norm(chan.at(u, m, f));
        p /= static_cast<double>(chan.antennas()) * chan.bins();
        if (!(p > 0.0)) throw Error("normalize_per_user: user has zero channel power");
        const double scale = 1.0 / std::sqrt(p);
        for (int m = 0; m < chan.antennas(); ++m)
            for (int f = 0; f < chan.bins(); ++f) chan.at(u, m, f) *= scale;
    }
}

void apply_timing_offsets(ChannelSet& chan, std::span<const double> offsets_samples) {
    if (offsets_samples.size() != static_cast<std::size_t>(chan.users()))
        throw Error("apply_timing_offsets: need one offset per user");
    const auto bins = static_cast<std::size_t>(chan.bins());
    for (int u = 0; u < chan.users(); ++u) {
        const double tau = offsets_samples[static_cast<std::size_t>(u)];
        if (!std::isfinite(tau)) throw Error("apply_timing_offsets: non-finite offset");
        for (int f = 0; f < chan.bins(); ++f) {
            const double fr = static_cast<double>(signed_bin(static_cast<std::size_t>(f), bins)) / static_cast<double>(bins);
            const cplx ramp = std::polar(1.0, -2.0 * kPi * fr * tau);
            for (int m = 0; m < chan.antennas(); ++m) chan.at(u, m, f) *= ramp;
        }
    }
}

std::vector<SampleStream> apply(const ChannelSet& chan, std::span<const SampleStream> tx, int cp_len) {
    if (tx.size() != static_cast<std::size_t>(chan.users())) throw Error("apply: need one stream per user");
    const auto n = static_cast<std::size_t>(chan.bins());
    const std::size_t block = n + static_cast<std::size_t>(cp_len);
    const std::size_t len = tx.front().size();
    const double rate = tx.front().rate_hz;
    for (const auto& s : tx) {
        if (s.size() != len) throw Error("apply: user streams differ in length");
        if (s.rate_hz != rate) throw Error("apply: user streams differ in rate");
    }
    if (cp_len < 0 || len % block != 0) throw Error("apply: stream length is not a whole number of OFDM symbols");

    const int users = chan.users();
    const int antennas = chan.antennas();
    std::vector<CVec> out(static_cast<std::size_t>(antennas), CVec(len));
    std::vector<CVec> spectra(static_cast<std::size_t>(users));
    CVec acc(n);
    for (std::size_t start = 0; start < len; start += block) {
        for (int u = 0; u < users; ++u) {
            const auto& s = tx[static_cast<std::size_t>(u)].samples;
            spectra[static_cast<std::size_t>(u)] =
                dft(std::span<const cplx>(s.data() + start + static_cast<std::size_t>(cp_len), n));
        }
        for (int m = 0; m < antennas; ++m) {
            for (std::size_t f = 0; f < n; ++f) {
                cplx v{};
                for (int u = 0; u < users; ++u)
                    v += chan.at(u, m, static_cast<int>(f)) * spectra[static_cast<std::size_t>(u)][f];
                acc[f] = v;
            }
            const CVec body = idft(acc);
            CVec& dst = out[static_cast<std::size_t>(m)];
            for (std::size_t i = 0; i < n; ++i) dst[start + static_cast<std::size_t>(cp_len) + i] = body[i];
            for (int i = 0; i < cp_len; ++i)
                dst[start + static_cast<std::size_t>(i)] = body[n - static_cast<std::size_t>(cp_len) + static_cast<std::size_t>(i)];
        }
    }
    std::vector<SampleStream> result;
    result.reserve(out.size());
    for (auto& s : out) result.emplace_back(std::move(s), rate);
    return result;
}

}  // namespace greenmo
