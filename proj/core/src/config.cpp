#include "greenmo/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

namespace greenmo {

namespace {

constexpr std::pair<Receiver, std::string_view> kReceiverNames[] = {
    {Receiver::greenmo, "greenmo"}, {Receiver::greenmo_random, "greenmo_random"},
    {Receiver::greenmo_identity, "greenmo_identity"}, {Receiver::dbf, "dbf"},
    {Receiver::hbf_full, "hbf_full"}, {Receiver::hbf_partial, "hbf_partial"}, {Receiver::fdma, "fdma"},
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
    return out;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view v) {
    Int out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"arch", [](auto& c, auto k, auto v) {
             c.receivers.clear();
             for (auto item : split_list(v)) c.receivers.push_back(parse_receiver(item));
             if (c.receivers.empty()) throw ConfigError("config: '" + std::string(k) + "' is empty");
         }},
        {"users", [](auto& c, auto k, auto v) { c.users = to_int<int>(k, v); }},
        {"antennas", [](auto& c, auto k, auto v) { c.antennas = to_int<int>(k, v); }},
        {"vrf", [](auto& c, auto k, auto v) { c.vrf = to_int<int>(k, v); }},
        {"chains", [](auto& c, auto k, auto v) { c.chains = to_int<int>(k, v); }},
        {"snr_db", [](auto& c, auto k, auto v) { c.snr_db = to_double(k, v); }},
        {"trials", [](auto& c, auto k, auto v) { c.trials = to_int<int>(k, v); }},
        {"seed", [](auto& c, auto k, auto v) { c.seed = to_int<std::uint64_t>(k, v); }},
        {"scenario", [](auto& c, auto k, auto v) {
             if (v == "rayleigh") c.scenario = Scenario::rayleigh;
             else if (v == "raytrace") c.scenario = Scenario::raytrace;
             else throw ConfigError("config: '" + std::string(k) + "' must be rayleigh or raytrace");
         }},
        {"sync_mode", [](auto& c, auto k, auto v) {
             if (v == "aligned") c.sync_mode = SyncMode::aligned;
             else if (v == "offset") c.sync_mode = SyncMode::offset;
             else throw ConfigError("config: '" + std::string(k) + "' must be aligned or offset");
         }},
        {"max_offset_samples", [](auto& c, auto k, auto v) { c.max_offset_samples = to_double(k, v); }},
        {"combiner", [](auto& c, auto k, auto v) {
             if (v == "zf") c.combiner = CombinerMethod::zf;
             else if (v == "nullspace") c.combiner = CombinerMethod::nullspace;
             else throw ConfigError("config: '" + std::string(k) + "' must be zf or nullspace");
         }},
        {"workers", [](auto& c, auto k, auto v) { c.workers = to_int<int>(k, v); }},
        {"output", [](auto& c, auto, auto v) { c.output = std::string(v); }},
        {"channel.taps", [](auto& c, auto k, auto v) { c.channel_taps = to_int<int>(k, v); }},
        {"babf.phi", [](auto& c, auto k, auto v) { c.babf.phi = to_double(k, v); }},
        {"babf.rank_tolerance", [](auto& c, auto k, auto v) { c.babf.rank_tolerance = to_double(k, v); }},
        {"babf.max_fallbacks", [](auto& c, auto k, auto v) { c.babf.max_fallbacks = to_int<int>(k, v); }},
        {"frontend.insertion_loss_db", [](auto& c, auto k, auto v) { c.insertion_loss_db = to_double(k, v); }},
        {"frontend.quantizer_bits", [](auto& c, auto k, auto v) { c.quantizer_bits = to_int<int>(k, v); }},
        {"frontend.noise_point", [](auto& c, auto k, auto v) {
             if (v == "antenna") c.noise_point = NoisePoint::antenna;
             else if (v == "combiner") c.noise_point = NoisePoint::combiner;
             else throw ConfigError("config: '" + std::string(k) + "' must be antenna or combiner");
         }},
        {"ofdm.user_bandwidth_hz", [](auto& c, auto k, auto v) { c.ofdm.user_bandwidth_hz = to_double(k, v); }},
        {"ofdm.payload_symbols", [](auto& c, auto k, auto v) { c.ofdm.payload_symbols = to_int<int>(k, v); }},
        {"ofdm.lts_reps", [](auto& c, auto k, auto v) { c.ofdm.lts_reps = to_int<int>(k, v); }},
        {"ofdm.cp_len", [](auto& c, auto k, auto v) { c.ofdm.cp_len = to_int<int>(k, v); }},
        {"scene.room_x_m", [](auto& c, auto k, auto v) { c.scene.room_x_m = to_double(k, v); }},
        {"scene.room_y_m", [](auto& c, auto k, auto v) { c.scene.room_y_m = to_double(k, v); }},
        {"scene.ap_x_m", [](auto& c, auto k, auto v) { c.scene.ap_x_m = to_double(k, v); }},
        {"scene.ap_y_m", [](auto& c, auto k, auto v) { c.scene.ap_y_m = to_double(k, v); }},
        {"scene.gamma", [](auto& c, auto k, auto v) { c.scene.gamma = to_double(k, v); }},
        {"scene.max_reflections", [](auto& c, auto k, auto v) { c.scene.max_reflections = to_int<int>(k, v); }},
        {"scene.carrier_hz", [](auto& c, auto k, auto v) { c.scene.carrier_hz = to_double(k, v); }},
        {"scene.antenna_spacing_m", [](auto& c, auto k, auto v) { c.scene.antenna_spacing_m = to_double(k, v); }},
        {"scene.user_margin_m", [](auto& c, auto k, auto v) { c.scene.user_margin_m = to_double(k, v); }},
        {"scene.min_user_distance_m", [](auto& c, auto k, auto v) { c.scene.min_user_distance_m = to_double(k, v); }},
        {"sweep.antennas", [](auto& c, auto k, auto v) {
             c.sweep_antennas.clear();
             for (auto item : split_list(v)) c.sweep_antennas.push_back(to_int<int>(k, item));
         }},
        {"sweep.snr_db", [](auto& c, auto k, auto v) {
             c.sweep_snr_db.clear();
             for (auto item : split_list(v)) c.sweep_snr_db.push_back(to_double(k, item));
         }},
    };
    return table;
}

// scene.user<i>_x_m / scene.user<i>_y_m
bool set_user_position(ExperimentConfig& c, std::string_view key, std::string_view value,
                       std::map<int, std::pair<std::optional<double>, std::optional<double>>>& pending) {
    static const std::regex re(R"(scene\.user(\d+)_([xy])_m)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(key.begin(), key.end(), m, re)) return false;
    const int idx = std::stoi(m[1].str());
    if (idx > 4096) throw ConfigError("config: user index too large in '" + std::string(key) + "'");
    auto& slot = pending[idx];
    (m[2].str() == "x" ? slot.first : slot.second) = to_double(key, value);
    (void)c;
    return true;
}

}  // namespace

Receiver parse_receiver(std::string_view name) {
    for (const auto& [r, n] : kReceiverNames)
        if (n == name) return r;
    throw ConfigError("config: unknown architecture '" + std::string(name) + "'");
}

std::string_view to_string(Receiver r) {
    for (const auto& [rr, n] : kReceiverNames)
        if (rr == r) return n;
    return "?";
}

void ExperimentConfig::check() const {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (receivers.empty()) fail("no architectures selected");
    if (users < 1) fail("users must be >= 1");
    if (trials < 1) fail("trials must be >= 1");
    if (workers < 1) fail("workers must be >= 1");
    if (vrf < 1 || chains < 1) fail("vrf and chains must be >= 1");
    if (channel_taps < 1 || channel_taps > OfdmConfig::kFftSize) fail("channel.taps out of range");
    if (quantizer_bits < 0 || quantizer_bits > 24) fail("frontend.quantizer_bits must be in [0, 24]");
    if (insertion_loss_db < 0.0) fail("frontend.insertion_loss_db must be >= 0");
    if (max_offset_samples < 0.0 || max_offset_samples >= ofdm.cp_len) fail("max_offset_samples must be in [0, cp_len)");
    if (scene.max_reflections < 0 || scene.max_reflections > 2) fail("scene.max_reflections must be 0, 1 or 2");
    if (!scene.users.empty() && static_cast<int>(scene.users.size()) != users)
        fail("fixed scene user positions must match the user count");
    try {
        babf.check();
        ofdm.check();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(e.what());
    }
    std::vector<int> ms = sweep_antennas.empty() ? std::vector<int>{antennas} : sweep_antennas;
    for (int m : ms) {
        if (m < 1) fail("antenna counts must be >= 1");
        for (Receiver r : receivers) {
            switch (r) {
                case Receiver::greenmo:
                case Receiver::greenmo_random:
                case Receiver::greenmo_identity:
                    if (users > vrf) fail("greenmo needs users <= vrf");
                    if (r != Receiver::greenmo_identity && m < users) fail("BABF/random selection needs antennas >= users");
                    if (r == Receiver::greenmo_random && m < vrf) fail("random switch matrices need antennas >= vrf");
                    break;
                case Receiver::dbf:
                    if (users > chains) fail("dbf needs users <= chains");
                    if (chains > m) fail("dbf needs chains <= antennas");
                    break;
                case Receiver::hbf_full:
                case Receiver::hbf_partial:
                    if (users > vrf) fail("hbf needs users <= vrf");
                    if (r == Receiver::hbf_partial && m % vrf != 0) fail("partially-connected hbf needs antennas divisible by vrf");
                    break;
                case Receiver::fdma:
                    break;
            }
        }
    }
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::map<int, std::pair<std::optional<double>, std::optional<double>>> users;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty value for '" + std::string(key) + "'");
        if (const auto it = setters().find(key); it != setters().end()) {
            it->second(cfg, key, value);
        } else if (!set_user_position(cfg, key, value, users)) {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    int expect = 0;
    for (const auto& [idx, pos] : users) {
        if (idx != expect++) throw ConfigError("config: scene user indices must be contiguous from 0");
        if (!pos.first || !pos.second) throw ConfigError("config: scene user " + std::to_string(idx) + " needs both x and y");
        cfg.scene.users.push_back({*pos.first, *pos.second});
    }
    cfg.check();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_text(const ExperimentConfig& c) {
    std::ostringstream out;
    auto line = [&](std::string_view k, const std::string& v) { out << k << " = " << v << '\n'; };
    std::string arch;
    for (Receiver r : c.receivers) arch += (arch.empty() ? "" : ",") + std::string(to_string(r));
    line("arch", arch);
    line("users", std::to_string(c.users));
    line("antennas", std::to_string(c.antennas));
    line("vrf", std::to_string(c.vrf));
    line("chains", std::to_string(c.chains));
    line("snr_db", fmt_double(c.snr_db));
    line("trials", std::to_string(c.trials));
    line("seed", std::to_string(c.seed));
    line("scenario", c.scenario == Scenario::rayleigh ? "rayleigh" : "raytrace");
    line("sync_mode", c.sync_mode == SyncMode::aligned ? "aligned" : "offset");
    line("max_offset_samples", fmt_double(c.max_offset_samples));
    line("combiner", c.combiner == CombinerMethod::zf ? "zf" : "nullspace");
    line("channel.taps", std::to_string(c.channel_taps));
    line("babf.phi", fmt_double(c.babf.phi));
    line("babf.rank_tolerance", fmt_double(c.babf.rank_tolerance));
    line("babf.max_fallbacks", std::to_string(c.babf.max_fallbacks));
    line("frontend.insertion_loss_db", fmt_double(c.insertion_loss_db));
    line("frontend.quantizer_bits", std::to_string(c.quantizer_bits));
    line("frontend.noise_point", c.noise_point == NoisePoint::antenna ? "antenna" : "combiner");
    line("ofdm.user_bandwidth_hz", fmt_double(c.ofdm.user_bandwidth_hz));
    line("ofdm.payload_symbols", std::to_string(c.ofdm.payload_symbols));
    line("ofdm.lts_reps", std::to_string(c.ofdm.lts_reps));
    line("ofdm.cp_len", std::to_string(c.ofdm.cp_len));
    line("scene.room_x_m", fmt_double(c.scene.room_x_m));
    line("scene.room_y_m", fmt_double(c.scene.room_y_m));
    line("scene.ap_x_m", fmt_double(c.scene.ap_x_m));
    line("scene.ap_y_m", fmt_double(c.scene.ap_y_m));
    line("scene.gamma", fmt_double(c.scene.gamma));
    line("scene.max_reflections", std::to_string(c.scene.max_reflections));
    line("scene.carrier_hz", fmt_double(c.scene.carrier_hz));
    line("scene.antenna_spacing_m", fmt_double(c.scene.antenna_spacing_m));
    line("scene.user_margin_m", fmt_double(c.scene.user_margin_m));
    line("scene.min_user_distance_m", fmt_double(c.scene.min_user_distance_m));
    for (std::size_t i = 0; i < c.scene.users.size(); ++i) {
        line("scene.user" + std::to_string(i) + "_x_m", fmt_double(c.scene.users[i].x));
        line("scene.user" + std::to_string(i) + "_y_m", fmt_double(c.scene.users[i].y));
    }
    std::string list;
    for (int m : c.sweep_antennas) list += (list.empty() ? "" : ",") + std::to_string(m);
    if (!list.empty()) line("sweep.antennas", list);
    list.clear();
    for (double s : c.sweep_snr_db) list += (list.empty() ? "" : ",") + fmt_double(s);
    if (!list.empty()) line("sweep.snr_db", list);
    return out.str();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace greenmo
