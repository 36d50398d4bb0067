#include "greenmo/babf.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "greenmo/linalg.hpp"

namespace greenmo {

void BabfConfig::check() const {
    if (!(phi > 0.0) || phi > kPi / 2.0 + 1e-12) throw Error("BabfConfig: phi must be in (0, pi/2]");
    if (!(rank_tolerance > 0.0)) throw Error("BabfConfig: rank tolerance must be positive");
    if (max_fallbacks < 0) throw Error("BabfConfig: max_fallbacks must be >= 0");
}

namespace {

struct Option {
    Bits group;  // per antenna
    int score;
    int pivot;
};

struct Candidate {
    int loss;
    std::vector<int> choice;
    bool operator>(const Candidate& o) const {
        if (loss != o.loss) return loss > o.loss;
        return choice > o.choice;
    }
};

bool full_rank(const Eigen::MatrixXcd& h, const std::vector<std::vector<Option>>& options,
               const std::vector<int>& choice, double tol, SwitchMatrix& out) {
    const int users = static_cast<int>(h.rows());
    const int antennas = static_cast<int>(h.cols());
    SwitchMatrix s(antennas, users);
    for (int i = 0; i < users; ++i) {
        const auto& g = options[static_cast<std::size_t>(i)][static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])].group;
        for (int m = 0; m < antennas; ++m) s.set(m, i, g[static_cast<std::size_t>(m)] != 0);
    }
    const Eigen::MatrixXcd hs = h * s.as_matrix().cast<cplx>();
    out = std::move(s);
    return numerical_rank(hs, tol) == users;
}

}  // namespace

BabfResult babf_select(const Eigen::MatrixXcd& h_ref, const BabfConfig& cfg) {
    cfg.check();
    const int users = static_cast<int>(h_ref.rows());
    const int antennas = static_cast<int>(h_ref.cols());
    if (users < 1 || antennas < users) throw Error("babf_select: need 1 <= users <= antennas");
    if (!h_ref.allFinite()) throw Error("babf_select: non-finite channel");
    for (int i = 0; i < users; ++i)
        if (h_ref.row(i).squaredNorm() == 0.0) throw Error("babf_select: user has an all-zero channel row");

    BabfResult result;
    result.scores = Eigen::MatrixXi::Zero(users, antennas);
    std::vector<std::vector<Option>> options(static_cast<std::size_t>(users));

    for (int i = 0; i < users; ++i) {
        std::vector<Option> all;
        for (int m = 0; m < antennas; ++m) {
            const cplx pivot = std::conj(h_ref(i, m));
            Option opt{Bits(static_cast<std::size_t>(antennas), 0), 0, m};
            for (int a = 0; a < antennas; ++a) {
                const cplx g = h_ref(i, a) * pivot;
                const bool in_phase = a == m || (std::abs(g) > 0.0 && std::abs(std::arg(g)) < cfg.phi);
                if (in_phase) {
                    opt.group[static_cast<std::size_t>(a)] = 1;
                    ++opt.score;
                }
            }
            result.scores(i, m) = opt.score;
            all.push_back(std::move(opt));
        }
        std::stable_sort(all.begin(), all.end(), [](const Option& a, const Option& b) { return a.score > b.score; });
        auto& uniq = options[static_cast<std::size_t>(i)];
        for (auto& o : all) {
            const bool seen = std::any_of(uniq.begin(), uniq.end(), [&](const Option& u) { return u.group == o.group; });
            if (!seen) uniq.push_back(std::move(o));
        }
    }

    // Best-first walk over joint selections ordered by total score lost.
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> frontier;
    std::set<std::vector<int>> visited;
    const std::vector<int> start(static_cast<std::size_t>(users), 0);
    frontier.push({0, start});
    visited.insert(start);

    int level = 0;
    while (!frontier.empty() && level <= cfg.max_fallbacks) {
        const Candidate cur = frontier.top();
        frontier.pop();
        SwitchMatrix s;
        if (full_rank(h_ref, options, cur.choice, cfg.rank_tolerance, s)) {
            result.s = std::move(s);
            result.fallback_level = level;
            return result;
        }
        for (int i = 0; i < users; ++i) {
            const auto& opts = options[static_cast<std::size_t>(i)];
            std::vector<int> next = cur.choice;
            auto& c = next[static_cast<std::size_t>(i)];
            if (c + 1 >= static_cast<int>(opts.size())) continue;
            ++c;
            if (!visited.insert(next).second) continue;
            const int loss = cur.loss + opts[static_cast<std::size_t>(c - 1)].score - opts[static_cast<std::size_t>(c)].score;
            frontier.push({loss, std::move(next)});
        }
        ++level;
    }
    throw BabfFailure("babf_select: no full-rank switch matrix within " + std::to_string(cfg.max_fallbacks) +
                      " fallbacks");
}

SwitchMatrix random_switch_matrix(int antennas, int slots, Rng& rng) {
    if (slots < 1 || antennas < slots) throw Error("random_switch_matrix: need 1 <= K <= M");
    constexpr int kMaxDraws = 100000;
    for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
        SwitchMatrix s(antennas, slots);
        for (int m = 0; m < antennas; ++m)
            for (int k = 0; k < slots; ++k) s.set(m, k, (rng.next_u64() >> 63) != 0);
        bool nonempty = true;
        for (int k = 0; k < slots; ++k) nonempty = nonempty && s.column_weight(k) > 0;
        if (!nonempty) continue;
        if (numerical_rank(s.as_matrix().cast<cplx>(), 1e-9) == slots) return s;
    }
    throw Error("random_switch_matrix: no full-rank draw");
}

}  // namespace greenmo
