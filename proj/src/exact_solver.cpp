#include "stagedtsp/exact_solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stagedtsp {

SolveResult brute_force_tsp(const Instance& inst) {
    if (inst.n > 10) throw std::length_error("brute force capped at n <= 10");
    std::vector<int> rest;
    for (int c = 1; c <= inst.n; ++c)
        if (c != inst.home) rest.push_back(c);
    std::sort(rest.begin(), rest.end());

    SolveResult best;
    best.cost = std::numeric_limits<std::uint64_t>::max();
    // std::next_permutation walks orders lexicographically, so the first
    // strict improvement is also the lexicographic tie-break winner.
    do {
        std::uint64_t c = inst.arc_cost(inst.home, rest.front());
        for (size_t i = 0; i + 1 < rest.size(); ++i)
            c += inst.arc_cost(rest[i], rest[i + 1]);
        c += inst.arc_cost(rest.back(), inst.home);
        if (c < best.cost) {
            best.cost = c;
            best.tour.order.clear();
            best.tour.order.push_back(inst.home);
            best.tour.order.insert(best.tour.order.end(), rest.begin(), rest.end());
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

SolveResult held_karp(const Instance& inst) {
    if (inst.n > 16) throw std::length_error("Held-Karp capped at n <= 16");
    const int n = inst.n;
    std::vector<int> rest;
    for (int c = 1; c <= n; ++c)
        if (c != inst.home) rest.push_back(c);
    const int m = n - 1;
    const std::uint64_t INF = std::numeric_limits<std::uint64_t>::max();

    // dp[mask][last]: cheapest path home -> (cities of mask) ending at rest[last]
    std::vector<std::vector<std::uint64_t>> dp(1u << m,
                                               std::vector<std::uint64_t>(m, INF));
    std::vector<std::vector<int>> parent(1u << m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i) dp[1u << i][i] = inst.arc_cost(inst.home, rest[i]);

    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        for (int last = 0; last < m; ++last) {
            if (!(mask & (1u << last)) || dp[mask][last] == INF) continue;
            const std::uint64_t base = dp[mask][last];
            for (int nxt = 0; nxt < m; ++nxt) {
                if (mask & (1u << nxt)) continue;
                unsigned nm = mask | (1u << nxt);
                std::uint64_t c = base + inst.arc_cost(rest[last], rest[nxt]);
                // smaller predecessor index wins ties, keeps output deterministic
                if (c < dp[nm][nxt]) {
                    dp[nm][nxt] = c;
                    parent[nm][nxt] = last;
                }
            }
        }
    }

    const unsigned full = (1u << m) - 1;
    std::uint64_t best = INF;
    int best_last = -1;
    for (int last = 0; last < m; ++last) {
        if (dp[full][last] == INF) continue;
        std::uint64_t c = dp[full][last] + inst.arc_cost(rest[last], inst.home);
        if (c < best) {
            best = c;
            best_last = last;
        }
    }

    SolveResult res;
    res.cost = best;
    std::vector<int> rev;
    unsigned mask = full;
    int cur = best_last;
    while (cur != -1) {
        rev.push_back(rest[cur]);
        int p = parent[mask][cur];
        mask &= ~(1u << cur);
        cur = p;
    }
    res.tour.order.push_back(inst.home);
    res.tour.order.insert(res.tour.order.end(), rev.rbegin(), rev.rend());
    return res;
}

Tour canonical_valley_tour(const Instance& inst) {
    if (!inst.has_valleys())
        throw std::domain_error("canonical tour needs a valley structure");
    const int v = inst.valley_count();
    if (v < 2) throw std::domain_error("canonical tour needs at least 2 valleys");
    const int home_valley = inst.valley_of[inst.home - 1];

    Tour t;
    t.order.push_back(inst.home);
    for (int step = 0; step < v; ++step) {
        int a = (home_valley + step) % v;
        for (int c = 1; c <= inst.n; ++c)
            if (inst.valley_of[c - 1] == a && c != inst.home) t.order.push_back(c);
    }
    return t;
}

}  // namespace stagedtsp
