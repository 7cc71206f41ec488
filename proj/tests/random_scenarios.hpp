#ifndef STAGEDTSP_TESTS_RANDOM_SCENARIOS_HPP
#define STAGEDTSP_TESTS_RANDOM_SCENARIOS_HPP

#include <random>

#include "stagedtsp/hofman.hpp"

namespace stagedtsp::testing {

// Random valid scenario for a v-valley instance (v in {3,4}) with some
// repeat count >= 2. Slot arithmetic: each branch fills exactly n = v*k slots.
inline HofmanScenario random_repeating_scenario(int v, std::mt19937& rng) {
    auto weight_split = [&](HofmanScenario& sc) {
        int d = 2 + (int)(rng() % 5);
        int a = 1 + (int)(rng() % (d - 1));
        sc.branches[0].weight = Rational(a, d);
        sc.branches[1].weight = Rational(d - a, d);
    };
    HofmanScenario sc;
    sc.home_valley = 0;
    if (v == 3) {
        // A,B,B and A,C,C: both branches link up back home
        sc.linkup_valley = 0;
        sc.branches = {{{1}, {2}, Rational(1, 2)}, {{2}, {2}, Rational(1, 2)}};
    } else if (rng() % 2 == 0) {
        // A,B,B,D and A,C,C,D
        sc.linkup_valley = 3;
        sc.branches = {{{1}, {2}, Rational(1, 2)}, {{2}, {2}, Rational(1, 2)}};
    } else {
        // link up at home; each branch burns 3 valley traversals
        sc.linkup_valley = 0;
        if (rng() % 2 == 0)
            sc.branches = {{{1}, {3}, Rational(1, 2)}, {{2, 3}, {2, 1}, Rational(1, 2)}};
        else
            sc.branches = {{{1, 2}, {1, 2}, Rational(1, 2)}, {{3}, {3}, Rational(1, 2)}};
    }
    weight_split(sc);
    return sc;
}

}  // namespace stagedtsp::testing

#endif
