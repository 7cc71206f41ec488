#ifndef STAGEDTSP_EXACT_SOLVER_HPP
#define STAGEDTSP_EXACT_SOLVER_HPP

#include <cstdint>

#include "stagedtsp/instance.hpp"

namespace stagedtsp {

struct SolveResult {
    Tour tour;
    std::uint64_t cost = 0;
};

// Full enumeration, n <= 10. Ties broken by lexicographically smallest order.
SolveResult brute_force_tsp(const Instance& inst);

// Bitmask subset DP, n <= 16. Same optimal cost as brute force wherever both apply.
SolveResult held_karp(const Instance& inst);

// Valleys in id order (home's valley first, home leading), cities ascending.
// Attains valley_lower_bound on generated instances.
Tour canonical_valley_tour(const Instance& inst);

}  // namespace stagedtsp

#endif
