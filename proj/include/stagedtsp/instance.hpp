#ifndef STAGEDTSP_INSTANCE_HPP
#define STAGEDTSP_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace stagedtsp {

// A TSP instance, optionally carrying a valley partition. Cities are 1-based.
// Valley membership is stored explicitly so loaded non-valley instances still
// work with the staged checker.
struct Instance {
    int n = 0;
    int home = 1;
    std::vector<int> valley_of;  // size n (0-based valley id per city), empty if none
    std::vector<std::vector<std::uint64_t>> cost;  // n x n, zero diagonal

    bool has_valleys() const { return !valley_of.empty(); }
    int valley_count() const;

    std::uint64_t arc_cost(int i, int j) const { return cost[i - 1][j - 1]; }

    bool operator==(const Instance&) const = default;
};

// Permutation of all cities starting at home; return arc implicit.
struct Tour {
    std::vector<int> order;

    bool operator==(const Tour&) const = default;
};

// Throws std::invalid_argument if the tour is not a home-rooted permutation.
void validate_tour(const Instance& inst, const Tour& t);

std::uint64_t tour_cost(const Instance& inst, const Tour& t);

// v valleys of k cities each; valley a holds cities a*k+1 .. a*k+k.
// Intra-valley arcs cost `intra`, crossings cost `inter`.
Instance make_valley_instance(int v, int k, std::uint64_t intra, std::uint64_t inter,
                              int home = 1);

// v*inter + (n-v)*intra: every closed tour has n arcs and crosses between
// valleys at least v times.
std::uint64_t valley_lower_bound(const Instance& inst);

// JSON document schema:
//   {"n": int, "home": int, "valleys": [[int,...],...] (optional),
//    "cost": {"pattern": {"intra": int, "inter": int}} | {"matrix": [[int,...],...]}}
Instance load_instance(const std::string& text);
std::string save_instance(const Instance& inst);

// Runs all Instance invariants; throws std::invalid_argument on breach.
void validate_instance(const Instance& inst);

}  // namespace stagedtsp

#endif
