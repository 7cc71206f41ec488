#ifndef STAGEDTSP_STAGED_MODEL_HPP
#define STAGEDTSP_STAGED_MODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stagedtsp/instance.hpp"
#include "stagedtsp/rational.hpp"

namespace stagedtsp {

// Arc (i, s, j): salesman sits at city i at stage s and moves to j.
// Stage 0 departs home, stage n-1 returns home, interior stages never touch home.
struct StagedArc {
    int i = 0;
    int s = 0;
    int j = 0;

    auto operator<=>(const StagedArc&) const = default;
};

// The staged (time-expanded) variable space and the arc-pair compatibility
// predicate. This is a behavioral reconstruction of a lifted TSP relaxation:
// arc flow y plus joint pair flow z that must respect no-revisit consistency.
class StagedModel {
public:
    StagedModel(int n, int home);

    int n() const { return n_; }
    int home() const { return home_; }

    bool valid_arc(const StagedArc& a) const;
    void require_arc(const StagedArc& a) const;  // throws std::invalid_argument

    // Arcs at one stage / the whole universe (counted, never enumerated).
    std::uint64_t stage_arc_count(int s) const;
    std::uint64_t arc_count() const;

    // True iff the partial stage->city assignment of the two arcs is consistent
    // and injective on non-home cities; adjacent stages must also chain (k = j).
    // Requires stage(a) < stage(b).
    bool compatible(const StagedArc& a, const StagedArc& b) const;

private:
    int n_, home_;
};

StagedModel build_model(const Instance& inst);

// Stage-indexed city sequence with a rational weight: one "fractional
// salesman". Repeats allowed among non-home cities; home only at slot 0.
struct Walk {
    std::vector<int> slots;
    Rational weight = Rational(1);

    bool operator==(const Walk&) const = default;
};

// Sparse exact-rational point in (y, z) space. Stored values are nonzero;
// loaded points may carry negatives (flagged by family F7).
struct FlowPoint {
    int n = 0;
    std::map<StagedArc, Rational> y;
    std::map<std::pair<StagedArc, StagedArc>, Rational> z;

    void add_y(const StagedArc& a, const Rational& v);
    void add_z(const StagedArc& a, const StagedArc& b, const Rational& v);
    Rational get_y(const StagedArc& a) const;
};

struct Violation {
    std::string family;             // "F1".."F8"
    std::string indices_json;       // serialized index object, for reports
    std::vector<long long> key;     // canonical intra-family sort key
    Rational lhs, rhs;
};

struct ViolationReport {
    bool feasible = true;
    std::vector<Violation> entries;
};

FlowPoint tour_to_point(const Tour& t, const StagedModel& m);

// Lifts a walk: y = weight on its n arcs, z = weight on every ordered pair of
// those arcs, incompatible pairs included ("walk-induced" z).
FlowPoint walk_to_point(const Walk& w, const StagedModel& m);

// Componentwise weighted sum; weights must be positive and sum to 1 exactly.
FlowPoint superpose(const std::vector<std::pair<FlowPoint, Rational>>& parts);

Rational point_cost(const FlowPoint& p, const Instance& inst);

// Exact feasibility audit over constraint families F1..F8:
//   F1 unit stage flow, F2 conservation, F3 visit-once aggregate,
//   F4 pair-flow propagation (both directions), F5 capacity,
//   F6 compatibility support, F7 nonnegativity, F8 adjacency consistency.
// Only constraints touching the support are evaluated, except F1/F3 whose
// right-hand side is 1 and which are checked globally.
ViolationReport check_feasibility(const FlowPoint& p, const StagedModel& m);

// Greedy path stripping on the staged DAG; requires F1 and F2 to hold.
// Returned walk weights sum to 1; ties broken by smallest city id.
std::vector<Walk> decompose_point(const FlowPoint& p, const StagedModel& m);

// FlowPoint JSON schema:
//   {"n": int, "y": [{"i","s","j","num","den"}], "z": [{"a":[i,s,j],"b":[k,t,l],"num","den"}]}
FlowPoint load_point(const std::string& text);
std::string save_point(const FlowPoint& p);

// ViolationReport JSON: {"feasible": bool, "violations": [{"family","indices","lhs","rhs"}]}
std::string report_to_json(const ViolationReport& r);
std::string report_to_text(const ViolationReport& r);

}  // namespace stagedtsp

#endif
