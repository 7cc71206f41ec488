#ifndef STAGEDTSP_HOFMAN_HPP
#define STAGEDTSP_HOFMAN_HPP

#include <set>
#include <string>
#include <vector>

#include "stagedtsp/instance.hpp"
#include "stagedtsp/staged_model.hpp"

namespace stagedtsp {

// One branch of fractional salesmen: traverse each listed valley
// repeats[k] times in a row, then proceed to the scenario's link-up valley.
struct HofmanBranch {
    std::vector<int> valleys;
    std::vector<int> repeats;
    Rational weight;
};

// Parameterized version of the seven-step valley construction: start in the
// home valley, split into weighted branches that revisit their valleys, and
// link up (a link-up valley equal to the home valley means no suffix; the
// walk returns home directly).
struct HofmanScenario {
    int home_valley = 0;
    int linkup_valley = 0;
    std::vector<HofmanBranch> branches;
};

enum class ZMode { WalkInduced, CompatibilityFiltered };

// One walk per branch: home valley ascending (home first), each branch valley
// ascending x repeats, then the link-up valley ascending. Weight = branch weight.
std::vector<Walk> build_hofman_walks(const Instance& inst, const HofmanScenario& sc);

// Superposition of the branch walks' lifted points with the branch weights.
// WalkInduced keeps every within-walk pair, incompatible ones included;
// CompatibilityFiltered drops the incompatible pairs. Cross-walk z is zero in
// both modes (branches are disjoint alternatives).
FlowPoint build_hofman_point(const Instance& inst, const HofmanScenario& sc, ZMode mode);

struct PropagationReport {
    StagedArc arc;
    int target_stage = 0;
    int reached_stage = 0;
    bool blocked = false;
    Rational deficit;
    std::string reason;
};

// Searches chains of support arcs from `a` that stay repeat-free under
// compatible(); reports the furthest stage such a chain attains. A blocked
// verdict is decisive: with no chain, every z term in the propagation
// equality at the failing stage is forced to zero. A non-blocked verdict
// only means "not refuted by this audit".
PropagationReport propagation_audit(const FlowPoint& p, const StagedArc& a, int target,
                                    const StagedModel& m);

// Maximum number of arcs in a repeat-free chain confined to the given city
// set: q arcs occupy q+1 slots, so q = |cities| - 1.
int max_repeat_free_chain(const StagedArc& start, const std::set<int>& cities);

// Scenario JSON schema:
//   {"home_valley": int, "linkup_valley": int,
//    "branches": [{"valleys": [int,...], "repeats": [int,...], "weight": "p/q"}]}
HofmanScenario load_scenario(const std::string& text);
std::string save_scenario(const HofmanScenario& sc);

// The 4-valley scenario used throughout: branch A,B,B,D and branch A,C,C,D
// at weight 1/2 each (valley ids 0..3); generalizes to any v >= 3 by sending
// one branch through each middle valley twice.
HofmanScenario canonical_scenario(int valley_count);

std::string propagation_report_to_json(const PropagationReport& r);
std::string propagation_report_to_text(const PropagationReport& r);

}  // namespace stagedtsp

#endif
