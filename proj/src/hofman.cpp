#include "stagedtsp/hofman.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stagedtsp {

using nlohmann::json;

namespace {

std::vector<std::vector<int>> valley_lists(const Instance& inst) {
    std::vector<std::vector<int>> lists(inst.valley_count());
    for (int c = 1; c <= inst.n; ++c) lists[inst.valley_of[c - 1]].push_back(c);
    return lists;
}

}  // namespace

std::vector<Walk> build_hofman_walks(const Instance& inst, const HofmanScenario& sc) {
    if (!inst.has_valleys())
        throw std::invalid_argument("scenario needs an instance with valley structure");
    const int v = inst.valley_count();
    auto in_range = [&](int a) { return a >= 0 && a < v; };
    if (!in_range(sc.home_valley) || !in_range(sc.linkup_valley))
        throw std::invalid_argument("scenario valley id out of range");
    if (inst.valley_of[inst.home - 1] != sc.home_valley)
        throw std::invalid_argument("scenario home valley does not hold the home city");
    if (sc.branches.empty()) throw std::invalid_argument("scenario needs at least one branch");

    Rational total(0);
    for (const auto& br : sc.branches) {
        if (!(br.weight > Rational(0)))
            throw std::invalid_argument("branch weights must be positive");
        total += br.weight;
    }
    if (total != Rational(1))
        throw std::invalid_argument("branch weights must sum to 1, got " + total.str());

    auto lists = valley_lists(inst);

    // home valley with home first, the rest ascending
    std::vector<int> prefix{inst.home};
    for (int c : lists[sc.home_valley])
        if (c != inst.home) prefix.push_back(c);

    std::vector<int> suffix;
    if (sc.linkup_valley != sc.home_valley) suffix = lists[sc.linkup_valley];

    std::vector<Walk> walks;
    for (const auto& br : sc.branches) {
        if (br.valleys.size() != br.repeats.size())
            throw std::invalid_argument("branch valleys/repeats length mismatch");
        Walk w;
        w.weight = br.weight;
        w.slots = prefix;
        for (size_t k = 0; k < br.valleys.size(); ++k) {
            if (!in_range(br.valleys[k]))
                throw std::invalid_argument("branch valley id out of range");
            if (br.repeats[k] < 1) throw std::invalid_argument("repeat count must be >= 1");
            for (int r = 0; r < br.repeats[k]; ++r)
                w.slots.insert(w.slots.end(), lists[br.valleys[k]].begin(),
                               lists[br.valleys[k]].end());
        }
        w.slots.insert(w.slots.end(), suffix.begin(), suffix.end());
        if ((int)w.slots.size() != inst.n) {
            std::ostringstream os;
            os << "branch slot count " << w.slots.size() << " != n = " << inst.n;
            throw std::invalid_argument(os.str());
        }
        walks.push_back(std::move(w));
    }
    return walks;
}

FlowPoint build_hofman_point(const Instance& inst, const HofmanScenario& sc, ZMode mode) {
    StagedModel m = build_model(inst);
    auto walks = build_hofman_walks(inst, sc);

    std::vector<std::pair<FlowPoint, Rational>> parts;
    for (const auto& w : walks) {
        FlowPoint lifted = walk_to_point(Walk{w.slots, Rational(1)}, m);
        if (mode == ZMode::CompatibilityFiltered) {
            for (auto it = lifted.z.begin(); it != lifted.z.end();) {
                if (!m.compatible(it->first.first, it->first.second))
                    it = lifted.z.erase(it);
                else
                    ++it;
            }
        }
        parts.emplace_back(std::move(lifted), w.weight);
    }
    return superpose(parts);
}

PropagationReport propagation_audit(const FlowPoint& p, const StagedArc& a, int target,
                                    const StagedModel& m) {
    m.require_arc(a);
    if (!(p.get_y(a) > Rational(0)))
        throw std::invalid_argument("audited arc carries no flow");
    if (target <= a.s || target > m.n() - 1)
        throw std::invalid_argument("target stage must lie in (stage(a), n-1]");

    const int n = m.n();
    int best = std::min(a.s + 1, n - 1);
    std::set<int> cities;
    if (a.i != m.home()) cities.insert(a.i);
    if (a.j != m.home()) cities.insert(a.j);

    std::set<int> used = cities;
    std::function<void(const StagedArc&)> dfs = [&](const StagedArc& last) {
        if (best >= target) return;
        const int s = last.s + 1;
        if (s > n - 1) return;
        StagedArc lo{last.j, s, 0};
        for (auto it = p.y.lower_bound(lo); it != p.y.end(); ++it) {
            const StagedArc& b = it->first;
            if (b.i != last.j || b.s != s) break;
            if (!(it->second > Rational(0))) continue;
            const bool is_home_return = (b.j == m.home());
            if (!is_home_return && used.count(b.j)) continue;
            best = std::max(best, std::min(b.s + 1, n - 1));
            if (!is_home_return) {
                cities.insert(b.j);
                used.insert(b.j);
                dfs(b);
                used.erase(b.j);
            }
        }
    };
    dfs(a);

    PropagationReport r;
    r.arc = a;
    r.target_stage = target;
    r.reached_stage = best;
    r.blocked = best < target;
    std::ostringstream os;
    if (r.blocked) {
        // achievable pair flow at the first stage no chain attains
        const int fail_stage = best + 1;
        Rational achievable(0);
        for (const auto& [ab, v] : p.z)
            if (ab.first == a && ab.second.s == fail_stage &&
                m.compatible(a, ab.second))
                achievable += v;
        r.deficit = p.get_y(a) - achievable;
        os << "pigeonhole: " << (target - a.s) << " stages required, " << cities.size()
           << " cities available; no repeat-free support chain past stage " << best;
    } else {
        r.deficit = Rational(0);
        os << "target stage " << target << " reached; not refuted by this audit";
    }
    r.reason = os.str();
    return r;
}

int max_repeat_free_chain(const StagedArc& start, const std::set<int>& cities) {
    if (cities.size() < 2) throw std::invalid_argument("need at least 2 cities");
    if (!cities.count(start.i) || !cities.count(start.j))
        throw std::invalid_argument("start arc outside the city set");
    if (start.i == start.j) throw std::invalid_argument("degenerate start arc");
    // a chain of q arcs occupies q+1 city slots, so q <= |cities| - 1
    return (int)cities.size() - 1;
}

HofmanScenario load_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
    }
    HofmanScenario sc;
    try {
        sc.home_valley = doc.at("home_valley").get<int>();
        sc.linkup_valley = doc.at("linkup_valley").get<int>();
        for (const auto& bj : doc.at("branches")) {
            HofmanBranch br;
            br.valleys = bj.at("valleys").get<std::vector<int>>();
            br.repeats = bj.at("repeats").get<std::vector<int>>();
            br.weight = Rational::parse(bj.at("weight").get<std::string>());
            sc.branches.push_back(std::move(br));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario document error: ") + e.what());
    }
    return sc;
}

std::string save_scenario(const HofmanScenario& sc) {
    json doc;
    doc["home_valley"] = sc.home_valley;
    doc["linkup_valley"] = sc.linkup_valley;
    json bs = json::array();
    for (const auto& br : sc.branches)
        bs.push_back({{"valleys", br.valleys},
                      {"repeats", br.repeats},
                      {"weight", br.weight.str()}});
    doc["branches"] = std::move(bs);
    return doc.dump(2) + "\n";
}

HofmanScenario canonical_scenario(int valley_count) {
    HofmanScenario sc;
    sc.home_valley = 0;
    if (valley_count == 4) {
        // A,B,B,D and A,C,C,D at weight 1/2 each
        sc.linkup_valley = 3;
        sc.branches = {{{1}, {2}, Rational(1, 2)}, {{2}, {2}, Rational(1, 2)}};
    } else if (valley_count == 3) {
        // no separate link-up valley: A,B,B and A,C,C
        sc.linkup_valley = 0;
        sc.branches = {{{1}, {2}, Rational(1, 2)}, {{2}, {2}, Rational(1, 2)}};
    } else {
        throw std::invalid_argument("canonical scenario defined for 3 or 4 valleys");
    }
    return sc;
}

std::string propagation_report_to_json(const PropagationReport& r) {
    json doc;
    doc["arc"] = json::array({r.arc.i, r.arc.s, r.arc.j});
    doc["target_stage"] = r.target_stage;
    doc["reached_stage"] = r.reached_stage;
    doc["blocked"] = r.blocked;
    doc["deficit"] = r.deficit.str();
    doc["reason"] = r.reason;
    return doc.dump(2) + "\n";
}

std::string propagation_report_to_text(const PropagationReport& r) {
    std::ostringstream os;
    os << "arc (" << r.arc.i << "," << r.arc.s << "," << r.arc.j << ") target stage "
       << r.target_stage << "\n";
    os << "reached stage: " << r.reached_stage << "\n";
    os << "blocked: " << (r.blocked ? "yes" : "no") << "\n";
    if (r.blocked) os << "deficit: " << r.deficit.str() << "\n";
    os << "reason: " << r.reason << "\n";
    return os.str();
}

}  // namespace stagedtsp
