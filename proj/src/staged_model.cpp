#include "stagedtsp/staged_model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace stagedtsp {

using nlohmann::json;

StagedModel::StagedModel(int n, int home) : n_(n), home_(home) {
    if (n < 3) throw std::domain_error("staged model needs at least 3 cities");
    if (home < 1 || home > n) throw std::domain_error("home city out of range");
}

bool StagedModel::valid_arc(const StagedArc& a) const {
    if (a.i < 1 || a.i > n_ || a.j < 1 || a.j > n_) return false;
    if (a.s < 0 || a.s > n_ - 1) return false;
    if (a.i == a.j) return false;
    if (a.s == 0) return a.i == home_ && a.j != home_;
    if (a.s == n_ - 1) return a.j == home_ && a.i != home_;
    return a.i != home_ && a.j != home_;
}

void StagedModel::require_arc(const StagedArc& a) const {
    if (!valid_arc(a)) {
        std::ostringstream os;
        os << "arc (" << a.i << "," << a.s << "," << a.j << ") outside model with n=" << n_;
        throw std::invalid_argument(os.str());
    }
}

std::uint64_t StagedModel::stage_arc_count(int s) const {
    if (s < 0 || s > n_ - 1) throw std::out_of_range("stage out of range");
    if (s == 0 || s == n_ - 1) return std::uint64_t(n_ - 1);
    return std::uint64_t(n_ - 1) * std::uint64_t(n_ - 2);
}

std::uint64_t StagedModel::arc_count() const {
    return 2 * std::uint64_t(n_ - 1) +
           std::uint64_t(n_ - 2) * std::uint64_t(n_ - 1) * std::uint64_t(n_ - 2);
}

bool StagedModel::compatible(const StagedArc& a, const StagedArc& b) const {
    require_arc(a);
    require_arc(b);
    if (a.s >= b.s) throw std::invalid_argument("compatible() requires stage(a) < stage(b)");
    // Stage->city slots induced by the two arcs. The head of a stage-(n-1) arc
    // is home at the wrap slot n; home is exempt from injectivity.
    const std::pair<int, int> slots[4] = {
        {a.s, a.i}, {a.s + 1, a.j}, {b.s, b.i}, {b.s + 1, b.j}};
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            if (slots[p].first == slots[q].first) {
                if (slots[p].second != slots[q].second) return false;  // adjacency clash
            } else if (slots[p].second == slots[q].second &&
                       slots[p].second != home_) {
                return false;  // non-home city at two distinct stages
            }
        }
    return true;
}

StagedModel build_model(const Instance& inst) { return StagedModel(inst.n, inst.home); }

void FlowPoint::add_y(const StagedArc& a, const Rational& v) {
    auto it = y.find(a);
    if (it == y.end()) {
        if (!v.is_zero()) y.emplace(a, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) y.erase(it);
}

void FlowPoint::add_z(const StagedArc& a, const StagedArc& b, const Rational& v) {
    auto key = std::make_pair(a, b);
    auto it = z.find(key);
    if (it == z.end()) {
        if (!v.is_zero()) z.emplace(key, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) z.erase(it);
}

Rational FlowPoint::get_y(const StagedArc& a) const {
    auto it = y.find(a);
    return it == y.end() ? Rational(0) : it->second;
}

namespace {

std::vector<StagedArc> slots_to_arcs(const std::vector<int>& slots, const StagedModel& m) {
    const int n = m.n();
    std::vector<StagedArc> arcs;
    arcs.reserve(n);
    for (int s = 0; s + 1 < n; ++s) arcs.push_back({slots[s], s, slots[s + 1]});
    arcs.push_back({slots[n - 1], n - 1, m.home()});
    for (const auto& a : arcs) m.require_arc(a);
    return arcs;
}

FlowPoint lift_slots(const std::vector<int>& slots, const Rational& weight,
                     const StagedModel& m) {
    auto arcs = slots_to_arcs(slots, m);
    FlowPoint p;
    p.n = m.n();
    for (const auto& a : arcs) p.add_y(a, weight);
    for (size_t u = 0; u < arcs.size(); ++u)
        for (size_t v = u + 1; v < arcs.size(); ++v) p.add_z(arcs[u], arcs[v], weight);
    return p;
}

}  // namespace

FlowPoint tour_to_point(const Tour& t, const StagedModel& m) {
    if ((int)t.order.size() != m.n()) throw std::invalid_argument("tour/model size mismatch");
    std::vector<char> seen(m.n() + 1, 0);
    for (int c : t.order) {
        if (c < 1 || c > m.n() || seen[c]) throw std::invalid_argument("invalid tour");
        seen[c] = 1;
    }
    if (t.order[0] != m.home()) throw std::invalid_argument("tour must start at home");
    return lift_slots(t.order, Rational(1), m);
}

FlowPoint walk_to_point(const Walk& w, const StagedModel& m) {
    if ((int)w.slots.size() != m.n())
        throw std::invalid_argument("walk must have exactly n slots");
    if (w.slots[0] != m.home()) throw std::invalid_argument("walk slot 0 must be home");
    for (size_t s = 1; s < w.slots.size(); ++s) {
        if (w.slots[s] == m.home())
            throw std::invalid_argument("home may not appear at an interior slot");
        if (w.slots[s] == w.slots[s - 1])
            throw std::invalid_argument("consecutive walk slots must differ");
        if (w.slots[s] < 1 || w.slots[s] > m.n())
            throw std::invalid_argument("walk city out of range");
    }
    if (!(w.weight > Rational(0)) || w.weight > Rational(1))
        throw std::invalid_argument("walk weight must lie in (0,1]");
    return lift_slots(w.slots, w.weight, m);
}

FlowPoint superpose(const std::vector<std::pair<FlowPoint, Rational>>& parts) {
    if (parts.empty()) throw std::invalid_argument("superpose needs at least one part");
    Rational total(0);
    const int n = parts.front().first.n;
    for (const auto& [p, w] : parts) {
        if (!(w > Rational(0))) throw std::invalid_argument("superposition weights must be positive");
        if (p.n != n) throw std::invalid_argument("superpose: model size mismatch");
        total += w;
    }
    if (total != Rational(1))
        throw std::invalid_argument("superposition weights must sum to 1, got " + total.str());

    FlowPoint out;
    out.n = n;
    for (const auto& [p, w] : parts) {
        for (const auto& [a, v] : p.y) out.add_y(a, v * w);
        for (const auto& [ab, v] : p.z) out.add_z(ab.first, ab.second, v * w);
    }
    return out;
}

Rational point_cost(const FlowPoint& p, const Instance& inst) {
    if (p.n != inst.n) throw std::invalid_argument("point/instance size mismatch");
    Rational total(0);
    for (const auto& [a, v] : p.y)
        total += v * Rational((long long)inst.arc_cost(a.i, a.j));
    return total;
}

namespace {

std::string idx_json(std::initializer_list<std::pair<const char*, json>> kv) {
    json o = json::object();
    for (const auto& [k, v] : kv) o[k] = v;
    return o.dump();
}

json arc_json(const StagedArc& a) { return json::array({a.i, a.s, a.j}); }

void push(std::vector<Violation>& out, std::string family, std::string idx,
          std::vector<long long> key, Rational lhs, Rational rhs) {
    out.push_back({std::move(family), std::move(idx), std::move(key), lhs, rhs});
}

}  // namespace

ViolationReport check_feasibility(const FlowPoint& p, const StagedModel& m) {
    if (p.n != m.n()) throw std::invalid_argument("point/model size mismatch");
    const int n = m.n();
    const Rational one(1), zero(0);

    for (const auto& [a, v] : p.y) m.require_arc(a);
    for (const auto& [ab, v] : p.z) {
        m.require_arc(ab.first);
        m.require_arc(ab.second);
        if (ab.first.s >= ab.second.s)
            throw std::invalid_argument("pair variable must be ordered by stage");
    }

    std::vector<Violation> out;

    // F1: unit flow per stage.
    std::vector<Rational> stage_sum(n, zero);
    for (const auto& [a, v] : p.y) stage_sum[a.s] += v;
    for (int s = 0; s < n; ++s)
        if (stage_sum[s] != one)
            push(out, "F1", idx_json({{"stage", s}}), {s}, stage_sum[s], one);

    // Inflow/outflow per (non-home city, stage).
    std::map<std::pair<int, int>, Rational> inflow, outflow;
    for (const auto& [a, v] : p.y) {
        if (a.j != m.home()) inflow[{a.j, a.s + 1}] += v;
        if (a.i != m.home()) outflow[{a.i, a.s}] += v;
    }

    // F2: conservation at every (city, stage) the support touches.
    {
        std::map<std::pair<int, int>, char> touched;
        for (const auto& [k, v] : inflow) touched[k] = 1;
        for (const auto& [k, v] : outflow)
            if (k.second >= 1) touched[k] = 1;
        for (const auto& [k, unused] : touched) {
            auto in_it = inflow.find(k);
            auto out_it = outflow.find(k);
            Rational in = in_it == inflow.end() ? zero : in_it->second;
            Rational ot = out_it == outflow.end() ? zero : out_it->second;
            if (in != ot)
                push(out, "F2", idx_json({{"city", k.first}, {"stage", k.second}}),
                     {k.first, k.second}, in, ot);
        }
    }

    // F3: aggregate visit count of each non-home city is exactly 1.
    {
        std::vector<Rational> total_in(n + 1, zero);
        for (const auto& [k, v] : inflow) total_in[k.first] += v;
        for (int c = 1; c <= n; ++c) {
            if (c == m.home()) continue;
            if (total_in[c] != one)
                push(out, "F3", idx_json({{"city", c}}), {c}, total_in[c], one);
        }
    }

    // F4: pair flow must fully account for arc flow at every other stage.
    {
        std::map<StagedArc, std::map<int, Rational>> fwd, bwd;
        for (const auto& [ab, v] : p.z) {
            fwd[ab.first][ab.second.s] += v;
            bwd[ab.second][ab.first.s] += v;
        }
        for (const auto& [a, ya] : p.y) {
            if (!(ya > zero)) continue;
            const auto* f = fwd.count(a) ? &fwd.at(a) : nullptr;
            const auto* b = bwd.count(a) ? &bwd.at(a) : nullptr;
            for (int t = a.s + 1; t <= n - 1; ++t) {
                Rational sum = zero;
                if (f) {
                    auto it = f->find(t);
                    if (it != f->end()) sum = it->second;
                }
                if (sum != ya)
                    push(out, "F4",
                         idx_json({{"arc", arc_json(a)}, {"stage", t}, {"dir", "forward"}}),
                         {a.i, a.s, a.j, 0, t}, sum, ya);
            }
            for (int t = 0; t < a.s; ++t) {
                Rational sum = zero;
                if (b) {
                    auto it = b->find(t);
                    if (it != b->end()) sum = it->second;
                }
                if (sum != ya)
                    push(out, "F4",
                         idx_json({{"arc", arc_json(a)}, {"stage", t}, {"dir", "backward"}}),
                         {a.i, a.s, a.j, 1, t}, sum, ya);
            }
        }
    }

    // F5 / F6 / F8 over the z support.
    for (const auto& [ab, v] : p.z) {
        const auto& [a, b] = ab;
        Rational ya = p.get_y(a), yb = p.get_y(b);
        if (v > ya)
            push(out, "F5",
                 idx_json({{"a", arc_json(a)}, {"b", arc_json(b)}, {"bound", "a"}}),
                 {a.i, a.s, a.j, b.i, b.s, b.j, 0}, v, ya);
        if (v > yb)
            push(out, "F5",
                 idx_json({{"a", arc_json(a)}, {"b", arc_json(b)}, {"bound", "b"}}),
                 {a.i, a.s, a.j, b.i, b.s, b.j, 1}, v, yb);
        if (!v.is_zero() && !m.compatible(a, b))
            push(out, "F6", idx_json({{"a", arc_json(a)}, {"b", arc_json(b)}}),
                 {a.i, a.s, a.j, b.i, b.s, b.j}, v, zero);
        if (!v.is_zero() && b.s == a.s + 1 && b.i != a.j)
            push(out, "F8", idx_json({{"a", arc_json(a)}, {"b", arc_json(b)}}),
                 {a.i, a.s, a.j, b.i, b.s, b.j}, v, zero);
    }

    // F7: nonnegativity of everything stored.
    for (const auto& [a, v] : p.y)
        if (v.is_negative())
            push(out, "F7", idx_json({{"kind", "y"}, {"arc", arc_json(a)}}),
                 {0, a.i, a.s, a.j}, v, zero);
    for (const auto& [ab, v] : p.z)
        if (v.is_negative())
            push(out, "F7",
                 idx_json({{"kind", "z"}, {"a", arc_json(ab.first)}, {"b", arc_json(ab.second)}}),
                 {1, ab.first.i, ab.first.s, ab.first.j, ab.second.i, ab.second.s,
                  ab.second.j},
                 v, zero);

    std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
        if (x.family != y.family) return x.family < y.family;
        return x.key < y.key;
    });

    ViolationReport r;
    r.entries = std::move(out);
    r.feasible = r.entries.empty();
    return r;
}

std::vector<Walk> decompose_point(const FlowPoint& p, const StagedModel& m) {
    auto report = check_feasibility(p, m);
    for (const auto& e : report.entries)
        if (e.family == "F1" || e.family == "F2")
            throw std::runtime_error("decomposition failure: point is not flow-shaped (" +
                                     e.family + " violated)");

    const int n = m.n();
    auto remaining = p.y;
    const Rational zero(0);
    std::vector<Walk> walks;

    auto next_arc = [&](int from, int s) -> const StagedArc* {
        const StagedArc* best = nullptr;
        StagedArc lo{from, s, 0};
        for (auto it = remaining.lower_bound(lo); it != remaining.end(); ++it) {
            if (it->first.i != from || it->first.s != s) break;
            if (it->second > zero) return &it->first;
        }
        return best;
    };

    while (true) {
        // smallest-j positive arc at stage 0
        const StagedArc* start = next_arc(m.home(), 0);
        if (!start) break;
        std::vector<StagedArc> chain{*start};
        for (int s = 1; s < n; ++s) {
            const StagedArc* nxt = next_arc(chain.back().j, s);
            if (!nxt)
                throw std::runtime_error("decomposition failure: chain stuck at stage " +
                                         std::to_string(s));
            chain.push_back(*nxt);
        }
        Rational bottleneck = remaining.at(chain[0]);
        for (const auto& a : chain) {
            Rational v = remaining.at(a);
            if (v < bottleneck) bottleneck = v;
        }
        Walk w;
        w.weight = bottleneck;
        for (const auto& a : chain) w.slots.push_back(a.i);
        walks.push_back(std::move(w));
        for (const auto& a : chain) {
            auto it = remaining.find(a);
            it->second -= bottleneck;
            if (it->second.is_zero()) remaining.erase(it);
        }
    }
    return walks;
}

FlowPoint load_point(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("point parse error: ") + e.what());
    }
    FlowPoint p;
    try {
        p.n = doc.at("n").get<int>();
        for (const auto& e : doc.value("y", json::array())) {
            StagedArc a{e.at("i").get<int>(), e.at("s").get<int>(), e.at("j").get<int>()};
            p.add_y(a, Rational(e.at("num").get<long long>(), e.at("den").get<long long>()));
        }
        for (const auto& e : doc.value("z", json::array())) {
            const auto& aj = e.at("a");
            const auto& bj = e.at("b");
            StagedArc a{aj.at(0).get<int>(), aj.at(1).get<int>(), aj.at(2).get<int>()};
            StagedArc b{bj.at(0).get<int>(), bj.at(1).get<int>(), bj.at(2).get<int>()};
            p.add_z(a, b, Rational(e.at("num").get<long long>(), e.at("den").get<long long>()));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("point document error: ") + e.what());
    }
    return p;
}

std::string save_point(const FlowPoint& p) {
    json doc;
    doc["n"] = p.n;
    json ys = json::array();
    for (const auto& [a, v] : p.y)
        ys.push_back({{"i", a.i}, {"s", a.s}, {"j", a.j}, {"num", v.num()}, {"den", v.den()}});
    json zs = json::array();
    for (const auto& [ab, v] : p.z)
        zs.push_back({{"a", arc_json(ab.first)},
                      {"b", arc_json(ab.second)},
                      {"num", v.num()},
                      {"den", v.den()}});
    doc["y"] = std::move(ys);
    doc["z"] = std::move(zs);
    return doc.dump(2) + "\n";
}

std::string report_to_json(const ViolationReport& r) {
    json doc;
    doc["feasible"] = r.feasible;
    json vs = json::array();
    for (const auto& e : r.entries)
        vs.push_back({{"family", e.family},
                      {"indices", json::parse(e.indices_json)},
                      {"lhs", e.lhs.str()},
                      {"rhs", e.rhs.str()}});
    doc["violations"] = std::move(vs);
    return doc.dump(2) + "\n";
}

std::string report_to_text(const ViolationReport& r) {
    std::ostringstream os;
    os << "feasible: " << (r.feasible ? "yes" : "no") << ", " << r.entries.size()
       << " violations\n";
    for (const auto& e : r.entries)
        os << "  " << e.family << " " << e.indices_json << " lhs=" << e.lhs.str()
           << " rhs=" << e.rhs.str() << "\n";
    return os.str();
}

}  // namespace stagedtsp
