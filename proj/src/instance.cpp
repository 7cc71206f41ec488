#include "stagedtsp/instance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace stagedtsp {

using nlohmann::json;

int Instance::valley_count() const {
    if (valley_of.empty()) return 0;
    return *std::max_element(valley_of.begin(), valley_of.end()) + 1;
}

void validate_tour(const Instance& inst, const Tour& t) {
    if ((int)t.order.size() != inst.n)
        throw std::invalid_argument("tour has wrong length");
    if (t.order.empty() || t.order[0] != inst.home)
        throw std::invalid_argument("tour must start at home");
    std::vector<char> seen(inst.n + 1, 0);
    for (int c : t.order) {
        if (c < 1 || c > inst.n) throw std::invalid_argument("tour city out of range");
        if (seen[c]) throw std::invalid_argument("tour repeats a city");
        seen[c] = 1;
    }
}

std::uint64_t tour_cost(const Instance& inst, const Tour& t) {
    validate_tour(inst, t);
    std::uint64_t total = 0;
    for (size_t i = 0; i + 1 < t.order.size(); ++i)
        total += inst.arc_cost(t.order[i], t.order[i + 1]);
    total += inst.arc_cost(t.order.back(), inst.home);
    return total;
}

Instance make_valley_instance(int v, int k, std::uint64_t intra, std::uint64_t inter,
                              int home) {
    if (v < 2) throw std::domain_error("need at least 2 valleys");
    if (k < 1) throw std::domain_error("need at least 1 city per valley");
    if (inter <= intra) throw std::domain_error("inter cost must exceed intra cost");
    const int n = v * k;
    if (n < 3) throw std::domain_error("instance must have at least 3 cities");
    if (home < 1 || home > n) throw std::domain_error("home city out of range");

    Instance inst;
    inst.n = n;
    inst.home = home;
    inst.valley_of.resize(n);
    for (int c = 0; c < n; ++c) inst.valley_of[c] = c / k;
    inst.cost.assign(n, std::vector<std::uint64_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                inst.cost[i][j] = (inst.valley_of[i] == inst.valley_of[j]) ? intra : inter;
    return inst;
}

std::uint64_t valley_lower_bound(const Instance& inst) {
    if (!inst.has_valleys())
        throw std::domain_error("instance has no valley structure");
    const int v = inst.valley_count();
    if (v < 2) throw std::domain_error("lower bound needs at least 2 valleys");

    std::uint64_t intra = 0, inter = 0;
    bool found = false;
    for (int i = 0; i < inst.n && !found; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (i != j && inst.valley_of[i] == inst.valley_of[j]) {
                intra = inst.cost[i][j];
                found = true;
                break;
            }
    found = false;
    for (int i = 0; i < inst.n && !found; ++i)
        for (int j = 0; j < inst.n; ++j)
            if (inst.valley_of[i] != inst.valley_of[j]) {
                inter = inst.cost[i][j];
                found = true;
                break;
            }
    return std::uint64_t(v) * inter + std::uint64_t(inst.n - v) * intra;
}

void validate_instance(const Instance& inst) {
    if (inst.n < 3) throw std::invalid_argument("instance needs at least 3 cities");
    if (inst.home < 1 || inst.home > inst.n)
        throw std::invalid_argument("home city out of range");
    if ((int)inst.cost.size() != inst.n)
        throw std::invalid_argument("cost matrix has wrong row count");
    for (int i = 0; i < inst.n; ++i) {
        if ((int)inst.cost[i].size() != inst.n)
            throw std::invalid_argument("cost matrix row has wrong length");
        if (inst.cost[i][i] != 0)
            throw std::invalid_argument("cost matrix diagonal must be zero");
    }
    if (inst.has_valleys()) {
        if ((int)inst.valley_of.size() != inst.n)
            throw std::invalid_argument("valley assignment has wrong length");
        const int v = inst.valley_count();
        std::vector<int> sizes(v, 0);
        for (int id : inst.valley_of) {
            if (id < 0 || id >= v) throw std::invalid_argument("valley id out of range");
            ++sizes[id];
        }
        for (int a = 0; a < v; ++a)
            if (sizes[a] == 0)
                throw std::invalid_argument("valley ids must be contiguous and nonempty");
    }
}

Instance load_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("instance parse error: ") + e.what());
    }
    Instance inst;
    try {
        inst.n = doc.at("n").get<int>();
        inst.home = doc.at("home").get<int>();
        if (doc.contains("valleys")) {
            if (inst.n < 1) throw std::invalid_argument("bad n");
            inst.valley_of.assign(inst.n, -1);
            int vid = 0;
            for (const auto& valley : doc.at("valleys")) {
                for (const auto& cj : valley) {
                    int c = cj.get<int>();
                    if (c < 1 || c > inst.n)
                        throw std::invalid_argument("valley city out of range");
                    if (inst.valley_of[c - 1] != -1)
                        throw std::invalid_argument("city listed in two valleys");
                    inst.valley_of[c - 1] = vid;
                }
                ++vid;
            }
            for (int c = 0; c < inst.n; ++c)
                if (inst.valley_of[c] == -1)
                    throw std::invalid_argument("city missing from valley partition");
        }
        const auto& cost = doc.at("cost");
        if (cost.contains("pattern")) {
            if (!inst.has_valleys())
                throw std::invalid_argument("cost pattern requires a valley partition");
            auto intra = cost.at("pattern").at("intra").get<std::uint64_t>();
            auto inter = cost.at("pattern").at("inter").get<std::uint64_t>();
            if (inter <= intra)
                throw std::invalid_argument("pattern inter cost must exceed intra cost");
            inst.cost.assign(inst.n, std::vector<std::uint64_t>(inst.n, 0));
            for (int i = 0; i < inst.n; ++i)
                for (int j = 0; j < inst.n; ++j)
                    if (i != j)
                        inst.cost[i][j] =
                            (inst.valley_of[i] == inst.valley_of[j]) ? intra : inter;
        } else if (cost.contains("matrix")) {
            inst.cost = cost.at("matrix").get<std::vector<std::vector<std::uint64_t>>>();
        } else {
            throw std::invalid_argument("cost must give a pattern or a matrix");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance document error: ") + e.what());
    }
    validate_instance(inst);
    return inst;
}

std::string save_instance(const Instance& inst) {
    json doc;
    doc["n"] = inst.n;
    doc["home"] = inst.home;
    if (inst.has_valleys()) {
        std::vector<std::vector<int>> valleys(inst.valley_count());
        for (int c = 0; c < inst.n; ++c) valleys[inst.valley_of[c]].push_back(c + 1);
        doc["valleys"] = valleys;
    }
    doc["cost"] = json{{"matrix", inst.cost}};
    return doc.dump(2) + "\n";
}

}  // namespace stagedtsp
