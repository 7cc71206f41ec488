#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stagedtsp/exact_solver.hpp"
#include "stagedtsp/hofman.hpp"
#include "stagedtsp/instance.hpp"
#include "stagedtsp/staged_model.hpp"
#include "stagedtsp/version.hpp"

namespace {

using namespace stagedtsp;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;     // usage or data error
constexpr int kExitRefuted = 2;   // infeasible point / blocked audit / exceeded span

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

void emit(const std::string& out_path, const std::string& data) {
    if (out_path.empty())
        std::cout << data;
    else
        write_file(out_path, data);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::string hash_hex(const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(data));
    return buf;
}

// report JSON plus provenance (tool version, instance hash)
std::string stamp(const std::string& report_json, const std::string& instance_text) {
    auto doc = nlohmann::json::parse(report_json);
    doc["tool_version"] = kToolVersion;
    doc["instance_hash"] = hash_hex(instance_text);
    return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"staged-flow TSP relaxation workbench"};
    app.require_subcommand(1);
    unsigned long long seed = 0;
    app.add_option("--seed", seed, "seed recorded for reproducibility");

    // gen-valley
    auto* gen = app.add_subcommand("gen-valley", "generate a valley instance");
    int g_v = 4, g_k = 6, g_home = 1;
    std::uint64_t g_intra = 1, g_inter = 1000;
    std::string g_out;
    gen->add_option("--valleys", g_v, "valley count")->required();
    gen->add_option("--per-valley", g_k, "cities per valley")->required();
    gen->add_option("--intra", g_intra, "in-valley arc cost")->required();
    gen->add_option("--inter", g_inter, "valley-crossing arc cost")->required();
    gen->add_option("--home", g_home, "home city (default 1)");
    gen->add_option("--out", g_out, "output path (stdout if omitted)");

    // solve-exact
    auto* solve = app.add_subcommand("solve-exact", "exact TSP oracle");
    std::string s_inst, s_algo = "held-karp";
    solve->add_option("--instance", s_inst)->required();
    solve->add_option("--algo", s_algo)->check(CLI::IsMember({"brute", "held-karp"}));

    // tour-check
    auto* tc = app.add_subcommand("tour-check", "cost and staged feasibility of a tour");
    std::string t_inst, t_tour;
    tc->add_option("--instance", t_inst)->required();
    tc->add_option("--tour", t_tour, "comma-separated city order")->required();

    // hofman
    auto* hof = app.add_subcommand("hofman", "build a superimposed fractional point");
    std::string h_inst, h_sc, h_mode = "walk", h_out;
    hof->add_option("--instance", h_inst)->required();
    hof->add_option("--scenario", h_sc)->required();
    hof->add_option("--z-mode", h_mode)->check(CLI::IsMember({"walk", "filtered"}));
    hof->add_option("--out", h_out, "output path (stdout if omitted)");

    // check
    auto* chk = app.add_subcommand("check", "feasibility audit of a flow point");
    std::string c_inst, c_point, c_report;
    chk->add_option("--instance", c_inst)->required();
    chk->add_option("--point", c_point)->required();
    chk->add_option("--report", c_report, "write JSON report here");

    // audit
    auto* aud = app.add_subcommand("audit", "flow propagation audit for one arc");
    std::string a_inst, a_point, a_arc;
    int a_target = 0;
    aud->add_option("--instance", a_inst)->required();
    aud->add_option("--point", a_point)->required();
    aud->add_option("--arc", a_arc, "i,s,j")->required();
    aud->add_option("--target", a_target)->required();

    // pigeonhole
    auto* pig = app.add_subcommand("pigeonhole", "repeat-free chain bound");
    int p_cities = 0, p_span = 0;
    pig->add_option("--cities", p_cities)->required();
    pig->add_option("--span", p_span)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Instance inst = make_valley_instance(g_v, g_k, g_intra, g_inter, g_home);
            emit(g_out, save_instance(inst));
            return kExitOk;
        }
        if (*solve) {
            Instance inst = load_instance(read_file(s_inst));
            SolveResult res = s_algo == "brute" ? brute_force_tsp(inst) : held_karp(inst);
            std::cout << "cost: " << res.cost << "\ntour:";
            for (int c : res.tour.order) std::cout << " " << c;
            std::cout << "\n";
            return kExitOk;
        }
        if (*tc) {
            Instance inst = load_instance(read_file(t_inst));
            Tour t{parse_int_list(t_tour)};
            std::uint64_t cost = tour_cost(inst, t);
            StagedModel m = build_model(inst);
            auto report = check_feasibility(tour_to_point(t, m), m);
            std::cout << "cost: " << cost << "\n" << report_to_text(report);
            return report.feasible ? kExitOk : kExitRefuted;
        }
        if (*hof) {
            Instance inst = load_instance(read_file(h_inst));
            HofmanScenario sc = load_scenario(read_file(h_sc));
            ZMode mode =
                h_mode == "walk" ? ZMode::WalkInduced : ZMode::CompatibilityFiltered;
            emit(h_out, save_point(build_hofman_point(inst, sc, mode)));
            return kExitOk;
        }
        if (*chk) {
            std::string inst_text = read_file(c_inst);
            Instance inst = load_instance(inst_text);
            FlowPoint p = load_point(read_file(c_point));
            StagedModel m = build_model(inst);
            auto report = check_feasibility(p, m);
            std::cout << report_to_text(report);
            if (!c_report.empty())
                write_file(c_report, stamp(report_to_json(report), inst_text));
            return report.feasible ? kExitOk : kExitRefuted;
        }
        if (*aud) {
            std::string inst_text = read_file(a_inst);
            Instance inst = load_instance(inst_text);
            FlowPoint p = load_point(read_file(a_point));
            StagedModel m = build_model(inst);
            auto arc_parts = parse_int_list(a_arc);
            if (arc_parts.size() != 3)
                throw std::invalid_argument("--arc wants i,s,j");
            StagedArc arc{arc_parts[0], arc_parts[1], arc_parts[2]};
            auto report = propagation_audit(p, arc, a_target, m);
            std::cout << propagation_report_to_text(report);
            std::cout << stamp(propagation_report_to_json(report), inst_text);
            return report.blocked ? kExitRefuted : kExitOk;
        }
        if (*pig) {
            std::set<int> cities;
            for (int c = 1; c <= p_cities; ++c) cities.insert(c);
            int chain = max_repeat_free_chain(StagedArc{1, 0, 2}, cities);
            std::cout << "max repeat-free chain: " << chain << " arcs\n";
            if (p_span > chain) {
                std::cout << "span " << p_span << " exceeds the bound: some city must be"
                          << " visited more than once\n";
                return kExitRefuted;
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
