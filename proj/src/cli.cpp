#include "parataur/cli.hpp"

#include "parataur/decide.hpp"
#include "parataur/error.hpp"
#include "parataur/generate.hpp"
#include "parataur/mcm.hpp"
#include "parataur/regions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace parataur::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string model_path;
    std::string prop = "EF";
    std::vector<std::string> targets;
    std::size_t max_states = Budget{}.max_states;
    std::size_t max_depth = Budget{}.max_depth;
    std::size_t max_valuations = Budget{}.max_valuations;
    std::string format = "json";
    bool assert_ip = false;
    std::string variant = "closed";
    bool dump = false;
    bool dump_regions = false;
    std::string valuation;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10000;

    Budget budget() const { return Budget{max_states, max_depth, max_valuations}; }
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json rational(const Rational& q) { return to_fraction(q); }

json valuation_json(const Pta& pta, const ParamValuation& v) {
    json out = json::object();
    for (std::size_t p = 0; p < pta.params.size(); ++p) out[pta.params[p]] = rational(v[p]);
    return out;
}

json names(const Pta& pta, const std::vector<std::size_t>& params) {
    json out = json::array();
    for (auto p : params) out.push_back(pta.params[p]);
    return out;
}

json classification_json(const Pta& pta) {
    const auto c = classify(pta);
    json out;
    if (c.lu_partition) {
        out["lu_partition"] = {{"lower", names(pta, c.lu_partition->first)},
                               {"upper", names(pta, c.lu_partition->second)}};
    } else {
        out["lu_partition"] = nullptr;
    }
    out["is_closed"] = c.is_closed;
    out["is_bounded"] = c.is_bounded;
    out["bounds_all_closed"] = c.bounds_all_closed;
    out["is_reset_pta"] = c.is_reset_pta;
    out["ip_sufficient"] = c.ip_sufficient;
    return out;
}

std::string constraint_string(const std::string& clock, RelOp op, const Rational& k) {
    return clock + " " + std::string(to_string(op)) + " " + to_string(k);
}

json ta_atoms(const Ta& ta, const std::vector<TaAtom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(constraint_string(ta.clocks[a.clock], a.op, Rational(a.constant)));
    return out;
}

json ta_json(const Ta& ta) {
    json out;
    out["clocks"] = ta.clocks;
    out["scale"] = ta.scale;
    out["init"] = ta.locations[ta.init].name;
    out["locations"] = json::array();
    for (const auto& l : ta.locations) out["locations"].push_back({{"name", l.name}, {"invariant", ta_atoms(ta, l.invariant)}});
    out["edges"] = json::array();
    for (const auto& e : ta.edges) {
        json resets = json::array();
        for (auto r : e.resets) resets.push_back(ta.clocks[r]);
        out["edges"].push_back({{"from", ta.locations[e.source].name},
                                {"to", ta.locations[e.target].name},
                                {"action", e.action},
                                {"guard", ta_atoms(ta, e.guard)},
                                {"resets", resets}});
    }
    return out;
}

ParamValuation parse_valuation(const Pta& pta, const std::string& text) {
    ParamValuation v(pta.params.size());
    std::vector<bool> seen(pta.params.size(), false);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Syntax, "expected name=value in '" + item + "'");
        const auto p = pta.find_param(item.substr(0, eq));
        if (!p) throw Error(ErrorKind::UnknownIdentifier, "unknown parameter '" + item.substr(0, eq) + "'");
        v[*p] = parse_rational(item.substr(eq + 1));
        if (sgn(v[*p]) < 0) throw Error(ErrorKind::InvalidArgument, "parameter values must be nonnegative");
        seen[*p] = true;
    }
    for (std::size_t p = 0; p < seen.size(); ++p) {
        if (!seen[p]) throw Error(ErrorKind::InvalidArgument, "no value for parameter '" + pta.params[p] + "'");
    }
    return v;
}

std::string_view status_name(ExploreStatus s) {
    switch (s) {
        case ExploreStatus::Complete: return "complete";
        case ExploreStatus::BudgetExceeded: return "budget_exceeded";
        case ExploreStatus::Stopped: return "stopped";
    }
    return "complete";
}

// Result of one subcommand: the JSON document and the exit code.
struct Report {
    json doc;
    int code = kExitOk;
};

Report cmd_classify(const Config& cfg) { return {classification_json(parse_model(read_input(cfg.model_path)))}; }

Report cmd_check(const Config& cfg) {
    const Pta pta = parse_model(read_input(cfg.model_path));
    const Property prop = parse_property(cfg.prop);
    const bool needs_targets = prop == Property::EF || prop == Property::EFU || prop == Property::EG;
    if (needs_targets && cfg.targets.empty()) {
        throw Error(ErrorKind::InvalidArgument, "--targets is required for " + std::string(to_string(prop)));
    }
    const auto targets = resolve_locations(pta, cfg.targets);

    if (prop == Property::IP) {
        const auto r = ip_check(pta, cfg.budget());
        json doc;
        doc["property"] = "IP";
        doc["ip_status"] = to_string(r.status);
        const bool refuted = r.status == IpStatus::Refuted;
        const bool partial = r.status == IpStatus::ConfirmedUpToBudget;
        doc["answer"] = refuted ? "empty" : partial ? "unknown" : "nonempty";
        if (r.refuting_state) {
            doc["refuting_state"] = {{"location", pta.locations[r.refuting_state->location].name},
                                     {"constraint", r.refuting_state->constraint.row_strings()}};
            doc["path"] = r.path;
        }
        return {doc, partial ? kExitUnknown : kExitOk};
    }

    Verdict v;
    switch (prop) {
        case Property::EF: v = ef_emptiness(pta, targets, EfOptions{cfg.budget(), cfg.assert_ip}); break;
        case Property::EFU: v = ef_universality(pta, targets); break;
        case Property::EC: v = ec_emptiness(pta); break;
        case Property::EG: v = eg_emptiness(pta, targets, cfg.budget()); break;
        case Property::ED: v = ed_emptiness(pta, cfg.budget()); break;
        case Property::IP: break;
    }
    if (v.witness && !confirm_witness(pta, prop, targets, v.witness->valuation)) {
        throw Error(ErrorKind::InvalidArgument, "witness failed the region-graph re-check");
    }
    json doc;
    doc["property"] = to_string(v.property);
    doc["answer"] = to_string(v.answer);
    doc["method"] = v.method;
    doc["budget_hit"] = v.budget_hit;
    if (v.witness) {
        doc["witness"] = {{"valuation", valuation_json(pta, v.witness->valuation)}, {"path", v.witness->path}};
    } else {
        doc["witness"] = nullptr;
    }
    return {doc, v.answer == Answer::Unknown ? kExitUnknown : kExitOk};
}

Report cmd_synth_int(const Config& cfg) {
    const Pta pta = parse_model(read_input(cfg.model_path));
    if (cfg.targets.empty()) throw Error(ErrorKind::InvalidArgument, "--targets is required");
    const auto vals = ef_synth_int(pta, resolve_locations(pta, cfg.targets), cfg.budget());
    json doc;
    doc["valuations"] = json::array();
    for (const auto& v : vals) doc["valuations"].push_back(valuation_json(pta, v));
    doc["count"] = vals.size();
    return {doc};
}

Report cmd_explore(const Config& cfg) {
    const Pta pta = parse_model(read_input(cfg.model_path));
    const SymbolicModel model(pta);
    ExploreOptions opts;
    opts.budget = cfg.budget();
    const auto g = explore(model, opts);
    json doc;
    doc["num_states"] = g.states.size();
    doc["num_edges"] = g.edges.size();
    doc["status"] = status_name(g.status);
    doc["diagnostics"] = g.diagnostics;
    if (cfg.dump) {
        doc["states"] = json::array();
        for (std::size_t i = 0; i < g.states.size(); ++i) {
            doc["states"].push_back({{"id", i},
                                     {"location", pta.locations[g.states[i].location].name},
                                     {"depth", g.depth[i]},
                                     {"constraint", g.states[i].constraint.row_strings()}});
        }
        doc["edges"] = json::array();
        for (const auto& e : g.edges) doc["edges"].push_back({{"from", e.from}, {"edge", e.edge}, {"to", e.to}});
    }
    return {doc, g.complete() ? kExitOk : kExitUnknown};
}

Report cmd_instantiate(const Config& cfg) {
    const Pta pta = parse_model(read_input(cfg.model_path));
    const Ta ta = instantiate(pta, parse_valuation(pta, cfg.valuation));
    json doc = ta_json(ta);
    if (cfg.dump_regions) {
        const auto g = build_region_graph(ta);
        json reach = json::array();
        const auto mask = reachable_locations(g, ta.locations.size());
        for (std::size_t l = 0; l < mask.size(); ++l) {
            if (mask[l]) reach.push_back(ta.locations[l].name);
        }
        doc["regions"] = {{"count", g.regions.size()},
                          {"delay_edges", g.num_delay_edges()},
                          {"discrete_edges", g.num_discrete_edges()},
                          {"max_constant", g.max_constant},
                          {"reachable_locations", reach}};
    }
    return {doc};
}

EncodingVariant parse_variant(const std::string& s) {
    if (s == "closed") return EncodingVariant::Closed;
    if (s == "strict") return EncodingVariant::Strict;
    throw Error(ErrorKind::InvalidArgument, "unknown variant '" + s + "'");
}

Report cmd_compile(const Config& cfg) {
    const auto m = parse_machine(read_input(cfg.model_path));
    return {json::parse(serialize_model(compile(m, parse_variant(cfg.variant))))};
}

Report cmd_simulate(const Config& cfg) {
    const auto m = parse_machine(read_input(cfg.model_path));
    const auto r = simulate(m, cfg.max_steps);
    const auto& last = r.trace.back();
    json doc;
    doc["halted"] = r.halted;
    doc["steps"] = r.steps;
    doc["max_counter"] = r.max_counter;
    doc["budget_hit"] = r.budget_hit;
    doc["final"] = {{"state", m.states[last.state]}, {"c1", last.c1}, {"c2", last.c2}};
    return {doc, r.halted ? kExitOk : kExitUnknown};
}

Report cmd_gen_random(const Config& cfg) {
    std::uint64_t seed = cfg.seed;
    if (const char* env = std::getenv("PARATAUR_SEED")) seed = std::stoull(env);
    std::mt19937_64 rng(seed);
    return {json::parse(serialize_model(random_pta(rng)))};
}

// key: value lines; nested values stay compact JSON.
void print_text(const json& doc, std::ostream& out) {
    for (const auto& [k, v] : doc.items()) {
        out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parametric timed automata: classification, decision procedures and synthesis"};
    app.require_subcommand(1);
    Config cfg;

    auto add_model = [&](CLI::App* sub, const char* what = "model JSON file, or - for stdin") {
        sub->add_option("model", cfg.model_path, what)->required();
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--max-states", cfg.max_states, "symbolic state budget")->check(CLI::PositiveNumber);
        sub->add_option("--max-depth", cfg.max_depth, "exploration depth budget")->check(CLI::PositiveNumber);
        sub->add_option("--max-valuations", cfg.max_valuations, "integer enumeration cap")
            ->check(CLI::PositiveNumber);
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    };

    auto* classify_cmd = app.add_subcommand("classify", "syntactic subclass membership");
    add_model(classify_cmd);
    add_format(classify_cmd);

    auto* check_cmd = app.add_subcommand("check", "decide a property");
    add_model(check_cmd);
    check_cmd->add_option("--prop", cfg.prop, "EF, EFU, EC, EG, ED or IP")
        ->check(CLI::IsMember({"EF", "EFU", "EC", "EG", "ED", "IP"}));
    check_cmd->add_option("--targets", cfg.targets, "target locations")->delimiter(',');
    check_cmd->add_flag("--assert-ip", cfg.assert_ip, "treat the model as integer-point complete");
    add_budget(check_cmd);
    add_format(check_cmd);

    auto* synth_cmd = app.add_subcommand("synth-int", "integer valuations reaching the targets");
    add_model(synth_cmd);
    synth_cmd->add_option("--targets", cfg.targets, "target locations")->delimiter(',');
    add_budget(synth_cmd);
    add_format(synth_cmd);

    auto* explore_cmd = app.add_subcommand("explore", "symbolic state space");
    add_model(explore_cmd);
    explore_cmd->add_flag("--dump", cfg.dump, "print every state and edge");
    add_budget(explore_cmd);
    add_format(explore_cmd);

    auto* inst_cmd = app.add_subcommand("instantiate", "substitute a valuation");
    add_model(inst_cmd);
    inst_cmd->add_option("--valuation", cfg.valuation, "p=1/2,q=1")->required();
    inst_cmd->add_flag("--dump-regions", cfg.dump_regions, "add a region graph summary");
    add_format(inst_cmd);

    auto* compile_cmd = app.add_subcommand("compile-2cm", "two-counter machine to PTA");
    add_model(compile_cmd, "machine file, or - for stdin");
    compile_cmd->add_option("--variant", cfg.variant, "closed or strict")->check(CLI::IsMember({"closed", "strict"}));
    add_format(compile_cmd);

    auto* sim_cmd = app.add_subcommand("simulate-2cm", "run a two-counter machine");
    add_model(sim_cmd, "machine file, or - for stdin");
    sim_cmd->add_option("--max-steps", cfg.max_steps, "step budget");
    add_format(sim_cmd);

    auto* gen_cmd = app.add_subcommand("gen-random", "random bounded PTA (PARATAUR_SEED overrides --seed)");
    gen_cmd->add_option("--seed", cfg.seed, "generator seed");
    add_format(gen_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        Report r;
        const auto* sub = app.get_subcommands().front();
        if (sub == classify_cmd) r = cmd_classify(cfg);
        else if (sub == check_cmd) r = cmd_check(cfg);
        else if (sub == synth_cmd) r = cmd_synth_int(cfg);
        else if (sub == explore_cmd) r = cmd_explore(cfg);
        else if (sub == inst_cmd) r = cmd_instantiate(cfg);
        else if (sub == compile_cmd) r = cmd_compile(cfg);
        else if (sub == sim_cmd) r = cmd_simulate(cfg);
        else r = cmd_gen_random(cfg);

        if (cfg.format == "text") print_text(r.doc, out);
        else out << r.doc.dump(2) << "\n";
        return r.code;
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace parataur::cli
