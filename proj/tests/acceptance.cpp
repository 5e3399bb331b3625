// Acceptance runner: one PASS/FAIL line per criterion, each with its own
// runtime limit. Exit status is nonzero when any criterion fails.

#include "support.hpp"

#include "parataur/cli.hpp"
#include "parataur/decide.hpp"
#include "parataur/error.hpp"
#include "parataur/generate.hpp"
#include "parataur/mcm.hpp"
#include "parataur/regions.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace parataur;
using testing_support::fixture;
using testing_support::fixture_path;
using testing_support::model;
using testing_support::q;

namespace {

// Collects failed expectations with a short note each.
struct Checker {
    std::vector<std::string> failures;
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures.size() < 20) failures.push_back(what);
        if (!ok && failures.size() == 20) failures.push_back("...");
    }
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void(Checker&)> body;
};

bool run_criterion(const Criterion& c) {
    Checker ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        c.body(ck);
    } catch (const std::exception& e) {
        ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool timely = secs < c.limit_s;
    const bool ok = ck.failures.empty() && timely && ck.checks > 0;
    std::printf("%s  %d  %-58s %8.3f s (limit %g s, %zu checks)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                c.limit_s, ck.checks);
    for (const auto& f : ck.failures) std::printf("        - %s\n", f.c_str());
    if (!timely) std::printf("        - over the time limit\n");
    std::fflush(stdout);
    return ok;
}

std::string show(const ParamValuation& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string one_edge(const std::string& params, const std::string& guard) {
    return R"({"clocks":["x"],"parameters":[)" + params + R"(],
        "locations":[{"name":"l0"},{"name":"l1"}],"init":"l0",
        "edges":[{"from":"l0","to":"l1","guard":[)" + guard + "]}]}";
}

// ── 1 ───────────────────────────────────────────────────────────────────────

void loop_ec(Checker& ck) {
    std::ostringstream out, err;
    const int code = cli::run({"check", "--prop", "EC", fixture_path("reset_loop.json")}, out, err);
    ck.expect(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
    ck.expect(out.str().find("\"answer\": \"empty\"") != std::string::npos, "answer: " + out.str());
}

// ── 2 ───────────────────────────────────────────────────────────────────────

void ip_fixtures(Checker& ck) {
    const auto t0 = std::chrono::steady_clock::now();
    const Pta selfloop = fixture("reset_selfloop.json");
    const auto c = classify(selfloop);
    ck.expect(c.is_reset_pta, "self-loop not a reset-PTA");
    ck.expect(!c.is_lu(), "self-loop classified L/U");
    ck.expect(ip_check(selfloop).status == IpStatus::ConfirmedSyntactic, "self-loop not ConfirmedSyntactic");
    const double first = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ck.expect(first < 1.0, "self-loop fixture over 1 s");

    const auto t1 = std::chrono::steady_clock::now();
    const Pta open = fixture("open_unit.json");
    ck.expect(classify(open).is_lu(), "open fixture not L/U");
    const auto r = ip_check(open);
    ck.expect(r.status == IpStatus::Refuted, "open fixture not refuted");
    ck.expect(r.refuting_state && open.locations[r.refuting_state->location].name == "l1",
              "refuting state not at the second location");
    if (r.refuting_state) {
        ck.expect(!has_integer_point(r.refuting_state->constraint, open.bounds), "refuting zone has an integer point");
    }
    const double second = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    ck.expect(second < 1.0, "open fixture over 1 s");
}

// ── 3 ───────────────────────────────────────────────────────────────────────

void oracle_equivalence(Checker& ck) {
    std::mt19937_64 rng(20240601);
    int complete = 0, skipped = 0;
    Budget budget;
    budget.max_states = 2000;
    while (complete < 100) {
        const Pta pta = random_pta(rng);
        const SymbolicModel sm(pta);
        ExploreOptions opts;
        opts.budget = budget;
        if (!explore(sm, opts).complete()) {
            ++skipped;
            continue;
        }
        ++complete;
        const auto ints = integer_valuations(pta, budget.max_valuations);
        for (std::size_t l = 0; l < pta.locations.size(); ++l) {
            const auto proj = reach_project(sm, {l}, budget);
            std::vector<ParamValuation> from_proj;
            for (const auto& v : ints) {
                if (proj.valuations.contains(v)) from_proj.push_back(v);
            }
            const auto synth = ef_synth_int(pta, {l}, budget);
            ck.expect(from_proj == synth, "model " + std::to_string(complete) + " location " + pta.locations[l].name +
                                              ": " + std::to_string(from_proj.size()) + " vs " +
                                              std::to_string(synth.size()) + " integer valuations");
        }
    }
    std::printf("        (%d complete models, %d over budget skipped)\n", complete, skipped);
}

// ── 4 ───────────────────────────────────────────────────────────────────────

void monotonicity(Checker& ck) {
    std::mt19937_64 rng(4242);
    RandomPtaOptions opts;
    opts.lu_only = true;
    opts.bounded = false;
    for (int i = 0; i < 120; ++i) {
        const Pta pta = random_pta(rng, opts);
        const auto c = classify(pta);
        ck.expect(c.is_lu(), "generated model not L/U");
        for (int k = 0; k < 6; ++k) {
            // w relaxes v: lower-bound parameters shrink, upper-bound ones grow.
            ParamValuation v, w;
            for (std::size_t p = 0; p < pta.params.size(); ++p) {
                const Rational a = q(std::uniform_int_distribution<int>(0, 12)(rng), 3);
                const Rational d = q(std::uniform_int_distribution<int>(0, 6)(rng), 4);
                v.push_back(a + (c.is_lower(p) ? d : Rational(0)));
                w.push_back(a + (c.is_lower(p) ? Rational(0) : d));
            }
            const auto rv = reachable_locations(build_region_graph(instantiate(pta, v)), pta.locations.size());
            const auto rw = reachable_locations(build_region_graph(instantiate(pta, w)), pta.locations.size());
            for (std::size_t l = 0; l < rv.size(); ++l) {
                ck.expect(!rv[l] || rw[l], "model " + std::to_string(i) + ": " + show(v) + " reaches " +
                                               pta.locations[l].name + " but " + show(w) + " does not");
            }
        }
    }
}

// ── 5 ───────────────────────────────────────────────────────────────────────

Polyhedron fix_param(const Polyhedron& c, const Rational& a) {
    Polyhedron out = c;
    std::vector<Rational> row(c.dim());
    row.back() = 1;
    out.add(row, -a, false);
    row.back() = -1;
    out.add(row, a, false);
    return out;
}

void two_counter(Checker& ck) {
    const auto m = parse_machine(testing_support::read_file(fixture_path("inc_twice.2cm")));
    const auto sim = simulate(m, 100);
    ck.expect(sim.halted && sim.max_counter == 2, "simulator disagrees with the machine");
    const Pta pta = compile(m, EncodingVariant::Closed);
    const auto target = resolve_locations(pta, {"qprime_halt"});

    EfOptions ef;
    ef.budget.max_states = 2000;
    const auto v = ef_emptiness(pta, target, ef);
    ck.expect(v.answer == Answer::NonEmpty, "final location not reached");
    if (v.witness) ck.expect(confirm_witness(pta, Property::EF, target, v.witness->valuation), "witness rejected");

    Budget b;
    b.max_states = 2000;
    const auto proj = reach_project(SymbolicModel(pta), target, b);
    ck.expect(proj.valuations.contains(std::vector<Rational>{q(1, 2)}), "projection misses a = 1/2");
    ck.expect(!proj.valuations.contains(std::vector<Rational>{Rational(0)}), "projection contains a = 0");
    ck.expect(!proj.valuations.contains(std::vector<Rational>{Rational(1)}), "projection contains a = 1");

    // Clock equations at a = 1/2 along the simulating run.
    const SymbolicModel sm(pta);
    ExploreOptions opts;
    opts.budget.max_states = 2000;
    opts.restrict_to.emplace();
    for (std::size_t l = 0; l < pta.locations.size(); ++l) {
        if (pta.locations[l].name != "qprime_halt" && pta.locations[l].name != m.states[m.halt] + "1") {
            opts.restrict_to->push_back(l);
        }
    }
    const auto g = explore(sm, opts);
    ck.expect(g.complete(), "machine part of the encoding did not close");
    const Rational a = q(1, 2);
    auto holds_somewhere = [&](const std::string& loc, const std::vector<Rational>& point) {
        const auto l = *pta.find_location(loc);
        return std::ranges::any_of(g.states, [&](const SymbolicState& s) {
            return s.location == l && contains(fix_param(s.constraint, a), point);
        });
    };
    for (const auto& conf : sim.trace) {
        const Rational c1(static_cast<long>(conf.c1)), c2(static_cast<long>(conf.c2));
        const auto& name = m.states[conf.state];
        ck.expect(holds_somewhere(name, {0, 1 - a * c1, 1 - a * c2, a}),
                  "entry equations fail at " + name + " with c1 = " + to_string(c1));
        const auto& ins = m.program[conf.state];
        if (ins.kind == Instruction::Kind::Inc && ins.counter == 1) {
            ck.expect(holds_somewhere(name + "_inc_2", {a * c2, 1 - a * c1 + a * c2, 0, a}),
                      "mid-gadget equations fail after " + name);
            ck.expect(holds_somewhere(name + "_inc_2b", {a + a * c1, 0, 1 - a * c2 + a + a * c1, a}),
                      "other-order equations fail after " + name);
        }
    }
}

// ── 6 ───────────────────────────────────────────────────────────────────────

void extreme_ef(Checker& ck) {
    auto timed = [&](const std::string& label, const std::function<void()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ck.expect(s < 1.0, label + " over 1 s");
    };
    auto confirmed = [&](const Pta& pta, Property p, const Verdict& v, const std::string& label) {
        ck.expect(v.witness.has_value(), label + ": no witness");
        if (!v.witness) return;
        // Independent re-run on the region graph of the instance.
        const Ta ta = instantiate(pta, v.witness->valuation);
        ck.expect(ta_reach(build_region_graph(ta), ta, {1}).reachable, label + ": witness " +
                                                                          show(v.witness->valuation) + " rejected");
        ck.expect(confirm_witness(pta, p, {1}, v.witness->valuation), label + ": confirm_witness disagrees");
    };
    timed("unbounded EF", [&] {
        const Pta pta = model(one_edge(R"({"name":"pu"})", R"("x >= 1", "x <= pu")"));
        const auto v = ef_emptiness(pta, {1});
        ck.expect(v.answer == Answer::NonEmpty, "unbounded EF not nonempty");
        confirmed(pta, Property::EF, v, "unbounded EF");
    });
    timed("degenerate EF", [&] {
        const Pta pta = model(one_edge(R"({"name":"pu","min":0,"max":0})", R"("x >= 1", "x <= pu")"));
        ck.expect(ef_emptiness(pta, {1}).answer == Answer::Empty, "degenerate EF not empty");
    });
    timed("universal", [&] {
        const Pta pta = model(one_edge(R"({"name":"pu","min":1,"max":2})", R"("x <= pu")"));
        const auto v = ef_universality(pta, {1});
        ck.expect(v.answer == Answer::NonEmpty, "[1,2] not universal");
        confirmed(pta, Property::EFU, v, "universal");
    });
    timed("not universal", [&] {
        const Pta pta = model(one_edge(R"({"name":"pu","min":0,"max":2})", R"("x >= 1", "x <= pu")"));
        ck.expect(ef_universality(pta, {1}).answer == Answer::Empty, "[0,2] universal");
    });
    timed("parameter-free", [&] {
        const Pta pta = model(one_edge("", R"("x >= 1")"));
        const auto v = ef_universality(pta, {1});
        ck.expect(v.answer == Answer::NonEmpty, "parameter-free reachable model not universal");
        confirmed(pta, Property::EFU, v, "parameter-free");
    });
}

// ── 7 ───────────────────────────────────────────────────────────────────────

// Integer points of the box plus five interior rationals per parameter.
std::vector<ParamValuation> oracle_valuations(const Pta& pta) {
    std::vector<std::vector<Rational>> axes;
    for (const auto& iv : *pta.bounds) {
        std::set<Rational> axis;
        for (auto k = iv.inf; k <= iv.sup; ++k) {
            if (iv.contains(Rational(k))) axis.insert(Rational(k));
        }
        for (int j = 1; j <= 5; ++j) axis.insert(Rational(iv.inf) + Rational(iv.sup - iv.inf) * q(2 * j - 1, 10));
        axes.emplace_back(axis.begin(), axis.end());
    }
    std::vector<ParamValuation> out{{}};
    for (const auto& axis : axes) {
        std::vector<ParamValuation> next;
        for (const auto& v : out) {
            for (const auto& x : axis) {
                auto w = v;
                w.push_back(x);
                next.push_back(std::move(w));
            }
        }
        out = std::move(next);
    }
    return out;
}

void eg_brute_force(Checker& ck) {
    struct Case {
        std::string name;
        Pta pta;
        std::vector<std::size_t> targets;
    };
    const std::vector<Case> cases = {
        {"reset loop", fixture("reset_loop.json"), {0}},
        {"lower bound exit", model(one_edge(R"({"name":"pl","min":0,"max":2})", R"("x >= pl")")), {0}},
        {"upper bound exit", model(one_edge(R"({"name":"pu","min":0,"max":2})", R"("x <= pu")")), {0}},
    };
    for (const auto& c : cases) {
        bool oracle = false;
        for (const auto& v : oracle_valuations(c.pta)) {
            const Ta ta = instantiate(c.pta, v);
            const auto g = build_region_graph(ta);
            const auto within = location_mask(ta.locations.size(), c.targets);
            if (find_lasso(g, within) || find_deadlock(g, within)) {
                oracle = true;
                break;
            }
        }
        const auto verdict = eg_emptiness(c.pta, c.targets);
        ck.expect(verdict.answer != Answer::Unknown, c.name + ": unknown");
        ck.expect((verdict.answer == Answer::NonEmpty) == oracle,
                  c.name + ": verdict " + std::string(to_string(verdict.answer)) + ", oracle " +
                      (oracle ? "nonempty" : "empty"));
    }
}

// ── 8 ───────────────────────────────────────────────────────────────────────

// Delays d >= 0 with x + d satisfying an atom over a fixed point.
struct DelaySet {
    Rational lo = 0, hi = 0;
    bool lo_strict = false, hi_strict = false, unbounded = true;

    void restrict(const Rational& clock, RelOp op, const Rational& rhs) {
        const Rational b = rhs - clock;
        if (is_upper(op)) {
            const bool s = is_strict(op);
            if (unbounded || b < hi || (b == hi && s)) {
                hi = b;
                hi_strict = s;
                unbounded = false;
            }
        } else {
            const bool s = is_strict(op);
            if (b > lo || (b == lo && s)) {
                lo = b;
                lo_strict = s;
            }
        }
    }
    bool empty() const { return !unbounded && (hi < lo || (hi == lo && (lo_strict || hi_strict))); }
};

struct Valued {
    const Pta& pta;
    const std::vector<Rational>& point;  // clocks then parameters

    Rational rhs(const GuardAtom& a) const {
        Rational r(a.constant);
        for (auto p : a.params) r += point[pta.num_clocks() + p];
        return r;
    }
    bool holds(const GuardAtom& a, const Rational& d, bool reset) const {
        const Rational x = reset ? Rational(0) : point[a.clock] + d;
        const Rational r = rhs(a);
        switch (a.op) {
            case RelOp::Less: return x < r;
            case RelOp::LessEq: return x <= r;
            case RelOp::GreaterEq: return x >= r;
            case RelOp::Greater: return x > r;
        }
        return false;
    }
    bool fires(const Edge& e, const Rational& d) const {
        const auto& src = pta.locations[e.source].invariant;
        const auto& dst = pta.locations[e.target].invariant;
        auto reset = [&](std::size_t c) { return std::ranges::binary_search(e.resets, c); };
        return std::ranges::all_of(src, [&](const GuardAtom& a) { return holds(a, d, false); }) &&
               std::ranges::all_of(e.guard, [&](const GuardAtom& a) { return holds(a, d, false); }) &&
               std::ranges::all_of(dst, [&](const GuardAtom& a) { return holds(a, d, reset(a.clock)); });
    }
    // Exact: some delay lets e fire.
    bool can_fire(const Edge& e) const {
        DelaySet ds;
        auto add = [&](const GuardAtom& a) { ds.restrict(point[a.clock], a.op, rhs(a)); };
        for (const auto& a : pta.locations[e.source].invariant) add(a);
        for (const auto& a : e.guard) add(a);
        for (const auto& a : pta.locations[e.target].invariant) {
            if (std::ranges::binary_search(e.resets, a.clock)) {
                if (!holds(a, 0, true)) return false;
            } else {
                add(a);
            }
        }
        return !ds.empty();
    }
};

std::vector<Rational> sample_delays(const Pta& pta, const std::vector<Rational>& point, std::size_t loc) {
    std::set<Rational> ds{Rational(0)};
    const Valued val{pta, point};
    auto boundary = [&](const GuardAtom& a) {
        const Rational b = val.rhs(a) - point[a.clock];
        for (const Rational d : std::vector<Rational>{b, b - q(1, 7), b + q(1, 7)}) {
            if (sgn(d) >= 0) ds.insert(d);
        }
    };
    for (const auto& a : pta.locations[loc].invariant) boundary(a);
    for (const auto& e : pta.edges) {
        if (e.source != loc) continue;
        for (const auto& a : e.guard) boundary(a);
        for (const auto& a : pta.locations[e.target].invariant) boundary(a);
    }
    for (int j = 1; ds.size() < 50; ++j) ds.insert(q(j, 5));
    std::vector<Rational> out(ds.begin(), ds.end());
    out.resize(50);
    return out;
}

void deadlock_soundness(Checker& ck) {
    std::mt19937_64 rng(8080);
    std::size_t dead_points = 0, live_points = 0;
    for (int i = 0; i < 80; ++i) {
        const Pta pta = random_pta(rng);
        const SymbolicModel sm(pta);
        ExploreOptions opts;
        opts.budget.max_states = 60;
        const auto g = explore(sm, opts);
        std::vector<std::size_t> picks(g.states.size());
        for (std::size_t k = 0; k < picks.size(); ++k) picks[k] = k;
        std::shuffle(picks.begin(), picks.end(), rng);
        picks.resize(std::min<std::size_t>(picks.size(), 8));
        for (auto k : picks) {
            const auto& s = g.states[k];
            const auto dead = deadlock_region(sm, s);
            PolyUnion live;
            live.add(s.constraint);
            for (const auto& d : dead.disjuncts) live = difference(live, d);
            std::vector<const Edge*> out;
            for (auto e : sm.outgoing(s.location)) out.push_back(&pta.edges[e]);

            for (const auto& d : dead.disjuncts) {
                for (const auto& p : probe_points(d)) {
                    ++dead_points;
                    const Valued val{pta, p};
                    for (const auto& delay : sample_delays(pta, p, s.location)) {
                        for (const auto* e : out) {
                            ck.expect(!val.fires(*e, delay), "model " + std::to_string(i) + ": deadlock point " +
                                                                 show(p) + " fires after " + to_string(delay));
                        }
                    }
                    for (const auto* e : out) ck.expect(!val.can_fire(*e), "deadlock point can fire (exact)");
                }
            }
            for (const auto& d : live.disjuncts) {
                for (const auto& p : probe_points(d)) {
                    ++live_points;
                    const Valued val{pta, p};
                    ck.expect(std::ranges::any_of(out, [&](const Edge* e) { return val.can_fire(*e); }),
                              "model " + std::to_string(i) + ": live point " + show(p) + " cannot fire");
                }
            }
        }
    }
    ck.expect(dead_points > 50, "too few deadlock samples");
    ck.expect(live_points > 50, "too few live samples");
    std::printf("        (%zu deadlock points, %zu live points)\n", dead_points, live_points);
}

// ── 9 ───────────────────────────────────────────────────────────────────────

void poly_suite(Checker& ck) {
    const std::string cmd = std::string(PARATAUR_POLY_SUITE) + " --minimal > /dev/null 2>&1";
    ck.expect(std::system(cmd.c_str()) == 0, "polyhedra suite failed; run it directly for details");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "reset loop: check --prop EC is empty", 1.0, loop_ec},
        {2, "IP fixtures: reset-PTA confirmed, open zone refuted", 2.0, ip_fixtures},
        {3, "integer points of projections = integer synthesis", 60.0, oracle_equivalence},
        {4, "L/U reachability is monotone", 60.0, monotonicity},
        {5, "two-counter encoding end to end", 10.0, two_counter},
        {6, "extreme-valuation EF and universality", 5.0, extreme_ef},
        {7, "EG two-phase vs region-graph brute force", 10.0, eg_brute_force},
        {8, "deadlock region soundness", 60.0, deadlock_soundness},
        {9, "polyhedra golden tests and FM cross-checks", 30.0, poly_suite},
    };
    int failed = 0;
    for (const auto& c : criteria) failed += run_criterion(c) ? 0 : 1;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
