#include "doctest.h"
#include "support.hpp"

#include "parataur/error.hpp"
#include "parataur/generate.hpp"
#include "parataur/regions.hpp"
#include "parataur/symbolic.hpp"

#include <random>

using namespace parataur;
using testing_support::fixture;
using testing_support::model;
using testing_support::poly;

namespace {

SymbolicModel one_location(const std::string& invariant) {
    return SymbolicModel(model(R"({"clocks":["x","y"],"parameters":[{"name":"p"}],
        "locations":[{"name":"l0","invariant":[)" + invariant + R"(]}],"init":"l0"})"));
}

bool union_included(const PolyUnion& a, const PolyUnion& b) {
    for (const auto& d : a.disjuncts) {
        PolyUnion rest;
        rest.add(d);
        for (const auto& e : b.disjuncts) rest = difference(rest, e);
        if (!rest.empty()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("initial state") {
    const auto plain = one_location("");
    CHECK(same_set(initial_state(plain).constraint, poly(plain.space(), {"x = y", "x >= 0"})));

    const auto bounded_above = one_location(R"("x <= p")");
    CHECK(same_set(initial_state(bounded_above).constraint, poly(bounded_above.space(), {"x = y", "x >= 0", "x <= p"})));

    // ({0} ∧ x >= 1) is already empty, so the formula yields no initial state.
    const auto lower = one_location(R"("x >= 1")");
    try {
        initial_state(lower);
        FAIL("expected EmptyInitial");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyInitial);
    }
}

TEST_CASE("succ") {
    const SymbolicModel loop(model(R"({"clocks":["x","y"],"parameters":[{"name":"p"}],
        "locations":[{"name":"l0"}],"init":"l0",
        "edges":[{"from":"l0","to":"l0","guard":["x = 1","y <= p"],"resets":["x"]}]})"));
    const auto s0 = initial_state(loop);
    const auto s1 = succ(loop, s0, 0);
    REQUIRE(s1);
    CHECK(same_set(s1->constraint, poly(loop.space(), {"y - x = 1", "x >= 0", "p >= 1"})));

    const SymbolicModel dead(model(R"({"clocks":["x"],"parameters":[],
        "locations":[{"name":"a","invariant":["x <= 1"]},{"name":"b"}],"init":"a",
        "edges":[{"from":"a","to":"b","guard":["x >= 2"]}]})"));
    CHECK_FALSE(succ(dead, initial_state(dead), 0));

    const SymbolicModel free(model(R"({"clocks":["x","y"],"parameters":[{"name":"p"}],
        "locations":[{"name":"a"},{"name":"b"}],"init":"a","edges":[{"from":"a","to":"b"}]})"));
    const auto t0 = initial_state(free);
    const auto t1 = succ(free, t0, 0);
    REQUIRE(t1);
    CHECK(same_set(t1->constraint, t0.constraint));
}

TEST_CASE("exploration") {
    SUBCASE("two-clock reset loop with p in [0,2]") {
        auto pta = fixture("reset_loop.json");
        pta.bounds = std::vector<Interval>{{0, 2}};
        const auto r = explore(SymbolicModel(pta));
        CHECK(r.complete());
        CHECK(r.states.size() == 3);
        CHECK(r.diagnostics.empty());
        CHECK(path_to(r, 2) == std::vector<std::size_t>{0, 0});
    }
    SUBCASE("parameterless reset loop") {
        const auto r = explore(SymbolicModel(model(R"({"clocks":["x"],"locations":[{"name":"a"}],"init":"a",
            "edges":[{"from":"a","to":"a","resets":["x"]}]})")));
        CHECK(r.complete());
        CHECK(r.states.size() == 1);
        CHECK(r.edges.size() == 1);
    }
    SUBCASE("unbounded growth hits the budget") {
        auto pta = fixture("reset_loop.json");
        pta.bounds.reset();
        ExploreOptions opts;
        opts.budget.max_states = 10;
        const auto r = explore(SymbolicModel(pta), opts);
        CHECK(r.status == ExploreStatus::BudgetExceeded);
        CHECK(r.states.size() == 10);

        opts.budget.max_states = 1000;
        opts.budget.max_depth = 4;
        const auto d = explore(SymbolicModel(pta), opts);
        CHECK(d.status == ExploreStatus::BudgetExceeded);
        CHECK(d.states.size() == 5);
    }
    SUBCASE("restriction prunes other locations") {
        const auto pta = model(R"({"clocks":["x"],"locations":[{"name":"a"},{"name":"b"}],"init":"a",
            "edges":[{"from":"a","to":"b"},{"from":"b","to":"a","resets":["x"]}]})");
        ExploreOptions opts;
        opts.restrict_to = std::vector<std::size_t>{0};
        const auto r = explore(SymbolicModel(pta), opts);
        CHECK(r.states.size() == 1);
        opts.restrict_to = std::vector<std::size_t>{1};
        CHECK(explore(SymbolicModel(pta), opts).states.empty());
    }
    SUBCASE("stop at a location") {
        const auto pta = model(R"({"clocks":["x"],"locations":[{"name":"a"},{"name":"b"},{"name":"c"}],"init":"a",
            "edges":[{"from":"a","to":"b"},{"from":"b","to":"c"},{"from":"c","to":"a","resets":["x"]}]})");
        ExploreOptions opts;
        opts.stop_at = std::vector<std::size_t>{1};
        const auto r = explore(SymbolicModel(pta), opts);
        CHECK(r.status == ExploreStatus::Stopped);
        CHECK_FALSE(r.complete());
        CHECK(r.states.back().location == 1);
        opts.stop_at = std::vector<std::size_t>{0};
        CHECK(explore(SymbolicModel(pta), opts).states.size() == 1);
    }
}

TEST_CASE("reach projection") {
    const SymbolicModel m(model(R"({"clocks":["x"],"parameters":[{"name":"p","min":0,"max":2}],
        "locations":[{"name":"l0"},{"name":"l1"},{"name":"l2"}],"init":"l0",
        "edges":[{"from":"l0","to":"l1","guard":["x = p"]}]})"));
    const auto r = reach_project(m, {1});
    CHECK(r.status == ExploreStatus::Complete);
    REQUIRE(r.valuations.disjuncts.size() == 1);
    const auto pspace = parameter_space(*m.space());
    CHECK(same_set(r.valuations.disjuncts[0], poly(pspace, {"p >= 0", "p <= 2"})));

    const auto none = reach_project(m, {2});
    CHECK(none.status == ExploreStatus::Complete);
    CHECK(none.valuations.empty());
}

TEST_CASE("symbolic states match the region graph of integer instances") {
    std::mt19937_64 rng(505);
    int complete = 0;
    for (int i = 0; i < 80; ++i) {
        const Pta pta = random_pta(rng);
        const SymbolicModel m(pta);
        ExploreOptions opts;
        opts.budget.max_states = 300;
        const auto r = explore(m, opts);
        CHECK(r.diagnostics.empty());
        if (!r.complete()) continue;
        ++complete;
        const std::vector<Interval> box = pta.bounds.value_or(std::vector<Interval>{});
        std::vector<ParamValuation> values{{}};
        for (const auto& b : box) {
            std::vector<ParamValuation> next;
            for (const auto& v : values)
                for (auto k = b.inf + (b.inf_open ? 1 : 0); k <= b.sup - (b.sup_open ? 1 : 0); ++k) {
                    auto w = v;
                    w.push_back(k);
                    next.push_back(w);
                }
            values = next;
        }
        for (const auto& v : values) {
            const auto reach = reachable_locations(build_region_graph(instantiate(pta, v)), pta.locations.size());
            std::vector<bool> symbolic(pta.locations.size(), false);
            for (const auto& s : r.states) {
                if (contains(project_params(s.constraint), v)) symbolic[s.location] = true;
            }
            // soundness and completeness of the projections
            CHECK(symbolic == reach);
        }
    }
    CHECK(complete > 40);
}

TEST_CASE("subsumption does not change the reached valuations") {
    std::mt19937_64 rng(606);
    int compared = 0;
    for (int i = 0; i < 60; ++i) {
        const Pta pta = random_pta(rng);
        const SymbolicModel m(pta);
        ExploreOptions with, without;
        with.budget.max_states = without.budget.max_states = 200;
        without.subsumption = Subsumption::None;
        without.budget.max_depth = 8;
        const auto a = explore(m, with);
        const auto b = explore(m, without);
        if (!a.complete() || !b.complete()) continue;
        ++compared;
        for (std::size_t l = 0; l < pta.locations.size(); ++l) {
            PolyUnion ua, ub;
            for (const auto& s : a.states)
                if (s.location == l) ua.add(project_params(s.constraint));
            for (const auto& s : b.states)
                if (s.location == l) ub.add(project_params(s.constraint));
            CHECK(union_included(ua, ub));
            CHECK(union_included(ub, ua));
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("pruning redundant rows keeps the same states") {
    std::mt19937_64 rng(707);
    for (int i = 0; i < 30; ++i) {
        const Pta pta = random_pta(rng);
        ExploreOptions opts;
        opts.budget.max_states = 100;
        opts.subsumption = Subsumption::Equality;
        const auto a = explore(SymbolicModel(pta, true), opts);
        const auto b = explore(SymbolicModel(pta, false), opts);
        REQUIRE(a.states.size() == b.states.size());
        for (std::size_t k = 0; k < a.states.size(); ++k) {
            CHECK(a.states[k].location == b.states[k].location);
            CHECK(same_set(a.states[k].constraint, b.states[k].constraint));
        }
    }
}
