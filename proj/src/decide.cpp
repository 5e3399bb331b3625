#include "parataur/decide.hpp"

#include "parataur/error.hpp"
#include "parataur/regions.hpp"

#include <algorithm>
#include <functional>

namespace parataur {

std::string_view to_string(Property p) {
    switch (p) {
        case Property::EF: return "EF";
        case Property::EFU: return "EFU";
        case Property::EC: return "EC";
        case Property::EG: return "EG";
        case Property::ED: return "ED";
        case Property::IP: return "IP";
    }
    return "?";
}

Property parse_property(std::string_view text) {
    for (auto p : {Property::EF, Property::EFU, Property::EC, Property::EG, Property::ED, Property::IP}) {
        if (to_string(p) == text) return p;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown property '" + std::string(text) + "'");
}

std::string_view to_string(Answer a) {
    switch (a) {
        case Answer::Empty: return "empty";
        case Answer::NonEmpty: return "nonempty";
        case Answer::Unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(IpStatus s) {
    switch (s) {
        case IpStatus::ConfirmedSyntactic: return "ConfirmedSyntactic";
        case IpStatus::ConfirmedComplete: return "ConfirmedComplete";
        case IpStatus::ConfirmedUpToBudget: return "ConfirmedUpToBudget";
        case IpStatus::Refuted: return "Refuted";
    }
    return "?";
}

std::vector<ParamValuation> integer_valuations(const Pta& pta, std::size_t cap) {
    if (!pta.is_bounded()) throw Error(ErrorKind::Unbounded, "integer enumeration needs parameter bounds");
    const std::size_t m = pta.params.size();
    std::vector<std::int64_t> lo(m), hi(m);
    std::size_t total = 1;
    for (std::size_t p = 0; p < m; ++p) {
        const auto& b = (*pta.bounds)[p];
        lo[p] = b.inf + (b.inf_open ? 1 : 0);
        hi[p] = b.sup - (b.sup_open ? 1 : 0);
        if (lo[p] > hi[p]) return {};
        const auto width = static_cast<std::size_t>(hi[p] - lo[p] + 1);
        if (total > cap / width) {
            throw Error(ErrorKind::EnumerationCap, "more than " + std::to_string(cap) + " integer valuations");
        }
        total *= width;
    }
    if (total > cap) throw Error(ErrorKind::EnumerationCap, "more than " + std::to_string(cap) + " integer valuations");
    std::vector<ParamValuation> out;
    out.reserve(total);
    std::vector<std::int64_t> cur = lo;
    for (std::size_t n = 0; n < total; ++n) {
        ParamValuation v(m);
        for (std::size_t p = 0; p < m; ++p) v[p] = cur[p];
        out.push_back(std::move(v));
        // odometer with the last parameter fastest, for lexicographic order
        for (std::size_t p = m; p-- > 0;) {
            if (cur[p] < hi[p]) {
                ++cur[p];
                break;
            }
            cur[p] = lo[p];
        }
    }
    return out;
}

std::vector<ParamValuation> ef_synth_int(const Pta& pta, const std::vector<std::size_t>& targets,
                                         const Budget& budget) {
    std::vector<ParamValuation> out;
    for (auto& v : integer_valuations(pta, budget.max_valuations)) {
        if (ta_reach(instantiate(pta, v), targets).reachable) out.push_back(std::move(v));
    }
    return out;
}

namespace {

bool lu_extreme_applies(const Pta& pta, const Classification& c) {
    return c.is_lu() && (!pta.bounds || c.bounds_all_closed);
}

void require_closed_bounded_lu(const Pta& pta, const Classification& c, std::string_view what) {
    if (!c.is_lu()) throw Error(ErrorKind::NotLU, std::string(what) + " needs an L/U-PTA");
    if (!pta.is_bounded()) throw Error(ErrorKind::Unbounded, std::string(what) + " needs parameter bounds");
    if (!c.bounds_all_closed) throw Error(ErrorKind::OpenBounds, std::string(what) + " needs closed parameter bounds");
}

// The extreme valuation with every infinite upper-bound parameter replaced
// by a finite value large enough for `check` to succeed.
std::optional<ParamValuation> finite_extreme(const Pta& pta, ExtremeMode mode,
                                             const std::function<bool(const ParamValuation&)>& check) {
    const auto ext = extreme_valuation(pta, mode);
    const bool infinite = std::any_of(ext.begin(), ext.end(), [](const auto& v) { return !v; });
    ParamValuation v(ext.size());
    if (!infinite) {
        for (std::size_t p = 0; p < ext.size(); ++p) v[p] = *ext[p];
        return v;
    }
    std::int64_t big = 1;
    for (const auto& l : pta.locations)
        for (const auto& a : l.invariant) big = std::max(big, std::abs(a.constant) + 1);
    for (const auto& e : pta.edges)
        for (const auto& a : e.guard) big = std::max(big, std::abs(a.constant) + 1);
    for (int round = 0; round < 40; ++round, big *= 2) {
        for (std::size_t p = 0; p < ext.size(); ++p) v[p] = ext[p] ? *ext[p] : Rational(big);
        if (check(v)) return v;
    }
    return std::nullopt;
}

Verdict sampled_verdict(Property prop, const PolyUnion& valuations, const std::string& method,
                        const std::function<std::optional<std::vector<std::size_t>>(const ParamValuation&)>& verify) {
    Verdict out{prop, Answer::Unknown, std::nullopt, method, false};
    for (const auto& d : valuations.disjuncts) {
        auto v = sample_point(d);
        if (!v) continue;
        if (auto path = verify(*v)) {
            out.answer = Answer::NonEmpty;
            out.witness = Witness{std::move(*v), std::move(*path)};
            return out;
        }
    }
    return out;
}

std::optional<std::vector<std::size_t>> reach_path(const Pta& pta, const std::vector<std::size_t>& targets,
                                                   const ParamValuation& v) {
    auto r = ta_reach(instantiate(pta, v), targets);
    if (!r.reachable) return std::nullopt;
    return r.path;
}

}  // namespace

Verdict ef_emptiness(const Pta& pta, const std::vector<std::size_t>& targets, const EfOptions& options) {
    const auto c = classify(pta);

    if (lu_extreme_applies(pta, c)) {
        Verdict out{Property::EF, Answer::Empty, std::nullopt, "lu-extreme", false};
        const Ta ta = instantiate_extreme(pta, ExtremeMode::MinLowerMaxUpper);
        if (!ta_reach(ta, targets).reachable) return out;
        const auto v = finite_extreme(pta, ExtremeMode::MinLowerMaxUpper,
                                      [&](const ParamValuation& w) { return reach_path(pta, targets, w).has_value(); });
        out.answer = Answer::NonEmpty;
        if (v) out.witness = Witness{*v, *reach_path(pta, targets, *v)};
        return out;
    }

    if (pta.is_bounded() && ((c.ip_sufficient && c.bounds_all_closed) || options.assert_ip)) {
        Verdict out{Property::EF, Answer::Empty, std::nullopt, "ip-integer", false};
        for (auto& v : integer_valuations(pta, options.budget.max_valuations)) {
            if (auto path = reach_path(pta, targets, v)) {
                out.answer = Answer::NonEmpty;
                out.witness = Witness{std::move(v), std::move(*path)};
                return out;
            }
        }
        return out;
    }

    const SymbolicModel model(pta);
    auto verify = [&](const ParamValuation& v) { return reach_path(pta, targets, v); };
    // The first target state usually settles it; the full projection is the fallback.
    ExploreOptions first;
    first.budget = options.budget;
    first.stop_at = targets;
    const auto g = explore(model, first);
    if (g.status == ExploreStatus::Complete) {
        return Verdict{Property::EF, Answer::Empty, std::nullopt, "symbolic-semi", false};
    }
    if (g.status == ExploreStatus::Stopped) {
        PolyUnion hit;
        hit.add(project_params(g.states.back().constraint));
        auto out = sampled_verdict(Property::EF, hit, "symbolic-semi", verify);
        if (out.answer == Answer::NonEmpty) return out;
    } else {
        return Verdict{Property::EF, Answer::Unknown, std::nullopt, "symbolic-semi", true};
    }

    const auto proj = reach_project(model, targets, options.budget);
    const bool complete = proj.status == ExploreStatus::Complete;
    if (proj.valuations.empty()) {
        return Verdict{Property::EF, complete ? Answer::Empty : Answer::Unknown, std::nullopt, "symbolic-semi", !complete};
    }
    auto out = sampled_verdict(Property::EF, proj.valuations, "symbolic-semi", verify);
    out.budget_hit = !complete;
    return out;
}

Verdict ef_universality(const Pta& pta, const std::vector<std::size_t>& targets) {
    const auto c = classify(pta);
    if (!c.is_lu()) throw Error(ErrorKind::NotLU, "EF-universality needs an L/U-PTA");
    const Ta ta = instantiate_extreme(pta, ExtremeMode::MaxLowerMinUpper);
    const auto ext = extreme_valuation(pta, ExtremeMode::MaxLowerMinUpper);
    ParamValuation v;
    for (const auto& x : ext) v.push_back(*x);
    const auto r = ta_reach(ta, targets);
    Verdict out{Property::EFU, r.reachable ? Answer::NonEmpty : Answer::Empty, std::nullopt, "lu-extreme", false};
    if (r.reachable) out.witness = Witness{v, r.path};
    return out;
}

Verdict ec_emptiness(const Pta& pta) {
    require_closed_bounded_lu(pta, classify(pta), "EC-emptiness");
    const Ta ta = instantiate_extreme(pta, ExtremeMode::MinLowerMaxUpper);
    Verdict out{Property::EC, Answer::Empty, std::nullopt, "lu-extreme-lasso", false};
    const auto g = build_region_graph(ta);
    if (auto lasso = find_lasso(g, std::vector<bool>(ta.locations.size(), true))) {
        ParamValuation v;
        for (const auto& x : extreme_valuation(pta, ExtremeMode::MinLowerMaxUpper)) v.push_back(*x);
        auto path = lasso->stem;
        path.insert(path.end(), lasso->cycle.begin(), lasso->cycle.end());
        out.answer = Answer::NonEmpty;
        out.witness = Witness{std::move(v), std::move(path)};
    }
    return out;
}

PolyUnion deadlock_region(const SymbolicModel& model, const SymbolicState& s) {
    PolyUnion rest;
    rest.add(s.constraint);
    const auto& pta = model.pta();
    const auto& inv = model.invariant(s.location);
    for (std::size_t e : model.outgoing(s.location)) {
        if (rest.empty()) break;
        const Edge& edge = pta.edges[e];
        const Polyhedron target_inv = unreset_invariant(model.space(), pta.locations[edge.target].invariant, edge.resets);
        const Polyhedron fire = intersect(intersect(model.guard(e), target_inv), inv);
        rest = difference(rest, intersect(time_past(fire), inv));
    }
    return rest;
}

Verdict eg_emptiness(const Pta& pta, const std::vector<std::size_t>& targets, const Budget& budget) {
    require_closed_bounded_lu(pta, classify(pta), "EG-emptiness");
    Verdict out{Property::EG, Answer::Empty, std::nullopt, "eg-two-phase", false};
    const auto within = location_mask(pta.locations.size(), targets);
    if (targets.empty() || !within[pta.init]) return out;

    const Ta ta = instantiate_extreme(pta, ExtremeMode::MinLowerMaxUpper);
    const auto g = build_region_graph(ta);
    if (auto lasso = find_lasso(g, within)) {
        ParamValuation v;
        for (const auto& x : extreme_valuation(pta, ExtremeMode::MinLowerMaxUpper)) v.push_back(*x);
        auto path = lasso->stem;
        path.insert(path.end(), lasso->cycle.begin(), lasso->cycle.end());
        out.answer = Answer::NonEmpty;
        out.witness = Witness{std::move(v), std::move(path)};
        return out;
    }

    const SymbolicModel model(pta);
    ExploreOptions opts;
    opts.budget = budget;
    opts.restrict_to = targets;
    opts.subsumption = Subsumption::None;
    const auto result = explore(model, opts);
    PolyUnion candidates;
    for (const auto& s : result.states) {
        for (const auto& d : deadlock_region(model, s).disjuncts) candidates.add(project_params(d));
    }
    auto verify = [&](const ParamValuation& v) -> std::optional<std::vector<std::size_t>> {
        const Ta inst = instantiate(pta, v);
        return find_deadlock(build_region_graph(inst), within);
    };
    auto sampled = sampled_verdict(Property::EG, candidates, "eg-two-phase", verify);
    if (sampled.answer == Answer::NonEmpty) return sampled;
    if (!result.complete()) {
        out.answer = Answer::Unknown;
        out.budget_hit = true;
    }
    return out;
}

DeadlockSynthesis ed_synth_semi(const Pta& pta, const Budget& budget) {
    const SymbolicModel model(pta);
    ExploreOptions opts;
    opts.budget = budget;
    const auto result = explore(model, opts);
    DeadlockSynthesis out;
    out.status = result.status;
    for (const auto& s : result.states) {
        for (const auto& d : deadlock_region(model, s).disjuncts) out.valuations.add(project_params(d));
    }
    return out;
}

Verdict ed_emptiness(const Pta& pta, const Budget& budget) {
    const auto synth = ed_synth_semi(pta, budget);
    const bool complete = synth.status == ExploreStatus::Complete;
    if (synth.valuations.empty()) {
        return Verdict{Property::ED, complete ? Answer::Empty : Answer::Unknown, std::nullopt, "deadlock-semi", !complete};
    }
    auto out = sampled_verdict(Property::ED, synth.valuations, "deadlock-semi",
                               [&](const ParamValuation& v) -> std::optional<std::vector<std::size_t>> {
                                   const Ta inst = instantiate(pta, v);
                                   return find_deadlock(build_region_graph(inst),
                                                        std::vector<bool>(inst.locations.size(), true));
                               });
    out.budget_hit = !complete;
    return out;
}

IpResult ip_check(const Pta& pta, const Budget& budget) {
    if (!pta.is_bounded()) throw Error(ErrorKind::Unbounded, "IP check needs parameter bounds");
    const auto c = classify(pta);
    if (c.ip_sufficient && c.bounds_all_closed) return {IpStatus::ConfirmedSyntactic, std::nullopt, {}};

    const std::optional<std::vector<Interval>> box = pta.bounds ? pta.bounds : std::vector<Interval>{};
    const SymbolicModel model(pta);
    ExploreOptions opts;
    opts.budget = budget;
    // Inclusion could hide a stored state that lacks integer points.
    opts.subsumption = Subsumption::Equality;
    const auto result = explore(model, opts);
    for (std::size_t i = 0; i < result.states.size(); ++i) {
        if (!has_integer_point(result.states[i].constraint, box)) {
            return {IpStatus::Refuted, result.states[i], path_to(result, i)};
        }
    }
    return {result.complete() ? IpStatus::ConfirmedComplete : IpStatus::ConfirmedUpToBudget, std::nullopt, {}};
}

bool confirm_witness(const Pta& pta, Property property, const std::vector<std::size_t>& targets,
                     const ParamValuation& valuation) {
    const Ta ta = instantiate(pta, valuation);
    const auto all = std::vector<bool>(ta.locations.size(), true);
    switch (property) {
        case Property::EF:
        case Property::EFU: return ta_reach(ta, targets).reachable;
        case Property::EC: return find_lasso(build_region_graph(ta), all).has_value();
        case Property::EG: {
            const auto g = build_region_graph(ta);
            const auto within = location_mask(ta.locations.size(), targets);
            return find_lasso(g, within) || find_deadlock(g, within);
        }
        case Property::ED: return find_deadlock(build_region_graph(ta), all).has_value();
        case Property::IP: return true;
    }
    return false;
}

}  // namespace parataur
