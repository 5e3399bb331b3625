#include "parataur/symbolic.hpp"

#include "parataur/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace parataur {

SymbolicModel::SymbolicModel(Pta pta, bool prune_redundant)
    : pta_(std::move(pta)), space_(make_space(pta_)), domain_(space_), prune_(prune_redundant) {
    validate(pta_);
    for (const auto& loc : pta_.locations) invariants_.push_back(guard_polyhedron(space_, loc.invariant));
    outgoing_.resize(pta_.locations.size());
    for (std::size_t e = 0; e < pta_.edges.size(); ++e) {
        guards_.push_back(guard_polyhedron(space_, pta_.edges[e].guard));
        outgoing_[pta_.edges[e].source].push_back(e);
    }
    if (pta_.bounds) domain_ = bounds_polyhedron(space_, *pta_.bounds);
}

SymbolicState initial_state(const SymbolicModel& model) {
    const auto& inv = model.invariant(model.pta().init);
    Polyhedron c = intersect(intersect(zero_clocks(model.space()), inv), model.domain());
    if (is_empty(c)) {
        throw Error(ErrorKind::EmptyInitial, "initial invariant excludes the origin for every parameter valuation");
    }
    c = intersect(time_elapse(c), inv);
    if (model.prunes()) c = remove_redundant(c);
    return {model.pta().init, std::move(c)};
}

std::optional<SymbolicState> succ(const SymbolicModel& model, const SymbolicState& s, std::size_t edge) {
    const Edge& e = model.pta().edges.at(edge);
    if (e.source != s.location) throw Error(ErrorKind::InvalidArgument, "edge does not leave the state's location");
    Polyhedron c = intersect(s.constraint, model.guard(edge));
    if (is_empty(c)) return std::nullopt;
    const auto& inv = model.invariant(e.target);
    c = intersect(reset(c, e.resets), inv);
    if (is_empty(c)) return std::nullopt;
    c = intersect(time_elapse(c), inv);
    if (model.prunes()) c = remove_redundant(c);
    return SymbolicState{e.target, std::move(c)};
}

namespace {

// Pruned states are nonempty and irredundant, which allows the syntactic check.
bool subsumed_by(const Polyhedron& fresh, const Polyhedron& stored, Subsumption mode, bool pruned) {
    auto incl = [pruned](const Polyhedron& a, const Polyhedron& b) {
        return pruned ? includes_irredundant(a, b) : includes(a, b);
    };
    switch (mode) {
        case Subsumption::Inclusion: return incl(fresh, stored);
        case Subsumption::Equality: return incl(fresh, stored) && incl(stored, fresh);
        case Subsumption::None: return false;
    }
    return false;
}

// Rows of a stored state in floating point. A probe is reported outside only
// when it violates a row by a margin far above the rounding error, so the
// answer agrees with exact containment; near-boundary probes defer to it.
struct FloatRows {
    std::vector<double> coeffs;  // row-major
    std::vector<double> constants;
    std::size_t dim = 0;

    explicit FloatRows(const Polyhedron& c) : dim(c.dim()) {
        for (const auto& row : c.rows()) {
            for (const auto& k : row.coeffs) coeffs.push_back(k.get_d());
            constants.push_back(row.constant.get_d());
        }
    }

    bool clearly_outside(const std::vector<double>& point) const {
        for (std::size_t r = 0; r < constants.size(); ++r) {
            double sum = constants[r];
            double scale = std::abs(constants[r]);
            for (std::size_t v = 0; v < dim; ++v) {
                const double t = coeffs[r * dim + v] * point[v];
                sum += t;
                scale += std::abs(t);
            }
            if (sum > 1e-9 * (scale + 1)) return true;
        }
        return false;
    }
};

}  // namespace

ExplorationResult explore(const SymbolicModel& model, const ExploreOptions& options) {
    ExplorationResult out;
    std::vector<bool> allowed(model.pta().locations.size(), !options.restrict_to);
    if (options.restrict_to) {
        for (auto l : *options.restrict_to) allowed.at(l) = true;
    }
    std::vector<std::vector<std::size_t>> by_location(allowed.size());
    std::vector<FloatRows> float_rows;

    auto store = [&](SymbolicState s, std::optional<std::pair<std::size_t, std::size_t>> parent,
                     std::size_t depth) {
        if (!is_parametric_zone(s.constraint)) {
            out.diagnostics.push_back("state " + std::to_string(out.states.size()) +
                                      " is not a parametric zone: " + s.constraint.to_string());
        }
        by_location[s.location].push_back(out.states.size());
        float_rows.emplace_back(s.constraint);
        out.states.push_back(std::move(s));
        out.parents.push_back(parent);
        out.depth.push_back(depth);
        return out.states.size() - 1;
    };

    SymbolicState init = initial_state(model);
    if (!allowed[init.location]) return out;
    auto stops = [&](std::size_t loc) {
        return options.stop_at && std::ranges::find(*options.stop_at, loc) != options.stop_at->end();
    };
    const std::size_t root = store(std::move(init), std::nullopt, 0);
    if (stops(out.states[root].location)) {
        out.status = ExploreStatus::Stopped;
        return out;
    }

    const Budget& budget = options.budget;
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const std::size_t i = frontier.front();
        frontier.pop_front();
        for (std::size_t e : model.outgoing(out.states[i].location)) {
            auto next = succ(model, out.states[i], e);
            if (!next || !allowed[next->location]) continue;
            std::optional<std::size_t> covering;
            // A point of the fresh state outside a stored one rules that one out cheaply.
            std::vector<std::vector<Rational>> probes;
            std::vector<std::vector<double>> float_probes;
            if (options.subsumption != Subsumption::None && !by_location[next->location].empty()) {
                probes = probe_points(next->constraint);
                for (const auto& p : probes) {
                    auto& fp = float_probes.emplace_back();
                    for (const auto& v : p) fp.push_back(v.get_d());
                }
            }
            for (std::size_t j : by_location[next->location]) {
                if (std::ranges::any_of(float_probes, [&](const auto& p) { return float_rows[j].clearly_outside(p); })) {
                    continue;
                }
                const auto& stored = out.states[j].constraint;
                if (std::ranges::any_of(probes, [&](const auto& p) { return !contains(stored, p); })) continue;
                if (subsumed_by(next->constraint, out.states[j].constraint, options.subsumption, model.prunes())) {
                    covering = j;
                    break;
                }
            }
            if (covering) {
                out.edges.push_back({i, e, *covering});
                continue;
            }
            if (out.depth[i] >= budget.max_depth) {
                out.status = ExploreStatus::BudgetExceeded;
                continue;
            }
            if (out.states.size() >= budget.max_states) {
                out.status = ExploreStatus::BudgetExceeded;
                return out;
            }
            const std::size_t j = store(std::move(*next), std::make_pair(i, e), out.depth[i] + 1);
            out.edges.push_back({i, e, j});
            if (stops(out.states[j].location)) {
                out.status = ExploreStatus::Stopped;
                return out;
            }
            frontier.push_back(j);
        }
    }
    return out;
}

std::vector<std::size_t> path_to(const ExplorationResult& result, std::size_t state) {
    std::vector<std::size_t> path;
    while (result.parents.at(state)) {
        path.push_back(result.parents[state]->second);
        state = result.parents[state]->first;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

ReachProjection reach_project(const SymbolicModel& model, const std::vector<std::size_t>& targets,
                              const Budget& budget) {
    ExploreOptions opts;
    opts.budget = budget;
    const auto result = explore(model, opts);
    ReachProjection out;
    out.status = result.status;
    for (std::size_t i = 0; i < result.states.size(); ++i) {
        const auto& s = result.states[i];
        if (std::find(targets.begin(), targets.end(), s.location) == targets.end()) continue;
        const std::size_t before = out.valuations.disjuncts.size();
        out.valuations.add(project_params(s.constraint));
        if (out.valuations.disjuncts.size() > before) out.sources.push_back(i);
    }
    return out;
}

}  // namespace parataur
