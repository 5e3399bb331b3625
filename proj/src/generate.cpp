#include "parataur/generate.hpp"

#include <algorithm>

namespace parataur {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// polarity: +1 upper-only, -1 lower-only, 0 unrestricted
GuardAtom random_atom(std::mt19937_64& rng, const Pta& pta, const std::vector<int>& polarity,
                      const RandomPtaOptions& o, bool upper_only) {
    GuardAtom a;
    a.clock = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pta.clocks.size()) - 1));
    const bool upper = upper_only || chance(rng, 0.5);
    const bool strict = !o.closed_only && chance(rng, 0.3);
    a.op = upper ? (strict ? RelOp::Less : RelOp::LessEq) : (strict ? RelOp::Greater : RelOp::GreaterEq);
    for (std::size_t p = 0; p < pta.params.size(); ++p) {
        if (!chance(rng, 0.4)) continue;
        if (polarity[p] != 0 && (polarity[p] > 0) != upper) continue;
        a.params.push_back(p);
    }
    a.constant = uniform(rng, a.params.empty() ? 0 : -1, 2);
    return a;
}

}  // namespace

Pta random_pta(std::mt19937_64& rng, const RandomPtaOptions& o) {
    Pta pta;
    pta.name = "random";
    const int h = uniform(rng, 1, o.max_clocks);
    const int m = uniform(rng, 0, o.max_params);
    for (int i = 0; i < h; ++i) pta.clocks.push_back(std::string(1, static_cast<char>('x' + i)));
    for (int i = 0; i < m; ++i) pta.params.push_back("p" + std::to_string(i + 1));

    std::vector<int> polarity(static_cast<std::size_t>(m), 0);
    if (o.lu_only) {
        for (auto& p : polarity) p = chance(rng, 0.5) ? 1 : -1;
    }
    if (o.bounded && m > 0) {
        std::vector<Interval> bounds;
        for (int i = 0; i < m; ++i) {
            Interval iv;
            iv.inf = uniform(rng, 0, o.max_bound);
            iv.sup = uniform(rng, static_cast<int>(iv.inf), o.max_bound);
            if (!o.closed_bounds && iv.sup > iv.inf) {
                iv.inf_open = chance(rng, 0.3);
                iv.sup_open = chance(rng, 0.3);
            }
            bounds.push_back(iv);
        }
        pta.bounds = bounds;
    }

    const int n = uniform(rng, 1, o.max_locations);
    for (int i = 0; i < n; ++i) {
        Location loc{"l" + std::to_string(i), {}};
        if (i > 0 && chance(rng, o.invariant_probability)) {
            loc.invariant.push_back(random_atom(rng, pta, polarity, o, true));
        }
        pta.locations.push_back(std::move(loc));
    }
    pta.init = 0;

    const int e = uniform(rng, 1, o.max_edges);
    for (int i = 0; i < e; ++i) {
        Edge edge;
        edge.source = static_cast<std::size_t>(uniform(rng, 0, n - 1));
        edge.target = static_cast<std::size_t>(uniform(rng, 0, n - 1));
        edge.action = "a" + std::to_string(i);
        const int atoms = uniform(rng, 0, o.max_atoms);
        for (int k = 0; k < atoms; ++k) edge.guard.push_back(random_atom(rng, pta, polarity, o, false));
        for (std::size_t c = 0; c < pta.clocks.size(); ++c) {
            if (chance(rng, o.reset_probability)) edge.resets.push_back(c);
        }
        pta.edges.push_back(std::move(edge));
    }
    return pta;
}

}  // namespace parataur
