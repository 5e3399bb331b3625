#include "parataur/regions.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace parataur {

namespace {

void renormalize(Region& r) {
    std::set<int> used;
    for (int k : r.ranks) {
        if (k > 0) used.insert(k);
    }
    std::map<int, int> dense;
    int next = 1;
    for (int k : used) dense[k] = next++;
    for (int& k : r.ranks) {
        if (k > 0) k = dense[k];
    }
}

bool atom_holds(const Region& r, const TaAtom& a) {
    const std::size_t x = a.clock;
    if (r.is_top(x)) return a.op == RelOp::Greater || a.op == RelOp::GreaterEq;
    const std::int64_t n = r.ints[x];
    const std::int64_t c = a.constant;
    if (r.ranks[x] == 0) {
        switch (a.op) {
            case RelOp::Less: return n < c;
            case RelOp::LessEq: return n <= c;
            case RelOp::GreaterEq: return n >= c;
            case RelOp::Greater: return n > c;
        }
    }
    // value strictly inside (n, n + 1)
    return is_upper(a.op) ? n < c : n >= c;
}

bool holds(const Region& r, const std::vector<TaAtom>& atoms) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const TaAtom& a) { return atom_holds(r, a); });
}

std::optional<Region> delay_successor(const Region& r, const std::vector<std::int64_t>& max) {
    Region s = r;
    const std::size_t h = r.ints.size();
    bool any_zero = false, any_frac = false;
    int top_rank = 0;
    for (std::size_t x = 0; x < h; ++x) {
        if (r.ranks[x] == 0) any_zero = true;
        if (r.ranks[x] > 0) {
            any_frac = true;
            top_rank = std::max(top_rank, r.ranks[x]);
        }
    }
    if (any_zero) {
        for (std::size_t x = 0; x < h; ++x) {
            if (r.ranks[x] > 0) {
                s.ranks[x] = r.ranks[x] + 1;
            } else if (r.ranks[x] == 0) {
                s.ranks[x] = r.ints[x] == max[x] ? -1 : 1;
                if (s.ranks[x] < 0) s.ints[x] = max[x] + 1;
            }
        }
    } else if (any_frac) {
        for (std::size_t x = 0; x < h; ++x) {
            if (r.ranks[x] == top_rank) {
                s.ints[x] = r.ints[x] + 1;
                s.ranks[x] = 0;
            }
        }
    } else {
        return std::nullopt;
    }
    renormalize(s);
    return s;
}

Region apply_resets(const Region& r, const std::vector<std::size_t>& resets, std::size_t target) {
    Region s = r;
    s.location = target;
    for (auto x : resets) {
        s.ints[x] = 0;
        s.ranks[x] = 0;
    }
    renormalize(s);
    return s;
}

}  // namespace

std::size_t RegionGraph::num_delay_edges() const {
    return static_cast<std::size_t>(std::count_if(delay.begin(), delay.end(), [](const auto& d) { return d.has_value(); }));
}

std::size_t RegionGraph::num_discrete_edges() const {
    std::size_t n = 0;
    for (const auto& d : discrete) n += d.size();
    return n;
}

RegionGraph build_region_graph(const Ta& ta) {
    RegionGraph g;
    const std::size_t h = ta.clocks.size();
    g.max_constant.assign(h, 0);
    auto see = [&](const TaAtom& a) { g.max_constant[a.clock] = std::max(g.max_constant[a.clock], a.constant); };
    for (const auto& l : ta.locations) std::for_each(l.invariant.begin(), l.invariant.end(), see);
    for (const auto& e : ta.edges) std::for_each(e.guard.begin(), e.guard.end(), see);

    std::vector<std::vector<std::size_t>> out(ta.locations.size());
    for (std::size_t e = 0; e < ta.edges.size(); ++e) out[ta.edges[e].source].push_back(e);

    Region init{ta.init, std::vector<std::int64_t>(h, 0), std::vector<int>(h, 0)};
    if (!holds(init, ta.locations[ta.init].invariant)) return g;

    std::map<Region, std::size_t> index;
    std::deque<std::size_t> queue;
    auto intern = [&](Region r) {
        auto [it, fresh] = index.try_emplace(r, g.regions.size());
        if (fresh) {
            g.regions.push_back(std::move(r));
            g.delay.emplace_back();
            g.discrete.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };
    g.initial = intern(init);
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        const Region r = g.regions[i];
        const auto& inv = ta.locations[r.location].invariant;
        if (auto d = delay_successor(r, g.max_constant); d && holds(*d, inv)) {
            const std::size_t j = intern(std::move(*d));
            g.delay[i] = j;
        }
        for (std::size_t e : out[r.location]) {
            const TaEdge& edge = ta.edges[e];
            if (!holds(r, edge.guard)) continue;
            Region t = apply_resets(r, edge.resets, edge.target);
            if (!holds(t, ta.locations[edge.target].invariant)) continue;
            const std::size_t j = intern(std::move(t));
            g.discrete[i].emplace_back(e, j);
        }
    }
    return g;
}

std::vector<bool> location_mask(std::size_t num_locations, const std::vector<std::size_t>& locations) {
    std::vector<bool> mask(num_locations, locations.empty());
    for (auto l : locations) mask.at(l) = true;
    return mask;
}

namespace {

struct Search {
    std::vector<std::optional<std::pair<std::size_t, std::optional<std::size_t>>>> parent;
    std::vector<bool> seen;
};

// BFS over regions whose location is in `within`; parent keeps the edge id
// for discrete steps and nullopt for delays.
Search search(const RegionGraph& g, const std::vector<bool>& within) {
    Search s;
    s.parent.resize(g.regions.size());
    s.seen.assign(g.regions.size(), false);
    if (!g.initial || !within[g.regions[*g.initial].location]) return s;
    std::deque<std::size_t> q{*g.initial};
    s.seen[*g.initial] = true;
    auto visit = [&](std::size_t from, std::size_t to, std::optional<std::size_t> edge) {
        if (s.seen[to] || !within[g.regions[to].location]) return;
        s.seen[to] = true;
        s.parent[to] = std::make_pair(from, edge);
        q.push_back(to);
    };
    while (!q.empty()) {
        const std::size_t i = q.front();
        q.pop_front();
        if (g.delay[i]) visit(i, *g.delay[i], std::nullopt);
        for (auto [e, j] : g.discrete[i]) visit(i, j, e);
    }
    return s;
}

std::vector<std::size_t> edges_to(const Search& s, std::size_t region) {
    std::vector<std::size_t> path;
    while (s.parent[region]) {
        if (s.parent[region]->second) path.push_back(*s.parent[region]->second);
        region = s.parent[region]->first;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

ReachResult ta_reach(const RegionGraph& g, const Ta& ta, const std::vector<std::size_t>& targets) {
    ReachResult out;
    if (targets.empty()) return out;
    const auto target = location_mask(ta.locations.size(), targets);
    const auto s = search(g, std::vector<bool>(ta.locations.size(), true));
    for (std::size_t i = 0; i < g.regions.size(); ++i) {
        if (s.seen[i] && target[g.regions[i].location]) {
            out.reachable = true;
            out.path = edges_to(s, i);
            return out;
        }
    }
    return out;
}

ReachResult ta_reach(const Ta& ta, const std::vector<std::size_t>& targets) {
    return ta_reach(build_region_graph(ta), ta, targets);
}

std::vector<bool> reachable_locations(const RegionGraph& g, std::size_t num_locations) {
    std::vector<bool> out(num_locations, false);
    const auto s = search(g, std::vector<bool>(num_locations, true));
    for (std::size_t i = 0; i < g.regions.size(); ++i) {
        if (s.seen[i]) out[g.regions[i].location] = true;
    }
    return out;
}

std::optional<Lasso> find_lasso(const RegionGraph& g, const std::vector<bool>& within) {
    const auto s = search(g, within);
    const std::size_t n = g.regions.size();

    // Iterative Tarjan over the reachable, allowed subgraph.
    auto successors = [&](std::size_t i) {
        std::vector<std::pair<std::size_t, std::optional<std::size_t>>> out;
        if (g.delay[i] && s.seen[*g.delay[i]]) out.emplace_back(*g.delay[i], std::nullopt);
        for (auto [e, j] : g.discrete[i]) {
            if (s.seen[j]) out.emplace_back(j, e);
        }
        return out;
    };
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0, ncomp = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (!s.seen[root] || idx[root] >= 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, k] = call.back();
            const auto succ = successors(v);
            if (k < succ.size()) {
                const std::size_t w = succ[k++].first;
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
                continue;
            }
            if (low[v] == idx[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!s.seen[i]) continue;
        for (auto [e, j] : g.discrete[i]) {
            if (!s.seen[j] || comp[i] != comp[j]) continue;
            // Close the cycle: BFS inside the component from j back to i.
            Lasso lasso;
            lasso.stem = edges_to(s, i);
            std::vector<std::optional<std::pair<std::size_t, std::optional<std::size_t>>>> par(n);
            std::vector<bool> seen(n, false);
            std::deque<std::size_t> q{j};
            seen[j] = true;
            while (!q.empty() && !seen[i]) {
                const std::size_t v = q.front();
                q.pop_front();
                for (auto [w, edge] : successors(v)) {
                    if (seen[w] || comp[w] != comp[i]) continue;
                    seen[w] = true;
                    par[w] = std::make_pair(v, edge);
                    q.push_back(w);
                }
            }
            lasso.cycle.push_back(e);
            std::vector<std::size_t> back;
            for (std::size_t v = i; v != j && par[v]; v = par[v]->first) {
                if (par[v]->second) back.push_back(*par[v]->second);
            }
            std::reverse(back.begin(), back.end());
            lasso.cycle.insert(lasso.cycle.end(), back.begin(), back.end());
            return lasso;
        }
    }
    return std::nullopt;
}

bool ta_lasso(const Ta& ta, const std::vector<std::size_t>& within) {
    return find_lasso(build_region_graph(ta), location_mask(ta.locations.size(), within)).has_value();
}

std::optional<std::vector<std::size_t>> find_deadlock(const RegionGraph& g, const std::vector<bool>& within) {
    const auto s = search(g, within);
    const std::size_t n = g.regions.size();
    // live[i]: some discrete edge fires from i or from a delay-descendant.
    // Delay chains are acyclic, so memoized chain walks suffice.
    std::vector<int> live(n, -1);
    auto is_live = [&](std::size_t i) {
        std::vector<std::size_t> chain;
        std::size_t v = i;
        while (live[v] < 0) {
            if (!g.discrete[v].empty()) {
                live[v] = 1;
                break;
            }
            chain.push_back(v);
            if (!g.delay[v]) {
                live[v] = 0;
                break;
            }
            v = *g.delay[v];
        }
        for (auto c : chain) live[c] = live[v];
        return live[i] == 1;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (s.seen[i] && !is_live(i)) return edges_to(s, i);
    }
    return std::nullopt;
}

bool ta_deadlock(const Ta& ta) { return ta_deadlock(ta, {}); }

bool ta_deadlock(const Ta& ta, const std::vector<std::size_t>& within) {
    return find_deadlock(build_region_graph(ta), location_mask(ta.locations.size(), within)).has_value();
}

bool ta_af(const Ta& ta, const std::vector<std::size_t>& targets) {
    std::vector<bool> avoid(ta.locations.size(), true);
    for (auto t : targets) avoid.at(t) = false;
    const auto g = build_region_graph(ta);
    if (!g.initial) return true;
    return !find_lasso(g, avoid) && !find_deadlock(g, avoid);
}

}  // namespace parataur
