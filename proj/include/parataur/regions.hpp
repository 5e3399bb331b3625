#pragma once

// Alur–Dill region graph of an integer-constant timed automaton, and the
// finite-state checks run on it.

#include "parataur/model.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace parataur {

// A clock whose integer part exceeds its maximal constant is "top"; its
// fractional part is then irrelevant and recorded as rank -1. For the other
// clocks rank 0 means integer, and ranks 1..k order the positive fractional
// parts (equal parts share a rank).
struct Region {
    std::size_t location = 0;
    std::vector<std::int64_t> ints;
    std::vector<int> ranks;

    bool is_top(std::size_t clock) const { return ranks[clock] < 0; }
    auto operator<=>(const Region&) const = default;
};

struct RegionGraph {
    std::vector<Region> regions;
    std::vector<std::int64_t> max_constant;  // per clock
    std::optional<std::size_t> initial;      // absent when 0 violates I(ℓ0)
    std::vector<std::optional<std::size_t>> delay;
    // (edge id, target region) per region
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> discrete;

    std::size_t num_delay_edges() const;
    std::size_t num_discrete_edges() const;
};

RegionGraph build_region_graph(const Ta& ta);

/// Location-membership mask helper; an empty `within` means all locations.
std::vector<bool> location_mask(std::size_t num_locations, const std::vector<std::size_t>& locations);

struct ReachResult {
    bool reachable = false;
    std::vector<std::size_t> path;  // edge ids
};

ReachResult ta_reach(const RegionGraph& g, const Ta& ta, const std::vector<std::size_t>& targets);
ReachResult ta_reach(const Ta& ta, const std::vector<std::size_t>& targets);

/// Locations with at least one reachable region.
std::vector<bool> reachable_locations(const RegionGraph& g, std::size_t num_locations);

struct Lasso {
    std::vector<std::size_t> stem;   // edge ids
    std::vector<std::size_t> cycle;  // edge ids, nonempty
};

/// A reachable cycle with a discrete edge, staying inside `within`.
std::optional<Lasso> find_lasso(const RegionGraph& g, const std::vector<bool>& within);
bool ta_lasso(const Ta& ta, const std::vector<std::size_t>& within);

/// A region reachable inside `within` from which no discrete edge can ever
/// fire, not even after delaying. Returns the discrete path to it.
std::optional<std::vector<std::size_t>> find_deadlock(const RegionGraph& g, const std::vector<bool>& within);
bool ta_deadlock(const Ta& ta);
bool ta_deadlock(const Ta& ta, const std::vector<std::size_t>& within);

/// Every maximal run visits a target location.
bool ta_af(const Ta& ta, const std::vector<std::size_t>& targets);

}  // namespace parataur
