#pragma once

// Symbolic semantics of a PTA: parametric-zone states, the Succ operator
// and breadth-first exploration with subsumption.

#include "parataur/model.hpp"
#include "parataur/poly.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parataur {

struct SymbolicState {
    std::size_t location = 0;
    Polyhedron constraint;
};

// Shared, precomputed polyhedral view of a Pta.
class SymbolicModel {
public:
    /// With `prune_redundant`, every computed state drops rows implied by
    /// the others; otherwise only same-direction dominance applies.
    explicit SymbolicModel(Pta pta, bool prune_redundant = true);

    bool prunes() const { return prune_; }

    const Pta& pta() const { return pta_; }
    const SpacePtr& space() const { return space_; }
    const Polyhedron& invariant(std::size_t loc) const { return invariants_[loc]; }
    const Polyhedron& guard(std::size_t edge) const { return guards_[edge]; }
    const std::vector<std::size_t>& outgoing(std::size_t loc) const { return outgoing_[loc]; }

    /// Bounds box conjoined with nonnegativity, or the plain orthant.
    const Polyhedron& domain() const { return domain_; }

private:
    Pta pta_;
    SpacePtr space_;
    std::vector<Polyhedron> invariants_;
    std::vector<Polyhedron> guards_;
    std::vector<std::vector<std::size_t>> outgoing_;
    Polyhedron domain_;
    bool prune_ = true;
};

struct Budget {
    std::size_t max_states = 2000;
    std::size_t max_depth = 1000;
    std::size_t max_valuations = 100000;
};

enum class Subsumption { Inclusion, Equality, None };

struct ExploreOptions {
    Budget budget;
    std::optional<std::vector<std::size_t>> restrict_to;
    Subsumption subsumption = Subsumption::Inclusion;
    // Stop as soon as a state at one of these locations is stored.
    std::optional<std::vector<std::size_t>> stop_at;
};

// Stopped: a stop_at location was reached; that state is the last one stored.
enum class ExploreStatus { Complete, BudgetExceeded, Stopped };

struct SymbolicEdge {
    std::size_t from = 0;
    std::size_t edge = 0;
    std::size_t to = 0;
};

struct ExplorationResult {
    std::vector<SymbolicState> states;
    std::vector<SymbolicEdge> edges;
    ExploreStatus status = ExploreStatus::Complete;
    // (predecessor state, edge id) for every state but the root.
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parents;
    std::vector<std::size_t> depth;
    // Zone-shape violations and similar notes; empty in the normal case.
    std::vector<std::string> diagnostics;

    bool complete() const { return status == ExploreStatus::Complete; }
};

/// (ℓ0, ({0} ∧ I(ℓ0))↗ ∧ I(ℓ0)), with the bounds box conjoined.
/// Throws Error{EmptyInitial}.
SymbolicState initial_state(const SymbolicModel& model);

/// elapse(reset(C ∧ g, R) ∧ I(ℓ′)) ∧ I(ℓ′); nullopt when empty.
std::optional<SymbolicState> succ(const SymbolicModel& model, const SymbolicState& s, std::size_t edge);

ExplorationResult explore(const SymbolicModel& model, const ExploreOptions& options = {});

/// Edge ids from the initial state to `state`.
std::vector<std::size_t> path_to(const ExplorationResult& result, std::size_t state);

struct ReachProjection {
    PolyUnion valuations;  // over parameter_space()
    ExploreStatus status = ExploreStatus::Complete;
    // one stored target state per disjunct, same order
    std::vector<std::size_t> sources;
};

ReachProjection reach_project(const SymbolicModel& model, const std::vector<std::size_t>& targets,
                              const Budget& budget = {});

}  // namespace parataur
