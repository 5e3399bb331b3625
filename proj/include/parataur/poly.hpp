#pragma once

// Exact, strictness-aware convex polyhedra over clocks and parameters in
// constraint (H-)representation. Variables are ordered clocks first, then
// parameters; every variable is implicitly nonnegative and that
// nonnegativity is materialized as a row.
//
// Every row is kept normalized: its coefficient vector is a primitive
// integer vector and at most one row exists per direction (the tighter one
// wins). Projection is Fourier–Motzkin with equality substitution.

#include "parataur/model.hpp"
#include "parataur/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parataur {

// ── Space ───────────────────────────────────────────────────────────────────

struct Space {
    std::vector<std::string> names;  // clocks first, then parameters
    std::size_t num_clocks = 0;

    std::size_t size() const { return names.size(); }
    std::size_t num_params() const { return names.size() - num_clocks; }
    std::size_t param_var(std::size_t param) const { return num_clocks + param; }

    bool operator==(const Space&) const = default;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(const std::vector<std::string>& clocks, const std::vector<std::string>& params);
SpacePtr make_space(const Pta& pta);
SpacePtr parameter_space(const Space& space);

// ── LinIneq ─────────────────────────────────────────────────────────────────
// Σ coeffs·vars + constant  (< 0 if strict, <= 0 otherwise).

struct LinIneq {
    std::vector<Rational> coeffs;
    Rational constant;
    bool strict = false;

    Rational eval(std::span<const Rational> point) const;
    bool holds(std::span<const Rational> point) const;
    LinIneq negated() const;
};

// ── Polyhedron ──────────────────────────────────────────────────────────────

namespace detail {
struct PolyAccess;
}

class Polyhedron {
public:
    /// The nonnegative orthant of `space` (the "true" constraint).
    explicit Polyhedron(SpacePtr space);

    static Polyhedron empty(SpacePtr space);

    void add(const LinIneq& row);
    void add(std::vector<Rational> coeffs, Rational constant, bool strict);

    const Space& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    std::size_t dim() const { return space_->size(); }

    /// Set when a contradiction was noticed syntactically; is_empty() is the
    /// complete test.
    bool trivially_empty() const { return infeasible_; }

    std::size_t num_rows() const { return rows_.size(); }
    std::vector<LinIneq> rows() const;

    /// Sorted, human-readable rows such as "x - p <= 0"; stable for golden tests.
    std::vector<std::string> row_strings() const;
    std::string to_string() const;

    bool operator==(const Polyhedron& other) const;

private:
    struct Bound {
        Rational constant;
        bool strict = false;
    };
    using Rows = std::map<std::vector<Rational>, Bound>;

    Polyhedron(SpacePtr space, Rows rows, bool infeasible);

    SpacePtr space_;
    Rows rows_;
    bool infeasible_ = false;

    friend struct detail::PolyAccess;
    friend bool includes_irredundant(const Polyhedron& a, const Polyhedron& b);
};

// ── PolyUnion ───────────────────────────────────────────────────────────────

struct PolyUnion {
    std::vector<Polyhedron> disjuncts;

    /// Appends p unless it is empty.
    void add(Polyhedron p);
    void add(const PolyUnion& other);
    bool empty() const { return disjuncts.empty(); }
    bool contains(std::span<const Rational> point) const;
};

// ── Constructors from model atoms ───────────────────────────────────────────

Polyhedron guard_polyhedron(const SpacePtr& space, const Guard& guard);
Polyhedron bounds_polyhedron(const SpacePtr& space, const std::vector<Interval>& bounds);
Polyhedron zero_clocks(const SpacePtr& space);

// ── Operators ───────────────────────────────────────────────────────────────

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron time_elapse(const Polyhedron& c);
Polyhedron time_past(const Polyhedron& c);
Polyhedron reset(const Polyhedron& c, std::span<const std::size_t> clocks);

/// Invariant atoms with their clock replaced by 0 when that clock is reset.
Polyhedron unreset_invariant(const SpacePtr& space, const Guard& invariant,
                             std::span<const std::size_t> resets);

/// Existentially eliminates every clock; the result lives in parameter_space().
Polyhedron project_params(const Polyhedron& c);

/// Eliminates the given variables, keeping the space (they become free,
/// apart from their nonnegativity).
Polyhedron eliminate(const Polyhedron& c, std::span<const std::size_t> vars);

bool is_empty(const Polyhedron& c);
bool contains(const Polyhedron& c, std::span<const Rational> point);

/// c \ d as a union of convex pieces (c ∧ ¬row for each row of d).
PolyUnion difference(const Polyhedron& c, const Polyhedron& d);
PolyUnion difference(const PolyUnion& c, const Polyhedron& d);

/// a ⊆ b, decided as emptiness of a ∧ ¬row for each row of b.
bool includes(const Polyhedron& a, const Polyhedron& b);
bool same_set(const Polyhedron& a, const Polyhedron& b);

/// includes() for a nonempty `a` without redundant rows. Such an `a` reaches
/// every one of its bounds, so a row of `b` that `a` bounds more loosely in
/// the same direction refutes inclusion without an emptiness test.
bool includes_irredundant(const Polyhedron& a, const Polyhedron& b);

/// Drops rows implied by the others (one emptiness test per row).
Polyhedron remove_redundant(const Polyhedron& c);

/// Rows use at most two clocks, as x ⋈ plt or x - y ⋈ plt.
bool is_parametric_zone(const Polyhedron& c);

/// Whether c contains a point integral in every coordinate. Enumerates the
/// integer parameter valuations of `bounds` and decides the clock part with
/// an integer-tightened difference-bound matrix.
/// Throws Error{NotAZone} for non-zone rows and Error{Unbounded} when the
/// space has parameters but no bounds are given.
bool has_integer_point(const Polyhedron& c, const std::optional<std::vector<Interval>>& bounds);

/// A point of c chosen coordinate by coordinate as the midpoint of the
/// feasible interval (lower + 1 when unbounded above); nullopt when empty.
std::optional<std::vector<Rational>> sample_point(const Polyhedron& c);

/// sample_point() plus a few points pushed toward the bounds of each
/// coordinate in turn; cheap witnesses against inclusion. Empty when c is.
std::vector<std::vector<Rational>> probe_points(const Polyhedron& c);

}  // namespace parataur
