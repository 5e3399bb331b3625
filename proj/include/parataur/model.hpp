#pragma once

// PTA data model: guards over clocks and {0,1}-weighted parameter sums,
// the JSON model format, syntactic classification and instantiation into
// integer-constant timed automata.

#include "parataur/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parataur {

enum class RelOp : std::uint8_t { Less, LessEq, GreaterEq, Greater };

std::string_view to_string(RelOp op);
inline bool is_upper(RelOp op) { return op == RelOp::Less || op == RelOp::LessEq; }
inline bool is_strict(RelOp op) { return op == RelOp::Less || op == RelOp::Greater; }

// clock op (sum of params) + constant. Parameters are sorted and unique.
struct GuardAtom {
    std::size_t clock = 0;
    RelOp op = RelOp::LessEq;
    std::vector<std::size_t> params;
    std::int64_t constant = 0;

    bool operator==(const GuardAtom&) const = default;
};

// Conjunction; empty means true.
using Guard = std::vector<GuardAtom>;

struct Location {
    std::string name;
    Guard invariant;

    bool operator==(const Location&) const = default;
};

struct Edge {
    std::size_t source = 0;
    std::size_t target = 0;
    std::string action;
    Guard guard;
    std::vector<std::size_t> resets;  // sorted, unique

    bool operator==(const Edge&) const = default;
};

// Integer-endpoint parameter domain; sup is always finite.
struct Interval {
    std::int64_t inf = 0;
    std::int64_t sup = 0;
    bool inf_open = false;
    bool sup_open = false;

    bool closed() const { return !inf_open && !sup_open; }
    bool contains(const Rational& q) const;
    bool operator==(const Interval&) const = default;
};

struct Pta {
    std::string name;
    std::vector<std::string> clocks;
    std::vector<std::string> params;
    std::optional<std::vector<Interval>> bounds;  // one per parameter when present
    std::vector<Location> locations;
    std::size_t init = 0;
    std::vector<Edge> edges;

    std::size_t num_clocks() const { return clocks.size(); }
    std::size_t num_params() const { return params.size(); }

    std::optional<std::size_t> find_location(std::string_view name) const;
    std::optional<std::size_t> find_clock(std::string_view name) const;
    std::optional<std::size_t> find_param(std::string_view name) const;

    // A parameter-free model is bounded by the empty box.
    bool is_bounded() const { return params.empty() || bounds.has_value(); }

    bool operator==(const Pta&) const = default;
};

/// Checks index ranges, identifier uniqueness, bounds sanity and atom
/// normal form. Throws Error{MalformedModel | MalformedBounds}.
void validate(const Pta& pta);

/// Parses the JSON model format (see README). "=" atoms become <=/>= pairs.
Pta parse_model(std::string_view json_text);

/// Parses a single atom string such as "y <= p + q + 1" or "x = p".
std::vector<GuardAtom> parse_atom(std::string_view text,
                                  const std::vector<std::string>& clocks,
                                  const std::vector<std::string>& params);

std::string serialize_model(const Pta& pta);
std::string atom_to_string(const GuardAtom& atom, const Pta& pta);

/// Resolves location names; throws Error{UnknownIdentifier}.
std::vector<std::size_t> resolve_locations(const Pta& pta,
                                           const std::vector<std::string>& names);

struct Classification {
    // (lower, upper); absent when a parameter occurs with both polarities.
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> lu_partition;
    bool is_closed = false;
    bool is_bounded = false;
    bool bounds_all_closed = false;
    bool is_reset_pta = false;
    bool ip_sufficient = false;

    bool is_lu() const { return lu_partition.has_value(); }
    bool is_lower(std::size_t param) const;
};

Classification classify(const Pta& pta);

// Rational valuation indexed by parameter position.
using ParamValuation = std::vector<Rational>;

struct TaAtom {
    std::size_t clock = 0;
    RelOp op = RelOp::LessEq;
    std::int64_t constant = 0;

    bool operator==(const TaAtom&) const = default;
};

struct TaLocation {
    std::string name;
    std::vector<TaAtom> invariant;
};

struct TaEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    std::string action;
    std::vector<TaAtom> guard;
    std::vector<std::size_t> resets;
};

// Parameter-free automaton with integer constants; all constants of the
// source valuation were multiplied by `scale`. Locations and edges keep the
// indices of the Pta they were instantiated from.
struct Ta {
    std::vector<std::string> clocks;
    std::vector<TaLocation> locations;
    std::size_t init = 0;
    std::vector<TaEdge> edges;
    std::int64_t scale = 1;
};

Ta instantiate(const Pta& pta, const ParamValuation& valuation);

enum class ExtremeMode { MinLowerMaxUpper, MaxLowerMinUpper };

/// The valuation used by instantiate_extreme. Upper-bound parameters of an
/// unbounded model have no finite extreme and are reported as nullopt.
std::vector<std::optional<Rational>> extreme_valuation(const Pta& pta, ExtremeMode mode);

/// Throws Error{NotLU | OpenBounds | UnboundedUniversality}.
Ta instantiate_extreme(const Pta& pta, ExtremeMode mode);

}  // namespace parataur
