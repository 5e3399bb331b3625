#pragma once

// Decision procedures for EF, EF-universality, EC and EG on the decidable
// subclasses, budgeted semi-procedures elsewhere, and the IP membership check.

#include "parataur/model.hpp"
#include "parataur/poly.hpp"
#include "parataur/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parataur {

enum class Property { EF, EFU, EC, EG, ED, IP };
std::string_view to_string(Property p);
Property parse_property(std::string_view text);

enum class Answer { Empty, NonEmpty, Unknown };
std::string_view to_string(Answer a);

struct Witness {
    ParamValuation valuation;
    std::vector<std::size_t> path;  // edge ids
};

struct Verdict {
    Property property = Property::EF;
    Answer answer = Answer::Unknown;
    std::optional<Witness> witness;
    std::string method;
    bool budget_hit = false;
};

/// Integer valuations of the bounds box, honouring open endpoints, in
/// lexicographic order. Throws Error{Unbounded | EnumerationCap}.
std::vector<ParamValuation> integer_valuations(const Pta& pta, std::size_t cap);

/// All integer valuations in bounds whose instance reaches a target.
std::vector<ParamValuation> ef_synth_int(const Pta& pta, const std::vector<std::size_t>& targets,
                                         const Budget& budget = {});

struct EfOptions {
    Budget budget;
    bool assert_ip = false;
};

Verdict ef_emptiness(const Pta& pta, const std::vector<std::size_t>& targets, const EfOptions& options = {});

/// NonEmpty reads "universal"; Empty reads "not universal".
Verdict ef_universality(const Pta& pta, const std::vector<std::size_t>& targets);

Verdict ec_emptiness(const Pta& pta);

/// Points of s from which no outgoing edge can ever fire into its target
/// invariant, whatever the delay.
PolyUnion deadlock_region(const SymbolicModel& model, const SymbolicState& s);

Verdict eg_emptiness(const Pta& pta, const std::vector<std::size_t>& targets, const Budget& budget = {});

struct DeadlockSynthesis {
    PolyUnion valuations;  // over parameter_space()
    ExploreStatus status = ExploreStatus::Complete;
};

/// Under-approximation of the valuations admitting a deadlocked run; exact
/// when the status is Complete.
DeadlockSynthesis ed_synth_semi(const Pta& pta, const Budget& budget = {});

/// ED as a verdict on top of ed_synth_semi.
Verdict ed_emptiness(const Pta& pta, const Budget& budget = {});

enum class IpStatus { ConfirmedSyntactic, ConfirmedComplete, ConfirmedUpToBudget, Refuted };
std::string_view to_string(IpStatus s);

struct IpResult {
    IpStatus status = IpStatus::ConfirmedUpToBudget;
    std::optional<SymbolicState> refuting_state;
    std::vector<std::size_t> path;  // to the refuting state
};

IpResult ip_check(const Pta& pta, const Budget& budget = {});

/// Re-checks a witness valuation on the region graph of its instance.
bool confirm_witness(const Pta& pta, Property property, const std::vector<std::size_t>& targets,
                     const ParamValuation& valuation);

}  // namespace parataur
