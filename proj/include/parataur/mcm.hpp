#pragma once

// Minsky two-counter machines: text format, a bounded simulator, and the
// compilation into a PTA whose target is reachable iff the machine halts.

#include "parataur/model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace parataur {

struct Instruction {
    enum class Kind { Inc, DecOrZero, Halt };
    Kind kind = Kind::Halt;
    int counter = 1;           // 1 or 2
    std::size_t next = 0;      // Inc target, or DecOrZero target when positive
    std::size_t if_zero = 0;   // DecOrZero target when zero
};

struct TwoCounterMachine {
    std::vector<std::string> states;
    std::vector<Instruction> program;  // one per state
    std::size_t init = 0;
    std::size_t halt = 0;
};

/// Lines `qi: inc C1 -> qj`, `qi: decz C2 -> qk | qj` (zero branch first)
/// and `qhalt: halt`; '#' starts a comment. The first state listed is q0.
TwoCounterMachine parse_machine(std::string_view text);
std::string format_machine(const TwoCounterMachine& m);

struct Configuration {
    std::size_t state = 0;
    std::uint64_t c1 = 0;
    std::uint64_t c2 = 0;
};

struct SimReport {
    bool halted = false;
    std::uint64_t steps = 0;
    std::uint64_t max_counter = 0;
    bool budget_hit = false;
    std::vector<Configuration> trace;  // configuration before each step, then the last one
};

SimReport simulate(const TwoCounterMachine& m, std::uint64_t max_steps);

enum class EncodingVariant { Strict, Closed };

/// Clocks {x, y, z}, parameter a. In the closed variant a ∈ [0, 1] and the
/// target is "qprime_halt"; in the strict variant it is the halt state.
Pta compile(const TwoCounterMachine& m, EncodingVariant variant);

/// Name of the location whose reachability encodes halting.
std::string halting_target(const TwoCounterMachine& m, EncodingVariant variant);

}  // namespace parataur
