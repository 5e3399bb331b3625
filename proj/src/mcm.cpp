#include "parataur/mcm.hpp"

#include "parataur/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace parataur {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct RawLine {
    std::string state;
    std::vector<std::string> rest;
    std::size_t line = 0;
};

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::Syntax, "line " + std::to_string(line) + ": " + msg);
}

int parse_counter(const std::string& w, std::size_t line) {
    if (w == "C1") return 1;
    if (w == "C2") return 2;
    syntax(line, "expected C1 or C2, got '" + w + "'");
}

}  // namespace

TwoCounterMachine parse_machine(std::string_view text) {
    std::vector<RawLine> lines;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) syntax(lineno, "missing ':'");
        RawLine r{trim(line.substr(0, colon)), words(line.substr(colon + 1)), lineno};
        if (r.state.empty()) syntax(lineno, "missing state name");
        lines.push_back(std::move(r));
    }
    if (lines.empty()) throw Error(ErrorKind::Syntax, "empty machine");

    TwoCounterMachine m;
    std::map<std::string, std::size_t> index;
    for (const auto& l : lines) {
        if (!index.emplace(l.state, m.states.size()).second) syntax(l.line, "duplicate state '" + l.state + "'");
        m.states.push_back(l.state);
    }
    auto lookup = [&](const std::string& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end()) throw Error(ErrorKind::UnknownIdentifier, "line " + std::to_string(line) + ": unknown state '" + name + "'");
        return it->second;
    };

    std::optional<std::size_t> halt;
    for (const auto& l : lines) {
        Instruction ins;
        const auto& w = l.rest;
        if (w.size() == 1 && w[0] == "halt") {
            if (halt) syntax(l.line, "more than one halt state");
            halt = index[l.state];
        } else if (w.size() == 4 && w[0] == "inc" && w[2] == "->") {
            ins.kind = Instruction::Kind::Inc;
            ins.counter = parse_counter(w[1], l.line);
            ins.next = lookup(w[3], l.line);
        } else if (w.size() == 6 && w[0] == "decz" && w[2] == "->" && w[4] == "|") {
            ins.kind = Instruction::Kind::DecOrZero;
            ins.counter = parse_counter(w[1], l.line);
            ins.if_zero = lookup(w[3], l.line);
            ins.next = lookup(w[5], l.line);
        } else {
            syntax(l.line, "expected 'inc Ck -> q', 'decz Ck -> qzero | qpos' or 'halt'");
        }
        m.program.push_back(ins);
    }
    if (!halt) throw Error(ErrorKind::Syntax, "no halt state");
    m.halt = *halt;
    return m;
}

std::string format_machine(const TwoCounterMachine& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.states.size(); ++i) {
        const auto& ins = m.program[i];
        out << m.states[i] << ": ";
        switch (ins.kind) {
            case Instruction::Kind::Inc: out << "inc C" << ins.counter << " -> " << m.states[ins.next]; break;
            case Instruction::Kind::DecOrZero:
                out << "decz C" << ins.counter << " -> " << m.states[ins.if_zero] << " | " << m.states[ins.next];
                break;
            case Instruction::Kind::Halt: out << "halt"; break;
        }
        out << '\n';
    }
    return out.str();
}

SimReport simulate(const TwoCounterMachine& m, std::uint64_t max_steps) {
    SimReport r;
    Configuration c{m.init, 0, 0};
    while (true) {
        r.trace.push_back(c);
        const auto& ins = m.program[c.state];
        if (ins.kind == Instruction::Kind::Halt) {
            r.halted = true;
            return r;
        }
        if (r.steps == max_steps) {
            r.budget_hit = true;
            return r;
        }
        std::uint64_t& k = ins.counter == 1 ? c.c1 : c.c2;
        if (ins.kind == Instruction::Kind::Inc) {
            ++k;
            c.state = ins.next;
        } else if (k == 0) {
            c.state = ins.if_zero;
        } else {
            --k;
            c.state = ins.next;
        }
        ++r.steps;
        r.max_counter = std::max({r.max_counter, c.c1, c.c2});
    }
}

// ── Compilation ─────────────────────────────────────────────────────────────

namespace {

class Builder {
public:
    explicit Builder(Pta& pta) : pta_(pta) {}

    std::size_t location(const std::string& name) {
        pta_.locations.push_back({name, {}});
        return pta_.locations.size() - 1;
    }

    // Atoms in the model syntax; "=" is expanded by parse_atom.
    void edge(std::size_t from, std::size_t to, std::initializer_list<std::string> guard,
              std::initializer_list<std::string> resets = {}) {
        Edge e;
        e.source = from;
        e.target = to;
        e.action = "sigma";
        for (const auto& atom : guard) {
            for (auto& a : parse_atom(atom, pta_.clocks, pta_.params)) e.guard.push_back(std::move(a));
        }
        for (const auto& r : resets) e.resets.push_back(*pta_.find_clock(r));
        std::sort(e.resets.begin(), e.resets.end());
        pta_.edges.push_back(std::move(e));
    }

private:
    Pta& pta_;
};

}  // namespace

std::string halting_target(const TwoCounterMachine& m, EncodingVariant variant) {
    return variant == EncodingVariant::Closed ? "qprime_halt" : m.states[m.halt];
}

Pta compile(const TwoCounterMachine& m, EncodingVariant variant) {
    const bool closed = variant == EncodingVariant::Closed;
    Pta pta;
    pta.name = closed ? "2cm-closed" : "2cm-strict";
    pta.clocks = {"x", "y", "z"};
    pta.params = {"a"};
    if (closed) pta.bounds = std::vector<Interval>{{0, 1, false, false}};
    Builder b(pta);

    const std::size_t l0 = b.location("init0");
    const std::size_t l1 = b.location("init1");
    pta.init = l0;
    std::vector<std::size_t> q(m.states.size());
    for (std::size_t i = 0; i < m.states.size(); ++i) q[i] = b.location(m.states[i]);

    // Clocks y and z carry 1 - a·c1 and 1 - a·c2 whenever x = 0 in a state.
    if (closed) b.edge(l0, l1, {});
    else b.edge(l0, l1, {"x < a"});
    b.edge(l1, q[m.init], {"x = 1"}, {"x"});

    for (std::size_t i = 0; i < m.states.size(); ++i) {
        const auto& ins = m.program[i];
        if (ins.kind == Instruction::Kind::Halt) continue;
        const std::string own = ins.counter == 1 ? "y" : "z";
        const std::string other = ins.counter == 1 ? "z" : "y";
        const std::string tag = m.states[i] + (ins.kind == Instruction::Kind::Inc ? "_inc_" : "_dec_");
        const std::size_t li1 = b.location(tag + "1");
        const std::size_t li2 = b.location(tag + "2");
        const std::size_t li2b = b.location(tag + "2b");
        const std::size_t li3 = b.location(tag + "3");

        if (ins.kind == Instruction::Kind::Inc) {
            b.edge(q[i], li1, {"x = 0"});
            b.edge(li1, li2, {other + " = 1"}, {other});
            b.edge(li2, li3, {own + " = 1 + a"}, {own});
            b.edge(li1, li2b, {own + " = 1 + a"}, {own});
            b.edge(li2b, li3, {other + " = 1"}, {other});
            b.edge(li3, q[ins.next], {"x = 1"}, {"x"});
            continue;
        }

        b.edge(q[i], q[ins.if_zero], {own + " = 1", "x = 0"});
        if (closed) {
            b.edge(q[i], li1, {"x = 0"});
            b.edge(li1, li2, {other + " = 1 + a"}, {other});
            b.edge(li2, li3, {own + " = 1", "x >= a"}, {own});
            b.edge(li1, li2b, {own + " = 1", "x >= a"}, {own});
            b.edge(li2b, li3, {other + " = 1 + a"}, {other});
        } else {
            b.edge(q[i], li1, {own + " < 1", "x = 0"});
            b.edge(li1, li2, {other + " = 1 + a"}, {other});
            b.edge(li2, li3, {own + " = 1"}, {own});
            b.edge(li1, li2b, {own + " = 1"}, {own});
            b.edge(li2b, li3, {other + " = 1 + a"}, {other});
        }
        b.edge(li3, q[ins.next], {"x = 1 + a"}, {"x"});
    }

    if (closed) {
        // Looping on x = a with y reset on entry: y >= 1 is reachable iff a > 0.
        const std::size_t h1 = b.location(m.states[m.halt] + "1");
        const std::size_t h2 = b.location("qprime_halt");
        b.edge(q[m.halt], h1, {}, {"y"});
        b.edge(h1, h1, {"x = a"}, {"x"});
        b.edge(h1, h2, {"x = 0", "y >= 1"});
    }
    validate(pta);
    return pta;
}

}  // namespace parataur
