#include "parataur/model.hpp"

#include "parataur/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace parataur {

using nlohmann::json;

std::string_view to_string(RelOp op) {
    switch (op) {
        case RelOp::Less: return "<";
        case RelOp::LessEq: return "<=";
        case RelOp::GreaterEq: return ">=";
        case RelOp::Greater: return ">";
    }
    return "?";
}

bool Interval::contains(const Rational& q) const {
    const bool above = inf_open ? q > inf : q >= inf;
    const bool below = sup_open ? q < sup : q <= sup;
    return above && below;
}

namespace {

std::optional<std::size_t> index_of(const std::vector<std::string>& names, std::string_view name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names.begin());
}

// ── Atom lexer ──────────────────────────────────────────────────────────────

struct Token {
    enum class Kind { Ident, Int, Op, Plus, Minus, Star, End } kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
}

[[noreturn]] void syntax_error(std::string_view text, std::size_t pos, const std::string& msg) {
    throw Error(ErrorKind::Syntax,
                "in atom '" + std::string(text) + "' at column " + std::to_string(pos + 1) + ": " + msg);
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (ident_start(c)) {
            const std::size_t start = i;
            while (i < text.size() && ident_char(text[i])) ++i;
            out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), start});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            out.push_back({Token::Kind::Int, std::string(text.substr(start, i - start)), start});
        } else if (c == '<' || c == '>' || c == '=') {
            const std::size_t start = i++;
            if (i < text.size() && text[i] == '=' && c != '=') ++i;
            if (c == '=' && i < text.size() && text[i] == '=') ++i;  // accept "=="
            out.push_back({Token::Kind::Op, std::string(text.substr(start, i - start)), start});
        } else if (c == '+') {
            out.push_back({Token::Kind::Plus, "+", i++});
        } else if (c == '-') {
            out.push_back({Token::Kind::Minus, "-", i++});
        } else if (c == '*') {
            out.push_back({Token::Kind::Star, "*", i++});
        } else {
            syntax_error(text, i, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

std::int64_t parse_int(std::string_view atom, const Token& tok) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok.text, &used);
        return static_cast<std::int64_t>(v);
    } catch (const std::exception&) {
        syntax_error(atom, tok.pos, "integer out of range");
    }
}

// ── JSON helpers ────────────────────────────────────────────────────────────

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::MalformedModel, msg); }

const json& require(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) malformed(where + ": missing key \"" + key + "\"");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) malformed(where + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
    if (!v.is_array()) malformed(where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) malformed(where + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::int64_t bound_value(const json& v, const std::string& name, const char* which) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw Error(ErrorKind::MalformedBounds,
                    "parameter " + name + ": \"" + which + "\" must be a natural number");
    }
    return v.get<std::int64_t>();
}

Guard parse_guard(const json& v, const Pta& pta, const std::string& where) {
    Guard g;
    for (const auto& s : string_list(v, where)) {
        for (auto& atom : parse_atom(s, pta.clocks, pta.params)) g.push_back(std::move(atom));
    }
    return g;
}

json guard_json(const Guard& g, const Pta& pta) {
    json arr = json::array();
    for (const auto& a : g) arr.push_back(atom_to_string(a, pta));
    return arr;
}

void check_unique(const std::vector<std::string>& names, const std::string& what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) malformed("empty " + what + " name");
        if (!seen.insert(n).second) malformed("duplicate " + what + " '" + n + "'");
    }
}

}  // namespace

std::optional<std::size_t> Pta::find_location(std::string_view n) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i].name == n) return i;
    }
    return std::nullopt;
}
std::optional<std::size_t> Pta::find_clock(std::string_view n) const { return index_of(clocks, n); }
std::optional<std::size_t> Pta::find_param(std::string_view n) const { return index_of(params, n); }

std::vector<GuardAtom> parse_atom(std::string_view text, const std::vector<std::string>& clocks,
                                  const std::vector<std::string>& params) {
    const auto toks = lex(text);
    std::size_t i = 0;

    // Left-hand side: a bare clock.
    if (toks[i].kind == Token::Kind::Int) {
        if (toks[i + 1].kind == Token::Kind::Ident ||
            (toks[i + 1].kind == Token::Kind::Star && toks[i + 2].kind == Token::Kind::Ident)) {
            syntax_error(text, toks[i].pos, "clock coefficient must be 1");
        }
        syntax_error(text, toks[i].pos, "expected a clock on the left-hand side");
    }
    if (toks[i].kind != Token::Kind::Ident) syntax_error(text, toks[i].pos, "expected a clock");
    const auto clock = index_of(clocks, toks[i].text);
    if (!clock) {
        if (index_of(params, toks[i].text)) {
            syntax_error(text, toks[i].pos, "left-hand side must be a clock, got parameter '" + toks[i].text + "'");
        }
        throw Error(ErrorKind::UnknownIdentifier, "unknown clock '" + toks[i].text + "' in atom '" + std::string(text) + "'");
    }
    ++i;
    if (toks[i].kind == Token::Kind::Minus || toks[i].kind == Token::Kind::Plus) {
        syntax_error(text, toks[i].pos, "diagonal or compound left-hand sides are not supported");
    }
    if (toks[i].kind != Token::Kind::Op) syntax_error(text, toks[i].pos, "expected one of < <= = >= >");
    const std::string op_text = toks[i].text;
    ++i;

    // Right-hand side: signed sum of parameters (coefficient 1) and one integer.
    std::vector<std::size_t> ps;
    std::optional<std::int64_t> constant;
    bool first = true;
    while (toks[i].kind != Token::Kind::End) {
        int sign = 1;
        if (toks[i].kind == Token::Kind::Plus || toks[i].kind == Token::Kind::Minus) {
            sign = toks[i].kind == Token::Kind::Minus ? -1 : 1;
            ++i;
        } else if (!first) {
            syntax_error(text, toks[i].pos, "expected '+' or '-'");
        }
        first = false;
        const Token& t = toks[i];
        if (t.kind == Token::Kind::Int) {
            const std::int64_t k = parse_int(text, t);
            ++i;
            const bool scaled = toks[i].kind == Token::Kind::Ident ||
                                (toks[i].kind == Token::Kind::Star && toks[i + 1].kind == Token::Kind::Ident);
            if (scaled) {
                if (toks[i].kind == Token::Kind::Star) ++i;
                if (k == 1 && sign == 1) {
                    // "1*p" is just p; fall through to the identifier branch below.
                } else if (k == 0) {
                    ++i;  // 0*p contributes nothing
                    continue;
                } else {
                    syntax_error(text, t.pos, "coefficient not in {0,1}");
                }
            } else {
                if (constant) syntax_error(text, t.pos, "more than one integer constant");
                constant = sign * k;
                continue;
            }
        }
        const Token& id = toks[i];
        if (id.kind != Token::Kind::Ident) syntax_error(text, id.pos, "expected a parameter or an integer");
        const auto p = index_of(params, id.text);
        if (!p) {
            if (index_of(clocks, id.text)) {
                syntax_error(text, id.pos, "clock '" + id.text + "' on the right-hand side is not supported");
            }
            throw Error(ErrorKind::UnknownIdentifier, "unknown parameter '" + id.text + "' in atom '" + std::string(text) + "'");
        }
        if (sign < 0) syntax_error(text, id.pos, "coefficient not in {0,1}");
        if (std::find(ps.begin(), ps.end(), *p) != ps.end()) {
            syntax_error(text, id.pos, "coefficient not in {0,1} (parameter repeated)");
        }
        ps.push_back(*p);
        ++i;
        if (toks[i].kind == Token::Kind::Star || toks[i].kind == Token::Kind::Int ||
            toks[i].kind == Token::Kind::Ident) {
            syntax_error(text, toks[i].pos, "coefficient not in {0,1}");
        }
    }
    if (first) syntax_error(text, toks[i].pos, "empty right-hand side");
    std::sort(ps.begin(), ps.end());

    GuardAtom a{*clock, RelOp::LessEq, ps, constant.value_or(0)};
    if (op_text == "=" || op_text == "==") {
        GuardAtom lo = a;
        lo.op = RelOp::GreaterEq;
        return {a, lo};
    }
    if (op_text == "<") a.op = RelOp::Less;
    else if (op_text == "<=") a.op = RelOp::LessEq;
    else if (op_text == ">=") a.op = RelOp::GreaterEq;
    else if (op_text == ">") a.op = RelOp::Greater;
    else syntax_error(text, toks[1].pos, "unknown relation '" + op_text + "'");
    return {a};
}

std::string atom_to_string(const GuardAtom& atom, const Pta& pta) {
    std::string s = pta.clocks.at(atom.clock);
    s += ' ';
    s += to_string(atom.op);
    s += ' ';
    bool first = true;
    for (auto p : atom.params) {
        if (!first) s += " + ";
        s += pta.params.at(p);
        first = false;
    }
    if (first) {
        s += std::to_string(atom.constant);
    } else if (atom.constant > 0) {
        s += " + " + std::to_string(atom.constant);
    } else if (atom.constant < 0) {
        s += " - " + std::to_string(-atom.constant);
    }
    return s;
}

void validate(const Pta& pta) {
    check_unique(pta.clocks, "clock");
    check_unique(pta.params, "parameter");
    std::vector<std::string> locs;
    for (const auto& l : pta.locations) locs.push_back(l.name);
    check_unique(locs, "location");
    {
        std::set<std::string> all(pta.clocks.begin(), pta.clocks.end());
        for (const auto& p : pta.params) {
            if (!all.insert(p).second) malformed("identifier '" + p + "' is both a clock and a parameter");
        }
    }
    if (pta.locations.empty()) malformed("model has no locations");
    if (pta.init >= pta.locations.size()) malformed("initial location out of range");
    if (pta.bounds) {
        if (pta.bounds->size() != pta.params.size()) {
            throw Error(ErrorKind::MalformedBounds, "bounds must be given for all parameters or for none");
        }
        for (std::size_t i = 0; i < pta.params.size(); ++i) {
            const auto& b = (*pta.bounds)[i];
            if (b.inf < 0 || b.inf > b.sup) {
                throw Error(ErrorKind::MalformedBounds, "parameter " + pta.params[i] + ": need 0 <= min <= max");
            }
            if (b.inf == b.sup && (b.inf_open || b.sup_open)) {
                throw Error(ErrorKind::MalformedBounds, "parameter " + pta.params[i] + ": empty interval");
            }
        }
    }
    auto check_guard = [&](const Guard& g, const std::string& where) {
        for (const auto& a : g) {
            if (a.clock >= pta.clocks.size()) malformed(where + ": clock index out of range");
            for (std::size_t k = 0; k < a.params.size(); ++k) {
                if (a.params[k] >= pta.params.size()) malformed(where + ": parameter index out of range");
                if (k > 0 && a.params[k] <= a.params[k - 1]) malformed(where + ": parameters must be sorted and unique");
            }
        }
    };
    for (const auto& l : pta.locations) check_guard(l.invariant, "invariant of " + l.name);
    for (std::size_t i = 0; i < pta.edges.size(); ++i) {
        const auto& e = pta.edges[i];
        const std::string where = "edge " + std::to_string(i);
        if (e.source >= pta.locations.size() || e.target >= pta.locations.size()) {
            malformed(where + ": location out of range");
        }
        check_guard(e.guard, where);
        for (std::size_t k = 0; k < e.resets.size(); ++k) {
            if (e.resets[k] >= pta.clocks.size()) malformed(where + ": reset clock out of range");
            if (k > 0 && e.resets[k] <= e.resets[k - 1]) malformed(where + ": resets must be sorted and unique");
        }
    }
}

Pta parse_model(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Syntax, std::string("model JSON: ") + e.what());
    }
    if (!doc.is_object()) malformed("model must be a JSON object");

    Pta pta;
    if (auto it = doc.find("name"); it != doc.end() && it->is_string()) pta.name = it->get<std::string>();
    pta.clocks = string_list(require(doc, "clocks", "model"), "\"clocks\"");

    const json& params = doc.contains("parameters") ? doc["parameters"] : json::array();
    if (!params.is_array()) malformed("\"parameters\" must be an array");
    std::vector<Interval> bounds;
    std::size_t with_bounds = 0;
    for (const auto& p : params) {
        if (!p.is_object()) malformed("parameter entries must be objects");
        const std::string name = require_string(p, "name", "parameter");
        pta.params.push_back(name);
        const bool has_min = p.contains("min");
        const bool has_max = p.contains("max");
        if (has_min && !has_max) {
            throw Error(ErrorKind::MalformedBounds, "parameter " + name + ": \"max\" is required (no infinite supremum)");
        }
        if (has_max) {
            Interval iv;
            iv.sup = bound_value(p["max"], name, "max");
            iv.inf = has_min ? bound_value(p["min"], name, "min") : 0;
            iv.inf_open = p.value("min_open", false);
            iv.sup_open = p.value("max_open", false);
            if (iv.inf > iv.sup) {
                throw Error(ErrorKind::MalformedBounds, "parameter " + name + ": min > max");
            }
            bounds.push_back(iv);
            ++with_bounds;
        } else {
            bounds.push_back({});
        }
    }
    if (with_bounds != 0 && with_bounds != pta.params.size()) {
        throw Error(ErrorKind::MalformedBounds, "bounds must be given for all parameters or for none");
    }
    if (with_bounds != 0) pta.bounds = bounds;

    const json& locs = require(doc, "locations", "model");
    if (!locs.is_array()) malformed("\"locations\" must be an array");
    for (const auto& l : locs) {
        Location loc;
        loc.name = require_string(l, "name", "location");
        if (l.contains("invariant")) loc.invariant = parse_guard(l["invariant"], pta, "invariant of " + loc.name);
        pta.locations.push_back(std::move(loc));
    }
    const std::string init = require_string(doc, "init", "model");
    const auto init_idx = pta.find_location(init);
    if (!init_idx) throw Error(ErrorKind::UnknownIdentifier, "unknown initial location '" + init + "'");
    pta.init = *init_idx;

    const json& edges = doc.contains("edges") ? doc["edges"] : json::array();
    if (!edges.is_array()) malformed("\"edges\" must be an array");
    for (const auto& e : edges) {
        Edge edge;
        const std::string from = require_string(e, "from", "edge");
        const std::string to = require_string(e, "to", "edge");
        const auto s = pta.find_location(from);
        const auto t = pta.find_location(to);
        if (!s) throw Error(ErrorKind::UnknownIdentifier, "unknown location '" + from + "'");
        if (!t) throw Error(ErrorKind::UnknownIdentifier, "unknown location '" + to + "'");
        edge.source = *s;
        edge.target = *t;
        edge.action = e.value("action", std::string());
        if (e.contains("guard")) edge.guard = parse_guard(e["guard"], pta, "guard of edge " + from + "->" + to);
        if (e.contains("resets")) {
            for (const auto& r : string_list(e["resets"], "\"resets\"")) {
                const auto c = pta.find_clock(r);
                if (!c) throw Error(ErrorKind::UnknownIdentifier, "unknown clock '" + r + "' in resets");
                edge.resets.push_back(*c);
            }
            std::sort(edge.resets.begin(), edge.resets.end());
            edge.resets.erase(std::unique(edge.resets.begin(), edge.resets.end()), edge.resets.end());
        }
        pta.edges.push_back(std::move(edge));
    }
    validate(pta);
    return pta;
}

std::string serialize_model(const Pta& pta) {
    json doc;
    doc["name"] = pta.name;
    doc["clocks"] = pta.clocks;
    json params = json::array();
    for (std::size_t i = 0; i < pta.params.size(); ++i) {
        json p;
        p["name"] = pta.params[i];
        if (pta.bounds) {
            const auto& b = (*pta.bounds)[i];
            p["min"] = b.inf;
            p["max"] = b.sup;
            if (b.inf_open) p["min_open"] = true;
            if (b.sup_open) p["max_open"] = true;
        }
        params.push_back(p);
    }
    doc["parameters"] = params;
    json locs = json::array();
    for (const auto& l : pta.locations) {
        locs.push_back({{"name", l.name}, {"invariant", guard_json(l.invariant, pta)}});
    }
    doc["locations"] = locs;
    doc["init"] = pta.locations.at(pta.init).name;
    json edges = json::array();
    for (const auto& e : pta.edges) {
        json resets = json::array();
        for (auto r : e.resets) resets.push_back(pta.clocks.at(r));
        edges.push_back({{"from", pta.locations.at(e.source).name},
                         {"to", pta.locations.at(e.target).name},
                         {"action", e.action},
                         {"guard", guard_json(e.guard, pta)},
                         {"resets", resets}});
    }
    doc["edges"] = edges;
    return doc.dump(2) + "\n";
}

std::vector<std::size_t> resolve_locations(const Pta& pta, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) {
        const auto idx = pta.find_location(n);
        if (!idx) throw Error(ErrorKind::UnknownIdentifier, "unknown location '" + n + "'");
        out.push_back(*idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ── Classification ──────────────────────────────────────────────────────────

bool Classification::is_lower(std::size_t param) const {
    if (!lu_partition) return false;
    const auto& lower = lu_partition->first;
    return std::find(lower.begin(), lower.end(), param) != lower.end();
}

Classification classify(const Pta& pta) {
    Classification c;
    const std::size_t m = pta.num_params();
    std::vector<bool> used_upper(m, false), used_lower(m, false);
    bool strict = false;
    bool reset_form = true;

    auto scan = [&](const Guard& g) {
        for (const auto& a : g) {
            if (is_strict(a.op)) {
                strict = true;
                reset_form = false;
            }
            if (a.params.size() > 1) reset_form = false;
            for (auto p : a.params) (is_upper(a.op) ? used_upper : used_lower)[p] = true;
        }
    };
    for (const auto& l : pta.locations) scan(l.invariant);
    for (const auto& e : pta.edges) scan(e.guard);

    bool lu = true;
    std::vector<std::size_t> lower, upper;
    for (std::size_t p = 0; p < m; ++p) {
        if (used_upper[p] && used_lower[p]) lu = false;
        (used_upper[p] ? upper : lower).push_back(p);
    }
    if (lu) c.lu_partition = std::make_pair(lower, upper);

    auto parametric = [](const Guard& g) {
        return std::any_of(g.begin(), g.end(), [](const GuardAtom& a) { return !a.params.empty(); });
    };
    bool resets_ok = true;
    for (const auto& e : pta.edges) {
        if (parametric(e.guard) || parametric(pta.locations[e.source].invariant)) {
            if (e.resets.size() != pta.num_clocks()) resets_ok = false;
        }
    }

    c.is_closed = !strict;
    c.is_bounded = pta.is_bounded();
    c.bounds_all_closed = c.is_bounded &&
                          (!pta.bounds || std::all_of(pta.bounds->begin(), pta.bounds->end(),
                                                      [](const Interval& b) { return b.closed(); }));
    c.is_reset_pta = reset_form && resets_ok;
    c.ip_sufficient = (c.is_closed && lu) || c.is_reset_pta;
    return c;
}

// ── Instantiation ───────────────────────────────────────────────────────────

namespace {

Rational atom_value(const GuardAtom& a, const ParamValuation& v) {
    Rational r(a.constant);
    for (auto p : a.params) r += v[p];
    return r;
}

}  // namespace

Ta instantiate(const Pta& pta, const ParamValuation& valuation) {
    if (valuation.size() != pta.num_params()) {
        throw Error(ErrorKind::InvalidArgument, "valuation must assign every parameter");
    }
    for (const auto& q : valuation) {
        if (q < 0) throw Error(ErrorKind::InvalidArgument, "parameter valuations are nonnegative");
    }
    mpz_class scale = 1;
    auto absorb = [&](const Guard& g) {
        for (const auto& a : g) {
            const Rational r = atom_value(a, valuation);
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), r.get_den_mpz_t());
        }
    };
    for (const auto& l : pta.locations) absorb(l.invariant);
    for (const auto& e : pta.edges) absorb(e.guard);
    if (!scale.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "rescaling factor overflows");

    const Rational s(scale);
    auto convert = [&](const Guard& g) {
        std::vector<TaAtom> out;
        out.reserve(g.size());
        for (const auto& a : g) out.push_back({a.clock, a.op, to_int64(atom_value(a, valuation) * s)});
        return out;
    };
    Ta ta;
    ta.clocks = pta.clocks;
    ta.init = pta.init;
    ta.scale = scale.get_si();
    for (const auto& l : pta.locations) ta.locations.push_back({l.name, convert(l.invariant)});
    for (const auto& e : pta.edges) ta.edges.push_back({e.source, e.target, e.action, convert(e.guard), e.resets});
    return ta;
}

std::vector<std::optional<Rational>> extreme_valuation(const Pta& pta, ExtremeMode mode) {
    const auto cls = classify(pta);
    if (!cls.is_lu()) throw Error(ErrorKind::NotLU, "model is not an L/U-PTA");
    if (pta.bounds) {
        for (std::size_t i = 0; i < pta.num_params(); ++i) {
            if (!(*pta.bounds)[i].closed()) {
                throw Error(ErrorKind::OpenBounds,
                            "parameter " + pta.params[i] + " has an open bound; its extreme value is not in the domain");
            }
        }
    } else if (mode == ExtremeMode::MaxLowerMinUpper && pta.num_params() > 0) {
        throw Error(ErrorKind::UnboundedUniversality, "worst-case instantiation needs a bounded parameter domain");
    }
    std::vector<std::optional<Rational>> v(pta.num_params());
    for (std::size_t p = 0; p < pta.num_params(); ++p) {
        const bool lower = cls.is_lower(p);
        const bool take_sup = (mode == ExtremeMode::MinLowerMaxUpper) != lower;
        if (pta.bounds) {
            const auto& b = (*pta.bounds)[p];
            v[p] = Rational(take_sup ? b.sup : b.inf);
        } else if (!take_sup) {
            v[p] = Rational(0);
        }  // unbounded upper parameter at its supremum: infinity
    }
    return v;
}

Ta instantiate_extreme(const Pta& pta, ExtremeMode mode) {
    const auto ext = extreme_valuation(pta, mode);
    Pta reduced = pta;
    ParamValuation v(pta.num_params(), Rational(0));
    auto infinite = [&](const GuardAtom& a) {
        return std::any_of(a.params.begin(), a.params.end(), [&](std::size_t p) { return !ext[p]; });
    };
    // Atoms bounded above by an infinite parameter hold everywhere.
    for (auto& l : reduced.locations) std::erase_if(l.invariant, infinite);
    for (auto& e : reduced.edges) std::erase_if(e.guard, infinite);
    for (std::size_t p = 0; p < ext.size(); ++p) {
        if (ext[p]) v[p] = *ext[p];
    }
    return instantiate(reduced, v);
}

}  // namespace parataur
