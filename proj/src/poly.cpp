#include "parataur/poly.hpp"

#include "parataur/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace parataur {

SpacePtr make_space(const std::vector<std::string>& clocks, const std::vector<std::string>& params) {
    auto s = std::make_shared<Space>();
    s->names = clocks;
    s->names.insert(s->names.end(), params.begin(), params.end());
    s->num_clocks = clocks.size();
    return s;
}

SpacePtr make_space(const Pta& pta) { return make_space(pta.clocks, pta.params); }

SpacePtr parameter_space(const Space& space) {
    auto s = std::make_shared<Space>();
    s->names.assign(space.names.begin() + static_cast<std::ptrdiff_t>(space.num_clocks), space.names.end());
    s->num_clocks = 0;
    return s;
}

Rational LinIneq::eval(std::span<const Rational> point) const {
    Rational r = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (sgn(coeffs[i]) != 0) r += coeffs[i] * point[i];
    }
    return r;
}

bool LinIneq::holds(std::span<const Rational> point) const {
    const Rational v = eval(point);
    return strict ? v < 0 : v <= 0;
}

LinIneq LinIneq::negated() const {
    LinIneq n;
    n.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) n.coeffs.push_back(-c);
    n.constant = -constant;
    n.strict = !strict;
    return n;
}

// ── Row system ──────────────────────────────────────────────────────────────
// The Fourier–Motzkin engine. Works on an arbitrary dimension so that
// time elapse can append the delay variable.

namespace detail {

struct Bound {
    Rational constant;
    bool strict = false;
};

using Coeffs = std::vector<Rational>;

class System {
public:
    explicit System(std::size_t n) : n_(n) {}

    std::size_t dim() const { return n_; }
    bool infeasible() const { return infeasible_; }
    const std::map<Coeffs, Bound>& rows() const { return rows_; }

    void set_infeasible() {
        infeasible_ = true;
        rows_.clear();
    }

    // Normalizes (primitive integer coefficients) and merges by direction.
    void add(Coeffs coeffs, Rational constant, bool strict) {
        if (infeasible_) return;
        mpz_class lcm_den = 1;
        bool zero = true;
        for (const auto& c : coeffs) {
            if (sgn(c) == 0) continue;
            zero = false;
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
        }
        if (zero) {
            const bool ok = strict ? constant < 0 : constant <= 0;
            if (!ok) set_infeasible();
            return;
        }
        mpz_class g = 0;
        for (const auto& c : coeffs) {
            if (sgn(c) == 0) continue;
            const mpz_class k = c.get_num() * (lcm_den / c.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
        }
        Rational factor(lcm_den, g);
        factor.canonicalize();
        if (factor != 1) {
            for (auto& c : coeffs) {
                if (sgn(c) != 0) c *= factor;
            }
            constant *= factor;
        }
        merge(std::move(coeffs), std::move(constant), strict);
    }

    // Finds a nonstrict row on `var` whose exact negation is also present.
    std::optional<Coeffs> find_equality(std::size_t var) const {
        for (const auto& [coeffs, b] : rows_) {
            if (sgn(coeffs[var]) == 0 || b.strict) continue;
            const auto it = rows_.find(negate(coeffs));
            if (it != rows_.end() && !it->second.strict && it->second.constant == -b.constant) return coeffs;
        }
        return std::nullopt;
    }

    void eliminate(std::size_t var) {
        if (infeasible_) return;
        if (auto eq = find_equality(var)) {
            substitute(var, *eq);
        } else {
            fourier_motzkin(var);
        }
    }

    // Cost estimate used to order eliminations.
    std::size_t elimination_cost(std::size_t var) const {
        if (find_equality(var)) return 0;
        std::size_t pos = 0, neg = 0;
        for (const auto& [coeffs, b] : rows_) {
            const int s = sgn(coeffs[var]);
            if (s > 0) ++pos;
            else if (s < 0) ++neg;
        }
        return pos * neg + 1;
    }

    void eliminate_all(std::vector<std::size_t> vars) {
        while (!vars.empty() && !infeasible_) {
            std::size_t best = 0;
            std::size_t best_cost = std::numeric_limits<std::size_t>::max();
            for (std::size_t i = 0; i < vars.size(); ++i) {
                const std::size_t cost = elimination_cost(vars[i]);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = i;
                }
                if (cost == 0) break;
            }
            eliminate(vars[best]);
            vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(best));
        }
    }

    static Coeffs negate(const Coeffs& c) {
        Coeffs n(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
        return n;
    }

private:
    void merge(Coeffs coeffs, Rational constant, bool strict) {
        auto [it, inserted] = rows_.try_emplace(coeffs, Bound{constant, strict});
        if (!inserted) {
            Bound& b = it->second;
            if (constant > b.constant || (constant == b.constant && strict && !b.strict)) {
                b = Bound{constant, strict};
            }
        }
        // a·v <= -c1 together with a·v >= c2.
        const Bound& mine = it->second;
        const auto opp = rows_.find(negate(coeffs));
        if (opp != rows_.end()) {
            const Rational upper = -mine.constant;
            const Rational& lower = opp->second.constant;
            if (lower > upper || (lower == upper && (mine.strict || opp->second.strict))) set_infeasible();
        }
    }

    void substitute(std::size_t var, const Coeffs& eq) {
        const Bound eqb = rows_.at(eq);
        const Coeffs neg = negate(eq);
        System out(n_);
        for (const auto& [coeffs, b] : rows_) {
            if (coeffs == eq || coeffs == neg) continue;
            if (sgn(coeffs[var]) == 0) {
                out.merge(coeffs, b.constant, b.strict);
                continue;
            }
            const Rational f = coeffs[var] / eq[var];
            Coeffs nc(n_);
            for (std::size_t i = 0; i < n_; ++i) nc[i] = coeffs[i] - f * eq[i];
            nc[var] = 0;
            out.add(std::move(nc), b.constant - f * eqb.constant, b.strict);
            if (out.infeasible_) break;
        }
        *this = std::move(out);
    }

    void fourier_motzkin(std::size_t var) {
        std::vector<const std::pair<const Coeffs, Bound>*> pos, neg;
        System out(n_);
        for (const auto& row : rows_) {
            const int s = sgn(row.first[var]);
            if (s > 0) pos.push_back(&row);
            else if (s < 0) neg.push_back(&row);
            else out.merge(row.first, row.second.constant, row.second.strict);
        }
        for (const auto* p : pos) {
            for (const auto* q : neg) {
                const Rational wp = -q->first[var];  // > 0
                const Rational wq = p->first[var];   // > 0
                Coeffs nc(n_);
                for (std::size_t i = 0; i < n_; ++i) nc[i] = wp * p->first[i] + wq * q->first[i];
                nc[var] = 0;
                out.add(std::move(nc), wp * p->second.constant + wq * q->second.constant,
                        p->second.strict || q->second.strict);
                if (out.infeasible_) {
                    *this = std::move(out);
                    return;
                }
            }
        }
        *this = std::move(out);
    }

    std::size_t n_;
    std::map<Coeffs, Bound> rows_;
    bool infeasible_ = false;
};

struct PolyAccess {
    static System to_system(const Polyhedron& p, std::size_t extra = 0) {
        System s(p.dim() + extra);
        if (p.infeasible_) {
            s.set_infeasible();
            return s;
        }
        for (const auto& [coeffs, b] : p.rows_) {
            Coeffs c = coeffs;
            c.resize(p.dim() + extra);
            s.add(std::move(c), b.constant, b.strict);
        }
        return s;
    }

    // Rows must not mention variables beyond the space (or only with zero).
    static Polyhedron from_system(SpacePtr space, const System& s, std::size_t offset = 0) {
        const std::size_t n = space->size();
        Polyhedron::Rows rows;
        if (!s.infeasible()) {
            for (const auto& [coeffs, b] : s.rows()) {
                Coeffs c(coeffs.begin() + static_cast<std::ptrdiff_t>(offset),
                         coeffs.begin() + static_cast<std::ptrdiff_t>(offset + n));
                rows.emplace(std::move(c), Polyhedron::Bound{b.constant, b.strict});
            }
        }
        return Polyhedron(std::move(space), std::move(rows), s.infeasible());
    }

    static bool contains(const Polyhedron& c, std::span<const Rational> point) {
        if (c.infeasible_) return false;
        Rational v;
        for (const auto& [coeffs, b] : c.rows_) {
            v = b.constant;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (sgn(coeffs[i]) != 0) v += coeffs[i] * point[i];
            }
            if (b.strict ? v >= 0 : v > 0) return false;
        }
        return true;
    }

    static void add_rows(Polyhedron& into, const Polyhedron& from) {
        if (from.infeasible_) {
            into.infeasible_ = true;
            into.rows_.clear();
            return;
        }
        if (into.infeasible_) return;
        System s = to_system(into);
        for (const auto& [coeffs, b] : from.rows_) s.add(coeffs, b.constant, b.strict);
        into = from_system(into.space_, s);
    }
};

}  // namespace detail

using detail::PolyAccess;
using detail::System;

// ── Polyhedron ──────────────────────────────────────────────────────────────

Polyhedron::Polyhedron(SpacePtr space) : space_(std::move(space)) {
    const std::size_t n = space_->size();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> c(n);
        c[i] = -1;
        rows_.emplace(std::move(c), Bound{Rational(0), false});
    }
}

Polyhedron::Polyhedron(SpacePtr space, Rows rows, bool infeasible)
    : space_(std::move(space)), rows_(std::move(rows)), infeasible_(infeasible) {}

Polyhedron Polyhedron::empty(SpacePtr space) { return Polyhedron(std::move(space), {}, true); }

void Polyhedron::add(const LinIneq& row) { add(row.coeffs, row.constant, row.strict); }

void Polyhedron::add(std::vector<Rational> coeffs, Rational constant, bool strict) {
    if (infeasible_) return;
    if (coeffs.size() != dim()) throw Error(ErrorKind::InvalidArgument, "row dimension mismatch");
    // Reuse the system's normalization and merging.
    System s = PolyAccess::to_system(*this);
    s.add(std::move(coeffs), std::move(constant), strict);
    *this = PolyAccess::from_system(space_, s);
}

std::vector<LinIneq> Polyhedron::rows() const {
    std::vector<LinIneq> out;
    if (infeasible_) {
        out.push_back({std::vector<Rational>(dim()), Rational(1), false});
        return out;
    }
    for (const auto& [coeffs, b] : rows_) out.push_back({coeffs, b.constant, b.strict});
    return out;
}

namespace {

std::string row_string(const Space& space, const std::vector<Rational>& coeffs, const Rational& constant,
                       bool strict) {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Rational& c = coeffs[i];
        if (sgn(c) == 0) continue;
        const Rational mag = abs(c);
        if (s.empty()) {
            if (sgn(c) < 0) s += "-";
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        if (mag != 1) s += to_string(mag) + "·";
        s += space.names[i];
    }
    if (sgn(constant) != 0 || s.empty()) {
        if (s.empty()) s += to_string(constant);
        else s += (sgn(constant) < 0 ? " - " : " + ") + to_string(abs(constant));
    }
    s += strict ? " < 0" : " <= 0";
    return s;
}

}  // namespace

std::vector<std::string> Polyhedron::row_strings() const {
    if (infeasible_) return {"false"};
    std::vector<std::string> out;
    for (const auto& [coeffs, b] : rows_) out.push_back(row_string(*space_, coeffs, b.constant, b.strict));
    std::sort(out.begin(), out.end());
    return out;
}

std::string Polyhedron::to_string() const {
    const auto rows = row_strings();
    if (rows.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += " ∧ ";
        s += rows[i];
    }
    return s;
}

bool Polyhedron::operator==(const Polyhedron& other) const {
    if (!(*space_ == *other.space_) || infeasible_ != other.infeasible_) return false;
    if (rows_.size() != other.rows_.size()) return false;
    auto it = other.rows_.begin();
    for (const auto& [coeffs, b] : rows_) {
        if (coeffs != it->first || b.constant != it->second.constant || b.strict != it->second.strict) return false;
        ++it;
    }
    return true;
}

// ── PolyUnion ───────────────────────────────────────────────────────────────

void PolyUnion::add(Polyhedron p) {
    if (!is_empty(p)) disjuncts.push_back(std::move(p));
}

void PolyUnion::add(const PolyUnion& other) {
    for (const auto& d : other.disjuncts) disjuncts.push_back(d);
}

bool PolyUnion::contains(std::span<const Rational> point) const {
    return std::any_of(disjuncts.begin(), disjuncts.end(),
                       [&](const Polyhedron& p) { return parataur::contains(p, point); });
}

// ── Constructors ────────────────────────────────────────────────────────────

namespace {

void add_atom(System& s, const Space& space, const GuardAtom& a, bool drop_clock) {
    std::vector<Rational> c(space.size());
    // clock op sum(params) + k  ==>  ±(clock - sum(params) - k) {<,<=} 0
    const Rational sign = is_upper(a.op) ? 1 : -1;
    if (!drop_clock) c[a.clock] = sign;
    for (auto p : a.params) c[space.param_var(p)] = -sign;
    s.add(std::move(c), -sign * a.constant, is_strict(a.op));
}

}  // namespace

Polyhedron guard_polyhedron(const SpacePtr& space, const Guard& guard) {
    System s = PolyAccess::to_system(Polyhedron(space));
    for (const auto& a : guard) add_atom(s, *space, a, false);
    return PolyAccess::from_system(space, s);
}

Polyhedron bounds_polyhedron(const SpacePtr& space, const std::vector<Interval>& bounds) {
    System s = PolyAccess::to_system(Polyhedron(space));
    for (std::size_t p = 0; p < bounds.size(); ++p) {
        std::vector<Rational> lo(space->size()), hi(space->size());
        lo[space->param_var(p)] = -1;
        hi[space->param_var(p)] = 1;
        s.add(lo, Rational(bounds[p].inf), bounds[p].inf_open);
        s.add(hi, Rational(-bounds[p].sup), bounds[p].sup_open);
    }
    return PolyAccess::from_system(space, s);
}

Polyhedron zero_clocks(const SpacePtr& space) {
    System s = PolyAccess::to_system(Polyhedron(space));
    for (std::size_t x = 0; x < space->num_clocks; ++x) {
        std::vector<Rational> c(space->size());
        c[x] = 1;
        s.add(c, Rational(0), false);
    }
    return PolyAccess::from_system(space, s);
}

Polyhedron unreset_invariant(const SpacePtr& space, const Guard& invariant, std::span<const std::size_t> resets) {
    System s = PolyAccess::to_system(Polyhedron(space));
    for (const auto& a : invariant) {
        const bool reset = std::find(resets.begin(), resets.end(), a.clock) != resets.end();
        add_atom(s, *space, a, reset);
    }
    return PolyAccess::from_system(space, s);
}

// ── Operators ───────────────────────────────────────────────────────────────

namespace {

void check_same_space(const Polyhedron& a, const Polyhedron& b) {
    if (!(a.space() == b.space())) throw Error(ErrorKind::InvalidArgument, "polyhedra over different variable spaces");
}

void add_clock_nonnegativity(System& s, std::size_t num_clocks) {
    for (std::size_t x = 0; x < num_clocks; ++x) {
        std::vector<Rational> c(s.dim());
        c[x] = -1;
        s.add(std::move(c), Rational(0), false);
    }
}

// direction = -1 for x -> x - d (future), +1 for x -> x + d (past).
Polyhedron shift_time(const Polyhedron& c, int direction) {
    const std::size_t n = c.dim();
    const std::size_t h = c.space().num_clocks;
    if (c.trivially_empty()) return c;
    System ext(n + 1);
    for (const auto& row : c.rows()) {
        Rational clock_sum = 0;
        for (std::size_t x = 0; x < h; ++x) clock_sum += row.coeffs[x];
        std::vector<Rational> coeffs = row.coeffs;
        coeffs.push_back(direction * clock_sum);
        ext.add(std::move(coeffs), row.constant, row.strict);
    }
    std::vector<Rational> d(n + 1);
    d[n] = -1;
    ext.add(std::move(d), Rational(0), false);
    ext.eliminate(n);
    add_clock_nonnegativity(ext, h);
    return PolyAccess::from_system(c.space_ptr(), ext);
}

}  // namespace

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    check_same_space(a, b);
    Polyhedron out = a;
    PolyAccess::add_rows(out, b);
    return out;
}

Polyhedron time_elapse(const Polyhedron& c) { return shift_time(c, -1); }

Polyhedron time_past(const Polyhedron& c) { return shift_time(c, +1); }

Polyhedron reset(const Polyhedron& c, std::span<const std::size_t> clocks) {
    if (clocks.empty()) return c;
    System s = PolyAccess::to_system(c);
    s.eliminate_all(std::vector<std::size_t>(clocks.begin(), clocks.end()));
    for (auto x : clocks) {
        std::vector<Rational> up(c.dim()), down(c.dim());
        up[x] = 1;
        down[x] = -1;
        s.add(std::move(up), Rational(0), false);
        s.add(std::move(down), Rational(0), false);
    }
    return PolyAccess::from_system(c.space_ptr(), s);
}

Polyhedron eliminate(const Polyhedron& c, std::span<const std::size_t> vars) {
    System s = PolyAccess::to_system(c);
    s.eliminate_all(std::vector<std::size_t>(vars.begin(), vars.end()));
    for (auto v : vars) {
        std::vector<Rational> nonneg(c.dim());
        nonneg[v] = -1;
        s.add(std::move(nonneg), Rational(0), false);
    }
    return PolyAccess::from_system(c.space_ptr(), s);
}

Polyhedron project_params(const Polyhedron& c) {
    const std::size_t h = c.space().num_clocks;
    System s = PolyAccess::to_system(c);
    std::vector<std::size_t> clocks(h);
    for (std::size_t x = 0; x < h; ++x) clocks[x] = x;
    s.eliminate_all(clocks);
    return PolyAccess::from_system(parameter_space(c.space()), s, h);
}

bool is_empty(const Polyhedron& c) {
    if (c.trivially_empty()) return true;
    System s = PolyAccess::to_system(c);
    std::vector<std::size_t> all(c.dim());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    s.eliminate_all(all);
    return s.infeasible();
}

bool contains(const Polyhedron& c, std::span<const Rational> point) {
    if (point.size() != c.dim()) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
    return PolyAccess::contains(c, point);
}

PolyUnion difference(const Polyhedron& c, const Polyhedron& d) {
    check_same_space(c, d);
    PolyUnion out;
    if (is_empty(c)) return out;
    if (d.trivially_empty()) {
        out.disjuncts.push_back(c);
        return out;
    }
    for (const auto& row : d.rows()) {
        Polyhedron piece = c;
        piece.add(row.negated());
        out.add(std::move(piece));
    }
    return out;
}

PolyUnion difference(const PolyUnion& c, const Polyhedron& d) {
    PolyUnion out;
    for (const auto& piece : c.disjuncts) out.add(difference(piece, d));
    return out;
}

bool includes(const Polyhedron& a, const Polyhedron& b) {
    check_same_space(a, b);
    if (is_empty(a)) return true;
    if (b.trivially_empty()) return false;
    for (const auto& row : b.rows()) {
        Polyhedron t = a;
        t.add(row.negated());
        if (!is_empty(t)) return false;
    }
    return true;
}

bool same_set(const Polyhedron& a, const Polyhedron& b) { return includes(a, b) && includes(b, a); }

bool includes_irredundant(const Polyhedron& a, const Polyhedron& b) {
    check_same_space(a, b);
    if (b.infeasible_) return false;
    std::vector<const Polyhedron::Rows::value_type*> open;
    for (const auto& row : b.rows_) {
        const auto it = a.rows_.find(row.first);
        if (it == a.rows_.end()) {
            open.push_back(&row);
            continue;
        }
        // d·v + c ⋈ 0: a larger constant is the tighter bound.
        const auto& [ca, sa] = it->second;
        const auto& [cb, sb] = row.second;
        if (ca > cb || (ca == cb && (sa || !sb))) continue;
        // Nonnegativity rows survive pruning even when redundant.
        const bool nonneg = sgn(ca) == 0 && !sa &&
                            std::count_if(row.first.begin(), row.first.end(), [](const Rational& k) { return sgn(k) != 0; }) == 1;
        if (ca < cb && !nonneg) return false;
        open.push_back(&row);
    }
    for (const auto* row : open) {
        Polyhedron t = a;
        t.add(LinIneq{row->first, row->second.constant, row->second.strict}.negated());
        if (!is_empty(t)) return false;
    }
    return true;
}

Polyhedron remove_redundant(const Polyhedron& c) {
    if (c.trivially_empty()) return c;
    auto rows = c.rows();
    auto is_nonnegativity = [](const LinIneq& r) {
        std::size_t nz = 0;
        bool unit = false;
        for (const auto& k : r.coeffs) {
            if (sgn(k) != 0) {
                ++nz;
                unit = k == -1;
            }
        }
        return nz == 1 && unit && sgn(r.constant) == 0 && !r.strict;
    };
    std::vector<bool> keep(rows.size(), true);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (is_nonnegativity(rows[i])) continue;
        System s(c.dim());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j != i && keep[j]) s.add(rows[j].coeffs, rows[j].constant, rows[j].strict);
        }
        const LinIneq neg = rows[i].negated();
        s.add(neg.coeffs, neg.constant, neg.strict);
        std::vector<std::size_t> all(c.dim());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        s.eliminate_all(all);
        if (s.infeasible()) keep[i] = false;
    }
    System out(c.dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (keep[i]) out.add(rows[i].coeffs, rows[i].constant, rows[i].strict);
    }
    return PolyAccess::from_system(c.space_ptr(), out);
}

// ── Zones and integer points ────────────────────────────────────────────────

namespace {

// Clock indices with nonzero coefficient in a row.
std::vector<std::size_t> clock_support(const LinIneq& row, std::size_t h) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < h; ++x) {
        if (sgn(row.coeffs[x]) != 0) out.push_back(x);
    }
    return out;
}

bool zone_row(const LinIneq& row, std::size_t h) {
    const auto sup = clock_support(row, h);
    if (sup.size() <= 1) return true;
    return sup.size() == 2 && row.coeffs[sup[0]] == -row.coeffs[sup[1]];
}

struct DbmEntry {
    bool finite = false;
    Rational value;
    bool strict = false;
};

bool tighter(const DbmEntry& a, const DbmEntry& b) {
    if (!a.finite) return false;
    if (!b.finite) return true;
    return a.value < b.value || (a.value == b.value && a.strict && !b.strict);
}

DbmEntry plus(const DbmEntry& a, const DbmEntry& b) {
    if (!a.finite || !b.finite) return {};
    return {true, a.value + b.value, a.strict || b.strict};
}

using Dbm = std::vector<std::vector<DbmEntry>>;

// Floyd–Warshall; false when a negative cycle shows the zone is empty.
bool canonicalize(Dbm& d) {
    const std::size_t n = d.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i][k].finite) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const DbmEntry via = plus(d[i][k], d[k][j]);
                if (tighter(via, d[i][j])) d[i][j] = via;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = d[i][i];
        if (e.finite && (e.value < 0 || (e.value == 0 && e.strict))) return false;
    }
    return true;
}

void tighten_to_integers(Dbm& d) {
    for (auto& row : d) {
        for (auto& e : row) {
            if (!e.finite) continue;
            e.value = e.strict ? ceil(e.value) - 1 : floor(e.value);
            e.strict = false;
        }
    }
}

bool integer_clock_point(const std::vector<LinIneq>& rows, std::size_t h, std::span<const Rational> params) {
    Dbm d(h + 1, std::vector<DbmEntry>(h + 1));
    for (std::size_t i = 0; i <= h; ++i) d[i][i] = {true, Rational(0), false};
    auto constrain = [&](std::size_t i, std::size_t j, const Rational& v, bool strict) {
        const DbmEntry e{true, v, strict};
        if (tighter(e, d[i][j])) d[i][j] = e;
    };
    for (const auto& row : rows) {
        Rational rest = row.constant;
        for (std::size_t p = 0; p < params.size(); ++p) {
            if (sgn(row.coeffs[h + p]) != 0) rest += row.coeffs[h + p] * params[p];
        }
        const auto sup = clock_support(row, h);
        if (sup.empty()) {
            if (row.strict ? !(rest < 0) : !(rest <= 0)) return false;
        } else if (sup.size() == 1) {
            const Rational& a = row.coeffs[sup[0]];
            if (sgn(a) > 0) constrain(sup[0] + 1, 0, -rest / a, row.strict);
            else constrain(0, sup[0] + 1, rest / a, row.strict);
        } else {
            std::size_t i = sup[0], j = sup[1];
            if (sgn(row.coeffs[i]) < 0) std::swap(i, j);
            constrain(i + 1, j + 1, -rest / row.coeffs[i], row.strict);
        }
    }
    if (!canonicalize(d)) return false;
    tighten_to_integers(d);
    return canonicalize(d);
}

}  // namespace

bool is_parametric_zone(const Polyhedron& c) {
    const std::size_t h = c.space().num_clocks;
    for (const auto& row : c.rows()) {
        if (!zone_row(row, h)) return false;
    }
    return true;
}

bool has_integer_point(const Polyhedron& c, const std::optional<std::vector<Interval>>& bounds) {
    const std::size_t h = c.space().num_clocks;
    const std::size_t m = c.space().num_params();
    const auto rows = c.rows();
    for (const auto& row : rows) {
        if (!zone_row(row, h)) throw Error(ErrorKind::NotAZone, "not a parametric zone: " + c.to_string());
    }
    if (m > 0 && !bounds) throw Error(ErrorKind::Unbounded, "integer-point test needs a bounded parameter domain");
    if (c.trivially_empty()) return false;

    std::vector<std::int64_t> lo(m), hi(m);
    for (std::size_t p = 0; p < m; ++p) {
        const auto& b = (*bounds)[p];
        lo[p] = b.inf + (b.inf_open ? 1 : 0);
        hi[p] = b.sup - (b.sup_open ? 1 : 0);
        if (lo[p] > hi[p]) return false;
    }
    std::vector<std::int64_t> cur = lo;
    std::vector<Rational> v(m);
    while (true) {
        for (std::size_t p = 0; p < m; ++p) v[p] = cur[p];
        if (integer_clock_point(rows, h, v)) return true;
        std::size_t p = 0;
        while (p < m && cur[p] == hi[p]) cur[p++] = 0;
        if (p == m) return false;
        if (cur[p] < lo[p]) cur[p] = lo[p];
        ++cur[p];
        for (std::size_t q = 0; q < p; ++q) cur[q] = lo[q];
    }
}

namespace {

enum class Bias { Middle, Low, High };

// Fixes one coordinate at a time from the projection onto the coordinates
// fixed so far. `bias(k)` says where in the feasible interval to land.
template <class BiasFn>
std::optional<std::vector<Rational>> sample_biased(const Polyhedron& c, BiasFn bias) {
    const std::size_t n = c.dim();
    System cur = PolyAccess::to_system(c);
    std::vector<Rational> point(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (cur.infeasible()) return std::nullopt;
        System proj = cur;
        std::vector<std::size_t> later;
        for (std::size_t j = k + 1; j < n; ++j) later.push_back(j);
        proj.eliminate_all(later);
        if (proj.infeasible()) return std::nullopt;

        std::optional<Rational> lower, upper;
        bool lower_strict = false, upper_strict = false;
        for (const auto& [coeffs, b] : proj.rows()) {
            const Rational& a = coeffs[k];
            if (sgn(a) == 0) continue;
            const Rational bound = -b.constant / a;
            if (sgn(a) > 0) {
                if (!upper || bound < *upper || (bound == *upper && b.strict)) {
                    upper = bound;
                    upper_strict = b.strict;
                }
            } else if (!lower || bound > *lower || (bound == *lower && b.strict)) {
                lower = bound;
                lower_strict = b.strict;
            }
        }
        const Bias want = bias(k);
        Rational value;
        if (lower && upper && *lower == *upper) value = *lower;
        else if (want == Bias::Middle) {
            if (lower && upper) value = (*lower + *upper) / 2;
            else if (lower) value = *lower + 1;
            else if (upper) value = *upper - 1;
        } else if (want == Bias::Low && lower) {
            if (!lower_strict) value = *lower;
            else if (upper) value = (3 * *lower + *upper) / 4;
            else value = *lower + 1;
        } else if (want == Bias::High && upper) {
            if (!upper_strict) value = *upper;
            else if (lower) value = (*lower + 3 * *upper) / 4;
            else value = *upper - 1;
        } else if (want == Bias::High) {
            value = *lower + 4096;  // every variable has a lower bound
        } else {
            value = *upper - 1;  // Low without a lower bound
        }
        point[k] = value;

        System next(n);
        for (const auto& [coeffs, b] : cur.rows()) {
            auto nc = coeffs;
            const Rational shift = nc[k] * value;
            nc[k] = 0;
            next.add(std::move(nc), b.constant + shift, b.strict);
        }
        cur = std::move(next);
    }
    if (cur.infeasible()) return std::nullopt;
    return point;
}

}  // namespace

std::optional<std::vector<Rational>> sample_point(const Polyhedron& c) {
    return sample_biased(c, [](std::size_t) { return Bias::Middle; });
}

std::vector<std::vector<Rational>> probe_points(const Polyhedron& c) {
    std::vector<std::vector<Rational>> out;
    const auto mid = sample_point(c);
    if (!mid) return out;
    out.push_back(*mid);
    const std::function<Bias(std::size_t)> patterns[] = {
        [](std::size_t) { return Bias::High; },
        [](std::size_t) { return Bias::Low; },
        [](std::size_t k) { return k % 2 ? Bias::Low : Bias::High; },
        [](std::size_t k) { return k % 2 ? Bias::High : Bias::Low; },
    };
    for (const auto& pattern : patterns) {
        if (auto p = sample_biased(c, pattern)) out.push_back(std::move(*p));
    }
    return out;
}

}  // namespace parataur
