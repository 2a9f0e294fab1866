// include/legcert/action.hpp — chord actions, face areas and the candidate
// enumeration driven by the action estimate.
//
// Traversing a bounded face counterclockwise, its boundary jumps up or down
// a Reeb chord at every corner, and Stokes gives
//     Area(F) = sum_corners eta * A(chord),  eta = +-1 per corner.
// The z-lift of the knot closes exactly when sum_F wind(F) Area(F) = 0;
// that combination of the face relations vanishes identically, so it is
// recorded as a (dependent) admissibility row rather than solved for.

#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "legcert/grading.hpp"
#include "legcert/simplex.hpp"

namespace legcert {

struct ActionRelation {
    int face = -1;
    std::map<int, int> coef; // chord -> corner sign sum, in {-2..2}

    bool mixed_signs() const {
        bool pos = false, neg = false;
        for (const auto& [c, k] : coef) {
            pos |= k > 0;
            neg |= k < 0;
        }
        return pos && neg;
    }
};

struct ActionSystem {
    std::vector<ActionRelation> relations; // one per bounded face
    std::vector<int> admissibility;        // winding per face: sum wind*Area = 0
};

inline ActionSystem corner_relations(const Diagram& d) {
    ActionSystem sys;
    for (int f : d.bounded_faces()) {
        ActionRelation rel;
        rel.face = f;
        for (const auto& corner : d.face_corners(f)) {
            int& k = rel.coef[corner.crossing];
            k += d.corner_eta(corner.crossing, corner.quadrant);
            if (k == 0) rel.coef.erase(corner.crossing);
        }
        sys.relations.push_back(std::move(rel));
    }
    sys.admissibility = d.winding_numbers();
    return sys;
}

// Positive areas and positive chord actions; all relations hold exactly by
// construction (areas are evaluated from the actions).
struct AreaAssignment {
    std::vector<Rational> action; // per crossing
    std::vector<Rational> area;   // per face; unbounded face stays 0

    Rational word_action(const std::vector<int>& word) const {
        Rational a(0);
        for (int c : word) a += action[c];
        return a;
    }
    Rational min_action() const {
        Rational m = action.front();
        for (const auto& a : action)
            if (a < m) m = a;
        return m;
    }
};

// --- constraint mini-language -----------------------------------------------
//
//   area(B1) <= 1/1000
//   act(a8) == act(a9)
//   act(a4) << act(a7)        (reads: gap * lhs <= rhs)
//   area(B1) * 1000 <= area(B2)
//
// Expressions are sums of optionally scaled act(...)/area(...) atoms and
// rational literals.

struct LinearForm {
    std::map<int, Rational> chord_coef;
    Rational constant;
};

struct Constraint {
    enum class Kind { Le, Eq, MuchLess };
    Kind kind;
    LinearForm lhs, rhs;
    std::string text; // verbatim, echoed into certificates
};

namespace detail {

inline LinearForm area_form(const Diagram& d, const ActionSystem& sys, int face) {
    LinearForm out;
    for (const auto& rel : sys.relations)
        if (rel.face == face) {
            for (const auto& [c, k] : rel.coef) out.chord_coef[c] = Rational(k);
            return out;
        }
    throw Error(Errc::ParseError, "no area relation for face " + d.faces[face].label);
}

inline void accumulate(LinearForm& into, const LinearForm& term, const Rational& scale) {
    into.constant += scale * term.constant;
    for (const auto& [c, v] : term.chord_coef) {
        into.chord_coef[c] += scale * v;
        if (into.chord_coef[c].is_zero()) into.chord_coef.erase(c);
    }
}

} // namespace detail

class ConstraintParser {
public:
    ConstraintParser(const Diagram& d, const ActionSystem& sys) : d_(d), sys_(sys) {}

    Constraint parse(const std::string& line) const {
        static const std::vector<std::pair<std::string, Constraint::Kind>> ops{
            {"<<", Constraint::Kind::MuchLess},
            {"<=", Constraint::Kind::Le},
            {"==", Constraint::Kind::Eq},
        };
        for (const auto& [tok, kind] : ops) {
            auto at = line.find(tok);
            if (at == std::string::npos) continue;
            Constraint c;
            c.kind = kind;
            c.lhs = parse_expr(line.substr(0, at));
            c.rhs = parse_expr(line.substr(at + tok.size()));
            c.text = line;
            return c;
        }
        throw Error(Errc::ParseError, "constraint needs <=, == or <<: '" + line + "'");
    }

    std::vector<Constraint> parse_all(const std::vector<std::string>& lines) const {
        std::vector<Constraint> out;
        for (const auto& l : lines)
            if (l.find_first_not_of(" \t") != std::string::npos) out.push_back(parse(l));
        return out;
    }

private:
    const Diagram& d_;
    const ActionSystem& sys_;

    LinearForm parse_expr(const std::string& s) const {
        LinearForm out;
        size_t i = 0;
        Rational sign(1);
        auto skip = [&] { while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i; };
        skip();
        while (i < s.size()) {
            if (s[i] == '+') { sign = Rational(1); ++i; skip(); continue; }
            if (s[i] == '-') { sign = -sign; ++i; skip(); continue; }
            // term: [rational *] atom | rational | atom [* rational]
            Rational scale = sign;
            bool saw_atom = false;
            LinearForm atom;
            while (true) {
                skip();
                if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
                    size_t j = i;
                    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
                    scale *= Rational::parse(s.substr(i, j - i));
                    i = j;
                } else if (i + 4 <= s.size() && (s.compare(i, 4, "act(") == 0 || s.compare(i, 5, "area(") == 0)) {
                    bool is_act = s.compare(i, 4, "act(") == 0;
                    size_t open = s.find('(', i);
                    size_t close = s.find(')', open);
                    if (close == std::string::npos) throw Error(Errc::ParseError, "unclosed atom in '" + s + "'");
                    std::string name = s.substr(open + 1, close - open - 1);
                    if (is_act)
                        atom.chord_coef[d_.crossing_index(name)] += Rational(1);
                    else
                        detail::accumulate(atom, detail::area_form(d_, sys_, d_.face_index(name)), Rational(1));
                    saw_atom = true;
                    i = close + 1;
                } else {
                    throw Error(Errc::ParseError, "cannot read term at '" + s.substr(i) + "'");
                }
                skip();
                if (i < s.size() && s[i] == '*') { ++i; continue; }
                break;
            }
            if (saw_atom) detail::accumulate(out, atom, scale);
            else out.constant += scale;
            sign = Rational(1);
            skip();
        }
        return out;
    }
};

// --- realizing assignments ----------------------------------------------------

// Finds strictly positive actions (hence areas) meeting all constraints, by
// maximizing a uniform margin t <= 1. Infeasible requests surface the
// simplex Farkas certificate.
inline AreaAssignment realize_areas(const Diagram& d, const ActionSystem& sys,
                                    const std::vector<Constraint>& constraints,
                                    const Rational& gap = Rational(100)) {
    const int n = d.num_crossings();
    const int tvar = n;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    auto add_le = [&](const LinearForm& lhs, Rational rhs_const) {
        std::vector<Rational> row(n + 1, Rational(0));
        for (const auto& [c, v] : lhs.chord_coef) row[c] = v;
        A.push_back(std::move(row));
        b.push_back(rhs_const - lhs.constant);
    };
    // every chord action and face area at least t
    for (int c = 0; c < n; ++c) {
        LinearForm f;
        f.chord_coef[c] = Rational(-1);
        add_le(f, Rational(0));
        A.back()[tvar] = Rational(1);
    }
    for (const auto& rel : sys.relations) {
        LinearForm f;
        for (const auto& [c, k] : rel.coef) f.chord_coef[c] = Rational(-k);
        add_le(f, Rational(0));
        A.back()[tvar] = Rational(1);
    }
    {
        std::vector<Rational> row(n + 1, Rational(0));
        row[tvar] = Rational(1);
        A.push_back(row);
        b.push_back(Rational(1)); // cap the margin
    }
    for (const auto& c : constraints) {
        LinearForm diff;
        Rational lscale = (c.kind == Constraint::Kind::MuchLess) ? gap : Rational(1);
        detail::accumulate(diff, c.lhs, lscale);
        detail::accumulate(diff, c.rhs, Rational(-1));
        Rational rhs_const = -diff.constant;
        diff.constant = Rational(0);
        add_le(diff, rhs_const);
        if (c.kind == Constraint::Kind::Eq) {
            LinearForm neg;
            detail::accumulate(neg, c.rhs, Rational(1));
            detail::accumulate(neg, c.lhs, Rational(-1));
            Rational rc = -neg.constant;
            neg.constant = Rational(0);
            add_le(neg, rc);
        }
    }
    std::vector<Rational> cost(n + 1, Rational(0));
    cost[tvar] = Rational(1);
    LpResult lp = SimplexSolver::maximize(A, b, cost);
    if (lp.status == LpResult::Status::Unbounded)
        throw Error(Errc::UnboundedRequest, "margin objective unbounded");
    if (lp.status == LpResult::Status::Infeasible || lp.objective.sign() <= 0) {
        std::ostringstream msg;
        msg << "no positive assignment meets the constraints";
        if (lp.status == LpResult::Status::Infeasible) {
            msg << "; Farkas multipliers:";
            for (size_t i = 0; i < lp.farkas.size(); ++i)
                if (!lp.farkas[i].is_zero()) msg << " row" << i << "=" << lp.farkas[i].to_string();
        }
        throw Error(Errc::Infeasible, msg.str());
    }
    AreaAssignment out;
    out.action.assign(lp.x.begin(), lp.x.begin() + n);
    out.area.assign(d.num_faces(), Rational(0));
    for (const auto& rel : sys.relations) {
        Rational a(0);
        for (const auto& [c, k] : rel.coef) a += Rational(k) * out.action[c];
        out.area[rel.face] = a;
        if (a.sign() <= 0) throw Error(Errc::Infeasible, "area not strictly positive after solve");
    }
    for (const auto& a : out.action)
        if (a.sign() <= 0) throw Error(Errc::Infeasible, "action not strictly positive after solve");
    return out;
}

// --- candidate enumeration ----------------------------------------------------

inline std::vector<int> canonical_rotation(const std::vector<int>& word) {
    std::vector<int> best = word;
    std::vector<int> cur = word;
    for (size_t r = 1; r < word.size(); ++r) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

// All cyclic words w (canonical, length <= max_len, w != target) with
//     A(w) < A(target) + 3 eps (wl(w) + wl(target)),
// the conservative two-sided version of the orbit/word action estimate.
inline std::vector<std::vector<int>> enumerate_candidates(const Diagram& d,
                                                          const AreaAssignment& assignment,
                                                          const std::vector<int>& target,
                                                          const Rational& epsilon, int max_len,
                                                          long long budget = 2'000'000) {
    if (epsilon.sign() < 0) throw Error(Errc::ParseError, "epsilon must be nonnegative");
    const int n = d.num_crossings();
    Rational target_action = assignment.word_action(target);
    Rational min_act = assignment.min_action();
    std::vector<int> target_canon = canonical_rotation(target);
    std::vector<std::vector<int>> out;
    long long nodes = 0;

    std::vector<int> word;
    auto bound_for = [&](int len) {
        return target_action + Rational(3) * epsilon * Rational(len + static_cast<int>(target.size()));
    };
    for (int len = 1; len <= max_len; ++len) {
        Rational bound = bound_for(len);
        // cheap reject: even the cheapest word of this length is out
        if (!(Rational(len) * min_act < bound)) continue;
        word.assign(len, 0);
        std::vector<Rational> partial(len + 1, Rational(0));
        int depth = 0;
        word.clear();
        std::function<void()> dfs = [&]() {
            if (++nodes > budget)
                throw Error(Errc::BudgetExceeded, "candidate enumeration exceeded node budget");
            if (depth == len) {
                if (canonical_rotation(word) != word) return;
                if (word == target_canon) return;
                out.push_back(word);
                return;
            }
            for (int c = 0; c < n; ++c) {
                Rational next = partial[depth] + assignment.action[c];
                Rational floor = next + Rational(len - depth - 1) * min_act;
                if (!(floor < bound)) continue;
                word.push_back(c);
                partial[depth + 1] = next;
                ++depth;
                dfs();
                --depth;
                word.pop_back();
            }
        };
        dfs();
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        Rational aa = assignment.word_action(a), ba = assignment.word_action(b);
        if (!(aa == ba)) return aa < ba;
        return a < b;
    });
    return out;
}

} // namespace legcert
