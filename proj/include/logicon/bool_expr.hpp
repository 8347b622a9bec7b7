#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bool_vec.hpp"
#include "errors.hpp"

namespace logicon {

/// Immutable Boolean expression over state variables x_i and input variables
/// u_j. Copies are cheap (nodes are shared, never mutated).
///
/// The factories perform constant folding and double-negation removal and
/// flatten nested conjunctions/disjunctions; nothing stronger, so the
/// structure written by a caller is the structure that prints.
class bool_expr {
public:
    enum class kind {
        constant,
        state_var,
        input_var,
        negation,
        conjunction,
        disjunction,
    };

    /// Default-constructed expression is the constant 0.
    bool_expr() : bool_expr(constant(false)) {}

    static bool_expr constant(bool v) {
        node n;
        n.k = kind::constant;
        n.value = v;
        return bool_expr(std::move(n));
    }

    static bool_expr state_var(std::size_t i) {
        node n;
        n.k = kind::state_var;
        n.index = i;
        return bool_expr(std::move(n));
    }

    static bool_expr input_var(std::size_t j) {
        node n;
        n.k = kind::input_var;
        n.index = j;
        return bool_expr(std::move(n));
    }

    static bool_expr negation(bool_expr e) {
        if (e.node_kind() == kind::constant) return constant(!e.value());
        if (e.node_kind() == kind::negation) return e.children()[0];
        node n;
        n.k = kind::negation;
        n.kids.push_back(std::move(e));
        return bool_expr(std::move(n));
    }

    static bool_expr conjunction(std::vector<bool_expr> terms) {
        return nary(kind::conjunction, std::move(terms));
    }

    static bool_expr disjunction(std::vector<bool_expr> terms) {
        return nary(kind::disjunction, std::move(terms));
    }

    static bool_expr conjunction(bool_expr a, bool_expr b) {
        std::vector<bool_expr> v;
        v.push_back(std::move(a));
        v.push_back(std::move(b));
        return conjunction(std::move(v));
    }

    static bool_expr disjunction(bool_expr a, bool_expr b) {
        std::vector<bool_expr> v;
        v.push_back(std::move(a));
        v.push_back(std::move(b));
        return disjunction(std::move(v));
    }

    kind node_kind() const { return ptr_->k; }

    bool value() const { return ptr_->value; }

    std::size_t index() const { return ptr_->index; }

    const std::vector<bool_expr>& children() const { return ptr_->kids; }

    bool eval(const bool_vec& x, const bool_vec& u) const {
        const node& n = *ptr_;
        switch (n.k) {
            case kind::constant: return n.value;
            case kind::state_var: return x.get(n.index);
            case kind::input_var: return u.get(n.index);
            case kind::negation: return !n.kids[0].eval(x, u);
            case kind::conjunction:
                for (const auto& c : n.kids)
                    if (!c.eval(x, u)) return false;
                return true;
            case kind::disjunction:
                for (const auto& c : n.kids)
                    if (c.eval(x, u)) return true;
                return false;
        }
        return false;
    }

    /// Calls fn(kind, index) for every variable occurrence, depth-first
    /// left to right. Only state_var and input_var kinds are reported.
    template <class Fn>
    void visit_vars(Fn&& fn) const {
        const node& n = *ptr_;
        switch (n.k) {
            case kind::state_var:
            case kind::input_var: fn(n.k, n.index); break;
            case kind::constant: break;
            default:
                for (const auto& c : n.kids) c.visit_vars(fn);
        }
    }

    /// Rewrites every variable: state_var(i) becomes on_state(i),
    /// input_var(j) becomes on_input(j). Structure above the leaves is
    /// rebuilt through the factories, so folding rules apply.
    bool_expr substitute(const std::function<bool_expr(std::size_t)>& on_state,
                         const std::function<bool_expr(std::size_t)>& on_input) const {
        const node& n = *ptr_;
        switch (n.k) {
            case kind::constant: return *this;
            case kind::state_var: return on_state ? on_state(n.index) : *this;
            case kind::input_var: return on_input ? on_input(n.index) : *this;
            case kind::negation: return negation(n.kids[0].substitute(on_state, on_input));
            case kind::conjunction:
            case kind::disjunction: {
                std::vector<bool_expr> kids;
                kids.reserve(n.kids.size());
                for (const auto& c : n.kids) kids.push_back(c.substitute(on_state, on_input));
                return n.k == kind::conjunction ? conjunction(std::move(kids))
                                                : disjunction(std::move(kids));
            }
        }
        return *this;
    }

    /// Structural equality (same tree shape, same leaves).
    friend bool operator==(const bool_expr& a, const bool_expr& b) {
        if (a.ptr_ == b.ptr_) return true;
        const node& x = *a.ptr_;
        const node& y = *b.ptr_;
        if (x.k != y.k) return false;
        switch (x.k) {
            case kind::constant: return x.value == y.value;
            case kind::state_var:
            case kind::input_var: return x.index == y.index;
            default:
                if (x.kids.size() != y.kids.size()) return false;
                for (std::size_t i = 0; i < x.kids.size(); ++i)
                    if (!(x.kids[i] == y.kids[i])) return false;
                return true;
        }
    }

    /// Prints with 1-based variable names (x1, u1), operators ! & |, and
    /// parentheses only where precedence demands them.
    void print(std::ostream& out) const { print_prec(out, 0); }

    std::string to_string() const {
        std::ostringstream s;
        print(s);
        return s.str();
    }

private:
    struct node {
        kind k = kind::constant;
        bool value = false;
        std::size_t index = 0;
        std::vector<bool_expr> kids;
    };

    explicit bool_expr(node n) : ptr_(std::make_shared<const node>(std::move(n))) {}

    static bool_expr nary(kind k, std::vector<bool_expr> terms) {
        const bool absorbing = (k == kind::disjunction); // OR with a 1, AND with a 0
        std::vector<bool_expr> kept;
        kept.reserve(terms.size());
        for (auto& t : terms) {
            if (t.node_kind() == k) {
                // Flatten nested nodes of the same kind.
                for (const auto& c : t.children()) kept.push_back(c);
            } else if (t.node_kind() == kind::constant) {
                if (t.value() == absorbing) return constant(absorbing);
                // Neutral constant: drop it.
            } else {
                kept.push_back(std::move(t));
            }
        }
        if (kept.empty()) return constant(!absorbing);
        if (kept.size() == 1) return kept[0];
        node n;
        n.k = k;
        n.kids = std::move(kept);
        return bool_expr(std::move(n));
    }

    // Precedence levels: | is 1, & is 2, ! is 3, atoms need no parentheses.
    void print_prec(std::ostream& out, int parent) const {
        const node& n = *ptr_;
        switch (n.k) {
            case kind::constant: out << (n.value ? '1' : '0'); break;
            case kind::state_var: out << 'x' << (n.index + 1); break;
            case kind::input_var: out << 'u' << (n.index + 1); break;
            case kind::negation: {
                out << '!';
                const bool_expr& c = n.kids[0];
                const kind ck = c.node_kind();
                const bool atom = ck == kind::constant || ck == kind::state_var ||
                                  ck == kind::input_var || ck == kind::negation;
                if (atom) {
                    c.print_prec(out, 3);
                } else {
                    out << '(';
                    c.print_prec(out, 0);
                    out << ')';
                }
                break;
            }
            case kind::conjunction:
            case kind::disjunction: {
                const int prec = n.k == kind::conjunction ? 2 : 1;
                const bool parens = prec < parent;
                if (parens) out << '(';
                for (std::size_t i = 0; i < n.kids.size(); ++i) {
                    if (i) out << (n.k == kind::conjunction ? " & " : " | ");
                    n.kids[i].print_prec(out, prec);
                }
                if (parens) out << ')';
                break;
            }
        }
    }

    std::shared_ptr<const node> ptr_;
};

inline std::ostream& operator<<(std::ostream& out, const bool_expr& e) {
    e.print(out);
    return out;
}

/// A vector-valued Boolean map F : B^n_state x B^m_input -> B^n_state,
/// one expression per state component.
struct bool_map {
    std::size_t n_state = 0;
    std::size_t n_input = 0;
    std::vector<bool_expr> components;

    bool_map() = default;

    bool_map(std::size_t n_state_, std::size_t n_input_, std::vector<bool_expr> components_)
        : n_state(n_state_), n_input(n_input_), components(std::move(components_)) {
        if (components.size() != n_state)
            throw shape_error("bool_map has " + std::to_string(components.size()) +
                              " components for " + std::to_string(n_state) + " state variables");
        for (std::size_t i = 0; i < components.size(); ++i) {
            components[i].visit_vars([&](bool_expr::kind k, std::size_t idx) {
                if (k == bool_expr::kind::state_var && idx >= n_state)
                    throw index_error("component " + std::to_string(i + 1) + " references x" +
                                      std::to_string(idx + 1) + " but the map has only " +
                                      std::to_string(n_state) + " state variables");
                if (k == bool_expr::kind::input_var && idx >= n_input)
                    throw index_error("component " + std::to_string(i + 1) + " references u" +
                                      std::to_string(idx + 1) + " but the map has only " +
                                      std::to_string(n_input) + " input variables");
            });
        }
    }

    bool_vec eval(const bool_vec& x, const bool_vec& u) const {
        if (x.size() != n_state || u.size() != n_input)
            throw shape_error("bool_map::eval: expected state size " + std::to_string(n_state) +
                              " and input size " + std::to_string(n_input) + ", got " +
                              std::to_string(x.size()) + " and " + std::to_string(u.size()));
        bool_vec y(n_state);
        for (std::size_t i = 0; i < n_state; ++i) y.set(i, components[i].eval(x, u));
        return y;
    }
};

/// Substitutes the inputs with the constants in u, producing an autonomous
/// map over the same state variables.
inline bool_map fix_inputs(const bool_map& f, const bool_vec& u) {
    if (u.size() != f.n_input)
        throw shape_error("fix_inputs: input vector size " + std::to_string(u.size()) +
                          " does not match n_input " + std::to_string(f.n_input));
    std::vector<bool_expr> comps;
    comps.reserve(f.n_state);
    for (const auto& c : f.components)
        comps.push_back(
            c.substitute(nullptr, [&](std::size_t j) { return bool_expr::constant(u.get(j)); }));
    return bool_map(f.n_state, 0, std::move(comps));
}

/// Keeps only the listed state components (in the given order) and renumbers
/// the state variables accordingly. Every kept component must reference only
/// kept state variables.
inline bool_map restrict_states(const bool_map& f, const std::vector<std::size_t>& kept) {
    std::vector<std::size_t> remap(f.n_state, f.n_state);
    for (std::size_t pos = 0; pos < kept.size(); ++pos) {
        if (kept[pos] >= f.n_state)
            throw index_error("restrict_states: index " + std::to_string(kept[pos]) +
                              " out of range");
        remap[kept[pos]] = pos;
    }
    std::vector<bool_expr> comps;
    comps.reserve(kept.size());
    for (std::size_t i : kept) {
        comps.push_back(f.components[i].substitute(
            [&](std::size_t s) {
                if (remap[s] == f.n_state)
                    throw index_error("restrict_states: kept component x" + std::to_string(i + 1) +
                                      " references dropped variable x" + std::to_string(s + 1));
                return bool_expr::state_var(remap[s]);
            },
            nullptr));
    }
    return bool_map(kept.size(), f.n_input, std::move(comps));
}

} // namespace logicon
