#pragma once

// Presentations of DG operads over the commutative base: unary-or-higher
// generators with formal differentials, relation lists, and the contracting
// homotopy on the generator module. Built-ins cover the operads used by the
// verification pipelines.

#include "operad_forge/element.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace oforge {

struct Caps {
    int max_arity = 3;
    int max_weight = 3;
    int index_cap = 3;
    int z_order = 4;
};

struct Relation {
    std::string name;
    Element element;
    int declared_weight = 0;
    bool weight_homogeneous = true;
};

class Presentation {
public:
    std::string name;
    GenTable table;
    std::vector<Element> d_image;  // by generator id; zero allowed
    std::vector<Element> h_image;  // zero or scalar * bare generator; derived
    std::vector<Relation> relations;
    Caps caps;
    bool d_simple = true;          // every d_image is 0 or scalar * identity-labeled bare generator
    bool h_complete = true;        // the generator module contracts onto 0
    std::vector<std::string> h_issues;

    int gen_id(const std::string& gname) const {
        int id = table.find(gname);
        if (id < 0) throw std::invalid_argument(name + ": unknown generator " + gname);
        return id;
    }
    Element gen(const std::string& gname) const { return gen_element(gen_id(gname), table); }
    Element mu() const { return corolla_element(2, table); }

    int add_generator(const std::string& gname, int arity, int degree) {
        int id = table.add(GenData{gname, arity, degree});
        d_image.emplace_back();
        h_image.emplace_back();
        return id;
    }

    void set_differential(const std::string& gname, Element img) {
        int id = gen_id(gname);
        if (!img.is_zero()) {
            if (img.arity() != table.at(id).arity)
                throw std::invalid_argument(name + ": d(" + gname + ") changes arity");
            if (!img.degree_homogeneous() || img.degree() != table.at(id).degree + 1)
                throw std::invalid_argument(name + ": d(" + gname + ") is not of degree +1");
        }
        d_image[static_cast<size_t>(id)] = std::move(img);
    }

    // Adds g and d_g as a generator pair with d(g) = d_g.
    std::pair<int, int> add_pair(const std::string& gname, int arity, int degree) {
        int g = add_generator(gname, arity, degree);
        int dg = add_generator("d_" + gname, arity, degree + 1);
        d_image[static_cast<size_t>(g)] = gen_element(dg, table);
        return {g, dg};
    }

    void add_relation(std::string rname, Element el) {
        Relation r;
        r.name = std::move(rname);
        r.weight_homogeneous = el.weight_homogeneous();
        r.declared_weight = el.is_zero() ? 0 : el.weight();
        r.element = std::move(el);
        relations.push_back(std::move(r));
    }

    // Called once after generators are final: derives the contracting
    // homotopy h with h(d(g)) = g from the pairing of generators with their
    // formal differentials.
    void finalize() {
        const size_t n = table.gens.size();
        h_image.assign(n, Element());
        std::vector<char> targeted(n, 0);
        for (size_t g = 0; g < n; ++g) {
            const Element& img = d_image[g];
            if (img.is_zero()) continue;
            bool simple = img.size() == 1 && img.terms().begin()->first.is_bare_generator() &&
                          identity_labeled(img.terms().begin()->first);
            if (!simple) {
                d_simple = false;
                h_issues.push_back("d(" + table.at(static_cast<int>(g)).name +
                                   ") is not a single generator; no homotopy derived for it");
                h_complete = false;
                continue;
            }
            const Tree& t = img.terms().begin()->first;
            const Rational& c = img.terms().begin()->second;
            int tgt = t.root().gen;
            if (!d_image[static_cast<size_t>(tgt)].is_zero()) {
                h_issues.push_back("generator " + table.at(tgt).name + " is a differential image but not closed");
                h_complete = false;
                continue;
            }
            if (targeted[static_cast<size_t>(tgt)]) {
                h_issues.push_back("generator " + table.at(tgt).name + " is hit by two differentials");
                h_complete = false;
                continue;
            }
            targeted[static_cast<size_t>(tgt)] = 1;
            h_image[static_cast<size_t>(tgt)] = (Rational(1) / c) * gen_element(static_cast<int>(g), table);
        }
        for (size_t g = 0; g < n; ++g) {
            if (d_image[g].is_zero() && !targeted[g]) {
                h_issues.push_back("generator " + table.at(static_cast<int>(g)).name +
                                   " is closed but not a differential image; module is not contractible");
                h_complete = false;
            }
        }
    }

    static bool identity_labeled(const Tree& t) {
        int k = 1;
        for (const auto& c : t.root().children)
            if (c.kind != TreeNode::Kind::leaf || c.label != k++) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Differential: the unique derivation extending the generator differentials.

namespace detail {

inline Permutation bare_gen_action(const Tree& M) {
    // M = act(B_g, sigma); sigma^{-1}(s) = label of slot s
    std::vector<int> labels;
    for (const auto& c : M.root().children) labels.push_back(c.label);
    return Permutation(std::move(labels)).inverse();
}

// Replace the decoration of one generator vertex (pre-order position `target`
// among generator vertices) by another generator of the same arity.
inline bool replace_gen_at(TreeNode& n, int& counter, int target, int new_gen) {
    if (n.kind == TreeNode::Kind::gen) {
        if (counter == target) {
            n.gen = new_gen;
            return true;
        }
        ++counter;
    }
    for (auto& c : n.children)
        if (replace_gen_at(c, counter, target, new_gen)) return true;
    return false;
}

// (prefix degree before the k-th generator vertex, generator id), pre-order.
inline void gen_vertex_scan(const TreeNode& n, const GenTable& T, int& prefix,
                            std::vector<std::pair<int, int>>& out) {
    if (n.kind == TreeNode::Kind::gen) {
        out.emplace_back(prefix, n.gen);
        prefix += T.at(n.gen).degree;
    }
    for (const auto& c : n.children) gen_vertex_scan(c, T, prefix, out);
}

}  // namespace detail

// Applies a per-generator unary operator of odd degree vertex by vertex:
// result = sum over generator vertices v of (Koszul prefix sign) * (tree with
// the decoration at v replaced by image(gen_v)), where every image is zero or
// scalar * same-arity generator. Shared by the differential fast path and the
// vertexwise homotopy.
inline Element apply_vertexwise(const Tree& M, const GenTable& T,
                                const std::vector<Element>& images) {
    Element out;
    int prefix = 0;
    std::vector<std::pair<int, int>> vertices;
    detail::gen_vertex_scan(M.root(), T, prefix, vertices);
    for (size_t k = 0; k < vertices.size(); ++k) {
        auto [pre, gid] = vertices[k];
        const Element& img = images[static_cast<size_t>(gid)];
        if (img.is_zero()) continue;
        const Tree& bare = img.terms().begin()->first;
        const Rational& c = img.terms().begin()->second;
        TreeNode copy = M.root();
        int counter = 0;
        detail::replace_gen_at(copy, counter, static_cast<int>(k), bare.root().gen);
        auto [t, s] = Tree::canonical(std::move(copy), T);
        int sign = (pre & 1) ? -1 : 1;
        out.add_term(std::move(t), c * Rational(sign * s));
    }
    return out;
}

inline Element differential(const Presentation& P, const Element& e);

inline Element differential_mono(const Presentation& P, const Tree& M) {
    if (M.weight() == 0) return Element();
    if (M.is_bare_generator())
        return acted(P.d_image[static_cast<size_t>(M.root().gen)], detail::bare_gen_action(M), P.table);
    if (P.d_simple) return apply_vertexwise(M, P.table, P.d_image);
    auto sp = split_monomial(M, P.table);
    Element dx = differential(P, Element::of(sp->x));
    Element dy = differential(P, Element::of(sp->y));
    Element inner = compose(dx, sp->slot, Element::of(sp->y), P.table);
    int sx = (sp->x.degree() & 1) ? -1 : 1;
    inner += Rational(sx) * compose(Element::of(sp->x), sp->slot, dy, P.table);
    return Rational(sp->s) * acted(inner, sp->rho, P.table);
}

inline Element differential(const Presentation& P, const Element& e) {
    Element out;
    for (auto& [t, c] : e.terms()) out += c * differential_mono(P, t);
    return out;
}

// ---------------------------------------------------------------------------
// Relation builders.

// Left-to-right word of unary generators, leftmost outermost:
// word({a,b}) acts as a after b.
inline Element word(const Presentation& P, const std::vector<std::string>& names) {
    Element w = P.gen(names.front());
    for (size_t k = 1; k < names.size(); ++k) w = compose(w, 1, P.gen(names[k]), P.table);
    return w;
}

// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba of arity-1 elements.
inline Element commutator(const Presentation& P, const Element& a, const Element& b) {
    if (a.is_zero() || b.is_zero()) return Element();
    if (a.arity() != 1 || b.arity() != 1) throw std::invalid_argument("commutator needs arity-1 elements");
    int s = (a.degree() & 1) && (b.degree() & 1) ? -1 : 1;
    return compose(a, 1, b, P.table) - Rational(s) * compose(b, 1, a, P.table);
}

// The order <= r differential operator identity for a unary generator, as an
// operad relation of arity r+1: sum over p+q = r+1, p >= 1 of
// (-1)^{p+1} sum over (p,q)-shuffles of (mu^{q+1} o_1 (g o_1 mu^p)) . sigma^{-1}.
// For r = 1 this is the Leibniz rule; for r = 2 it is the seven-term form.
inline Element diffop_relation(const Presentation& P, const std::string& gname, int r) {
    const GenTable& T = P.table;
    Element g = P.gen(gname);
    if (g.arity() != 1) throw std::invalid_argument("diffop_relation needs a unary generator");
    Element rel;
    for (int p = 1; p <= r + 1; ++p) {
        int q = r + 1 - p;
        Element inner = compose(g, 1, corolla_element(p, T), T);
        Element base = compose(corolla_element(q + 1, T), 1, inner, T);
        Rational sign((p % 2 == 1) ? 1 : -1);
        for (const Permutation& sigma : shuffles(p, q))
            rel += sign * acted(base, sigma.inverse(), T);
    }
    return rel;
}

// ---------------------------------------------------------------------------
// Built-in presentations.

namespace detail {

inline void compositions_of(int n, int parts, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        if (n >= 1) {
            cur.push_back(n);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first + parts - 1 <= n; ++first) {
        cur.push_back(first);
        compositions_of(n - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> compositions(int n, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    compositions_of(n, parts, cur, out);
    return out;
}

// Nested bracket [phi_{q1}, [phi_{q2}, ... [phi_{q_{p-1}}, d_phi_{q_p}] ...]],
// rightmost innermost.
inline Element nested_bracket(const Presentation& P, const std::string& base,
                              const std::vector<int>& qs) {
    Element inner = P.gen("d_" + base + std::to_string(qs.back()));
    for (int k = static_cast<int>(qs.size()) - 2; k >= 0; --k)
        inner = commutator(P, P.gen(base + std::to_string(qs[static_cast<size_t>(k)])), inner);
    return inner;
}

inline Element trivialization_tail(const Presentation& P, const std::string& base, int n) {
    Element sum;
    for (int p = 2; p <= n; ++p) {
        Rational coef = Rational(1) / Rational(factorial(p));
        for (const auto& qs : compositions(n, p)) sum += coef * nested_bracket(P, base, qs);
    }
    return sum;
}

inline void add_bv_core(Presentation& P) {
    P.add_pair("Delta", 1, -1);
    P.add_relation("d_Delta", P.gen("d_Delta"));
    P.add_relation("Delta_sq", word(P, {"Delta", "Delta"}));
    P.add_relation("order2_Delta", diffop_relation(P, "Delta", 2));
}

}  // namespace detail

inline Presentation builtin_presentation(const std::string& which, const Caps& caps = Caps{}) {
    Presentation P;
    P.name = which;
    P.caps = caps;
    const int N = caps.index_cap;
    if (which == "Com") {
        // the base operad itself: no generators, no relations
    } else if (which == "EBV") {
        P.add_pair("i", 1, -2);
        P.add_relation("commute_i_di", word(P, {"i", "d_i"}) - word(P, {"d_i", "i"}));
        P.add_relation("order2_i", diffop_relation(P, "i", 2));
    } else if (which == "BV") {
        detail::add_bv_core(P);
    } else if (which == "J") {
        P.add_pair("i", 1, -2);
        P.add_pair("j", 1, -1);
        P.add_relation("jacobi_i_di",
                       word(P, {"i", "d_i"}) - word(P, {"d_i", "i"}) - Rational(2) * word(P, {"j", "i"}));
        P.add_relation("commute_i_j", word(P, {"i", "j"}) - word(P, {"j", "i"}));
        P.add_relation("anticommute_di_j", word(P, {"d_i", "j"}) + word(P, {"j", "d_i"}));
        P.add_relation("j_sq", word(P, {"j", "j"}));
        P.add_relation("order1_j", diffop_relation(P, "j", 1));
        P.add_relation("order2_i", diffop_relation(P, "i", 2));
    } else if (which == "CBV" || which == "CBVmodDelta") {
        for (int n = 1; n <= N; ++n) P.add_pair("Delta" + std::to_string(n), 1, 1 - 2 * n);
        for (int n = 1; n <= N; ++n) {
            Element rel = P.gen("d_Delta" + std::to_string(n));
            for (int a = 1; a <= n - 1; ++a)
                rel += word(P, {"Delta" + std::to_string(a), "Delta" + std::to_string(n - a)});
            P.add_relation("dDelta" + std::to_string(n), std::move(rel));
        }
        for (int n = 1; n <= N; ++n)
            P.add_relation("order" + std::to_string(n + 1) + "_Delta" + std::to_string(n),
                           diffop_relation(P, "Delta" + std::to_string(n), n + 1));
        if (which == "CBVmodDelta") {
            for (int n = 1; n <= N; ++n) P.add_pair("phi" + std::to_string(n), 1, -2 * n);
            for (int n = 1; n <= N; ++n) {
                Element rel = P.gen("d_phi" + std::to_string(n)) + detail::trivialization_tail(P, "phi", n) +
                              P.gen("Delta" + std::to_string(n));
                P.add_relation("triv" + std::to_string(n), std::move(rel));
            }
        }
    } else if (which == "BVmodDelta") {
        detail::add_bv_core(P);
        for (int n = 1; n <= N; ++n) P.add_pair("phi" + std::to_string(n), 1, -2 * n);
        {
            Element rel = P.gen("d_phi1") + P.gen("Delta");
            P.add_relation("triv1", std::move(rel));
        }
        for (int n = 2; n <= N; ++n)
            P.add_relation("triv" + std::to_string(n),
                           P.gen("d_phi" + std::to_string(n)) + detail::trivialization_tail(P, "phi", n));
    } else if (which == "ECBV") {
        for (int n = 1; n <= N; ++n) P.add_pair("i" + std::to_string(n), 1, -2 * n);
        for (int n = 1; n <= N; ++n)
            for (int m = n; m <= N; ++m)
                P.add_relation("comm_i" + std::to_string(n) + "_i" + std::to_string(m),
                               commutator(P, P.gen("i" + std::to_string(n)), P.gen("i" + std::to_string(m))));
        for (int n = 2; n <= N + 1; ++n) {  // all indices mentioned are <= N
            Element rel;
            for (int jj = 1; jj <= n - 1; ++jj)
                rel += commutator(P, P.gen("i" + std::to_string(jj)),
                                  P.gen("d_i" + std::to_string(n - jj)));
            P.add_relation("exact" + std::to_string(n), std::move(rel));
        }
        for (int n = 1; n <= N; ++n)
            P.add_relation("order" + std::to_string(n + 1) + "_i" + std::to_string(n),
                           diffop_relation(P, "i" + std::to_string(n), n + 1));
    } else {
        throw std::invalid_argument("unknown builtin presentation: " + which);
    }
    P.finalize();
    return P;
}

inline const std::array<const char*, 8>& builtin_names() {
    static const std::array<const char*, 8> names = {"Com", "BV",  "EBV",         "BVmodDelta",
                                                     "CBV", "J",   "CBVmodDelta", "ECBV"};
    return names;
}

// ---------------------------------------------------------------------------
// Presentation consistency report.

struct CheckLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct PresentationReport {
    std::vector<CheckLine> lines;
    bool pass = true;
    void add(std::string name, bool ok, std::string detail_ = "") {
        pass = pass && ok;
        lines.push_back({std::move(name), ok, std::move(detail_)});
    }
};

inline PresentationReport check_presentation(const Presentation& P) {
    PresentationReport rep;
    for (size_t g = 0; g < P.table.gens.size(); ++g) {
        const std::string& gname = P.table.at(static_cast<int>(g)).name;
        Element dd = differential(P, P.d_image[g]);
        rep.add("d_squared(" + gname + ")", dd.is_zero(),
                dd.is_zero() ? "" : "d(d(" + gname + ")) = " + dd.str(P.table));
    }
    // generator module SDR onto 0: d h + h d = 1 on each generator
    auto h_on = [&](const Element& e) {
        Element out;
        for (auto& [t, c] : e.terms()) {
            if (!t.is_bare_generator()) throw std::invalid_argument("h applied outside the generator module");
            out += c * acted(P.h_image[static_cast<size_t>(t.root().gen)], detail::bare_gen_action(t), P.table);
        }
        return out;
    };
    if (!P.h_complete) {
        std::string why;
        for (auto& s : P.h_issues) why += (why.empty() ? "" : "; ") + s;
        rep.add("generator_module_sdr", false, why);
    } else {
        bool ok = true;
        std::string why;
        for (size_t g = 0; g < P.table.gens.size(); ++g) {
            Element e = gen_element(static_cast<int>(g), P.table);
            Element lhs = differential(P, h_on(e)) + h_on(P.d_image[g]);
            if (!(lhs == e)) {
                ok = false;
                why = "dh+hd != 1 at " + P.table.at(static_cast<int>(g)).name;
                break;
            }
        }
        rep.add("generator_module_sdr", ok, why);
    }
    for (const Relation& r : P.relations) {
        bool deg_ok = r.element.degree_homogeneous();
        rep.add("relation_degree_homogeneous(" + r.name + ")", deg_ok);
        if (r.weight_homogeneous) {
            bool w_ok = r.element.is_zero() || r.element.weight() == r.declared_weight;
            rep.add("relation_weight(" + r.name + ")", w_ok);
        } else {
            rep.add("relation_weight(" + r.name + ")", true, "not weight-homogeneous (allowed, flagged)");
        }
    }
    return rep;
}

}  // namespace oforge
