#pragma once

// Finite rational linear combinations of tree monomials, with operadic
// composition, the right symmetric group action, and a canonical
// decomposition of a monomial into a single composition (used to evaluate
// derivations and the contracting homotopy by structural recursion).

#include "operad_forge/tree.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace oforge {

class Element {
public:
    Element() = default;

    static Element zero() { return Element(); }
    static Element of(Tree t, Rational c = Rational(1)) {
        Element e;
        e.add_term(std::move(t), std::move(c));
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Tree, Rational>& terms() const { return terms_; }

    // -1 when zero
    int arity() const { return terms_.empty() ? -1 : terms_.begin()->first.arity(); }

    bool degree_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.begin()->first.degree();
        for (auto& [t, c] : terms_)
            if (t.degree() != d) return false;
        return true;
    }
    bool weight_homogeneous() const {
        if (terms_.empty()) return true;
        int w = terms_.begin()->first.weight();
        for (auto& [t, c] : terms_)
            if (t.weight() != w) return false;
        return true;
    }
    // degree of the first term; meaningful for homogeneous elements
    int degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }
    int weight() const { return terms_.empty() ? 0 : terms_.begin()->first.weight(); }
    int max_weight() const {
        int w = 0;
        for (auto& [t, c] : terms_) w = std::max(w, t.weight());
        return w;
    }

    void add_term(Tree t, Rational c) {
        if (c == 0) return;
        if (!terms_.empty() && t.arity() != arity())
            throw std::invalid_argument("mixed arities in one element");
        auto [it, fresh] = terms_.try_emplace(std::move(t), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (auto& [t, c] : o.terms_) add_term(t, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (auto& [t, c] : o.terms_) add_term(t, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& c, const Element& e) {
        Element out;
        if (c == 0) return out;
        for (auto& [t, v] : e.terms_) out.terms_.emplace(t, c * v);
        return out;
    }
    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    std::string str(const GenTable& T) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [t, c] : terms_) {
            if (c > 0 && !first) os << " + ";
            if (c < 0) os << (first ? "-" : " - ");
            Rational a = c < 0 ? Rational(-c) : c;
            if (a != 1) os << to_string(a) << " ";
            os << t.str(T);
            first = false;
        }
        return os.str();
    }

private:
    std::map<Tree, Rational> terms_;
};

inline Element identity_element() { return Element::of(Tree::identity()); }
inline Element corolla_element(int n, const GenTable& T) {
    return n == 1 ? identity_element() : Element::of(Tree::corolla(n, T));
}
inline Element gen_element(int gen_id, const GenTable& T) {
    return Element::of(Tree::bare_generator(gen_id, T));
}

namespace detail {

// Sum of generator degrees strictly after the given leaf in pre-order.
inline int degree_after_leaf(const TreeNode& n, const GenTable& T, int leaf, bool& found) {
    if (n.kind == TreeNode::Kind::leaf) {
        if (n.label == leaf) found = true;
        return 0;
    }
    int d = 0;
    if (n.kind == TreeNode::Kind::gen && found) d += T.at(n.gen).degree;
    for (const auto& c : n.children) d += degree_after_leaf(c, T, leaf, found);
    return d;
}

inline TreeNode graft(const TreeNode& n, int slot, const TreeNode& y, int y_arity) {
    if (n.kind == TreeNode::Kind::leaf) {
        if (n.label == slot) {
            // plant y, labels shifted by slot-1
            std::function<TreeNode(const TreeNode&)> shift = [&](const TreeNode& m) {
                TreeNode out = m;
                if (out.kind == TreeNode::Kind::leaf) out.label += slot - 1;
                for (auto& c : out.children) c = shift(c);
                return out;
            };
            return shift(y);
        }
        TreeNode out = n;
        if (out.label > slot) out.label += y_arity - 1;
        return out;
    }
    TreeNode out = n;
    for (auto& c : out.children) c = graft(c, slot, y, y_arity);
    return out;
}

inline TreeNode relabel(const TreeNode& n, const std::function<int(int)>& f) {
    TreeNode out = n;
    if (out.kind == TreeNode::Kind::leaf) out.label = f(out.label);
    for (auto& c : out.children) c = relabel(c, f);
    return out;
}

}  // namespace detail

// x o_slot y on monomials. The sign is the Koszul interchange moving the
// factors of y past the factors of x that follow the grafted leaf in
// pre-order, times the sign of re-sorting corolla children.
inline std::pair<Tree, int> compose_mono(const Tree& x, int slot, const Tree& y, const GenTable& T) {
    if (slot < 1 || slot > x.arity()) throw std::invalid_argument("composition slot out of range");
    bool found = false;
    int post = detail::degree_after_leaf(x.root(), T, slot, found);
    int sign = ((y.degree() & 1) && (post & 1)) ? -1 : 1;
    TreeNode grafted = detail::graft(x.root(), slot, y.root(), y.arity());
    auto [t, s] = Tree::canonical(std::move(grafted), T);
    return {std::move(t), sign * s};
}

inline Element compose(const Element& x, int slot, const Element& y, const GenTable& T) {
    Element out;
    for (auto& [tx, cx] : x.terms())
        for (auto& [ty, cy] : y.terms()) {
            auto [t, s] = compose_mono(tx, slot, ty, T);
            out.add_term(std::move(t), cx * cy * s);
        }
    return out;
}

// Right action x . sigma: the leaf labeled t is relabeled sigma^{-1}(t), so
// that evaluating on inputs permuted by sigma (with Koszul signs) agrees
// with evaluating x. Composition law: (x.s).t = x.(compose_then(t, s)).
inline std::pair<Tree, int> act_mono(const Tree& x, const Permutation& sigma, const GenTable& T) {
    if (sigma.size() != x.arity()) throw std::invalid_argument("action size mismatch");
    const Permutation inv = sigma.inverse();
    TreeNode r = detail::relabel(x.root(), [&](int t) { return inv(t); });
    return Tree::canonical(std::move(r), T);
}

inline Element acted(const Element& x, const Permutation& sigma, const GenTable& T) {
    Element out;
    for (auto& [t, c] : x.terms()) {
        auto [u, s] = act_mono(t, sigma, T);
        out.add_term(std::move(u), c * s);
    }
    return out;
}

// Decomposition of a non-trivial monomial as one composition plus a final
// leaf relabeling: M = s * acted(compose(x, slot, y), rho). Returns nullopt
// for monomials of weight 0 and for bare generators.
struct Split {
    Tree x;
    int slot = 1;
    Tree y;
    Permutation rho;
    int s = 1;
};

inline std::optional<Split> split_monomial(const Tree& M, const GenTable& T) {
    if (M.weight() == 0 || M.is_bare_generator()) return std::nullopt;

    // pick the first non-leaf child of the root
    const TreeNode& root = M.root();
    int pick = -1;
    for (size_t k = 0; k < root.children.size(); ++k)
        if (root.children[k].kind != TreeNode::Kind::leaf) {
            pick = static_cast<int>(k);
            break;
        }
    if (pick < 0) throw std::logic_error("split_monomial: no non-leaf child in a composite monomial");
    const TreeNode& sub = root.children[static_cast<size_t>(pick)];

    std::vector<int> sub_leaves;
    detail::collect_leaves(sub, sub_leaves);
    std::sort(sub_leaves.begin(), sub_leaves.end());
    const int m = static_cast<int>(sub_leaves.size());
    const int n = M.arity();

    auto rank_in = [](const std::vector<int>& v, int val) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), val) - v.begin());
    };

    // y: the subtree with labels compressed order-preservingly to 1..m
    TreeNode y_raw = detail::relabel(sub, [&](int t) { return rank_in(sub_leaves, t) + 1; });
    auto [y_tree, sy] = Tree::canonical(std::move(y_raw), T);

    // x: M with the subtree collapsed to one leaf. Remaining original labels
    // plus a placeholder at min(sub_leaves) are compressed to 1..n-m+1.
    const int star = sub_leaves.front();
    std::vector<int> x_originals;
    {
        std::vector<char> in_sub(static_cast<size_t>(n) + 1, 0);
        for (int l : sub_leaves) in_sub[static_cast<size_t>(l)] = 1;
        for (int t = 1; t <= n; ++t)
            if (!in_sub[static_cast<size_t>(t)] || t == star) x_originals.push_back(t);
    }
    TreeNode x_raw = root;
    x_raw.children[static_cast<size_t>(pick)] = TreeNode::leaf(star);
    x_raw = detail::relabel(x_raw, [&](int t) { return rank_in(x_originals, t) + 1; });
    auto [x_tree, sx] = Tree::canonical(std::move(x_raw), T);
    const int slot = rank_in(x_originals, star) + 1;

    // composite leaf r corresponds to original label orig[r]
    std::vector<int> orig;
    orig.reserve(static_cast<size_t>(n));
    for (int r = 1; r < slot; ++r) orig.push_back(x_originals[static_cast<size_t>(r) - 1]);
    for (int l : sub_leaves) orig.push_back(l);
    for (int r = slot + 1; r <= n - m + 1; ++r) orig.push_back(x_originals[static_cast<size_t>(r) - 1]);
    Permutation rho = Permutation(std::move(orig)).inverse();

    auto [ctree, cs] = compose_mono(x_tree, slot, y_tree, T);
    auto [mtree, as] = act_mono(ctree, rho, T);
    if (!(mtree == M)) throw std::logic_error("split_monomial: decomposition did not reproduce the monomial");

    Split sp;
    sp.x = std::move(x_tree);
    sp.slot = slot;
    sp.y = std::move(y_tree);
    sp.rho = std::move(rho);
    sp.s = cs * as;  // compose/act gave s * M, so M = s * acted(compose(x,slot,y), rho) with s = 1/(cs*as)
    sp.s = (sp.s == 1) ? 1 : -1;
    return sp;
}

}  // namespace oforge
