#pragma once

// Tree monomials for relatively free operads over the commutative operad.
//
// A monomial is a rooted tree whose inner vertices are either product
// corollas (the base operad, one basis element per arity, degree 0) or
// generator vertices, with leaves labeled bijectively by 1..n. Corolla
// children are kept sorted by a total order on subtrees; the Koszul sign of
// the sorting permutation (on total subtree degrees) is returned to the
// caller and absorbed into coefficients. Nested corollas are contracted.
// Chains of unary generator vertices are stored directly; the implicit
// unary identity between them carries degree 0 and never contributes signs.

#include "operad_forge/permutation.hpp"
#include "operad_forge/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oforge {

struct GenData {
    std::string name;
    int arity = 1;
    int degree = 0;
};

struct GenTable {
    std::vector<GenData> gens;

    int find(const std::string& name) const {
        for (size_t k = 0; k < gens.size(); ++k)
            if (gens[k].name == name) return static_cast<int>(k);
        return -1;
    }
    const GenData& at(int id) const { return gens.at(static_cast<size_t>(id)); }
    int add(GenData g) {
        if (find(g.name) >= 0) throw std::invalid_argument("duplicate generator name: " + g.name);
        gens.push_back(std::move(g));
        return static_cast<int>(gens.size()) - 1;
    }
};

struct MalformedTree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TreeNode {
    enum class Kind : std::uint8_t { leaf, corolla, gen };
    Kind kind = Kind::leaf;
    int label = 0;  // leaf label
    int gen = -1;   // generator table index
    std::vector<TreeNode> children;

    static TreeNode leaf(int lab) {
        TreeNode n;
        n.kind = Kind::leaf;
        n.label = lab;
        return n;
    }
    static TreeNode corolla(std::vector<TreeNode> ch) {
        TreeNode n;
        n.kind = Kind::corolla;
        n.children = std::move(ch);
        return n;
    }
    static TreeNode generator(int id, std::vector<TreeNode> ch) {
        TreeNode n;
        n.kind = Kind::gen;
        n.gen = id;
        n.children = std::move(ch);
        return n;
    }
};

namespace detail {

inline int node_degree(const TreeNode& n, const GenTable& T) {
    int d = (n.kind == TreeNode::Kind::gen) ? T.at(n.gen).degree : 0;
    for (const auto& c : n.children) d += node_degree(c, T);
    return d;
}

inline int node_weight(const TreeNode& n) {
    int w = (n.kind == TreeNode::Kind::gen) ? 1 : 0;
    for (const auto& c : n.children) w += node_weight(c);
    return w;
}

inline void collect_leaves(const TreeNode& n, std::vector<int>& out) {
    if (n.kind == TreeNode::Kind::leaf) {
        out.push_back(n.label);
        return;
    }
    for (const auto& c : n.children) collect_leaves(c, out);
}

// Structure serialization: generator names and corolla arities, no labels.
inline void struct_key(const TreeNode& n, const GenTable& T, std::string& out) {
    switch (n.kind) {
        case TreeNode::Kind::leaf: out += '*'; return;
        case TreeNode::Kind::gen: out += 'g'; out += T.at(n.gen).name; break;
        case TreeNode::Kind::corolla: out += 'm'; break;
    }
    out += '(';
    for (const auto& c : n.children) struct_key(c, T, out);
    out += ')';
}

inline void label_key(const TreeNode& n, std::string& out) {
    if (n.kind == TreeNode::Kind::leaf) {
        out += std::to_string(n.label);
        out += ',';
        return;
    }
    for (const auto& c : n.children) label_key(c, out);
}

// Total order on canonical subtrees: structure first, then the pre-order
// leaf label sequence. Distinct subtrees of a common tree never tie (their
// leaf sets are disjoint).
inline int cmp_nodes(const TreeNode& a, const TreeNode& b, const GenTable& T) {
    std::string sa, sb;
    struct_key(a, T, sa);
    struct_key(b, T, sb);
    if (sa != sb) return sa < sb ? -1 : 1;
    std::string la, lb;
    label_key(a, la);
    label_key(b, lb);
    if (la != lb) return la < lb ? -1 : 1;
    return 0;
}

// Normalizes a raw tree in place; returns the Koszul sign picked up by
// sorting corolla children (block degrees = total subtree degrees).
inline int canonicalize_node(TreeNode& n, const GenTable& T) {
    if (n.kind == TreeNode::Kind::leaf) return 1;
    int sign = 1;
    for (auto& c : n.children) sign *= canonicalize_node(c, T);

    if (n.kind == TreeNode::Kind::gen) {
        const GenData& g = T.at(n.gen);
        if (static_cast<int>(n.children.size()) != g.arity)
            throw MalformedTree("generator " + g.name + " used with wrong arity");
        return sign;
    }

    // corolla: contract nested corollas (degree-0 vertices, no sign)
    std::vector<TreeNode> flat;
    for (auto& c : n.children) {
        if (c.kind == TreeNode::Kind::corolla)
            for (auto& gc : c.children) flat.push_back(std::move(gc));
        else
            flat.push_back(std::move(c));
    }
    n.children = std::move(flat);
    if (n.children.size() == 1) {
        // unary identity vertex: drop it
        TreeNode only = std::move(n.children.front());
        n = std::move(only);
        return sign;
    }
    if (n.children.size() < 2) throw MalformedTree("empty corolla");

    // sort children, tracking the Koszul sign of the block permutation
    std::vector<int> order(n.children.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k) + 1;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return cmp_nodes(n.children[static_cast<size_t>(x) - 1], n.children[static_cast<size_t>(y) - 1], T) < 0;
    });
    std::vector<int> degs(n.children.size());
    for (size_t k = 0; k < degs.size(); ++k) degs[k] = node_degree(n.children[k], T);
    sign *= koszul_sign(Permutation(std::vector<int>(order)), degs);
    std::vector<TreeNode> sorted;
    sorted.reserve(n.children.size());
    for (int idx : order) sorted.push_back(std::move(n.children[static_cast<size_t>(idx) - 1]));
    n.children = std::move(sorted);
    return sign;
}

inline void render(const TreeNode& n, const GenTable& T, std::string& out) {
    switch (n.kind) {
        case TreeNode::Kind::leaf: out += std::to_string(n.label); return;
        case TreeNode::Kind::gen: out += T.at(n.gen).name; break;
        case TreeNode::Kind::corolla: out += "mu"; break;
    }
    out += '(';
    bool first = true;
    for (const auto& c : n.children) {
        if (!first) out += ", ";
        first = false;
        render(c, T, out);
    }
    out += ')';
}

}  // namespace detail

// A canonical signed-basis monomial. Immutable after construction.
class Tree {
public:
    Tree() = default;

    const TreeNode& root() const { return root_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }
    int weight() const { return weight_; }
    const std::string& key() const { return key_; }

    bool operator==(const Tree& o) const { return key_ == o.key_; }
    bool operator<(const Tree& o) const { return key_ < o.key_; }

    std::string str(const GenTable& T) const {
        std::string s;
        detail::render(root_, T, s);
        return s;
    }

    bool is_identity() const { return root_.kind == TreeNode::Kind::leaf; }
    bool is_bare_generator() const {
        if (root_.kind != TreeNode::Kind::gen) return false;
        for (const auto& c : root_.children)
            if (c.kind != TreeNode::Kind::leaf) return false;
        return true;
    }

    // Canonicalizes a raw tree. The returned sign satisfies
    // raw = sign * canonical as basis vectors. Validates leaf labels.
    static std::pair<Tree, int> canonical(TreeNode raw, const GenTable& T) {
        int sign = detail::canonicalize_node(raw, T);
        Tree t;
        std::vector<int> leaves;
        detail::collect_leaves(raw, leaves);
        std::vector<char> seen(leaves.size() + 1, 0);
        for (int l : leaves) {
            if (l < 1 || l > static_cast<int>(leaves.size()) || seen[static_cast<size_t>(l)])
                throw MalformedTree("leaf labels are not a bijection with 1..n");
            seen[static_cast<size_t>(l)] = 1;
        }
        t.arity_ = static_cast<int>(leaves.size());
        t.degree_ = detail::node_degree(raw, T);
        t.weight_ = detail::node_weight(raw);
        std::string sk, lk;
        detail::struct_key(raw, T, sk);
        detail::label_key(raw, lk);
        t.key_ = sk + "|" + lk;
        t.root_ = std::move(raw);
        return {std::move(t), sign};
    }

    static Tree identity() {
        auto [t, s] = canonical(TreeNode::leaf(1), GenTable{});
        return t;
    }

    // The n-ary product corolla, n >= 2, leaves in natural order.
    static Tree corolla(int n, const GenTable& T) {
        if (n < 2) throw std::invalid_argument("corolla arity must be >= 2");
        std::vector<TreeNode> ch;
        for (int k = 1; k <= n; ++k) ch.push_back(TreeNode::leaf(k));
        auto [t, s] = canonical(TreeNode::corolla(std::move(ch)), T);
        return t;
    }

    // Generator with identity leaf labeling.
    static Tree bare_generator(int gen_id, const GenTable& T) {
        std::vector<TreeNode> ch;
        for (int k = 1; k <= T.at(gen_id).arity; ++k) ch.push_back(TreeNode::leaf(k));
        auto [t, s] = canonical(TreeNode::generator(gen_id, std::move(ch)), T);
        return t;
    }

private:
    TreeNode root_;
    int arity_ = 1;
    int degree_ = 0;
    int weight_ = 0;
    std::string key_ = "*|1,";
};

}  // namespace oforge
