#pragma once

// Enumeration of the canonical monomial basis of a relatively free operad,
// organized in (arity, weight) blocks with deterministic order. Shapes are
// generated once per (size, weight) and relabeled monotonically, which
// preserves canonical form.

#include "operad_forge/presentation.hpp"

#include <functional>
#include <map>
#include <set>

namespace oforge {

class BasisCache {
public:
    explicit BasisCache(const Presentation& P) : P_(&P) {}

    const std::vector<Tree>& block(int arity, int weight) {
        auto key = std::make_pair(arity, weight);
        auto it = blocks_.find(key);
        if (it != blocks_.end()) return it->second;
        std::vector<Tree> out;
        for (TreeNode& shape : shapes(arity, weight, true)) {
            auto [t, s] = Tree::canonical(std::move(shape), P_->table);
            out.push_back(std::move(t));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        auto [jt, fresh] = blocks_.emplace(key, std::move(out));
        auto& idx = index_[key];
        for (size_t k = 0; k < jt->second.size(); ++k) idx.emplace(jt->second[k].key(), static_cast<int>(k));
        return jt->second;
    }

    // Position of a monomial in its block; throws if it is not enumerated
    // (which would indicate an enumeration bug, not user error).
    int index_of(const Tree& t) {
        block(t.arity(), t.weight());
        auto& idx = index_.at({t.arity(), t.weight()});
        auto it = idx.find(t.key());
        if (it == idx.end())
            throw std::logic_error("monomial missing from enumerated block: " + t.str(P_->table));
        return it->second;
    }

    const Presentation& presentation() const { return *P_; }

private:
    const Presentation* P_;
    std::map<std::pair<int, int>, std::vector<Tree>> blocks_;
    std::map<std::pair<int, int>, std::map<std::string, int>> index_;
    std::map<std::tuple<int, int, bool>, std::vector<TreeNode>> shape_memo_;

    // All canonical trees on leaves 1..size of the given weight; corolla
    // roots excluded when !allow_corolla (children of corollas).
    std::vector<TreeNode> shapes(int size, int weight, bool allow_corolla) {
        auto key = std::make_tuple(size, weight, allow_corolla);
        auto it = shape_memo_.find(key);
        if (it != shape_memo_.end()) return it->second;

        std::vector<TreeNode> out;
        if (weight == 0) {
            if (size == 1) out.push_back(TreeNode::leaf(1));
            else if (allow_corolla && size >= 2) {
                std::vector<TreeNode> ch;
                for (int k = 1; k <= size; ++k) ch.push_back(TreeNode::leaf(k));
                out.push_back(TreeNode::corolla(std::move(ch)));
            }
        } else {
            // generator-rooted
            for (size_t g = 0; g < P_->table.gens.size(); ++g) {
                int k = P_->table.at(static_cast<int>(g)).arity;
                if (k == 1) {
                    for (TreeNode& c : shapes(size, weight - 1, true))
                        out.push_back(TreeNode::generator(static_cast<int>(g), {std::move(c)}));
                } else if (k <= size) {
                    for_each_ordered_partition(size, k, [&](const std::vector<std::vector<int>>& blocks) {
                        attach_children(static_cast<int>(g), blocks, weight - 1, out, /*gen_root=*/true);
                    });
                }
            }
            // corolla-rooted
            if (allow_corolla && size >= 2) {
                for (int k = 2; k <= size; ++k) {
                    for_each_unordered_partition(size, k, [&](const std::vector<std::vector<int>>& blocks) {
                        attach_children(-1, blocks, weight, out, /*gen_root=*/false);
                    });
                }
            }
        }
        // dedupe structurally identical results via canonical keys
        std::set<std::string> seen;
        std::vector<TreeNode> uniq;
        for (TreeNode& n : out) {
            TreeNode copy = n;
            auto [t, s] = Tree::canonical(std::move(copy), P_->table);
            if (seen.insert(t.key()).second) uniq.push_back(std::move(n));
        }
        shape_memo_[key] = uniq;
        return uniq;
    }

    // Children for the given label blocks with all weight splits; appends the
    // assembled trees to out. Children of corollas may not be corollas and a
    // multi-leaf weight-0 child of a corolla would be one, so it is skipped.
    void attach_children(int gen_id, const std::vector<std::vector<int>>& blocks, int total_weight,
                         std::vector<TreeNode>& out, bool gen_root) {
        const int k = static_cast<int>(blocks.size());
        std::vector<std::vector<TreeNode>> acc(static_cast<size_t>(k));
        std::function<void(int, int)> rec = [&](int pos, int remaining) {
            if (pos == k) {
                if (remaining != 0) return;
                std::vector<TreeNode> children;
                std::function<void(int)> pick = [&](int p) {
                    if (p == k) {
                        out.push_back(gen_root ? TreeNode::generator(gen_id, children)
                                               : TreeNode::corolla(children));
                        return;
                    }
                    for (const TreeNode& c : acc[static_cast<size_t>(p)]) {
                        children.push_back(c);
                        pick(p + 1);
                        children.pop_back();
                    }
                };
                pick(0);
                return;
            }
            const auto& labels = blocks[static_cast<size_t>(pos)];
            for (int w = 0; w <= remaining; ++w) {
                if (!gen_root && w == 0 && labels.size() >= 2) continue;
                auto raw = shapes(static_cast<int>(labels.size()), w, gen_root);
                std::vector<TreeNode> rel;
                rel.reserve(raw.size());
                for (const TreeNode& r : raw) rel.push_back(relabel_into(r, labels));
                if (rel.empty()) continue;
                acc[static_cast<size_t>(pos)] = std::move(rel);
                rec(pos + 1, remaining - w);
            }
        };
        rec(0, total_weight);
    }

    static TreeNode relabel_into(const TreeNode& shape, const std::vector<int>& sorted_labels) {
        TreeNode out = shape;
        if (out.kind == TreeNode::Kind::leaf)
            out.label = sorted_labels[static_cast<size_t>(out.label) - 1];
        for (auto& c : out.children) c = relabel_into(c, sorted_labels);
        return out;
    }

    // Ordered partitions of {1..size} into k nonempty blocks (blocks are
    // sorted internally).
    template <class F>
    static void for_each_ordered_partition(int size, int k, F&& f) {
        std::vector<int> assign(static_cast<size_t>(size), 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == size) {
                std::vector<std::vector<int>> blocks(static_cast<size_t>(k));
                for (int t = 0; t < size; ++t) blocks[static_cast<size_t>(assign[static_cast<size_t>(t)])].push_back(t + 1);
                for (auto& b : blocks)
                    if (b.empty()) return;
                f(blocks);
                return;
            }
            for (int b = 0; b < k; ++b) {
                assign[static_cast<size_t>(pos)] = b;
                rec(pos + 1);
            }
        };
        rec(0);
    }

    // Unordered partitions via restricted growth strings.
    template <class F>
    static void for_each_unordered_partition(int size, int k, F&& f) {
        std::vector<int> assign(static_cast<size_t>(size), 0);
        std::function<void(int, int)> rec = [&](int pos, int maxb) {
            if (pos == size) {
                if (maxb + 1 != k) return;
                std::vector<std::vector<int>> blocks(static_cast<size_t>(k));
                for (int t = 0; t < size; ++t) blocks[static_cast<size_t>(assign[static_cast<size_t>(t)])].push_back(t + 1);
                f(blocks);
                return;
            }
            for (int b = 0; b <= std::min(maxb + 1, k - 1); ++b) {
                assign[static_cast<size_t>(pos)] = b;
                rec(pos + 1, std::max(maxb, b));
            }
        };
        assign[0] = 0;
        rec(1, 0);
    }
};

}  // namespace oforge
