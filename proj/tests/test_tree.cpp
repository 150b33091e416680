#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operad_forge/basis.hpp"
#include "operad_forge/element.hpp"
#include "operad_forge/presentation.hpp"

#include <cstdlib>
#include <random>

using namespace oforge;

static std::mt19937& rng() {
    static std::mt19937 gen([] {
        if (const char* s = std::getenv("OPERAD_FORGE_SEED")) return static_cast<unsigned>(std::atoi(s));
        return 7150823u;
    }());
    return gen;
}

static Tree mono(const Presentation& P, TreeNode raw) {
    auto [t, s] = Tree::canonical(std::move(raw), P.table);
    REQUIRE(s == 1);
    return t;
}

TEST_CASE("canonicalize: corolla symmetry and signs") {
    Presentation P = builtin_presentation("EBV");
    int i = P.gen_id("i"), di = P.gen_id("d_i");

    // mu with swapped leaves is the same monomial, sign +1
    auto [a, sa] = Tree::canonical(TreeNode::corolla({TreeNode::leaf(1), TreeNode::leaf(2)}), P.table);
    auto [b, sb] = Tree::canonical(TreeNode::corolla({TreeNode::leaf(2), TreeNode::leaf(1)}), P.table);
    CHECK(a == b);
    CHECK(sa == 1);
    CHECK(sb == 1);

    // idempotence
    auto [a2, sa2] = Tree::canonical(a.root(), P.table);
    CHECK(a2 == a);
    CHECK(sa2 == 1);

    // two odd-degree subtrees (d_i has degree -1) swap with Koszul sign -1
    TreeNode di1 = TreeNode::generator(di, {TreeNode::leaf(1)});
    TreeNode di2 = TreeNode::generator(di, {TreeNode::leaf(2)});
    auto [c1, s1] = Tree::canonical(TreeNode::corolla({di1, di2}), P.table);
    auto [c2, s2] = Tree::canonical(TreeNode::corolla({di2, di1}), P.table);
    CHECK(c1 == c2);
    CHECK(s1 * s2 == -1);

    // even-degree subtrees (i has degree -2) swap with sign +1
    TreeNode i1 = TreeNode::generator(i, {TreeNode::leaf(1)});
    TreeNode i2 = TreeNode::generator(i, {TreeNode::leaf(2)});
    auto [e1, t1] = Tree::canonical(TreeNode::corolla({i1, i2}), P.table);
    auto [e2, t2] = Tree::canonical(TreeNode::corolla({i2, i1}), P.table);
    CHECK(e1 == e2);
    CHECK(t1 == t2);
}

TEST_CASE("canonicalize: malformed trees are rejected") {
    Presentation P = builtin_presentation("EBV");
    // bad leaf labels
    CHECK_THROWS_AS(Tree::canonical(TreeNode::corolla({TreeNode::leaf(1), TreeNode::leaf(3)}), P.table),
                    MalformedTree);
    CHECK_THROWS_AS(Tree::canonical(TreeNode::corolla({TreeNode::leaf(1), TreeNode::leaf(1)}), P.table),
                    MalformedTree);
    // generator arity violation
    CHECK_THROWS_AS(
        Tree::canonical(TreeNode::generator(P.gen_id("i"), {TreeNode::leaf(1), TreeNode::leaf(2)}), P.table),
        MalformedTree);
}

TEST_CASE("compose: unit and commutative contraction") {
    Presentation P = builtin_presentation("EBV");
    Element mu = P.mu();
    Element id = identity_element();

    CHECK(compose(mu, 1, id, P.table) == mu);
    CHECK(compose(id, 1, mu, P.table) == mu);

    Element m1 = compose(mu, 1, mu, P.table);
    Element m2 = compose(mu, 2, mu, P.table);
    CHECK(m1 == m2);
    CHECK(m1 == corolla_element(3, P.table));

    // i o_1 d_i is the word i.d_i of arity 1, degree -3, weight 2
    Element w = compose(P.gen("i"), 1, P.gen("d_i"), P.table);
    REQUIRE(w.size() == 1);
    CHECK(w.arity() == 1);
    CHECK(w.degree() == -3);
    CHECK(w.weight() == 2);
    CHECK(w.terms().begin()->first.str(P.table) == "i(d_i(1))");
}

TEST_CASE("compose: degree and weight add, interleaving sign") {
    Presentation P = builtin_presentation("J");
    BasisCache cache(P);
    std::uniform_int_distribution<int> pick_arity(1, 2), pick_weight(0, 2);
    for (int rep = 0; rep < 120; ++rep) {
        int ax = pick_arity(rng()), wx = pick_weight(rng());
        int ay = pick_arity(rng()), wy = pick_weight(rng());
        const auto& bx = cache.block(ax, wx);
        const auto& by = cache.block(ay, wy);
        if (bx.empty() || by.empty()) continue;
        const Tree& x = bx[std::uniform_int_distribution<size_t>(0, bx.size() - 1)(rng())];
        const Tree& y = by[std::uniform_int_distribution<size_t>(0, by.size() - 1)(rng())];
        int slot = std::uniform_int_distribution<int>(1, ax)(rng());
        auto [t, s] = compose_mono(x, slot, y, P.table);
        CHECK(t.arity() == ax + ay - 1);
        CHECK(t.degree() == x.degree() + y.degree());
        CHECK(t.weight() == wx + wy);
        CHECK((s == 1 || s == -1));
    }
}

TEST_CASE("compose: operadic associativity, sequential and parallel") {
    Presentation P = builtin_presentation("J");
    BasisCache cache(P);
    std::vector<Tree> pool;
    for (int a = 1; a <= 2; ++a)
        for (int w = 0; w <= 1; ++w)
            for (const Tree& t : cache.block(a, w)) pool.push_back(t);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int rep = 0; rep < 250; ++rep) {
        Element x = Element::of(pool[pick(rng())]);
        Element y = Element::of(pool[pick(rng())]);
        Element z = Element::of(pool[pick(rng())]);
        int nx = x.arity(), ny = y.arity();
        int i = std::uniform_int_distribution<int>(1, nx)(rng());
        // sequential: (x o_i y) o_{i-1+j} z == x o_i (y o_j z)
        int j = std::uniform_int_distribution<int>(1, ny)(rng());
        Element lhs = compose(compose(x, i, y, P.table), i - 1 + j, z, P.table);
        Element rhs = compose(x, i, compose(y, j, z, P.table), P.table);
        CHECK(lhs == rhs);
        // parallel: for i < k, (x o_i y) o_{k+ny-1} z == (x o_k z) o_i y
        if (nx >= 2 && i < nx) {
            int k = std::uniform_int_distribution<int>(i + 1, nx)(rng());
            Element l2 = compose(compose(x, i, y, P.table), k + ny - 1, z, P.table);
            Element r2 = compose(compose(x, k, z, P.table), i, y, P.table);
            CHECK(l2 == r2);
        }
    }
}

TEST_CASE("action: group law, mu symmetry, slot transport") {
    Presentation P = builtin_presentation("EBV");
    Element mu = P.mu();

    CHECK(acted(mu, Permutation::identity(2), P.table) == mu);
    CHECK(acted(mu, Permutation::cycle(2, {1, 2}), P.table) == mu);

    // (1 2) carries i on input 1 to i on input 2
    Element mu_i1 = compose(mu, 1, P.gen("i"), P.table);
    Element mu_i2 = compose(mu, 2, P.gen("i"), P.table);
    CHECK(acted(mu_i1, Permutation::cycle(2, {1, 2}), P.table) == mu_i2);

    // right action composition law
    BasisCache cache(P);
    const auto& blk = cache.block(3, 2);
    auto perms = all_permutations(3);
    std::uniform_int_distribution<size_t> pick(0, blk.size() - 1), pp(0, perms.size() - 1);
    for (int rep = 0; rep < 100; ++rep) {
        Element x = Element::of(blk[pick(rng())]);
        const auto& s = perms[pp(rng())];
        const auto& t = perms[pp(rng())];
        CHECK(acted(acted(x, s, P.table), t, P.table) == acted(x, compose_then(t, s), P.table));
    }
}

TEST_CASE("split_monomial reproduces every composite monomial") {
    Presentation P = builtin_presentation("J");
    BasisCache cache(P);
    for (int a = 1; a <= 3; ++a)
        for (int w = 0; w <= 2; ++w)
            for (const Tree& M : cache.block(a, w)) {
                auto sp = split_monomial(M, P.table);
                if (M.weight() == 0 || M.is_bare_generator()) {
                    CHECK(!sp.has_value());
                    continue;
                }
                REQUIRE(sp.has_value());
                Element rebuilt = Rational(sp->s) *
                    acted(compose(Element::of(sp->x), sp->slot, Element::of(sp->y), P.table), sp->rho, P.table);
                CHECK(rebuilt == Element::of(M));
                CHECK(sp->x.weight() + sp->y.weight() == M.weight());
            }
}

TEST_CASE("differential: generator values and derivation") {
    Presentation P = builtin_presentation("EBV");
    CHECK(differential(P, P.mu()).is_zero());
    CHECK(differential(P, P.gen("i")) == P.gen("d_i"));
    CHECK(differential(P, P.gen("d_i")).is_zero());
    // d(i.d_i) = d_i.d_i with sign +1 since |i| is even
    Element idi = word(P, {"i", "d_i"});
    CHECK(differential(P, idi) == word(P, {"d_i", "d_i"}));
}

TEST_CASE("differential: squares to zero, preserves arity and weight, degree +1") {
    for (const char* name : {"EBV", "J", "ECBV"}) {
        Presentation P = builtin_presentation(name, Caps{3, 3, 2, 4});
        BasisCache cache(P);
        for (int a = 1; a <= 2; ++a)
            for (int w = 0; w <= 2; ++w)
                for (const Tree& M : cache.block(a, w)) {
                    Element dM = differential(P, Element::of(M));
                    CHECK(differential(P, dM).is_zero());
                    for (auto& [t, c] : dM.terms()) {
                        CHECK(t.arity() == a);
                        CHECK(t.weight() == w);
                        CHECK(t.degree() == M.degree() + 1);
                    }
                }
    }
}

TEST_CASE("differential: vertexwise fast path agrees with split recursion") {
    Presentation P = builtin_presentation("J");
    Presentation Pslow = P;
    Pslow.d_simple = false;  // force the structural recursion
    BasisCache cache(P);
    for (int a = 1; a <= 3; ++a)
        for (int w = 0; w <= 2; ++w)
            for (const Tree& M : cache.block(a, w))
                CHECK(differential(P, Element::of(M)) == differential(Pslow, Element::of(M)));
}

TEST_CASE("enumerate_basis: hand-checked block contents") {
    Presentation ebv = builtin_presentation("EBV");
    BasisCache cache(ebv);

    // EBV arity 1: weight 1 is {i, d_i}, weight 2 has the four words
    CHECK(cache.block(1, 0).size() == 1);  // identity
    auto& w1 = cache.block(1, 1);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0].str(ebv.table) == "d_i(1)");
    CHECK(w1[1].str(ebv.table) == "i(1)");
    auto& w2 = cache.block(1, 2);
    CHECK(w2.size() == 4);

    // any context: arity 2 weight 0 is just mu
    auto& c2 = cache.block(2, 0);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].str(ebv.table) == "mu(1, 2)");

    // J arity 1 weight 1: {i, d_i, j, d_j}
    Presentation jac = builtin_presentation("J");
    BasisCache jcache(jac);
    CHECK(jcache.block(1, 1).size() == 4);
    CHECK(jcache.block(1, 2).size() == 16);

    // no duplicates, deterministic order, invariants hold
    for (int a = 1; a <= 3; ++a)
        for (int w = 0; w <= 2; ++w) {
            auto& blk = jcache.block(a, w);
            for (size_t k = 0; k < blk.size(); ++k) {
                CHECK(blk[k].arity() == a);
                CHECK(blk[k].weight() == w);
                if (k + 1 < blk.size()) CHECK(blk[k] < blk[k + 1]);
            }
        }
}

TEST_CASE("enumerate_basis: composition closure lands in the enumerated basis") {
    Presentation P = builtin_presentation("EBV");
    BasisCache cache(P);
    for (int a = 1; a <= 2; ++a)
        for (int w = 0; w <= 1; ++w)
            for (const Tree& x : cache.block(a, w))
                for (int b = 1; b <= 2; ++b)
                    for (int u = 0; u <= 1; ++u)
                        for (const Tree& y : cache.block(b, u))
                            for (int slot = 1; slot <= a; ++slot) {
                                auto [t, s] = compose_mono(x, slot, y, P.table);
                                CHECK(cache.index_of(t) >= 0);
                            }
}
