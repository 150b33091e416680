#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "operad_forge/linalg.hpp"
#include "operad_forge/permutation.hpp"
#include "operad_forge/rational.hpp"

#include <cstdlib>
#include <random>

using namespace oforge;

static std::mt19937& rng() {
    static std::mt19937 gen([] {
        if (const char* s = std::getenv("OPERAD_FORGE_SEED")) return static_cast<unsigned>(std::atoi(s));
        return 20240815u;
    }());
    return gen;
}

TEST_CASE("rationals are exact and canonical") {
    Rational a = rat(6, -4);
    CHECK(rat_num(a) == -3);
    CHECK(rat_den(a) == 2);
    CHECK(rat(1, 2) + rat(1, 3) == rat(5, 6));
    CHECK(to_string(rat(-3, 2)) == "-3/2");
    CHECK(parse_rational("7/21") == rat(1, 3));
    CHECK(parse_rational("-5") == rat(-5));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK(Rational(1) / Rational(factorial(25)) != 0);  // far beyond 64-bit
}

TEST_CASE("koszul sign basics") {
    CHECK(koszul_sign(Permutation::identity(4), {1, 1, 1, 1}) == 1);
    CHECK(koszul_sign(Permutation::cycle(2, {1, 2}), {1, 1}) == -1);
    CHECK(koszul_sign(Permutation::cycle(2, {1, 2}), {1, 2}) == 1);
    // cycle (1 2 3) on degrees (1,1,0): decomposes as (1 2) then (2 3)
    CHECK(koszul_sign(Permutation::cycle(3, {1, 2, 3}), {1, 1, 0}) == -1);
}

TEST_CASE("koszul sign is multiplicative under composition") {
    std::uniform_int_distribution<int> deg(-3, 3);
    for (int n = 1; n <= 4; ++n) {
        auto perms = all_permutations(n);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<int> d(static_cast<size_t>(n));
            for (auto& x : d) x = deg(rng());
            for (const auto& s : perms)
                for (const auto& t : perms) {
                    int lhs = koszul_sign(compose_then(s, t), d);
                    int rhs = koszul_sign(s, permute_degrees(t, d)) * koszul_sign(t, d);
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("permutation group laws") {
    auto s = Permutation::cycle(4, {1, 2, 3});
    auto t = Permutation::cycle(4, {2, 4});
    CHECK(s.then(s.inverse()).is_identity());
    CHECK(compose_then(s, t).inverse() == compose_then(t.inverse(), s.inverse()));
    CHECK_THROWS_AS(Permutation({1, 1, 3}), std::invalid_argument);
}

TEST_CASE("shuffles") {
    auto sh11 = shuffles(1, 1);
    REQUIRE(sh11.size() == 2);
    CHECK(sh11[0].is_identity());
    CHECK(sh11[1] == Permutation::cycle(2, {1, 2}));
    CHECK(shuffles(2, 1).size() == 3);
    CHECK(shuffles(2, 2).size() == 6);
    CHECK(shuffles(0, 3).size() == 1);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            auto sh = shuffles(p, q);
            // monotone on both blocks, no duplicates
            for (size_t a = 0; a < sh.size(); ++a) {
                for (int k = 1; k < p; ++k) CHECK(sh[a](k) < sh[a](k + 1));
                for (int k = p + 1; k < p + q; ++k) CHECK(sh[a](k) < sh[a](k + 1));
                for (size_t b = a + 1; b < sh.size(); ++b) CHECK(!(sh[a] == sh[b]));
            }
        }
}

TEST_CASE("row span is canonical and certifies membership") {
    RowSpan span;
    CHECK(span.insert({{0, rat(2)}, {2, rat(4)}}));
    CHECK(span.insert({{1, rat(1)}, {2, rat(1)}}));
    CHECK(!span.insert({{0, rat(1)}, {1, rat(2)}, {2, rat(4)}}));  // dependent
    CHECK(span.rank() == 2);

    RowSpan other;  // same span, different insertion order
    other.insert({{0, rat(1)}, {1, rat(2)}, {2, rat(4)}});
    other.insert({{1, rat(-3)}, {2, rat(-3)}});
    CHECK(other.rows() == span.rows());

    SparseVec x = {{0, rat(1)}, {1, rat(5)}, {2, rat(7)}};
    auto [res, cert] = span.reduce(x);
    CHECK(res.empty());
    SparseVec rebuilt;
    for (auto& [row, c] : cert) rebuilt = sv_axpy(rebuilt, c, span.rows()[static_cast<size_t>(row)]);
    CHECK(rebuilt == x);

    CHECK(!span.contains({{3, rat(1)}}));
}

TEST_CASE("rank of sparse matrices") {
    std::vector<SparseVec> rows = {
        {{0, rat(1)}, {1, rat(2)}},
        {{1, rat(1)}, {2, rat(1)}},
        {{0, rat(1)}, {1, rat(1)}, {2, rat(-1)}},
        {{0, rat(2)}, {1, rat(4)}},
    };
    CHECK(rank_of(rows) == 2);
    CHECK(rank_of({}) == 0);
    CHECK(rank_of({{}}) == 0);
}
