#pragma once

// Permutations of {1..n}, shuffle enumeration and the Koszul sign rule.
//
// Conventions used throughout the library:
//   * sigma(k) is the image of k, 1-based.
//   * compose_then(s, t) applies s first, then t.
//   * koszul_sign(sigma, degrees) is the sign of rearranging graded symbols
//     x_1 ... x_n into x_sigma(1) ... x_sigma(n): every pair of symbols that
//     swaps relative order contributes (-1)^(|x_a||x_b|).
// With these readings koszul_sign(compose_then(s,t), d)
//   = koszul_sign(s, permute_degrees(t, d)) * koszul_sign(t, d).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace oforge {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> one_based_images) : img_(std::move(one_based_images)) {
        validate();
    }

    static Permutation identity(int n) {
        std::vector<int> v(static_cast<size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    // Cycle notation: cycle(4, {1,2,3}) maps 1->2, 2->3, 3->1, fixes 4.
    static Permutation cycle(int n, const std::vector<int>& cyc) {
        std::vector<int> v(static_cast<size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        for (size_t k = 0; k < cyc.size(); ++k) {
            int from = cyc[k];
            int to = cyc[(k + 1) % cyc.size()];
            if (from < 1 || from > n) throw std::invalid_argument("cycle entry out of range");
            v[static_cast<size_t>(from) - 1] = to;
        }
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int k) const { return img_[static_cast<size_t>(k) - 1]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int k = 1; k <= size(); ++k)
            if ((*this)(k) != k) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> v(img_.size());
        for (int k = 1; k <= size(); ++k) v[static_cast<size_t>((*this)(k)) - 1] = k;
        return Permutation(std::move(v));
    }

    // Apply *this first, then t.
    Permutation then(const Permutation& t) const {
        if (t.size() != size()) throw std::invalid_argument("permutation size mismatch");
        std::vector<int> v(img_.size());
        for (int k = 1; k <= size(); ++k) v[static_cast<size_t>(k) - 1] = t((*this)(k));
        return Permutation(std::move(v));
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

    std::string str() const {
        std::string s = "[";
        for (int k = 1; k <= size(); ++k) {
            if (k > 1) s += ' ';
            s += std::to_string((*this)(k));
        }
        return s + "]";
    }

private:
    std::vector<int> img_;

    void validate() const {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 1 || v > size() || seen[static_cast<size_t>(v) - 1])
                throw std::invalid_argument("not a permutation of 1..n");
            seen[static_cast<size_t>(v) - 1] = 1;
        }
    }
};

inline Permutation compose_then(const Permutation& s, const Permutation& t) { return s.then(t); }

// Degrees permuted along sigma: the rearranged sequence x_sigma(1).. has
// degree list (d_sigma(1), ..., d_sigma(n)).
inline std::vector<int> permute_degrees(const Permutation& sigma, const std::vector<int>& degrees) {
    if (sigma.size() != static_cast<int>(degrees.size()))
        throw std::invalid_argument("koszul: permutation/degree length mismatch");
    std::vector<int> out(degrees.size());
    for (int k = 1; k <= sigma.size(); ++k)
        out[static_cast<size_t>(k) - 1] = degrees[static_cast<size_t>(sigma(k)) - 1];
    return out;
}

// Sign accumulated when graded symbols of the given degrees are rearranged
// by sigma (see header comment). Multiplicative under compose_then.
inline int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    if (sigma.size() != static_cast<int>(degrees.size()))
        throw std::invalid_argument("koszul: permutation/degree length mismatch");
    int n = sigma.size();
    long long crossings_odd = 0;
    const Permutation inv = sigma.inverse();
    // symbols k < l cross iff their final positions are out of order
    for (int k = 1; k <= n; ++k) {
        if ((degrees[static_cast<size_t>(k) - 1] & 1) == 0) continue;
        for (int l = k + 1; l <= n; ++l) {
            if ((degrees[static_cast<size_t>(l) - 1] & 1) == 0) continue;
            if (inv(k) > inv(l)) ++crossings_odd;
        }
    }
    return (crossings_odd & 1) ? -1 : 1;
}

// Sign of sorting the degree-tagged keys into weakly increasing `order`,
// where `order` is the permutation of positions applied (new position t holds
// old entry order[t-1]). Convenience for block sorts.
inline int koszul_sign_of_arrangement(const std::vector<int>& old_positions_in_new_order,
                                      const std::vector<int>& degrees) {
    // old_positions_in_new_order is sigma as images: new slot t <- old slot sigma(t)
    Permutation sigma{std::vector<int>(old_positions_in_new_order)};
    return koszul_sign(sigma, degrees);
}

// All (p,q)-shuffles: permutations increasing on 1..p and on p+1..p+q,
// in lexicographic order of their image lists. Exactly binomial(p+q, p) of them.
inline std::vector<Permutation> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("shuffles: negative block size");
    int n = p + q;
    std::vector<Permutation> out;
    // choose the image set of the first block; both blocks then sort increasingly
    std::vector<int> pick(static_cast<size_t>(p));
    std::iota(pick.begin(), pick.end(), 1);
    auto emit = [&]() {
        std::vector<int> img(static_cast<size_t>(n));
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        for (int a = 0; a < p; ++a) {
            img[static_cast<size_t>(a)] = pick[static_cast<size_t>(a)];
            used[static_cast<size_t>(pick[static_cast<size_t>(a)])] = 1;
        }
        int pos = p;
        for (int v = 1; v <= n; ++v)
            if (!used[static_cast<size_t>(v)]) img[static_cast<size_t>(pos++)] = v;
        out.emplace_back(std::move(img));
    };
    if (p == 0 || q == 0) {
        out.push_back(Permutation::identity(n));
        return out;
    }
    while (true) {
        emit();
        // next combination in lex order
        int a = p - 1;
        while (a >= 0 && pick[static_cast<size_t>(a)] == n - (p - 1 - a)) --a;
        if (a < 0) break;
        ++pick[static_cast<size_t>(a)];
        for (int b = a + 1; b < p; ++b) pick[static_cast<size_t>(b)] = pick[static_cast<size_t>(b) - 1] + 1;
    }
    return out;
}

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(std::vector<int>(img));
    while (std::next_permutation(img.begin(), img.end()));
    return out;
}

}  // namespace oforge
