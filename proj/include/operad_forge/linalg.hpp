#pragma once

// Exact linear algebra over Q: sparse vectors, incremental reduced row
// echelon form with membership certificates, and Gaussian rank with
// pivoting on coefficient size.

#include "operad_forge/rational.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace oforge {

// Sorted (index, value) pairs, no zero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sv_normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
    }
    std::erase_if(out, [](const auto& p) { return p.second == 0; });
    v = std::move(out);
}

// x + a*y for sorted inputs.
inline SparseVec sv_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            Rational c = a * y[j].second;
            if (c != 0) out.emplace_back(y[j].first, std::move(c));
            ++j;
        } else {
            Rational c = x[i].second + a * y[j].second;
            if (c != 0) out.emplace_back(x[i].first, std::move(c));
            ++i, ++j;
        }
    }
    return out;
}

inline SparseVec sv_scale(const SparseVec& x, const Rational& a) {
    SparseVec out;
    if (a == 0) return out;
    out.reserve(x.size());
    for (auto& [i, c] : x) out.emplace_back(i, a * c);
    return out;
}

inline Rational sv_coeff(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != v.end() && it->first == idx) return it->second;
    return Rational(0);
}

// Maintains the unique reduced row echelon basis of the span of all inserted
// vectors: pivots are 1, each pivot is the only nonzero entry of its column,
// rows sorted by pivot column. The stored basis depends only on the span,
// not on insertion order.
class RowSpan {
public:
    // Returns true if the vector enlarged the span.
    bool insert(SparseVec v) {
        v = reduce(std::move(v)).first;
        if (v.empty()) return false;
        int pivot = v.front().first;
        Rational lead = v.front().second;
        if (lead != 1) v = sv_scale(v, Rational(1) / lead);
        for (auto& row : rows_) {
            Rational c = sv_coeff(row, pivot);
            if (c != 0) row = sv_axpy(row, -c, v);
        }
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const SparseVec& a, const SparseVec& b) { return a.front().first < b.front().first; });
        pivot_row_.clear();
        for (size_t r = 0; r < rows_.size(); ++r) pivot_row_[rows_[r].front().first] = static_cast<int>(r);
        return true;
    }

    // Fully reduced residual plus the coefficients used against the stored
    // rows: x = sum coeff[r]*rows()[r] + residual. Since each row leads with
    // its pivot, eliminating entries left to right cannot reintroduce a
    // pivot column that was already passed.
    std::pair<SparseVec, std::map<int, Rational>> reduce(SparseVec x) const {
        std::map<int, Rational> cert;
        SparseVec residual;
        size_t safety = 0;
        while (!x.empty()) {
            auto [idx, c] = x.front();
            auto it = pivot_row_.find(idx);
            if (it == pivot_row_.end()) {
                residual.push_back(x.front());
                x.erase(x.begin());
            } else {
                cert[it->second] += c;
                x = sv_axpy(x, -c, rows_[static_cast<size_t>(it->second)]);
            }
            if (++safety > 1000000) throw std::logic_error("RowSpan::reduce did not terminate");
        }
        return {std::move(residual), std::move(cert)};
    }

    bool contains(const SparseVec& x) const { return reduce(x).first.empty(); }

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }

private:
    std::vector<SparseVec> rows_;   // RREF, sorted by pivot column
    std::map<int, int> pivot_row_;  // pivot column -> row index
};

// Rank by Gauss-Jordan elimination, choosing pivots with smallest
// |numerator|*denominator to keep intermediate entries modest.
inline int rank_of(std::vector<SparseVec> rows) {
    std::vector<std::pair<int, SparseVec>> pivots;  // (pivot col, row); mutually reduced
    for (auto& r : rows) {
        SparseVec v = std::move(r);
        for (auto& [col, prow] : pivots) {
            Rational c = sv_coeff(v, col);
            if (c != 0) v = sv_axpy(v, -c, prow);
        }
        if (v.empty()) continue;
        size_t best = 0;
        Integer best_size = abs(rat_num(v[0].second)) * rat_den(v[0].second);
        for (size_t k = 1; k < v.size(); ++k) {
            Integer sz = abs(rat_num(v[k].second)) * rat_den(v[k].second);
            if (sz < best_size) { best = k; best_size = sz; }
        }
        int col = v[best].first;
        SparseVec norm = sv_scale(v, Rational(1) / v[best].second);
        for (auto& [c0, prow] : pivots) {
            Rational c = sv_coeff(prow, col);
            if (c != 0) prow = sv_axpy(prow, -c, norm);
        }
        pivots.emplace_back(col, std::move(norm));
    }
    return static_cast<int>(pivots.size());
}

}  // namespace oforge
