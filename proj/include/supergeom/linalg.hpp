#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace supergeom {

// Sparse vector over Q keyed by column index; zeros are never stored.
using SparseVec = std::map<std::size_t, Rational>;

inline void axpy(SparseVec &y, const Rational &a, const SparseVec &x)
{
    if (sgn(a) == 0) return;
    for (const auto &[k, v] : x) {
        auto [it, inserted] = y.emplace(k, a * v);
        if (!inserted) {
            it->second += a * v;
            if (sgn(it->second) == 0) y.erase(it);
        }
    }
}

// Incremental row echelon form over Q. Each stored row is normalized so its
// pivot (smallest column) is 1 and carries the combination of inserted rows
// that produced it, which makes solve() possible.
class Echelon {
public:
    // Returns true when the row was independent of those already stored.
    bool add(SparseVec row)
    {
        SparseVec combo;
        combo.emplace(inserted_++, Rational(1));
        reduce_into(row, combo);
        if (row.empty()) return false;
        auto piv = row.begin()->first;
        Rational s = 1 / row.begin()->second;
        for (auto &[k, v] : row) v *= s;
        for (auto &[k, v] : combo) v *= s;
        rows_.emplace(piv, Row{std::move(row), std::move(combo)});
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

    // Remainder of v after eliminating every pivot column.
    SparseVec reduce(SparseVec v) const
    {
        SparseVec dummy;
        reduce_into(v, dummy);
        return v;
    }

    bool contains(const SparseVec &v) const { return reduce(v).empty(); }

    // Coefficients c with Σ c_k · (k-th inserted row) = v, or nullopt.
    std::optional<SparseVec> solve(SparseVec v) const
    {
        SparseVec combo;
        reduce_into(v, combo);
        if (!v.empty()) return std::nullopt;
        SparseVec out;
        axpy(out, Rational(-1), combo);
        return out;
    }

private:
    struct Row {
        SparseVec v;
        SparseVec combo;
    };

    // v ← v − Σ (multiples of stored rows), combo tracks the same operations.
    void reduce_into(SparseVec &v, SparseVec &combo) const
    {
        auto it = v.begin();
        while (it != v.end()) {
            auto r = rows_.find(it->first);
            if (r == rows_.end()) {
                ++it;
                continue;
            }
            Rational f = it->second;
            std::size_t col = it->first;
            axpy(v, -f, r->second.v);
            axpy(combo, -f, r->second.combo);
            it = v.upper_bound(col);
        }
    }

    std::map<std::size_t, Row> rows_;
    std::size_t inserted_ = 0;
};

inline std::size_t rank_of(const std::vector<SparseVec> &rows)
{
    Echelon e;
    for (const auto &r : rows) e.add(r);
    return e.rank();
}

} // namespace supergeom
