#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "milnor/errors.hpp"

namespace milnor {

/// Dense bit vector over GF(2).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void flip(int i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    void operator^=(const BitVec& o) {
        for (size_t j = 0; j < w_.size(); ++j) w_[j] ^= o.w_[j];
    }
    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }
    /// Index of the lowest set bit, or -1 if zero.
    int lowest() const {
        for (size_t j = 0; j < w_.size(); ++j)
            if (w_[j]) return int(j * 64) + __builtin_ctzll(w_[j]);
        return -1;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

/// Row space in reduced row-echelon form; pivot = lowest set bit of each row.
class RowSpace {
public:
    RowSpace() = default;
    explicit RowSpace(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return int(rows_.size()); }
    const std::vector<BitVec>& rows() const { return rows_; }

    /// Reduce v against the space; the remainder has no pivot in common with it.
    BitVec reduce(BitVec v) const {
        for (size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v ^= rows_[i];
        return v;
    }

    bool contains(const BitVec& v) const { return !reduce(v).any(); }

    /// Insert v; returns true if it enlarged the space.
    bool insert(BitVec v) {
        v = reduce(std::move(v));
        int p = v.lowest();
        if (p < 0) return false;
        // keep reduced form: clear column p in existing rows
        for (auto& r : rows_)
            if (r.get(p)) r ^= v;
        // insert ordered by pivot
        size_t pos = 0;
        while (pos < rows_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

private:
    int ncols_ = 0;
    std::vector<BitVec> rows_;
    std::vector<int> pivots_;
};

/// Rank of an arbitrary list of rows.
inline int gf2_rank(std::vector<BitVec> rows, int ncols) {
    RowSpace s(ncols);
    for (auto& r : rows) s.insert(std::move(r));
    return s.rank();
}

}  // namespace milnor
