#pragma once

#include <map>
#include <vector>

#include "milnor/errors.hpp"

namespace milnor {

/// Integer-coefficient polynomial in one formal variable t (dimension
/// generating functions).
class IntSeries {
public:
    IntSeries() = default;
    explicit IntSeries(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntSeries one() { return IntSeries({1}); }
    static IntSeries one_minus_tpow(long long a) {
        std::vector<long long> c(size_t(a) + 1, 0);
        c[0] = 1;
        c[size_t(a)] = -1;
        return IntSeries(std::move(c));
    }
    static IntSeries from_dims(const std::map<long long, long long>& dims) {
        std::vector<long long> c;
        for (const auto& [d, n] : dims) {
            if (d < 0) throw error("IntSeries: negative degree");
            if ((long long)c.size() <= d) c.resize(size_t(d) + 1, 0);
            c[size_t(d)] = n;
        }
        return IntSeries(std::move(c));
    }

    const std::vector<long long>& coeffs() const { return c_; }
    long long coeff(long long i) const {
        return i >= 0 && i < (long long)c_.size() ? c_[size_t(i)] : 0;
    }
    long long degree() const { return (long long)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }

    bool operator==(const IntSeries&) const = default;

    friend IntSeries operator+(const IntSeries& a, const IntSeries& b) {
        std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff((long long)i) + b.coeff((long long)i);
        return IntSeries(std::move(c));
    }

    friend IntSeries operator*(const IntSeries& a, const IntSeries& b) {
        if (a.is_zero() || b.is_zero()) return IntSeries();
        std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return IntSeries(std::move(c));
    }

    /// Polynomial long division; throws if the remainder is nonzero.
    IntSeries divide_exact(const IntSeries& d) const {
        if (d.is_zero()) throw error("IntSeries: division by zero");
        std::vector<long long> rem = c_;
        long long dd = d.degree();
        long long lead = d.c_.back();
        if ((long long)rem.size() - 1 < dd) {
            if (is_zero()) return IntSeries();
            throw error("IntSeries: inexact division");
        }
        std::vector<long long> q(rem.size() - size_t(dd), 0);
        for (long long i = (long long)rem.size() - 1; i >= dd; --i) {
            if (rem[size_t(i)] % lead != 0) throw error("IntSeries: inexact division");
            long long f = rem[size_t(i)] / lead;
            q[size_t(i - dd)] = f;
            for (long long j = 0; j <= dd; ++j) rem[size_t(i - dd + j)] -= f * d.c_[size_t(j)];
        }
        for (long long r : rem)
            if (r != 0) throw error("IntSeries: inexact division");
        return IntSeries(std::move(q));
    }

    long long eval_at_one() const {
        long long s = 0;
        for (long long x : c_) s += x;
        return s;
    }

    bool palindromic() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != c_[c_.size() - 1 - i]) return false;
        return true;
    }

    bool nonnegative() const {
        for (long long x : c_)
            if (x < 0) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<long long> c_;
};

}  // namespace milnor
