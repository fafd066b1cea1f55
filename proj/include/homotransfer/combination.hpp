#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "homotransfer/scalar.hpp"

namespace homotransfer {

// Finite linear combination sum c_k * k with keys kept sorted and no zero
// coefficients. Keys are basis indices or words.
template <class K>
class Combination {
public:
    using Term = std::pair<K, Scalar>;

    Combination() = default;
    Combination(const K& k, const Scalar& c) {
        if (!c.is_zero()) terms_.emplace_back(k, c);
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Scalar coeff(const K& k) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, const K& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) return it->second;
        return Scalar(0);
    }

    Combination scaled(const Scalar& c) const {
        Combination r;
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [k, v] : terms_) {
            Scalar w = v * c;
            if (!w.is_zero()) r.terms_.emplace_back(k, std::move(w));
        }
        return r;
    }

    friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

    // Only for builders; input must be sorted, merged, zero-free.
    static Combination from_sorted(std::vector<Term> t) {
        Combination r;
        r.terms_ = std::move(t);
        return r;
    }

private:
    std::vector<Term> terms_;
};

// Accumulates terms in any order; build() sorts and merges.
template <class K>
class CombBuilder {
public:
    void add(const K& k, const Scalar& c) {
        if (!c.is_zero()) pending_.emplace_back(k, c);
    }
    void add(const Combination<K>& v, const Scalar& c = Scalar(1)) {
        if (c.is_zero()) return;
        const bool unit = c.is_one();
        for (const auto& [k, x] : v) pending_.emplace_back(k, unit ? x : x * c);
    }
    bool empty() const { return pending_.empty(); }

    Combination<K> build() {
        std::stable_sort(pending_.begin(), pending_.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<typename Combination<K>::Term> out;
        out.reserve(pending_.size());
        for (std::size_t i = 0; i < pending_.size();) {
            std::size_t j = i + 1;
            Scalar s = pending_[i].second;
            while (j < pending_.size() && pending_[j].first == pending_[i].first) s += pending_[j++].second;
            if (!s.is_zero()) out.emplace_back(pending_[i].first, std::move(s));
            i = j;
        }
        pending_.clear();
        return Combination<K>::from_sorted(std::move(out));
    }

private:
    std::vector<typename Combination<K>::Term> pending_;
};

template <class K>
Combination<K> operator+(const Combination<K>& a, const Combination<K>& b) {
    CombBuilder<K> bld;
    bld.add(a);
    bld.add(b);
    return bld.build();
}

template <class K>
Combination<K> operator-(const Combination<K>& a, const Combination<K>& b) {
    CombBuilder<K> bld;
    bld.add(a);
    bld.add(b, Scalar(-1));
    return bld.build();
}

}  // namespace homotransfer
