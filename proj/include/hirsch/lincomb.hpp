#pragma once

#include <map>
#include <utility>

#include "hirsch/core.hpp"

namespace hirsch {

/* Formal linear combination of totally ordered keys with exact coefficients.
 * Always canonical: no zero coefficients, keys deduplicated, map order is the
 * term order. Every mutation ticks the term budget. */
template <class K>
class LinComb {
    Ring ring_;
    std::map<K, Coeff> terms_;

  public:
    using Key = K;

    explicit LinComb(Ring r) : ring_(r) {}

    static LinComb zero(Ring r) { return LinComb(r); }

    static LinComb single(Ring r, K key, Coeff c = 1) {
        LinComb out(r);
        out.add(std::move(key), c);
        return out;
    }

    Ring ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<K, Coeff>& terms() const& { return terms_; }
    // Rvalue overload returns by value so iterating the terms of a temporary
    // (a common pattern: for (auto& [k,c] : f(x).terms())) stays valid.
    std::map<K, Coeff> terms() && { return std::move(terms_); }

    void add(K key, Coeff c) {
        c = normalize_coeff(ring_, c);
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second = normalize_coeff(ring_, checked_add(it->second, c));
            if (it->second == 0) terms_.erase(it);
        }
        detail::budget_check(terms_.size());
    }

    LinComb& operator+=(const LinComb& o) {
        if (ring_ != o.ring_) throw DomainError("ring mismatch in addition");
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }

    LinComb& axpy(Coeff a, const LinComb& o) {
        if (ring_ != o.ring_) throw DomainError("ring mismatch in axpy");
        if (a == 0) return *this;
        for (const auto& [k, c] : o.terms_) add(k, checked_mul(a, c));
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }

    friend LinComb operator-(LinComb a, const LinComb& b) {
        a.axpy(-1, b);
        return a;
    }

    LinComb scaled(Coeff a) const {
        LinComb out(ring_);
        for (const auto& [k, c] : terms_) out.add(k, checked_mul(a, c));
        return out;
    }

    Coeff coeff(const K& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? 0 : it->second;
    }

    bool operator==(const LinComb& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const LinComb& o) const { return !(*this == o); }
};

/* Coefficient-wise reduction Z -> Z2. */
template <class K>
LinComb<K> reduce_mod2(const LinComb<K>& x) {
    LinComb<K> out(Ring::Z2);
    for (const auto& [k, c] : x.terms()) out.add(k, c);
    return out;
}

}  // namespace hirsch
