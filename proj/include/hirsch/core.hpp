#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hirsch {

/* Coefficient ring of a computation. All arithmetic is exact; Z2 keeps
 * coefficients in {0,1}. */
enum class Ring { Z, Z2 };

inline std::string ring_name(Ring r) { return r == Ring::Z ? "z" : "z2"; }

/* Tensor factor a generator lives in. Words never mix sides. */
enum class Side { L, R };

inline std::string side_name(Side s) { return s == Side::L ? "L" : "R"; }

/* Bad user input: unknown names, side mixing, malformed text, calls outside
 * an operation's domain. Maps to CLI exit code 2. */
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Term budget exceeded. Maps to CLI exit code 3. */
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Broken internal invariant; indicates a bug, not bad input. */
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("coefficient overflow in add");
    return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("coefficient overflow in mul");
    return r;
}

/* Reduce a coefficient into canonical form for the ring. */
inline Coeff normalize_coeff(Ring r, Coeff c) {
    if (r == Ring::Z2) {
        c %= 2;
        if (c < 0) c += 2;
    }
    return c;
}

inline int parity(long long n) { return static_cast<int>(((n % 2) + 2) % 2); }

/* (-1)^n as a coefficient. */
inline Coeff sign_pow(long long n) { return parity(n) == 0 ? 1 : -1; }

namespace detail {
/* Per-thread cap on the number of live terms any single expression may hold.
 * Checked on every insertion path, so runaway recursions abort early. */
inline thread_local std::int64_t term_budget = 1'000'000;

inline void budget_check(std::size_t nterms) {
    if (static_cast<std::int64_t>(nterms) > term_budget)
        throw ResourceError("term budget exceeded (" + std::to_string(term_budget) + " terms)");
}
}  // namespace detail

/* Scoped override of the term budget; restores the previous cap on exit. */
class BudgetScope {
    std::int64_t saved_;

  public:
    explicit BudgetScope(std::int64_t max_terms) : saved_(detail::term_budget) {
        if (max_terms <= 0) throw DomainError("term budget must be positive");
        detail::term_budget = max_terms;
    }
    ~BudgetScope() { detail::term_budget = saved_; }
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;
};

/* Koszul sign of permuting homogeneous factors with the given degrees by
 * perm, where perm[i] is the source position of the factor landing at slot i.
 * The sign is (-1)^sum over inverted pairs of the product of their degrees. */
inline Coeff koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& perm) {
    if (degrees.size() != perm.size()) throw DomainError("koszul_sign: length mismatch");
    long long e = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                e += static_cast<long long>(degrees[perm[i]]) * degrees[perm[j]];
    return sign_pow(e);
}

}  // namespace hirsch
