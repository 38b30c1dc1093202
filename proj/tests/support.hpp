#pragma once

#include <random>
#include <string>
#include <vector>

#include "hirsch/free_algebra.hpp"
#include "hirsch/twisting.hpp"

namespace ts {

using namespace hirsch;

using FBar = BarWord<FreeAlgebra>;

/* Fresh closed generators g1..gn on one side with the given degrees. */
inline std::vector<Generator> fresh_gens(GenStore& store, const FreeAlgebra& alg,
                                         const std::vector<int>& degrees, Side side = Side::L,
                                         const std::string& prefix = "x") {
    std::vector<Generator> out;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        out.push_back(add_generator(store, alg, prefix + std::to_string(i + 1), degrees[i], side));
    return out;
}

inline Word gw(const Generator& g) { return Word{{Atom(g)}}; }

inline FBar bar_of(const std::vector<Generator>& gens, std::size_t from, std::size_t count) {
    FBar out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(gw(gens[from + i]));
    return out;
}

/* All degree assignments from the alphabet for n slots. */
inline std::vector<std::vector<int>> degree_assignments(std::size_t n,
                                                        const std::vector<int>& alphabet) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int d : alphabet) {
            cur[i] = d;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/* Deterministic pseudo-random words over the given generators, sometimes with
 * an E-symbol atom thrown in. */
class RandomWords {
    std::mt19937 rng_;
    std::vector<Generator> gens_;
    Ring ring_;

  public:
    RandomWords(unsigned seed, std::vector<Generator> gens, Ring ring)
        : rng_(seed), gens_(std::move(gens)), ring_(ring) {}

    std::mt19937& rng() { return rng_; }

    Atom random_atom(int depth = 0) {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(gens_.size()) - 1);
        std::uniform_int_distribution<int> kind(0, 3);
        if (depth == 0 && kind(rng_) == 0) {
            Generator head = gens_[pick(rng_)];
            std::uniform_int_distribution<int> nargs(1, 2);
            std::vector<Word> args;
            int k = nargs(rng_);
            for (int i = 0; i < k; ++i) args.push_back(random_word(1, 2, depth + 1));
            return Atom(ESymbol{head, args});
        }
        return Atom(gens_[pick(rng_)]);
    }

    Word random_word(std::size_t min_atoms, std::size_t max_atoms, int depth = 0) {
        std::uniform_int_distribution<std::size_t> len(min_atoms, max_atoms);
        std::vector<Atom> atoms;
        std::size_t n = len(rng_);
        for (std::size_t i = 0; i < n; ++i) atoms.push_back(random_atom(depth));
        return Word{atoms};
    }

    Expr random_expr(std::size_t nterms, std::size_t max_atoms) {
        Expr out = Expr::zero(ring_);
        std::uniform_int_distribution<Coeff> coeff(-3, 3);
        for (std::size_t i = 0; i < nterms; ++i)
            out.add(random_word(0, max_atoms), ring_ == Ring::Z2 ? 1 : coeff(rng_));
        return out;
    }

    FBar random_bar(std::size_t max_len, std::size_t max_atoms) {
        std::uniform_int_distribution<std::size_t> len(0, max_len);
        FBar out;
        std::size_t n = len(rng_);
        for (std::size_t i = 0; i < n; ++i) out.push_back(random_word(1, max_atoms));
        return out;
    }
};

}  // namespace ts
