#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "syz/lattice.hpp"

namespace oracle {

using syz::Integer;
using syz::IntMatrix;
using syz::IntVec;
using syz::Rational;
using syz::RatVec;

inline Integer cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        Integer term = m(0, j) * cofactor_det(minor);
        d += (j % 2 == 0) ? term : Integer(-term);
    }
    return d;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Invariant factors via determinantal divisors: d_k = gcd of k-minors.
inline std::vector<Integer> determinantal_divisors_factors(const IntMatrix& m) {
    std::vector<Integer> dk{1};
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        Integer g = 0;
        for (const auto& rs : subsets(m.rows(), k))
            for (const auto& cs : subsets(m.cols(), k)) {
                IntMatrix sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
                Integer d = cofactor_det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<Integer> f;
    for (std::size_t k = 1; k < dk.size(); ++k) f.push_back(dk[k] / dk[k - 1]);
    return f;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

inline IntVec random_vec(std::mt19937& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

inline IntMatrix mat_product(const std::vector<IntMatrix>& ms) {
    IntMatrix p = IntMatrix::identity(ms.front().rows());
    for (const auto& m : ms) p = p * m;
    return p;
}

}  // namespace oracle
