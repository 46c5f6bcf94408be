#pragma once

#include "gaugecalc/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gaugecalc {

using RatVec = std::vector<Rational>;

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec negate(const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline RatVec scale_vec(const RatVec& a, const Rational& s) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline bool is_zero_vec(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

/// Strict lexicographic order; the tie-breaker behind every canonical sort.
inline bool lex_less(const RatVec& a, const RatVec& b) {
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return a.size() < b.size();
}

inline RatVec zero_vec(std::size_t n) { return RatVec(n, Rational(0)); }

inline RatVec unit_vec(std::size_t n, std::size_t i, const Rational& v = 1) {
    RatVec r(n, Rational(0));
    r.at(i) = v;
    return r;
}

/// Square rational matrix acting on column vectors; A in L(R^N).
struct LinearMap {
    std::vector<RatVec> rows;  // N rows of length N

    std::size_t dim() const { return rows.size(); }

    RatVec apply(const RatVec& x) const {
        if (x.size() != dim()) throw std::invalid_argument("LinearMap: dimension mismatch");
        RatVec y(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (rows[i].size() != dim()) throw std::invalid_argument("LinearMap: not square");
            y[i] = dot(rows[i], x);
        }
        return y;
    }
};

inline LinearMap identity_map(std::size_t n) {
    LinearMap m;
    m.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.rows[i] = unit_vec(n, i);
    return m;
}

/// Row echelon elimination over the rationals. Returns the rank; `mat` is
/// modified in place and `pivot_cols` receives the pivot column of each
/// nonzero row.
inline std::size_t row_echelon(std::vector<RatVec>& mat, std::vector<std::size_t>* pivot_cols = nullptr) {
    if (pivot_cols) pivot_cols->clear();
    if (mat.empty()) return 0;
    const std::size_t ncols = mat[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < mat.size(); ++col) {
        std::size_t piv = rank;
        while (piv < mat.size() && mat[piv][col] == 0) ++piv;
        if (piv == mat.size()) continue;
        std::swap(mat[rank], mat[piv]);
        const Rational inv = Rational(1) / mat[rank][col];
        for (std::size_t j = col; j < ncols; ++j) mat[rank][j] *= inv;
        for (std::size_t i = 0; i < mat.size(); ++i) {
            if (i == rank || mat[i][col] == 0) continue;
            const Rational f = mat[i][col];
            for (std::size_t j = col; j < ncols; ++j) mat[i][j] -= f * mat[rank][j];
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

inline std::size_t matrix_rank(std::vector<RatVec> mat) { return row_echelon(mat); }

/// Solves the square system A x = b exactly. Returns nullopt when A is singular.
inline std::optional<RatVec> solve_square(std::vector<RatVec> a, RatVec b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_square: not square");
        a[i].push_back(b[i]);
    }
    std::vector<std::size_t> pivots;
    const std::size_t rank = row_echelon(a, &pivots);
    // A pivot in the augmented column means the coefficient part is singular.
    if (rank < n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] >= n) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = a[i][n];
    return x;
}

/// Basis of the null space of A (vectors v with A v = 0).
inline std::vector<RatVec> null_space(std::vector<RatVec> a) {
    if (a.empty()) return {};
    const std::size_t ncols = a[0].size();
    std::vector<std::size_t> pivots;
    const std::size_t rank = row_echelon(a, &pivots);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(ncols, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -a[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scales a nonzero rational vector to the unique primitive integer vector on
/// the same ray (positive multiple). Used for canonical ray representatives.
inline RatVec primitive_ray(const RatVec& v) {
    if (is_zero_vec(v)) throw std::invalid_argument("primitive_ray: zero vector");
    Integer den_lcm = 1;
    for (const auto& x : v) den_lcm = lcm(den_lcm, denominator(x));
    std::vector<Integer> ints(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
        g = gcd(g, ints[i]);
    }
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
    return out;
}

}  // namespace gaugecalc
