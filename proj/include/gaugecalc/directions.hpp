#pragma once

#include "gaugecalc/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace gaugecalc {

/// SplitMix64: tiny deterministic PRNG driving every randomized search.
/// Identical seeds give identical streams on every platform.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational(long long max_abs_num, long long max_den) {
        const long long num = int_in(-max_abs_num, max_abs_num);
        const long long den = int_in(1, max_den);
        Rational r(num, den);
        return r;
    }

    RatVec vec(std::size_t dim, long long max_abs_num, long long max_den) {
        RatVec v(dim);
        for (auto& x : v) x = rational(max_abs_num, max_den);
        return v;
    }

    RatVec nonzero_vec(std::size_t dim, long long max_abs_num, long long max_den) {
        for (;;) {
            RatVec v = vec(dim, max_abs_num, max_den);
            if (!is_zero_vec(v)) return v;
        }
    }

  private:
    std::uint64_t state_;
};

namespace detail {

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact counterclockwise angular order starting at the positive x-axis.
inline bool angle_less(const RatVec& a, const RatVec& b) {
    auto half = [](const RatVec& v) {
        // 0: y > 0 or (y == 0 and x > 0); 1: the rest.
        if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
        return 1;
    };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    const Rational cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

}  // namespace detail

/// Deterministic rational direction fan: `count` primitive integer directions
/// spread over all of R^dim \ {0}. In the plane the fan is angle-ordered and
/// evenly indexed (a Farey-style fan); in higher dimension the primitive
/// vectors of a small integer grid are used in lexicographic order.
inline std::vector<RatVec> fan_directions(std::size_t dim, std::size_t count) {
    if (dim == 0 || count == 0) throw std::invalid_argument("fan_directions: dim and count must be positive");
    if (dim == 1) {
        std::vector<RatVec> out = {{Rational(1)}, {Rational(-1)}};
        out.resize(std::min<std::size_t>(count, 2), out.back());
        return out;
    }
    std::vector<std::vector<long long>> prim;
    long long bound = 1;
    auto gather = [&](long long bnd) {
        prim.clear();
        std::vector<long long> v(dim, -bnd);
        for (;;) {
            long long g = 0;
            bool zero = true;
            for (auto c : v) {
                g = detail::gcd_ll(g, c);
                if (c != 0) zero = false;
            }
            if (!zero && g == 1) prim.push_back(v);
            std::size_t i = 0;
            while (i < dim && v[i] == bnd) v[i++] = -bnd;
            if (i == dim) break;
            ++v[i];
        }
    };
    gather(bound);
    while (prim.size() < count) gather(++bound);

    std::vector<RatVec> dirs;
    dirs.reserve(prim.size());
    for (const auto& v : prim) {
        RatVec r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = Rational(v[i]);
        dirs.push_back(std::move(r));
    }
    if (dim == 2)
        std::sort(dirs.begin(), dirs.end(), detail::angle_less);
    else
        std::sort(dirs.begin(), dirs.end(), lex_less);

    std::vector<RatVec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(dirs[(i * dirs.size()) / count]);
    return out;
}

}  // namespace gaugecalc
