#pragma once

#include "gaugecalc/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace gaugecalc {

/// Weighted nonzero direction. Atoms live at arbitrary rational vectors (not
/// unit vectors) under the degree-1 homogeneous pairing convention:
/// (u, c) and (lambda u, c / lambda) are the same atom for lambda > 0.
struct ConicAtom {
    RatVec direction;
    Rational weight;  // > 0
};

/// Finitely supported positive measure on directions.
struct ConicMeasure {
    std::size_t dim{0};
    std::vector<ConicAtom> atoms;
};

struct SignedAtom {
    RatVec direction;
    Rational weight;  // != 0 in canonical form
};

/// Finitely supported signed measure on directions.
struct SignedConicMeasure {
    std::size_t dim{0};
    std::vector<SignedAtom> atoms;
};

struct PointAtom {
    RatVec point;
    Rational mass;  // > 0
};

/// Finitely supported measure on points of a compact convex set.
struct PointMeasure {
    std::size_t dim{0};
    std::vector<PointAtom> atoms;
};

/// Max of finitely many linear functionals: the sublinear witnesses attached
/// to failed linear-dominance queries.
struct SeparatingSublinear {
    std::vector<RatVec> pieces;  // p(x) = max_j (pieces[j], x)

    Rational eval(const RatVec& x) const {
        if (pieces.empty()) throw std::invalid_argument("sublinear functional with no pieces");
        Rational best = dot(pieces.front(), x);
        for (std::size_t j = 1; j < pieces.size(); ++j) {
            Rational v = dot(pieces[j], x);
            if (v > best) best = v;
        }
        return best;
    }
};

/// Max of finitely many affine functions: the convex witnesses attached to
/// failed affine-dominance queries.
struct SeparatingConvex {
    struct Piece {
        RatVec slope;
        Rational intercept;
    };
    std::vector<Piece> pieces;  // f(x) = max_j (slope_j, x) + intercept_j

    Rational eval(const RatVec& x) const {
        if (pieces.empty()) throw std::invalid_argument("convex functional with no pieces");
        Rational best = dot(pieces.front().slope, x) + pieces.front().intercept;
        for (std::size_t j = 1; j < pieces.size(); ++j) {
            Rational v = dot(pieces[j].slope, x) + pieces[j].intercept;
            if (v > best) best = v;
        }
        return best;
    }
};

namespace detail {

// Merges atoms along identical rays using the homogeneity convention and
// returns lexicographically sorted (direction, weight) pairs with the
// directions replaced by primitive integer ray representatives.
inline std::vector<std::pair<RatVec, Rational>> merge_by_ray(
    std::size_t dim, const std::vector<std::pair<RatVec, Rational>>& atoms) {
    std::map<RatVec, Rational, bool (*)(const RatVec&, const RatVec&)> acc(lex_less);
    for (const auto& [u, c] : atoms) {
        if (u.size() != dim) throw std::invalid_argument("atom direction length mismatch");
        if (is_zero_vec(u)) throw std::invalid_argument("atom at the zero direction");
        const RatVec w = primitive_ray(u);
        // u = alpha w with alpha > 0; degree-1 pairing turns (u, c) into (w, c alpha).
        Rational alpha = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (w[i] != 0) {
                alpha = u[i] / w[i];
                break;
            }
        }
        acc[w] += c * alpha;
    }
    std::vector<std::pair<RatVec, Rational>> out;
    for (auto& [w, c] : acc)
        if (c != 0) out.emplace_back(w, c);
    return out;
}

}  // namespace detail

inline ConicMeasure canonicalize_measure(const ConicMeasure& mu) {
    std::vector<std::pair<RatVec, Rational>> raw;
    for (const auto& a : mu.atoms) {
        if (a.weight <= 0) throw std::invalid_argument("conic atom weight must be positive");
        raw.emplace_back(a.direction, a.weight);
    }
    ConicMeasure out{mu.dim, {}};
    for (auto& [w, c] : detail::merge_by_ray(mu.dim, raw)) out.atoms.push_back({w, c});
    return out;
}

inline SignedConicMeasure canonicalize_measure(const SignedConicMeasure& sigma) {
    std::vector<std::pair<RatVec, Rational>> raw;
    for (const auto& a : sigma.atoms) {
        if (a.weight == 0) continue;
        raw.emplace_back(a.direction, a.weight);
    }
    SignedConicMeasure out{sigma.dim, {}};
    for (auto& [w, c] : detail::merge_by_ray(sigma.dim, raw)) out.atoms.push_back({w, c});
    return out;
}

inline PointMeasure canonicalize_measure(const PointMeasure& mu) {
    std::map<RatVec, Rational, bool (*)(const RatVec&, const RatVec&)> acc(lex_less);
    for (const auto& a : mu.atoms) {
        if (a.point.size() != mu.dim) throw std::invalid_argument("atom point length mismatch");
        if (a.mass <= 0) throw std::invalid_argument("point mass must be positive");
        acc[a.point] += a.mass;
    }
    PointMeasure out{mu.dim, {}};
    for (auto& [x, m] : acc) out.atoms.push_back({x, m});
    return out;
}

inline Rational total_mass(const ConicMeasure& mu) {
    Rational s = 0;
    for (const auto& a : mu.atoms) s += a.weight;
    return s;
}

inline Rational total_mass(const PointMeasure& mu) {
    Rational s = 0;
    for (const auto& a : mu.atoms) s += a.mass;
    return s;
}

/// Pairing with a support function: <mu, S_P> = sum of c_i S_P(u_i).
inline Rational pair(const ConicMeasure& mu, const VPolytope& p) {
    if (mu.dim != p.dim) throw std::invalid_argument("pair: dimension mismatch");
    Rational s = 0;
    for (const auto& a : mu.atoms) s += a.weight * support(p, a.direction);
    return s;
}

/// Signed pairing with a support function.
inline Rational pair(const SignedConicMeasure& sigma, const VPolytope& p) {
    if (sigma.dim != p.dim) throw std::invalid_argument("pair: dimension mismatch");
    Rational s = 0;
    for (const auto& a : sigma.atoms) s += a.weight * support(p, a.direction);
    return s;
}

inline Rational pair_sublinear(const ConicMeasure& mu, const SeparatingSublinear& p) {
    Rational s = 0;
    for (const auto& a : mu.atoms) s += a.weight * p.eval(a.direction);
    return s;
}

inline Rational pair_convex(const PointMeasure& mu, const SeparatingConvex& f) {
    Rational s = 0;
    for (const auto& a : mu.atoms) s += a.mass * f.eval(a.point);
    return s;
}

/// Representing point: the resultant sum of weighted directions.
inline RatVec resultant(const ConicMeasure& mu) {
    RatVec r = zero_vec(mu.dim);
    for (const auto& a : mu.atoms) r = add(r, scale_vec(a.direction, a.weight));
    return r;
}

inline RatVec resultant(const SignedConicMeasure& sigma) {
    RatVec r = zero_vec(sigma.dim);
    for (const auto& a : sigma.atoms) r = add(r, scale_vec(a.direction, a.weight));
    return r;
}

inline RatVec barycenter_sum(const PointMeasure& mu) {
    RatVec r = zero_vec(mu.dim);
    for (const auto& a : mu.atoms) r = add(r, scale_vec(a.point, a.mass));
    return r;
}

/// Jordan decomposition of a canonical signed measure: sigma = pos - neg.
inline std::pair<ConicMeasure, ConicMeasure> jordan(const SignedConicMeasure& sigma) {
    ConicMeasure pos{sigma.dim, {}}, neg{sigma.dim, {}};
    for (const auto& a : canonicalize_measure(sigma).atoms) {
        if (a.weight > 0)
            pos.atoms.push_back({a.direction, a.weight});
        else
            neg.atoms.push_back({a.direction, -a.weight});
    }
    return {pos, neg};
}

inline SignedConicMeasure to_signed(const ConicMeasure& mu) {
    SignedConicMeasure out{mu.dim, {}};
    for (const auto& a : mu.atoms) out.atoms.push_back({a.direction, a.weight});
    return out;
}

inline SignedConicMeasure add_measures(const SignedConicMeasure& a, const SignedConicMeasure& b) {
    if (a.dim != b.dim) throw std::invalid_argument("add_measures: dimension mismatch");
    SignedConicMeasure out{a.dim, a.atoms};
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return canonicalize_measure(out);
}

inline SignedConicMeasure scale_measure(const SignedConicMeasure& a, const Rational& s) {
    SignedConicMeasure out{a.dim, {}};
    for (const auto& atom : a.atoms)
        if (s != 0) out.atoms.push_back({atom.direction, s * atom.weight});
    return canonicalize_measure(out);
}

inline ConicMeasure add_measures(const ConicMeasure& a, const ConicMeasure& b) {
    if (a.dim != b.dim) throw std::invalid_argument("add_measures: dimension mismatch");
    ConicMeasure out{a.dim, a.atoms};
    out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
    return canonicalize_measure(out);
}

inline bool equal_measures(const ConicMeasure& a, const ConicMeasure& b) {
    if (a.dim != b.dim) return false;
    const ConicMeasure ca = canonicalize_measure(a), cb = canonicalize_measure(b);
    if (ca.atoms.size() != cb.atoms.size()) return false;
    for (std::size_t i = 0; i < ca.atoms.size(); ++i)
        if (ca.atoms[i].direction != cb.atoms[i].direction || ca.atoms[i].weight != cb.atoms[i].weight)
            return false;
    return true;
}

}  // namespace gaugecalc
