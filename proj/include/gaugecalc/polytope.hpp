#pragma once

#include "gaugecalc/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gaugecalc {

/// Convex figure in vertex representation: the convex hull of finitely many
/// rational points. Compact by construction. Canonical form keeps exactly the
/// extreme points, sorted lexicographically.
struct VPolytope {
    std::size_t dim{0};
    std::vector<RatVec> vertices;
};

struct Facet {
    RatVec normal;   // (a, x) <= offset
    Rational offset;
};

/// Facet representation. Lower-dimensional figures carry their affine hull as
/// paired opposite inequalities.
struct HPolytope {
    std::size_t dim{0};
    std::vector<Facet> facets;
};

inline void validate_figure(const VPolytope& p) {
    if (p.dim == 0) throw std::invalid_argument("figure dimension must be >= 1");
    if (p.vertices.empty()) throw std::invalid_argument("figure needs at least one vertex");
    for (const auto& v : p.vertices)
        if (v.size() != p.dim) throw std::invalid_argument("vertex length mismatch");
}

inline void require_same_dim(const VPolytope& p, const VPolytope& q) {
    if (p.dim != q.dim) throw std::invalid_argument("figure dimension mismatch");
}

/// Support function S_P(z) = max over vertices of (v, z).
inline Rational support(const VPolytope& p, const RatVec& z) {
    if (z.size() != p.dim) throw std::invalid_argument("support: dimension mismatch");
    Rational best = dot(p.vertices.front(), z);
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        Rational v = dot(p.vertices[i], z);
        if (v > best) best = v;
    }
    return best;
}

/// Exact membership test x in conv(vertices) via LP feasibility.
inline bool member(const VPolytope& p, const RatVec& x) {
    if (x.size() != p.dim) throw std::invalid_argument("member: dimension mismatch");
    const std::size_t k = p.vertices.size();
    std::vector<ConstraintRow> rows;
    for (std::size_t c = 0; c < p.dim; ++c) {
        ConstraintRow row;
        row.coeffs.resize(k);
        for (std::size_t i = 0; i < k; ++i) row.coeffs[i] = p.vertices[i][c];
        row.rel = Relation::Equal;
        row.rhs = x[c];
        rows.push_back(std::move(row));
    }
    ConstraintRow sum_row;
    sum_row.coeffs.assign(k, Rational(1));
    sum_row.rel = Relation::Equal;
    sum_row.rhs = 1;
    rows.push_back(std::move(sum_row));
    auto out = check_feasible(rows, k, std::vector<std::optional<Rational>>(k, Rational(0)));
    return std::holds_alternative<FeasiblePoint>(out);
}

/// Removes non-extreme points (one LP per point) and sorts lexicographically,
/// yielding the unique representation used by all equality checks.
inline VPolytope canonicalize(const VPolytope& p) {
    validate_figure(p);
    std::vector<RatVec> pts = p.vertices;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // Dropping a non-extreme point never changes the hull, so a single sweep
    // with in-place erasure is order independent.
    for (std::size_t i = 0; i < pts.size();) {
        if (pts.size() == 1) break;
        VPolytope others{p.dim, {}};
        others.vertices.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.vertices.push_back(pts[j]);
        if (member(others, pts[i]))
            pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return VPolytope{p.dim, std::move(pts)};
}

inline bool equal_figures(const VPolytope& p, const VPolytope& q) {
    if (p.dim != q.dim) return false;
    return canonicalize(p).vertices == canonicalize(q).vertices;
}

inline bool contains(const VPolytope& p, const VPolytope& q) {
    require_same_dim(p, q);
    for (const auto& v : q.vertices)
        if (!member(p, v)) return false;
    return true;
}

inline VPolytope scale(const VPolytope& p, const Rational& alpha) {
    validate_figure(p);
    if (alpha < 0) throw std::invalid_argument("scale: negative factor");
    if (alpha == 0) return VPolytope{p.dim, {zero_vec(p.dim)}};
    VPolytope out{p.dim, {}};
    out.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) out.vertices.push_back(scale_vec(v, alpha));
    return out;
}

inline VPolytope minkowski_sum(const VPolytope& p, const VPolytope& q) {
    require_same_dim(p, q);
    VPolytope out{p.dim, {}};
    out.vertices.reserve(p.vertices.size() * q.vertices.size());
    for (const auto& v : p.vertices)
        for (const auto& w : q.vertices) out.vertices.push_back(add(v, w));
    return canonicalize(out);
}

inline VPolytope join(const VPolytope& p, const VPolytope& q) {
    require_same_dim(p, q);
    VPolytope out{p.dim, p.vertices};
    out.vertices.insert(out.vertices.end(), q.vertices.begin(), q.vertices.end());
    return canonicalize(out);
}

inline VPolytope translate(const VPolytope& p, const RatVec& t) {
    VPolytope out{p.dim, {}};
    out.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) out.vertices.push_back(add(v, t));
    return out;
}

inline VPolytope negate_figure(const VPolytope& p) {
    VPolytope out{p.dim, {}};
    for (const auto& v : p.vertices) out.vertices.push_back(negate(v));
    return out;
}

inline bool is_symmetric(const VPolytope& p) {
    return canonicalize(p).vertices == canonicalize(negate_figure(p)).vertices;
}

/// Gauge (Minkowski functional) of P at x: min { lambda >= 0 : x in lambda P },
/// solved as min sum(beta) over V beta = x, beta >= 0. Requires 0 in P so the
/// feasible lambda set is upward closed; returns nullopt for +infinity.
inline ExtendedRational gauge(const VPolytope& p, const RatVec& x) {
    if (x.size() != p.dim) throw std::invalid_argument("gauge: dimension mismatch");
    if (!member(p, zero_vec(p.dim)))
        throw std::domain_error("gauge undefined: figure does not contain the origin");
    const std::size_t k = p.vertices.size();
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective.assign(k, Rational(1));
    for (std::size_t c = 0; c < p.dim; ++c) {
        ConstraintRow row;
        row.coeffs.resize(k);
        for (std::size_t i = 0; i < k; ++i) row.coeffs[i] = p.vertices[i][c];
        row.rel = Relation::Equal;
        row.rhs = x[c];
        lp.rows.push_back(std::move(row));
    }
    lp.lower.assign(k, Rational(0));
    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) return opt->value;
    return std::nullopt;  // not absorbing in direction x
}

namespace detail {

struct AffineHull {
    RatVec base;                       // p0
    std::vector<RatVec> span_rows;     // reduced basis of the linear span
    std::vector<std::size_t> pivots;   // pivot coordinate of each basis row
    std::vector<RatVec> normals;       // basis of the orthogonal complement

    std::size_t rank() const { return span_rows.size(); }

    RatVec coords(const RatVec& x) const {
        RatVec lam(rank());
        for (std::size_t t = 0; t < rank(); ++t) lam[t] = x[pivots[t]] - base[pivots[t]];
        return lam;
    }
};

inline AffineHull affine_hull(const VPolytope& p) {
    AffineHull h;
    h.base = p.vertices.front();
    std::vector<RatVec> diffs;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) diffs.push_back(sub(p.vertices[i], h.base));
    if (!diffs.empty()) {
        std::vector<std::size_t> pivots;
        const std::size_t rank = row_echelon(diffs, &pivots);
        diffs.resize(rank);
        h.span_rows = diffs;
        h.pivots = pivots;
    }
    std::vector<RatVec> m = h.span_rows;
    if (m.empty()) m.push_back(zero_vec(p.dim));
    h.normals = null_space(std::move(m));
    return h;
}

// 2D convex hull (monotone chain), exact arithmetic; returns hull points in
// counterclockwise order without collinear interior points.
inline std::vector<RatVec> hull_2d(std::vector<RatVec> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const RatVec& o, const RatVec& a, const RatVec& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<RatVec> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
            hull.pop_back();
        hull.push_back(pt);
    }
    const std::size_t lower_size = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (hull.size() >= lower_size && cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

inline RatVec facet_key(const Facet& f) {
    RatVec key = f.normal;
    key.push_back(f.offset);
    return primitive_ray(key);
}

inline void push_unique_facet(std::vector<Facet>& facets, const Facet& f) {
    const RatVec key = facet_key(f);
    for (const auto& g : facets)
        if (facet_key(g) == key) return;
    facets.push_back(f);
}

}  // namespace detail

/// Facet enumeration for N <= 3 (exact, via the affine hull and brute-force
/// search in hull coordinates). Lower-dimensional figures yield paired
/// equality facets for the hull plus facets within it.
inline HPolytope to_hrep(const VPolytope& input) {
    const VPolytope p = canonicalize(input);
    if (p.dim > 3) throw std::domain_error("facet enumeration limited to dimension <= 3");
    detail::AffineHull hull = detail::affine_hull(p);
    HPolytope h{p.dim, {}};
    for (const auto& n : hull.normals) {
        const Rational b = dot(n, hull.base);
        h.facets.push_back({n, b});
        h.facets.push_back({negate(n), -b});
    }
    const std::size_t k = hull.rank();
    std::vector<RatVec> lam;
    lam.reserve(p.vertices.size());
    for (const auto& v : p.vertices) lam.push_back(hull.coords(v));

    // A facet (g, c) in hull coordinates lifts to x-space through the pivot
    // coordinates: lambda_t(x) = (x - base)[pivot_t].
    auto lift = [&](const RatVec& g, const Rational& c) {
        RatVec a(p.dim, Rational(0));
        for (std::size_t t = 0; t < k; ++t) a[hull.pivots[t]] += g[t];
        return Facet{a, c + dot(a, hull.base)};
    };

    if (k == 1) {
        Rational lo = lam[0][0], hi = lam[0][0];
        for (const auto& l : lam) {
            if (l[0] < lo) lo = l[0];
            if (l[0] > hi) hi = l[0];
        }
        detail::push_unique_facet(h.facets, lift({Rational(1)}, hi));
        detail::push_unique_facet(h.facets, lift({Rational(-1)}, -lo));
    } else if (k == 2) {
        const std::vector<RatVec> hull2 = detail::hull_2d(lam);
        RatVec centroid = zero_vec(2);
        for (const auto& q : hull2) centroid = add(centroid, q);
        const Rational inv = Rational(1) / Rational(static_cast<int>(hull2.size()));
        centroid = scale_vec(centroid, inv);
        for (std::size_t i = 0; i < hull2.size(); ++i) {
            const RatVec& q1 = hull2[i];
            const RatVec& q2 = hull2[(i + 1) % hull2.size()];
            const RatVec d = sub(q2, q1);
            RatVec n = {d[1], -d[0]};
            Rational b = dot(n, q1);
            if (dot(n, centroid) > b) {
                n = negate(n);
                b = -b;
            }
            detail::push_unique_facet(h.facets, lift(n, b));
        }
    } else if (k == 3) {
        const std::size_t m = lam.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t l = j + 1; l < m; ++l) {
                    const RatVec u = sub(lam[j], lam[i]);
                    const RatVec w = sub(lam[l], lam[i]);
                    RatVec n = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                                u[0] * w[1] - u[1] * w[0]};
                    if (is_zero_vec(n)) continue;
                    const Rational b = dot(n, lam[i]);
                    bool all_le = true, all_ge = true;
                    for (const auto& q : lam) {
                        const Rational s = dot(n, q);
                        if (s > b) all_le = false;
                        if (s < b) all_ge = false;
                    }
                    if (all_le) detail::push_unique_facet(h.facets, lift(n, b));
                    if (all_ge) detail::push_unique_facet(h.facets, lift(negate(n), -b));
                }
    }
    return h;
}

/// Exact vertex enumeration for N <= 3: basic-solution search over all
/// N-subsets of facet rows. Returns nullopt for an empty feasible set and
/// throws std::domain_error on an unbounded one.
inline std::optional<VPolytope> from_hrep(const HPolytope& h) {
    if (h.dim > 3) throw std::domain_error("vertex enumeration limited to dimension <= 3");
    if (h.dim == 0) throw std::invalid_argument("vertex enumeration: dimension must be >= 1");
    std::vector<ConstraintRow> rows;
    for (const auto& f : h.facets) rows.push_back({f.normal, Relation::LessEq, f.offset});

    {
        auto feas = check_feasible(rows, h.dim);
        if (std::holds_alternative<LpInfeasible>(feas)) return std::nullopt;
    }
    for (std::size_t c = 0; c < h.dim; ++c) {
        for (int sgn : {+1, -1}) {
            LinearProgram lp;
            lp.objective = unit_vec(h.dim, c, Rational(sgn));
            lp.rows = rows;
            if (std::holds_alternative<LpUnbounded>(solve_lp(lp)))
                throw std::domain_error("vertex enumeration on an unbounded region");
        }
    }

    const std::size_t m = h.facets.size();
    std::vector<RatVec> verts;
    auto consider = [&](const std::vector<std::size_t>& idx) {
        std::vector<RatVec> a;
        RatVec b;
        for (auto i : idx) {
            a.push_back(h.facets[i].normal);
            b.push_back(h.facets[i].offset);
        }
        auto x = solve_square(std::move(a), std::move(b));
        if (!x) return;
        for (const auto& f : h.facets)
            if (dot(f.normal, *x) > f.offset) return;
        verts.push_back(std::move(*x));
    };
    if (h.dim == 1) {
        for (std::size_t i = 0; i < m; ++i) consider({i});
    } else if (h.dim == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) consider({i, j});
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t l = j + 1; l < m; ++l) consider({i, j, l});
    }
    if (verts.empty()) return std::nullopt;  // unreachable after the probes above
    return canonicalize(VPolytope{h.dim, std::move(verts)});
}

/// True iff the figure is full-dimensional with the origin strictly inside.
inline bool origin_interior(const VPolytope& p) {
    validate_figure(p);
    const HPolytope h = to_hrep(p);
    detail::AffineHull hull = detail::affine_hull(canonicalize(p));
    if (hull.rank() != p.dim) return false;
    for (const auto& f : h.facets)
        if (!(f.offset > 0)) return false;
    return true;
}

/// Polar S° = { x : (x, y) <= 1 for all y in S }; requires 0 in int S.
inline VPolytope polar(const VPolytope& p) {
    validate_figure(p);
    if (!origin_interior(p))
        throw std::domain_error("polar: origin must be interior (polar bounded)");
    HPolytope h{p.dim, {}};
    for (const auto& v : canonicalize(p).vertices) h.facets.push_back({v, Rational(1)});
    auto out = from_hrep(h);
    if (!out) throw CertificateDefect("polar of a figure with interior origin came out empty");
    return *out;
}

/// Meet (intersection). Disjoint figures produce nullopt, a first-class
/// Empty result rather than an error.
inline std::optional<VPolytope> meet(const VPolytope& p, const VPolytope& q) {
    require_same_dim(p, q);
    HPolytope hp = to_hrep(p);
    const HPolytope hq = to_hrep(q);
    hp.facets.insert(hp.facets.end(), hq.facets.begin(), hq.facets.end());
    return from_hrep(hp);
}

/// Operator norm ||A||_S = sup of gauge(S, A x) over x in S, attained at a
/// vertex; nullopt encodes +infinity.
inline ExtendedRational operator_norm(const LinearMap& a, const VPolytope& p) {
    if (a.dim() != p.dim) throw std::invalid_argument("operator_norm: dimension mismatch");
    if (!member(p, zero_vec(p.dim)))
        throw std::domain_error("operator_norm: figure must contain the origin");
    Rational best = 0;
    for (const auto& v : p.vertices) {
        ExtendedRational g = gauge(p, a.apply(v));
        if (!g) return std::nullopt;
        if (*g > best) best = *g;
    }
    return best;
}

struct InfConvolutionValue {
    bool unbounded{false};  // true when meet(P, Q) is empty (value -infinity)
    Rational value{0};
};

/// (S_P box S_Q)(x) = min { S_P(x1) + S_Q(x2) : x1 + x2 = x }, by LP on the
/// epigraphs. Equals support(meet(P, Q), x) whenever the meet is nonempty.
inline InfConvolutionValue inf_convolution(const VPolytope& p, const VPolytope& q, const RatVec& x) {
    require_same_dim(p, q);
    if (x.size() != p.dim) throw std::invalid_argument("inf_convolution: dimension mismatch");
    const std::size_t n = p.dim;
    // Variables: y (= x1, free, n coords), s, t.
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = zero_vec(n + 2);
    lp.objective[n] = 1;
    lp.objective[n + 1] = 1;
    for (const auto& v : p.vertices) {
        ConstraintRow row;
        row.coeffs = v;
        row.coeffs.resize(n + 2, Rational(0));
        row.coeffs[n] = -1;
        row.rel = Relation::LessEq;
        row.rhs = 0;  // (v, y) - s <= 0
        lp.rows.push_back(std::move(row));
    }
    for (const auto& w : q.vertices) {
        ConstraintRow row;
        row.coeffs = negate(w);
        row.coeffs.resize(n + 2, Rational(0));
        row.coeffs[n + 1] = -1;
        row.rel = Relation::LessEq;
        row.rhs = -dot(w, x);  // (w, x - y) - t <= 0
        lp.rows.push_back(std::move(row));
    }
    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) return {false, opt->value};
    if (std::holds_alternative<LpUnbounded>(out)) return {true, Rational(0)};
    throw CertificateDefect("infimal convolution LP reported infeasible");
}

/// Grid approximation of the Chebyshev metric: max |S_P - S_Q| over the given
/// directions, taken degree-1 homogeneous (directions enter as given).
inline Rational support_deviation(const VPolytope& p, const VPolytope& q,
                                  const std::vector<RatVec>& directions) {
    require_same_dim(p, q);
    if (directions.empty()) throw std::invalid_argument("support_deviation: empty direction list");
    Rational best = 0;
    for (const auto& z : directions) {
        if (is_zero_vec(z)) throw std::invalid_argument("support_deviation: zero direction");
        Rational d = support(p, z) - support(q, z);
        if (d < 0) d = -d;
        if (d > best) best = d;
    }
    return best;
}

}  // namespace gaugecalc
