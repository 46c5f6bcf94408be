#pragma once

#include "gaugecalc/measure.hpp"

#include <string>
#include <variant>
#include <vector>

namespace gaugecalc {

/// Transport witness for a dominance verdict. Rows follow the atoms of the
/// dominating measure, columns the atoms of the dominated one. Row sums equal
/// the dominating weights; each column reproduces the dominated atom's
/// resultant (and, for affine dominance, also its mass).
struct TransportCertificate {
    std::size_t rows{0}, cols{0};
    std::vector<RatVec> entries;  // rows x cols, all >= 0
};

struct LinearDominanceYes {
    TransportCertificate transport;
};
struct LinearDominanceNo {
    SeparatingSublinear separator;
};
using LinearDominance = std::variant<LinearDominanceYes, LinearDominanceNo>;

struct AffineDominanceYes {
    TransportCertificate transport;
};
struct AffineDominanceNo {
    SeparatingConvex separator;
};
using AffineDominance = std::variant<AffineDominanceYes, AffineDominanceNo>;

/// Exact replay of a linear-dominance transport certificate.
inline bool verify_transport_linear(const ConicMeasure& mu, const ConicMeasure& nu,
                                    const TransportCertificate& t) {
    if (t.rows != mu.atoms.size() || t.cols != nu.atoms.size()) return false;
    if (t.entries.size() != t.rows) return false;
    for (const auto& row : t.entries)
        if (row.size() != t.cols) return false;
    for (std::size_t i = 0; i < t.rows; ++i)
        for (std::size_t j = 0; j < t.cols; ++j)
            if (t.entries[i][j] < 0) return false;
    if (t.cols == 0) return true;  // against the zero measure: positivity is all
    for (std::size_t i = 0; i < t.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < t.cols; ++j) s += t.entries[i][j];
        if (s != mu.atoms[i].weight) return false;
    }
    for (std::size_t j = 0; j < t.cols; ++j) {
        RatVec r = zero_vec(mu.dim);
        for (std::size_t i = 0; i < t.rows; ++i)
            r = add(r, scale_vec(mu.atoms[i].direction, t.entries[i][j]));
        if (r != scale_vec(nu.atoms[j].direction, nu.atoms[j].weight)) return false;
    }
    return true;
}

/// Exact replay of an affine-dominance transport certificate.
inline bool verify_transport_affine(const PointMeasure& mu, const PointMeasure& nu,
                                    const TransportCertificate& t) {
    if (t.rows != mu.atoms.size() || t.cols != nu.atoms.size()) return false;
    for (std::size_t i = 0; i < t.rows; ++i)
        for (std::size_t j = 0; j < t.cols; ++j)
            if (t.entries[i][j] < 0) return false;
    for (std::size_t i = 0; i < t.rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < t.cols; ++j) s += t.entries[i][j];
        if (s != mu.atoms[i].mass) return false;
    }
    for (std::size_t j = 0; j < t.cols; ++j) {
        Rational mass = 0;
        RatVec r = zero_vec(mu.dim);
        for (std::size_t i = 0; i < t.rows; ++i) {
            mass += t.entries[i][j];
            r = add(r, scale_vec(mu.atoms[i].point, t.entries[i][j]));
        }
        if (mass != nu.atoms[j].mass) return false;
        if (r != scale_vec(nu.atoms[j].point, nu.atoms[j].mass)) return false;
    }
    return true;
}

inline bool verify_separator_linear(const ConicMeasure& mu, const ConicMeasure& nu,
                                    const SeparatingSublinear& p) {
    return pair_sublinear(mu, p) < pair_sublinear(nu, p);
}

inline bool verify_separator_convex(const PointMeasure& mu, const PointMeasure& nu,
                                    const SeparatingConvex& f) {
    return pair_convex(mu, f) < pair_convex(nu, f);
}

/// Linear majorization (Reshetnyak dominance) decided by the transport LP:
/// t >= 0, row sums = mu weights, column resultants = nu atoms. On failure
/// the Farkas multipliers assemble a sublinear p = max_j (-y_j, .) with
/// <mu, p> strictly below <nu, p>; the construction is replayed, never
/// trusted. An empty nu is dominated by every positive measure (support
/// functions of gauges are nonnegative), matching the dual-cone semantics.
inline LinearDominance dominates_linear(const ConicMeasure& mu_in, const ConicMeasure& nu_in) {
    if (mu_in.dim != nu_in.dim) throw std::invalid_argument("dominates_linear: dimension mismatch");
    const ConicMeasure mu = canonicalize_measure(mu_in);
    const ConicMeasure nu = canonicalize_measure(nu_in);
    const std::size_t n = mu.atoms.size(), m = nu.atoms.size(), dim = mu.dim;

    if (m == 0) {
        TransportCertificate t{n, 0, std::vector<RatVec>(n)};
        return LinearDominanceYes{std::move(t)};
    }
    if (n == 0) {
        // Nothing can transport onto a nonzero target; separate with a gauge
        // positive on every nu atom.
        SeparatingSublinear p;
        for (const auto& a : nu.atoms) {
            p.pieces.push_back(a.direction);
            p.pieces.push_back(negate(a.direction));
        }
        if (!verify_separator_linear(mu, nu, p))
            throw CertificateDefect("separating functional failed replay (empty mu)");
        return LinearDominanceNo{std::move(p)};
    }

    LinearProgram lp;
    lp.objective = zero_vec(n * m);
    auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };
    for (std::size_t i = 0; i < n; ++i) {
        ConstraintRow row;
        row.coeffs = zero_vec(n * m);
        for (std::size_t j = 0; j < m; ++j) row.coeffs[var(i, j)] = 1;
        row.rel = Relation::Equal;
        row.rhs = mu.atoms[i].weight;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            ConstraintRow row;
            row.coeffs = zero_vec(n * m);
            for (std::size_t i = 0; i < n; ++i) row.coeffs[var(i, j)] = mu.atoms[i].direction[k];
            row.rel = Relation::Equal;
            row.rhs = nu.atoms[j].weight * nu.atoms[j].direction[k];
            lp.rows.push_back(std::move(row));
        }
    }
    lp.lower.assign(n * m, Rational(0));

    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) {
        TransportCertificate t{n, m, {}};
        t.entries.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            t.entries[i].resize(m);
            for (std::size_t j = 0; j < m; ++j) t.entries[i][j] = opt->point[var(i, j)];
        }
        if (!verify_transport_linear(mu, nu, t))
            throw CertificateDefect("transport certificate failed replay");
        return LinearDominanceYes{std::move(t)};
    }
    const auto& inf = std::get<LpInfeasible>(out);
    SeparatingSublinear p;
    for (std::size_t j = 0; j < m; ++j) {
        RatVec piece(dim);
        for (std::size_t k = 0; k < dim; ++k) piece[k] = -inf.farkas[n + j * dim + k];
        p.pieces.push_back(std::move(piece));
    }
    if (!verify_separator_linear(mu, nu, p))
        throw CertificateDefect("separating functional failed replay");
    return LinearDominanceNo{std::move(p)};
}

/// Affine majorization (Cartier--Fell--Meyer dominance): the transport must
/// preserve per-column mass and barycenter. Unequal total masses fail
/// immediately with a constant separating function.
inline AffineDominance dominates_affine(const PointMeasure& mu_in, const PointMeasure& nu_in) {
    if (mu_in.dim != nu_in.dim) throw std::invalid_argument("dominates_affine: dimension mismatch");
    const PointMeasure mu = canonicalize_measure(mu_in);
    const PointMeasure nu = canonicalize_measure(nu_in);
    if (mu.atoms.empty() || nu.atoms.empty())
        throw std::invalid_argument("dominates_affine: measures must be nonempty");
    const std::size_t n = mu.atoms.size(), m = nu.atoms.size(), dim = mu.dim;

    const Rational mc = total_mass(mu), md = total_mass(nu);
    if (mc != md) {
        SeparatingConvex f;
        f.pieces.push_back({zero_vec(dim), mc < md ? Rational(1) : Rational(-1)});
        if (!verify_separator_convex(mu, nu, f))
            throw CertificateDefect("constant separator failed replay");
        return AffineDominanceNo{std::move(f)};
    }

    LinearProgram lp;
    lp.objective = zero_vec(n * m);
    auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };
    for (std::size_t i = 0; i < n; ++i) {
        ConstraintRow row;
        row.coeffs = zero_vec(n * m);
        for (std::size_t j = 0; j < m; ++j) row.coeffs[var(i, j)] = 1;
        row.rel = Relation::Equal;
        row.rhs = mu.atoms[i].mass;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j) {
        ConstraintRow row;
        row.coeffs = zero_vec(n * m);
        for (std::size_t i = 0; i < n; ++i) row.coeffs[var(i, j)] = 1;
        row.rel = Relation::Equal;
        row.rhs = nu.atoms[j].mass;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            ConstraintRow row;
            row.coeffs = zero_vec(n * m);
            for (std::size_t i = 0; i < n; ++i) row.coeffs[var(i, j)] = mu.atoms[i].point[k];
            row.rel = Relation::Equal;
            row.rhs = nu.atoms[j].mass * nu.atoms[j].point[k];
            lp.rows.push_back(std::move(row));
        }
    }
    lp.lower.assign(n * m, Rational(0));

    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) {
        TransportCertificate t{n, m, {}};
        t.entries.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            t.entries[i].resize(m);
            for (std::size_t j = 0; j < m; ++j) t.entries[i][j] = opt->point[var(i, j)];
        }
        if (!verify_transport_affine(mu, nu, t))
            throw CertificateDefect("affine transport certificate failed replay");
        return AffineDominanceYes{std::move(t)};
    }
    const auto& inf = std::get<LpInfeasible>(out);
    SeparatingConvex f;
    for (std::size_t j = 0; j < m; ++j) {
        SeparatingConvex::Piece piece;
        piece.intercept = -inf.farkas[n + j];
        piece.slope.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) piece.slope[k] = -inf.farkas[n + m + j * dim + k];
        f.pieces.push_back(std::move(piece));
    }
    if (!verify_separator_convex(mu, nu, f))
        throw CertificateDefect("separating convex function failed replay");
    return AffineDominanceNo{std::move(f)};
}

/// Dual-cone test for a signed measure against the gauges: sigma >= 0 on
/// every support function iff its positive part dominates its negative part.
inline LinearDominance in_dual_cone(const SignedConicMeasure& sigma) {
    auto [pos, neg] = jordan(sigma);
    return dominates_linear(pos, neg);
}

struct DecompositionParts {
    std::vector<ConicMeasure> parts;
};
struct DecompositionInfeasible {
    RatVec farkas;
};
using DecompositionResult = std::variant<DecompositionParts, DecompositionInfeasible>;

/// Finds an atom split f = f_1 + ... + f_n with <f_k, h> >= <g_k, h> for every
/// generator h of the k-th cone. Both pairings are linear in h, so checking
/// the generators settles the whole finitely generated cone.
inline DecompositionResult decomposition_witness(const ConicMeasure& f_in, const ConicMeasure& g_in,
                                                 const std::vector<ConicMeasure>& g_parts,
                                                 const std::vector<std::vector<VPolytope>>& generators) {
    const ConicMeasure f = canonicalize_measure(f_in);
    const ConicMeasure g = canonicalize_measure(g_in);
    const std::size_t parts = g_parts.size();
    if (parts == 0 || generators.size() != parts)
        throw std::invalid_argument("decomposition_witness: parts/generators mismatch");
    for (const auto& gens : generators)
        if (gens.empty()) throw std::invalid_argument("decomposition_witness: empty generator list");
    ConicMeasure sum{g.dim, {}};
    for (const auto& part : g_parts) {
        if (part.dim != g.dim) throw std::invalid_argument("decomposition_witness: part dimension mismatch");
        sum = add_measures(sum, part);
    }
    if (!equal_measures(sum, g))
        throw std::invalid_argument("decomposition_witness: parts do not sum to g");

    const std::size_t nf = f.atoms.size();
    const std::size_t nvars = nf * parts;
    if (nvars == 0) {
        // f has no atoms: every part is the zero measure, which works iff all
        // generator pairings of g_k are <= 0.
        for (std::size_t k = 0; k < parts; ++k)
            for (const auto& h : generators[k])
                if (pair(g_parts[k], h) > 0) return DecompositionInfeasible{{}};
        return DecompositionParts{std::vector<ConicMeasure>(parts, ConicMeasure{f.dim, {}})};
    }

    LinearProgram lp;
    lp.objective = zero_vec(nvars);
    auto var = [parts](std::size_t i, std::size_t k) { return i * parts + k; };
    for (std::size_t i = 0; i < nf; ++i) {
        ConstraintRow row;
        row.coeffs = zero_vec(nvars);
        for (std::size_t k = 0; k < parts; ++k) row.coeffs[var(i, k)] = 1;
        row.rel = Relation::Equal;
        row.rhs = f.atoms[i].weight;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < parts; ++k) {
        for (const auto& h : generators[k]) {
            ConstraintRow row;
            row.coeffs = zero_vec(nvars);
            for (std::size_t i = 0; i < nf; ++i) row.coeffs[var(i, k)] = support(h, f.atoms[i].direction);
            row.rel = Relation::GreaterEq;
            row.rhs = pair(g_parts[k], h);
            lp.rows.push_back(std::move(row));
        }
    }
    lp.lower.assign(nvars, Rational(0));

    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) {
        std::vector<ConicMeasure> result(parts, ConicMeasure{f.dim, {}});
        for (std::size_t k = 0; k < parts; ++k) {
            for (std::size_t i = 0; i < nf; ++i) {
                const Rational w = opt->point[var(i, k)];
                if (w > 0) result[k].atoms.push_back({f.atoms[i].direction, w});
            }
            result[k] = canonicalize_measure(result[k]);
        }
        return DecompositionParts{std::move(result)};
    }
    return DecompositionInfeasible{std::get<LpInfeasible>(out).farkas};
}

/// The join inequality f(h_1 v ... v h_n) >= g(h_1 v ... v h_n) for one tuple.
inline bool check_join_inequality(const ConicMeasure& f, const ConicMeasure& g,
                                  const std::vector<VPolytope>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("check_join_inequality: empty tuple");
    VPolytope j = tuple.front();
    for (std::size_t i = 1; i < tuple.size(); ++i) j = join(j, tuple[i]);
    return pair(f, j) >= pair(g, j);
}

}  // namespace gaugecalc
