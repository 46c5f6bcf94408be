#pragma once

#include "gaugecalc/directions.hpp"
#include "gaugecalc/measure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gaugecalc {

/// Finite family of symmetric convex figures (balls). Symmetry is checked at
/// construction; whether every ball has the origin strictly inside (which for
/// a finite family is exactly nondegeneracy: all operator norms stay finite)
/// is computed separately by is_nondegenerate.
struct BallFamily {
    std::size_t dim{0};
    std::vector<VPolytope> balls;
};

inline void validate_ball_family(const BallFamily& f) {
    if (f.dim == 0) throw std::invalid_argument("ball family dimension must be >= 1");
    if (f.balls.empty()) throw std::invalid_argument("ball family must be nonempty");
    for (const auto& b : f.balls) {
        if (b.dim != f.dim) throw std::invalid_argument("ball dimension mismatch");
        validate_figure(b);
        if (!is_symmetric(b)) throw std::invalid_argument("ball family member is not symmetric");
    }
}

inline bool is_nondegenerate(const BallFamily& f) {
    validate_ball_family(f);
    for (const auto& b : f.balls)
        if (!origin_interior(b)) return false;
    return true;
}

/// S_y = meet over the family of S_xi / S_xi(y); true iff it is absorbing
/// (equivalently, has the origin in its interior).
inline bool check_sy_absorbing(const BallFamily& f, const RatVec& y) {
    validate_ball_family(f);
    if (y.size() != f.dim) throw std::invalid_argument("check_sy_absorbing: dimension mismatch");
    if (is_zero_vec(y)) throw std::invalid_argument("check_sy_absorbing: y must be nonzero");
    std::optional<VPolytope> acc;
    for (const auto& b : f.balls) {
        const Rational s = support(b, y);
        if (s <= 0) return false;  // flat in direction y
        VPolytope scaled = scale(b, Rational(1) / s);
        if (!acc)
            acc = std::move(scaled);
        else
            acc = meet(*acc, scaled).value();  // all contain 0, never empty
    }
    return origin_interior(*acc);
}

/// True iff all balls are positive dilations of one another.
inline bool n1_reduction_check(const BallFamily& f) {
    validate_ball_family(f);
    const VPolytope first = canonicalize(f.balls.front());
    const bool first_zero = first.vertices.size() == 1 && is_zero_vec(first.vertices[0]);
    RatVec probe;
    if (!first_zero) {
        for (const auto& v : first.vertices)
            if (!is_zero_vec(v)) { probe = v; break; }
    }
    for (std::size_t i = 1; i < f.balls.size(); ++i) {
        const VPolytope b = canonicalize(f.balls[i]);
        const bool b_zero = b.vertices.size() == 1 && is_zero_vec(b.vertices[0]);
        if (first_zero || b_zero) {
            if (first_zero != b_zero) return false;
            continue;
        }
        const Rational denom = support(first, probe);
        const Rational alpha = support(b, probe) / denom;
        if (alpha <= 0) return false;
        if (!equal_figures(b, scale(first, alpha))) return false;
    }
    return true;
}

struct SearchBudget {
    std::uint64_t tuple_count{64};
    std::size_t n_max{2};
    std::uint64_t seed{0};
};

struct MemberWitness {
    std::string expression;
    VPolytope realization;  // re-evaluates to the queried gauge exactly
};

/// Violating tuple for the Theorem-4.1 criterion: the family inequalities
/// sum S_xi(x_k) >= S_xi(y) all hold while sum S(x_k) < S(y), exactly.
struct RejectionCertificate {
    RatVec y;
    std::vector<RatVec> xs;
};

/// A finished search that found nothing: explicitly weaker than membership.
struct ConsistentReport {
    std::uint64_t tuples_tried{0};
    std::size_t n_max{0};
    std::uint64_t seed{0};
    std::size_t truncation_depth{0};
};

using MembershipVerdict = std::variant<MemberWitness, RejectionCertificate, ConsistentReport>;

inline bool verify_rejection(const VPolytope& s, const std::vector<VPolytope>& family_balls,
                             const RejectionCertificate& cert) {
    if (cert.xs.empty()) return false;
    for (const auto& b : family_balls) {
        Rational lhs = 0;
        for (const auto& x : cert.xs) lhs += support(b, x);
        if (lhs < support(b, cert.y)) return false;
    }
    Rational own = 0;
    for (const auto& x : cert.xs) own += support(s, x);
    return own < support(s, cert.y);
}

namespace detail {

/// Dilation factor alpha >= 0 with target = alpha * shape, when one exists.
inline std::optional<Rational> dilation_factor(const VPolytope& target, const VPolytope& shape) {
    const VPolytope ct = canonicalize(target);
    if (ct.vertices.size() == 1 && is_zero_vec(ct.vertices[0])) {
        if (equal_figures(ct, scale(shape, Rational(0)))) return Rational(0);
        return std::nullopt;
    }
    RatVec probe;
    for (const auto& v : ct.vertices)
        if (!is_zero_vec(v)) { probe = v; break; }
    const Rational denom = support(shape, probe);
    if (denom <= 0) return std::nullopt;
    const Rational alpha = support(ct, probe) / denom;
    if (alpha <= 0) return std::nullopt;
    if (!equal_figures(ct, scale(shape, alpha))) return std::nullopt;
    return alpha;
}

struct Expression {
    VPolytope figure;
    std::string text;
};

/// Depth-limited join/sum expressions over the family, for syntactic Member
/// detection (each candidate is compared to the query up to dilation).
inline std::vector<Expression> expression_pool(const std::vector<VPolytope>& balls,
                                               std::size_t cap = 160) {
    std::vector<Expression> pool;
    for (std::size_t i = 0; i < balls.size(); ++i)
        pool.push_back({canonicalize(balls[i]), "F" + std::to_string(i)});
    auto seen = [&](const VPolytope& p) {
        for (const auto& e : pool)
            if (e.figure.vertices == p.vertices) return true;
        return false;
    };
    const std::size_t level0 = pool.size();
    for (std::size_t round = 0; round < 2 && pool.size() < cap; ++round) {
        const std::size_t upto = pool.size();
        for (std::size_t i = 0; i < upto && pool.size() < cap; ++i) {
            for (std::size_t j = (round == 0 ? i : 0); j < (round == 0 ? level0 : upto); ++j) {
                if (pool.size() >= cap) break;
                VPolytope jn = join(pool[i].figure, pool[j].figure);
                if (!seen(jn))
                    pool.push_back({jn, "join(" + pool[i].text + "," + pool[j].text + ")"});
                VPolytope sm = minkowski_sum(pool[i].figure, pool[j].figure);
                if (!seen(sm))
                    pool.push_back({sm, "sum(" + pool[i].text + "," + pool[j].text + ")"});
            }
        }
    }
    return pool;
}

inline std::optional<MemberWitness> expression_member(const VPolytope& s,
                                                      const std::vector<VPolytope>& balls) {
    for (const auto& e : expression_pool(balls)) {
        if (auto alpha = dilation_factor(s, e.figure)) {
            std::string text = *alpha == 1 ? e.text : ("scale(" + alpha->str() + "," + e.text + ")");
            return MemberWitness{std::move(text), scale(e.figure, *alpha)};
        }
    }
    return std::nullopt;
}

/// Maximizes S(y) over { y : S_xi(y) <= cap_xi for all xi } (one LP per
/// vertex of S, since the support function is the max of those linear maps).
inline std::pair<Rational, RatVec> max_support_over(const VPolytope& s,
                                                    const std::vector<VPolytope>& balls,
                                                    const std::vector<Rational>& caps) {
    std::vector<ConstraintRow> rows;
    for (std::size_t b = 0; b < balls.size(); ++b)
        for (const auto& w : balls[b].vertices)
            rows.push_back({w, Relation::LessEq, caps[b]});
    Rational best = 0;
    RatVec best_y = zero_vec(s.dim);
    bool have = false;
    for (const auto& v : s.vertices) {
        LinearProgram lp;
        lp.objective = v;
        lp.rows = rows;
        LpOutcome out = solve_lp(lp);
        auto* opt = std::get_if<LpOptimal>(&out);
        if (!opt) throw std::domain_error("membership search region is unbounded (degenerate family)");
        if (!have || opt->value > best) {
            best = opt->value;
            best_y = opt->point;
            have = true;
        }
    }
    return {best, best_y};
}

}  // namespace detail

/// Theorem-4.1 membership test for the upper hull of a finite family:
/// syntactic Member detection first, then a randomized violating-tuple search
/// (random x-tuples, exact LP over y). `extra_dirs` seeds the deterministic
/// n = 1 phase; grid directions belong there.
inline MembershipVerdict upper_hull_membership(const VPolytope& s, const BallFamily& f,
                                               const SearchBudget& budget,
                                               const std::vector<RatVec>& extra_dirs = {}) {
    validate_figure(s);
    if (s.dim != f.dim) throw std::invalid_argument("upper_hull_membership: dimension mismatch");
    if (!is_nondegenerate(f)) throw std::domain_error("upper_hull_membership: degenerate family");

    if (auto w = detail::expression_member(s, f.balls)) return std::move(*w);

    std::uint64_t tried = 0;
    auto attempt = [&](const std::vector<RatVec>& xs) -> std::optional<RejectionCertificate> {
        ++tried;
        std::vector<Rational> caps(f.balls.size(), Rational(0));
        for (std::size_t b = 0; b < f.balls.size(); ++b)
            for (const auto& x : xs) caps[b] += support(f.balls[b], x);
        auto [best, y] = detail::max_support_over(s, f.balls, caps);
        Rational own = 0;
        for (const auto& x : xs) own += support(s, x);
        if (best > own) {
            RejectionCertificate cert{y, xs};
            if (!verify_rejection(s, f.balls, cert))
                throw CertificateDefect("rejection certificate failed exact replay");
            return cert;
        }
        return std::nullopt;
    };

    // Deterministic n = 1 phase: coordinate directions, the query's own
    // vertices, the family's vertices, and any caller-supplied directions.
    std::vector<RatVec> seeds;
    for (std::size_t i = 0; i < s.dim; ++i) {
        seeds.push_back(unit_vec(s.dim, i));
        seeds.push_back(unit_vec(s.dim, i, Rational(-1)));
    }
    for (const auto& v : s.vertices)
        if (!is_zero_vec(v)) seeds.push_back(v);
    for (const auto& b : f.balls)
        for (const auto& v : b.vertices)
            if (!is_zero_vec(v)) seeds.push_back(v);
    for (const auto& d : extra_dirs)
        if (!is_zero_vec(d)) seeds.push_back(d);
    for (const auto& x : seeds)
        if (auto cert = attempt({x})) return std::move(*cert);

    DeterministicRng rng(budget.seed);
    for (std::uint64_t trial = 0; trial < budget.tuple_count; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.int_in(0, static_cast<long long>(budget.n_max) - 1));
        std::vector<RatVec> xs;
        xs.reserve(n);
        for (std::size_t k = 0; k < n; ++k) xs.push_back(rng.nonzero_vec(s.dim, 4, 3));
        if (auto cert = attempt(xs)) return std::move(*cert);
    }
    return ConsistentReport{tried, budget.n_max, budget.seed, 0};
}

/// The simple representation: R = meet over grid x of
/// S(x) * (join over xi of S_xi / S_xi(x)), plus its exact deviation from S
/// at the grid directions. Zero deviation is the membership identity; a
/// positive one certifies non-membership of the upper hull.
inline std::pair<VPolytope, Rational> outer_rep_422(const VPolytope& s, const BallFamily& f,
                                                    const std::vector<RatVec>& grid) {
    validate_figure(s);
    if (!is_nondegenerate(f)) throw std::domain_error("outer_rep_422: degenerate family");
    if (grid.empty()) throw std::invalid_argument("outer_rep_422: empty grid");
    std::optional<VPolytope> acc;
    for (const auto& x : grid) {
        if (is_zero_vec(x)) throw std::invalid_argument("outer_rep_422: zero grid direction");
        const Rational sx = support(s, x);
        if (sx <= 0) throw std::domain_error("outer_rep_422: query support not positive on grid");
        std::optional<VPolytope> joined;
        for (const auto& b : f.balls) {
            VPolytope scaled = scale(b, Rational(1) / support(b, x));
            joined = joined ? join(*joined, scaled) : std::move(scaled);
        }
        VPolytope term = scale(*joined, sx);
        acc = acc ? meet(*acc, term).value() : std::move(term);
    }
    return {*acc, support_deviation(*acc, s, grid)};
}

/// Tuple form of the representation; singleton tuples reproduce
/// outer_rep_422 exactly.
inline std::pair<VPolytope, Rational> rep_421(const VPolytope& s, const BallFamily& f,
                                              const std::vector<std::vector<RatVec>>& tuples,
                                              const std::vector<RatVec>& deviation_grid) {
    validate_figure(s);
    if (!is_nondegenerate(f)) throw std::domain_error("rep_421: degenerate family");
    if (tuples.empty()) throw std::invalid_argument("rep_421: empty tuple list");
    std::optional<VPolytope> acc;
    for (const auto& xs : tuples) {
        if (xs.empty()) throw std::invalid_argument("rep_421: empty tuple");
        bool all_zero = true;
        for (const auto& x : xs)
            if (!is_zero_vec(x)) all_zero = false;
        if (all_zero) throw std::invalid_argument("rep_421: all-zero tuple");
        Rational sx = 0;
        for (const auto& x : xs) sx += support(s, x);
        if (sx <= 0) throw std::domain_error("rep_421: query support not positive on tuple");
        std::optional<VPolytope> joined;
        for (const auto& b : f.balls) {
            Rational cap = 0;
            for (const auto& x : xs) cap += support(b, x);
            VPolytope scaled = scale(b, Rational(1) / cap);
            joined = joined ? join(*joined, scaled) : std::move(scaled);
        }
        VPolytope term = scale(*joined, sx);
        acc = acc ? meet(*acc, term).value() : std::move(term);
    }
    return {*acc, support_deviation(*acc, s, deviation_grid)};
}

/// Theorem-5.1 witness vectors z_1..z_n with sum y and S(z_k) <= S(x_k) for
/// every supplied gauge.
struct MeetDecomposition {
    std::vector<RatVec> zs;
};

/// Infeasibility answer. When the inequality sum S(x_k) >= S(y) nevertheless
/// holds for every supplied gauge, the supplied list cannot be meet-closed
/// enough and the coverage_warning flag is raised instead of silently
/// accepting the verdict.
struct MeetInfeasible {
    RatVec farkas;
    bool coverage_warning{false};
};

using MeetDecompositionResult = std::variant<MeetDecomposition, MeetInfeasible>;

inline MeetDecompositionResult decompose_meet(const std::vector<VPolytope>& h_list, const RatVec& y,
                                              const std::vector<RatVec>& xs) {
    if (h_list.empty()) throw std::invalid_argument("decompose_meet: empty gauge list");
    if (xs.empty()) throw std::invalid_argument("decompose_meet: empty tuple");
    const std::size_t dim = h_list.front().dim;
    for (const auto& s : h_list) {
        validate_figure(s);
        if (s.dim != dim) throw std::invalid_argument("decompose_meet: dimension mismatch");
    }
    if (y.size() != dim) throw std::invalid_argument("decompose_meet: y dimension mismatch");
    const std::size_t n = xs.size();

    LinearProgram lp;
    lp.objective = zero_vec(n * dim);
    auto var = [dim](std::size_t k, std::size_t c) { return k * dim + c; };
    for (std::size_t c = 0; c < dim; ++c) {
        ConstraintRow row;
        row.coeffs = zero_vec(n * dim);
        for (std::size_t k = 0; k < n; ++k) row.coeffs[var(k, c)] = 1;
        row.rel = Relation::Equal;
        row.rhs = y[c];
        lp.rows.push_back(std::move(row));
    }
    for (const auto& s : h_list) {
        for (std::size_t k = 0; k < n; ++k) {
            const Rational cap = support(s, xs[k]);
            for (const auto& v : s.vertices) {
                ConstraintRow row;
                row.coeffs = zero_vec(n * dim);
                for (std::size_t c = 0; c < dim; ++c) row.coeffs[var(k, c)] = v[c];
                row.rel = Relation::LessEq;
                row.rhs = cap;
                lp.rows.push_back(std::move(row));
            }
        }
    }

    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) {
        MeetDecomposition d;
        for (std::size_t k = 0; k < n; ++k) {
            RatVec z(dim);
            for (std::size_t c = 0; c < dim; ++c) z[c] = opt->point[var(k, c)];
            d.zs.push_back(std::move(z));
        }
        // Replay the subadditivity chain sum S(x_k) >= sum S(z_k) >= S(y).
        for (const auto& s : h_list) {
            Rational sx = 0, sz = 0;
            for (std::size_t k = 0; k < n; ++k) {
                sx += support(s, xs[k]);
                sz += support(s, d.zs[k]);
            }
            if (!(sx >= sz && sz >= support(s, y)))
                throw CertificateDefect("meet decomposition failed the subadditivity chain");
        }
        return d;
    }
    MeetInfeasible inf{std::get<LpInfeasible>(out).farkas, true};
    for (const auto& s : h_list) {
        Rational sx = 0;
        for (const auto& x : xs) sx += support(s, x);
        if (sx < support(s, y)) {
            inf.coverage_warning = false;  // genuinely impossible
            break;
        }
    }
    return inf;
}

/// Depth-truncated meet closure of a family, with the relative dilations
/// sampled from an explicit scale list. Shapes are deduplicated up to
/// positive scaling (normalized so that the support at e_1 is 1).
struct HullTruncation {
    std::size_t depth{0};
    std::vector<Rational> scales;
    std::vector<VPolytope> generated;
};

inline HullTruncation build_meet_truncation(const BallFamily& f, std::size_t depth,
                                            std::vector<Rational> scales = {},
                                            std::size_t cap = 48) {
    if (!is_nondegenerate(f)) throw std::domain_error("build_meet_truncation: degenerate family");
    if (scales.empty()) scales = {Rational(1), Rational(1, 2), Rational(3, 2), Rational(2)};
    const RatVec probe = unit_vec(f.dim, 0);
    auto normalize = [&](const VPolytope& b) {
        return canonicalize(scale(b, Rational(1) / support(b, probe)));
    };
    HullTruncation t{depth, scales, {}};
    auto push = [&](const VPolytope& b) {
        for (const auto& g : t.generated)
            if (g.vertices == b.vertices) return false;
        t.generated.push_back(b);
        return true;
    };
    for (const auto& b : f.balls) push(normalize(b));
    for (std::size_t d = 0; d < depth; ++d) {
        const std::size_t upto = t.generated.size();
        bool grew = false;
        for (std::size_t i = 0; i < upto; ++i)
            for (std::size_t j = 0; j < upto; ++j)
                for (const auto& alpha : t.scales) {
                    if (t.generated.size() >= cap) return t;
                    if (i == j) continue;
                    VPolytope m = meet(t.generated[i], scale(t.generated[j], alpha)).value();
                    grew |= push(normalize(m));
                }
        if (!grew) break;
    }
    return t;
}

/// Membership in the full hull pi = pi_up(pi_down): tests against the meet
/// closure truncation. Member is sound; Rejected refutes membership of the
/// depth-d approximant (the recorded depth says which); Consistent is weaker
/// than both.
inline MembershipVerdict hull_membership(const VPolytope& s, const BallFamily& f, std::size_t depth,
                                         const SearchBudget& budget, const std::vector<RatVec>& grid,
                                         std::vector<Rational> scales = {}) {
    validate_figure(s);
    if (!is_nondegenerate(f)) throw std::domain_error("hull_membership: degenerate family");
    HullTruncation t = build_meet_truncation(f, depth, std::move(scales));
    BallFamily enlarged{f.dim, t.generated};
    MembershipVerdict v = upper_hull_membership(s, enlarged, budget, grid);
    if (auto* c = std::get_if<ConsistentReport>(&v)) c->truncation_depth = depth;
    return v;
}

/// Max over the grid of |infimal convolution - support of the meet|; the
/// accompanying-representation identity makes this exactly zero for
/// polytopes with nonempty meet.
inline Rational infconv_identity_check(const VPolytope& p, const VPolytope& q,
                                       const std::vector<RatVec>& grid) {
    require_same_dim(p, q);
    if (grid.empty()) throw std::invalid_argument("infconv_identity_check: empty grid");
    auto m = meet(p, q);
    if (!m) throw std::domain_error("infconv_identity_check: empty meet, identity undefined");
    Rational worst = 0;
    for (const auto& x : grid) {
        InfConvolutionValue ic = inf_convolution(p, q, x);
        if (ic.unbounded) throw CertificateDefect("infimal convolution unbounded with nonempty meet");
        Rational d = ic.value - support(*m, x);
        if (d < 0) d = -d;
        if (d > worst) worst = d;
    }
    return worst;
}

struct Bound541 {
    Rational lhs;       // integral of the meet's support against mu
    Rational best_rhs;  // restricted-support evaluation of the infimum
};

/// Evaluates both sides of the accompanying representation for the meet:
/// lhs = <mu, S_{P meet Q}>, best_rhs = min over mu_1 + mu_2 >> mu (supported
/// on the candidate directions plus mu's own rays) of <mu_1, S_P> + <mu_2,
/// S_Q>. Always best_rhs >= lhs; the restriction is a sound upper bound that
/// only improves as candidates are added.
inline Bound541 eval_541_bound(const VPolytope& p, const VPolytope& q, const ConicMeasure& mu_in,
                               const std::vector<RatVec>& candidate_support) {
    require_same_dim(p, q);
    if (candidate_support.empty()) throw std::invalid_argument("eval_541_bound: empty candidate set");
    const ConicMeasure mu = canonicalize_measure(mu_in);
    if (mu.dim != p.dim) throw std::invalid_argument("eval_541_bound: dimension mismatch");
    auto m = meet(p, q);
    if (!m) throw std::domain_error("eval_541_bound: empty meet");
    if (mu.atoms.empty()) return {Rational(0), Rational(0)};

    const Rational lhs = pair(mu, *m);

    // Candidate rays: canonical, deduplicated, always including mu's own.
    std::vector<RatVec> rays;
    auto push_ray = [&](const RatVec& u) {
        if (is_zero_vec(u)) throw std::invalid_argument("eval_541_bound: zero candidate direction");
        const RatVec w = primitive_ray(u);
        for (const auto& r : rays)
            if (r == w) return;
        rays.push_back(w);
    };
    for (const auto& a : mu.atoms) push_ray(a.direction);
    for (const auto& u : candidate_support) push_ray(u);

    const std::size_t nw = rays.size(), mcols = mu.atoms.size(), dim = mu.dim;
    // Variables: a1(w), a2(w), then transports t(w, j).
    const std::size_t a2_0 = nw, t0 = 2 * nw;
    auto tvar = [&](std::size_t w, std::size_t j) { return t0 + w * mcols + j; };
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = zero_vec(2 * nw + nw * mcols);
    for (std::size_t w = 0; w < nw; ++w) {
        lp.objective[w] = support(p, rays[w]);
        lp.objective[a2_0 + w] = support(q, rays[w]);
    }
    lp.lower.assign(lp.objective.size(), Rational(0));
    for (std::size_t w = 0; w < nw; ++w) {
        ConstraintRow row;
        row.coeffs = zero_vec(lp.objective.size());
        for (std::size_t j = 0; j < mcols; ++j) row.coeffs[tvar(w, j)] = 1;
        row.coeffs[w] -= 1;
        row.coeffs[a2_0 + w] -= 1;
        row.rel = Relation::Equal;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < mcols; ++j) {
        for (std::size_t c = 0; c < dim; ++c) {
            ConstraintRow row;
            row.coeffs = zero_vec(lp.objective.size());
            for (std::size_t w = 0; w < nw; ++w) row.coeffs[tvar(w, j)] = rays[w][c];
            row.rel = Relation::Equal;
            row.rhs = mu.atoms[j].weight * mu.atoms[j].direction[c];
            lp.rows.push_back(std::move(row));
        }
    }
    LpOutcome out = solve_lp(lp);
    auto* opt = std::get_if<LpOptimal>(&out);
    if (!opt) throw CertificateDefect("541 bound LP must be feasible and bounded");
    if (opt->value < lhs) throw CertificateDefect("541 bound fell below the exact pairing");
    return {lhs, opt->value};
}

}  // namespace gaugecalc
