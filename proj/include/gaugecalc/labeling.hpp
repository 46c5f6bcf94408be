#pragma once

#include "gaugecalc/majorization.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace gaugecalc {

/// Family of N signed measures whose pairing with any figure's support
/// function is meant to land inside the figure.
struct Labeling {
    std::size_t dim{0};
    std::vector<SignedConicMeasure> components;
};

inline void validate_labeling(const Labeling& l) {
    if (l.dim == 0) throw std::invalid_argument("labeling dimension must be >= 1");
    if (l.components.size() != l.dim)
        throw std::invalid_argument("labeling needs one component per coordinate");
    for (const auto& c : l.components)
        if (c.dim != l.dim) throw std::invalid_argument("labeling component dimension mismatch");
}

inline Labeling canonicalize_labeling(const Labeling& l) {
    validate_labeling(l);
    Labeling out{l.dim, {}};
    for (const auto& c : l.components) out.components.push_back(canonicalize_measure(c));
    return out;
}

/// Label of a figure: componentwise signed pairing with its support function.
inline RatVec label_of(const Labeling& l, const VPolytope& p) {
    validate_labeling(l);
    if (l.dim != p.dim) throw std::invalid_argument("label_of: dimension mismatch");
    RatVec out(l.dim);
    for (std::size_t k = 0; k < l.dim; ++k) out[k] = pair(l.components[k], p);
    return out;
}

struct LabelingFailure {
    RatVec direction;
    SeparatingSublinear separator;
};

/// Grid verification report. Pass means every checked direction satisfied the
/// dual-cone criterion; since only the grid was checked, this is a necessary
/// condition, which the grid_necessary_only flag makes explicit.
struct LabelingReport {
    bool pass{false};
    std::vector<RatVec> checked;
    std::optional<LabelingFailure> failure;
    bool grid_necessary_only{true};
};

/// The criterion measure eps_x - sum_k x_k sigma_k for one direction x,
/// with the Dirac atom taken degree-1 homogeneous at (x, 1).
inline SignedConicMeasure labeling_criterion_measure(const Labeling& l, const RatVec& x) {
    SignedConicMeasure acc{l.dim, {{x, Rational(1)}}};
    for (std::size_t k = 0; k < l.dim; ++k)
        acc = add_measures(acc, scale_measure(l.components[k], -x[k]));
    return acc;
}

/// Checks the dual-cone criterion on every grid direction; stops at the first
/// failure and returns its replayable witness.
inline LabelingReport verify_labeling(const Labeling& l_in, const std::vector<RatVec>& grid) {
    const Labeling l = canonicalize_labeling(l_in);
    if (grid.empty()) throw std::invalid_argument("verify_labeling: empty grid");
    LabelingReport report;
    for (const auto& x : grid) {
        if (x.size() != l.dim) throw std::invalid_argument("verify_labeling: grid dimension mismatch");
        if (is_zero_vec(x)) throw std::invalid_argument("verify_labeling: zero grid direction");
        report.checked.push_back(x);
        LinearDominance verdict = in_dual_cone(labeling_criterion_measure(l, x));
        if (auto* no = std::get_if<LinearDominanceNo>(&verdict)) {
            report.pass = false;
            report.failure = LabelingFailure{x, no->separator};
            return report;
        }
    }
    report.pass = true;
    return report;
}

struct PlanarCell {
    RatVec delta;  // (d1, d2) >= 0
    int sign1{+1}, sign2{+1};
    bool ok{false};
    std::optional<SeparatingSublinear> separator;
};

struct PlanarReport {
    bool pass{false};
    std::vector<PlanarCell> cells;
};

/// Planar sign-pattern verification: for each quadrant grid point and each of
/// the four sign patterns, the dominance query puts the Dirac atom and the
/// opposite-sign parts on the left and the same-sign parts on the right. The
/// patterns are generated from the sign pair rather than written out four
/// times.
inline PlanarReport verify_labeling_planar(const Labeling& l_in,
                                           const std::vector<RatVec>& quadrant_grid) {
    const Labeling l = canonicalize_labeling(l_in);
    if (l.dim != 2) throw std::invalid_argument("verify_labeling_planar: requires dimension 2");
    if (quadrant_grid.empty()) throw std::invalid_argument("verify_labeling_planar: empty grid");
    std::array<std::pair<ConicMeasure, ConicMeasure>, 2> parts;
    for (std::size_t k = 0; k < 2; ++k) parts[k] = jordan(l.components[k]);

    PlanarReport report;
    report.pass = true;
    for (const auto& delta : quadrant_grid) {
        if (delta.size() != 2) throw std::invalid_argument("verify_labeling_planar: grid dimension mismatch");
        if (delta[0] < 0 || delta[1] < 0)
            throw std::invalid_argument("verify_labeling_planar: negative grid coordinate");
        if (is_zero_vec(delta)) throw std::invalid_argument("verify_labeling_planar: zero grid point");
        for (int s1 : {+1, -1}) {
            for (int s2 : {+1, -1}) {
                const RatVec x = {Rational(s1) * delta[0], Rational(s2) * delta[1]};
                ConicMeasure lhs{2, {{x, Rational(1)}}};
                ConicMeasure rhs{2, {}};
                const std::array<int, 2> signs = {s1, s2};
                for (std::size_t k = 0; k < 2; ++k) {
                    if (delta[k] == 0) continue;
                    const ConicMeasure& same = signs[k] > 0 ? parts[k].first : parts[k].second;
                    const ConicMeasure& opposite = signs[k] > 0 ? parts[k].second : parts[k].first;
                    for (const auto& a : opposite.atoms)
                        lhs.atoms.push_back({a.direction, delta[k] * a.weight});
                    for (const auto& a : same.atoms)
                        rhs.atoms.push_back({a.direction, delta[k] * a.weight});
                }
                PlanarCell cell{delta, s1, s2, false, std::nullopt};
                LinearDominance verdict =
                    dominates_linear(canonicalize_measure(lhs), canonicalize_measure(rhs));
                if (auto* no = std::get_if<LinearDominanceNo>(&verdict)) {
                    cell.ok = false;
                    cell.separator = no->separator;
                    report.pass = false;
                } else {
                    cell.ok = true;
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }
    return report;
}

/// The planar bounding-box center 1/2 (S(e1) - S(-e1), S(e2) - S(-e2)).
/// Membership is part of the contract; a figure without its simplest label
/// would contradict the construction, so failure raises a defect.
inline RatVec simplest_label(const VPolytope& p) {
    if (p.dim != 2) throw std::invalid_argument("simplest_label: requires dimension 2");
    const RatVec e1 = unit_vec(2, 0), e2 = unit_vec(2, 1);
    RatVec label = {
        (support(p, e1) - support(p, negate(e1))) / 2,
        (support(p, e2) - support(p, negate(e2))) / 2,
    };
    if (!member(p, label)) throw CertificateDefect("simplest label escaped its figure");
    return label;
}

/// The simplest labeling as an explicit measure family.
inline Labeling simplest_labeling() {
    const RatVec e1 = unit_vec(2, 0), e2 = unit_vec(2, 1);
    Labeling l{2, {}};
    l.components.push_back(SignedConicMeasure{2, {{e1, Rational(1, 2)}, {negate(e1), Rational(-1, 2)}}});
    l.components.push_back(SignedConicMeasure{2, {{e2, Rational(1, 2)}, {negate(e2), Rational(-1, 2)}}});
    return l;
}

struct LabelingSystemInfeasible {
    RatVec farkas;
};
using LabelingSystemResult = std::variant<Labeling, LabelingSystemInfeasible>;

/// Searches signed weights on the candidate directions (one atom per
/// candidate per component) such that every planar sign-pattern cell on the
/// grid passes, posed as one joint LP over the weights and all per-cell
/// transport matrices.
inline LabelingSystemResult solve_labeling_system(const std::vector<RatVec>& candidates,
                                                  const std::vector<RatVec>& quadrant_grid) {
    if (candidates.empty()) throw std::invalid_argument("solve_labeling_system: no candidate directions");
    if (quadrant_grid.empty()) throw std::invalid_argument("solve_labeling_system: empty grid");
    for (const auto& w : candidates) {
        if (w.size() != 2) throw std::invalid_argument("solve_labeling_system: candidate dimension mismatch");
        if (is_zero_vec(w)) throw std::invalid_argument("solve_labeling_system: zero candidate direction");
    }

    // Distinct signed grid points (delta_2 = 0 makes both s2 signs coincide).
    std::vector<RatVec> cells;
    for (const auto& delta : quadrant_grid) {
        if (delta.size() != 2 || delta[0] < 0 || delta[1] < 0 || is_zero_vec(delta))
            throw std::invalid_argument("solve_labeling_system: bad quadrant grid point");
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                RatVec x = {Rational(s1) * delta[0], Rational(s2) * delta[1]};
                bool seen = false;
                for (const auto& c : cells)
                    if (c == x) { seen = true; break; }
                if (!seen) cells.push_back(std::move(x));
            }
    }

    const std::size_t nc = candidates.size();
    // Layout: a+ then a- (2 components x nc each), then per-cell transports.
    const std::size_t apos0 = 0, aneg0 = 2 * nc;
    std::size_t nvars = 4 * nc;
    auto apos = [&](std::size_t k, std::size_t r) { return apos0 + k * nc + r; };
    auto aneg = [&](std::size_t k, std::size_t r) { return aneg0 + k * nc + r; };

    struct CellBlock {
        RatVec x;
        std::size_t t0;  // first transport variable; (nc + 1) rows x nc cols
    };
    std::vector<CellBlock> blocks;
    for (const auto& x : cells) {
        blocks.push_back({x, nvars});
        nvars += (nc + 1) * nc;
    }

    LinearProgram lp;
    lp.objective = zero_vec(nvars);
    lp.lower.assign(nvars, Rational(0));

    for (const auto& blk : blocks) {
        const RatVec& x = blk.x;
        auto tvar = [&](std::size_t i, std::size_t j) { return blk.t0 + i * nc + j; };
        // Signed coefficient of component k at this cell: -x_k sigma_k puts
        // |x_k| * (opposite-sign part) on the Dirac side and |x_k| *
        // (same-sign part) on the dominated side.
        std::array<Rational, 2> mag;
        std::array<int, 2> sgn;
        for (std::size_t k = 0; k < 2; ++k) {
            mag[k] = x[k] < 0 ? -x[k] : x[k];
            sgn[k] = x[k] < 0 ? -1 : +1;
        }
        // Row 0: the Dirac atom, weight 1. Rows 1..nc: candidate directions.
        // Row sums: sum_j t_{ij} = row weight.
        {
            ConstraintRow row;
            row.coeffs = zero_vec(nvars);
            for (std::size_t j = 0; j < nc; ++j) row.coeffs[tvar(0, j)] = 1;
            row.rel = Relation::Equal;
            row.rhs = 1;
            lp.rows.push_back(std::move(row));
        }
        for (std::size_t r = 0; r < nc; ++r) {
            ConstraintRow row;
            row.coeffs = zero_vec(nvars);
            for (std::size_t j = 0; j < nc; ++j) row.coeffs[tvar(r + 1, j)] = 1;
            for (std::size_t k = 0; k < 2; ++k) {
                if (mag[k] == 0) continue;
                // Opposite-sign jordan part of sigma_k on the Dirac side.
                row.coeffs[sgn[k] > 0 ? aneg(k, r) : apos(k, r)] -= mag[k];
            }
            row.rel = Relation::Equal;
            row.rhs = 0;
            lp.rows.push_back(std::move(row));
        }
        // Column resultants: sum_i t_{ij} u_i = (same-sign weight at w_j) w_j.
        for (std::size_t j = 0; j < nc; ++j) {
            for (std::size_t coord = 0; coord < 2; ++coord) {
                ConstraintRow row;
                row.coeffs = zero_vec(nvars);
                row.coeffs[tvar(0, j)] = x[coord];
                for (std::size_t r = 0; r < nc; ++r)
                    row.coeffs[tvar(r + 1, j)] = candidates[r][coord];
                for (std::size_t k = 0; k < 2; ++k) {
                    if (mag[k] == 0) continue;
                    row.coeffs[sgn[k] > 0 ? apos(k, j) : aneg(k, j)] -= mag[k] * candidates[j][coord];
                }
                row.rel = Relation::Equal;
                row.rhs = 0;
                lp.rows.push_back(std::move(row));
            }
        }
    }

    LpOutcome out = solve_lp(lp);
    if (auto* inf = std::get_if<LpInfeasible>(&out))
        return LabelingSystemInfeasible{inf->farkas};
    const auto& opt = std::get<LpOptimal>(out);
    Labeling l{2, {}};
    for (std::size_t k = 0; k < 2; ++k) {
        SignedConicMeasure sigma{2, {}};
        for (std::size_t r = 0; r < nc; ++r) {
            const Rational w = opt.point[apos(k, r)] - opt.point[aneg(k, r)];
            if (w != 0) sigma.atoms.push_back({candidates[r], w});
        }
        l.components.push_back(canonicalize_measure(sigma));
    }
    return l;
}

}  // namespace gaugecalc
