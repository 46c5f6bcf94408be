#pragma once

#include "gaugecalc/linalg.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace gaugecalc {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Sense { Maximize, Minimize };

struct ConstraintRow {
    RatVec coeffs;
    Relation rel{Relation::LessEq};
    Rational rhs{0};
};

/// Exact rational linear program. Bounds are optional per variable; an empty
/// bound vector means all variables are free on that side.
struct LinearProgram {
    Sense sense{Sense::Maximize};
    RatVec objective;
    std::vector<ConstraintRow> rows;
    std::vector<std::optional<Rational>> lower;  // empty or objective.size()
    std::vector<std::optional<Rational>> upper;

    std::size_t num_vars() const { return objective.size(); }
};

/// Thrown when an input is structurally malformed (row length mismatch, no
/// variables); distinct from an Infeasible outcome.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an internally produced certificate fails its own replay; this
/// is a solver defect, never a property of the input.
struct CertificateDefect : std::logic_error {
    using std::logic_error::logic_error;
};

inline void validate_structure(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    if (n == 0) throw StructuralError("linear program needs at least one variable");
    for (const auto& row : lp.rows)
        if (row.coeffs.size() != n) throw StructuralError("constraint row length mismatch");
    if (!lp.lower.empty() && lp.lower.size() != n) throw StructuralError("lower bound vector length mismatch");
    if (!lp.upper.empty() && lp.upper.size() != n) throw StructuralError("upper bound vector length mismatch");
}

struct LpOptimal {
    RatVec point;
    Rational value;
};

/// Farkas certificate: one multiplier per constraint row, >= 0 for LessEq
/// rows, <= 0 for GreaterEq rows, free for Equal rows. With g = sum of
/// multiplier-weighted row coefficients and r = the aggregated rhs, every
/// point of the bound box satisfies g.x <= r while min over the box of g.x
/// exceeds r; without bounds this degenerates to g = 0 and r < 0.
struct LpInfeasible {
    RatVec farkas;
};

/// Improving recession direction: preserves every row directionally and
/// strictly improves the objective.
struct LpUnbounded {
    RatVec ray;
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

inline bool point_satisfies(const LinearProgram& lp, const RatVec& x) {
    for (const auto& row : lp.rows) {
        const Rational v = dot(row.coeffs, x);
        if (row.rel == Relation::LessEq && v > row.rhs) return false;
        if (row.rel == Relation::Equal && v != row.rhs) return false;
        if (row.rel == Relation::GreaterEq && v < row.rhs) return false;
    }
    for (std::size_t j = 0; j < lp.lower.size(); ++j)
        if (lp.lower[j] && x[j] < *lp.lower[j]) return false;
    for (std::size_t j = 0; j < lp.upper.size(); ++j)
        if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
    return true;
}

/// Exact replay of a Farkas certificate against the original program.
inline bool verify_farkas(const LinearProgram& lp, const RatVec& farkas) {
    const std::size_t n = lp.num_vars();
    if (farkas.size() != lp.rows.size()) return false;
    RatVec g(n, Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        if (row.rel == Relation::LessEq && farkas[i] < 0) return false;
        if (row.rel == Relation::GreaterEq && farkas[i] > 0) return false;
        for (std::size_t j = 0; j < n; ++j) g[j] += farkas[i] * row.coeffs[j];
        rhs += farkas[i] * row.rhs;
    }
    // min of g.x over the bound box must strictly exceed the aggregated rhs.
    Rational box_min = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (g[j] == 0) continue;
        const std::optional<Rational> lo = j < lp.lower.size() ? lp.lower[j] : std::nullopt;
        const std::optional<Rational> hi = j < lp.upper.size() ? lp.upper[j] : std::nullopt;
        if (g[j] > 0) {
            if (!lo) return false;  // box minimum is -infinity
            box_min += g[j] * *lo;
        } else {
            if (!hi) return false;
            box_min += g[j] * *hi;
        }
    }
    return box_min > rhs;
}

/// Exact replay of an unbounded ray.
inline bool verify_ray(const LinearProgram& lp, const RatVec& ray) {
    if (ray.size() != lp.num_vars() || is_zero_vec(ray)) return false;
    for (const auto& row : lp.rows) {
        const Rational v = dot(row.coeffs, ray);
        if (row.rel == Relation::LessEq && v > 0) return false;
        if (row.rel == Relation::Equal && v != 0) return false;
        if (row.rel == Relation::GreaterEq && v < 0) return false;
    }
    for (std::size_t j = 0; j < lp.lower.size(); ++j)
        if (lp.lower[j] && ray[j] < 0) return false;
    for (std::size_t j = 0; j < lp.upper.size(); ++j)
        if (lp.upper[j] && ray[j] > 0) return false;
    const Rational d = dot(lp.objective, ray);
    return lp.sense == Sense::Maximize ? d > 0 : d < 0;
}

namespace detail {

/// Dense two-phase primal simplex on the computational form
/// maximize c.z subject to A z = b, z >= 0, with Bland's anti-cycling rule.
/// Bland everywhere keeps outcomes bit-for-bit deterministic.
class SimplexTableau {
  public:
    SimplexTableau(std::vector<RatVec> a, RatVec b, std::size_t ncols)
        : a_(std::move(a)), b_(std::move(b)), m_(a_.size()), ncols_(ncols) {}

    std::size_t add_column(const RatVec& col) {
        for (std::size_t i = 0; i < m_; ++i) a_[i].push_back(col[i]);
        return ncols_++;
    }

    // Phase 1: artificial basis. Rows with a designated unit column (slack
    // with +1 coefficient) use it; all others get an artificial variable.
    // Returns true when a feasible basis was found, false with `y` holding
    // the row multipliers of the infeasibility certificate otherwise.
    bool phase1(const std::vector<std::optional<std::size_t>>& unit_col, RatVec* y) {
        basis_.assign(m_, 0);
        first_artificial_ = ncols_;
        std::vector<std::size_t> art_row;
        for (std::size_t i = 0; i < m_; ++i) {
            if (unit_col[i]) {
                basis_[i] = *unit_col[i];
            } else {
                RatVec col(m_, Rational(0));
                col[i] = 1;
                basis_[i] = add_column(col);
                art_row.push_back(i);
            }
        }
        // Objective: maximize -(sum of artificials).
        RatVec cost(ncols_, Rational(0));
        for (std::size_t j = first_artificial_; j < ncols_; ++j) cost[j] = -1;
        install_objective(cost);
        run(/*restrict_entering=*/false);
        if (objective_value() < 0) {
            // Infeasible: recover y_i = dual multiplier of row i from the
            // reduced cost of the row's unit column (artificial cost -1,
            // slack cost 0): redcost = cost - y_i * unit_coeff.
            y->assign(m_, Rational(0));
            for (std::size_t i = 0; i < m_; ++i) {
                if (unit_col[i])
                    (*y)[i] = -redcost_[*unit_col[i]];
                else
                    (*y)[i] = Rational(-1) - redcost_[artificial_of(i, art_row)];
            }
            return false;
        }
        drive_out_artificials();
        return true;
    }

    // Phase 2 with the real objective. Returns entering column on
    // unboundedness, nullopt on optimality.
    std::optional<std::size_t> phase2(const RatVec& cost) {
        RatVec full = cost;
        full.resize(ncols_, Rational(0));
        install_objective(full);
        return run(/*restrict_entering=*/true);
    }

    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<bool>& row_alive() const { return alive_; }

    Rational primal_value(std::size_t col) const {
        for (std::size_t i = 0; i < m_; ++i)
            if (alive_[i] && basis_[i] == col) return b_[i];
        return Rational(0);
    }

    // Recession direction of the entering column in z-space.
    RatVec ray_of(std::size_t entering) const {
        RatVec ray(ncols_, Rational(0));
        ray[entering] = 1;
        for (std::size_t i = 0; i < m_; ++i)
            if (alive_[i]) ray[basis_[i]] = -a_[i][entering];
        return ray;
    }

  private:
    std::size_t artificial_of(std::size_t row, const std::vector<std::size_t>& art_rows) const {
        for (std::size_t k = 0; k < art_rows.size(); ++k)
            if (art_rows[k] == row) return first_artificial_ + k;
        throw CertificateDefect("internal: artificial column lookup failed");
    }

    void install_objective(const RatVec& cost) {
        cost_ = cost;
        redcost_ = cost;
        value_ = 0;
        alive_.resize(m_, true);
        for (std::size_t i = 0; i < m_; ++i) {
            if (!alive_[i] || cost_[basis_[i]] == 0) continue;
            const Rational cb = cost_[basis_[i]];
            for (std::size_t j = 0; j < ncols_; ++j) redcost_[j] -= cb * a_[i][j];
            value_ += cb * b_[i];
        }
    }

    Rational objective_value() const { return value_; }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / a_[row][col];
        for (std::size_t j = 0; j < ncols_; ++j) a_[row][j] *= inv;
        b_[row] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || !alive_[i] || a_[i][col] == 0) continue;
            const Rational f = a_[i][col];
            for (std::size_t j = 0; j < ncols_; ++j) a_[i][j] -= f * a_[row][j];
            b_[i] -= f * b_[row];
        }
        if (redcost_[col] != 0) {
            const Rational f = redcost_[col];
            for (std::size_t j = 0; j < ncols_; ++j) redcost_[j] -= f * a_[row][j];
            value_ += f * b_[row];
        }
        basis_[row] = col;
    }

    // Bland: entering = lowest-index improving column, leaving = min ratio
    // with lowest basic-variable index tie-break.
    std::optional<std::size_t> run(bool restrict_entering) {
        const std::size_t limit = restrict_entering ? first_artificial_ : ncols_;
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < limit; ++j) {
                if (redcost_[j] > 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return std::nullopt;  // optimal
            std::optional<std::size_t> leave;
            Rational best_ratio = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!alive_[i] || a_[i][*entering] <= 0) continue;
                const Rational ratio = b_[i] / a_[i][*entering];
                if (!leave || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (!leave) return entering;  // unbounded
            pivot(*leave, *entering);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!alive_[i] || basis_[i] < first_artificial_) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < first_artificial_; ++j) {
                if (a_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col)
                pivot(i, *col);
            else
                alive_[i] = false;  // redundant row
        }
    }

    std::vector<RatVec> a_;
    RatVec b_;
    std::size_t m_{0}, ncols_{0}, first_artificial_{0};
    RatVec cost_, redcost_;
    Rational value_{0};
    std::vector<std::size_t> basis_;
    std::vector<bool> alive_;
};

enum class VarKind { ShiftLower, ShiftUpper, Split };

struct VarMapEntry {
    VarKind kind;
    std::size_t zpos{0}, zneg{0};
    Rational shift{0};
};

}  // namespace detail

/// Deterministic exact solve: the outcome is self-certifying and replayed
/// before being returned (CertificateDefect on replay failure).
inline LpOutcome solve_lp(const LinearProgram& input) {
    validate_structure(input);

    LinearProgram lp = input;
    const bool flipped_sense = lp.sense == Sense::Minimize;
    if (flipped_sense) {
        lp.sense = Sense::Maximize;
        lp.objective = negate(lp.objective);
    }
    const std::size_t n = lp.num_vars();

    // Map original variables onto nonnegative z-space.
    std::vector<detail::VarMapEntry> vmap(n);
    std::size_t zcount = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::optional<Rational> lo = j < lp.lower.size() ? lp.lower[j] : std::nullopt;
        const std::optional<Rational> hi = j < lp.upper.size() ? lp.upper[j] : std::nullopt;
        if (lo) {
            vmap[j] = {detail::VarKind::ShiftLower, zcount++, 0, *lo};
        } else if (hi) {
            vmap[j] = {detail::VarKind::ShiftUpper, zcount++, 0, *hi};
        } else {
            vmap[j] = {detail::VarKind::Split, zcount, zcount + 1, Rational(0)};
            zcount += 2;
        }
    }

    struct InternalRow {
        RatVec z;            // structural coefficients
        Rational rhs;
        bool ineq;           // true: <=, false: ==
        int orig;            // original row index, or -1 for a bound cap
        Rational tau;        // +-1, sign applied to the original row
    };

    auto x_row_to_z = [&](const RatVec& coeffs, const Rational& rhs) {
        InternalRow r;
        r.z.assign(zcount, Rational(0));
        r.rhs = rhs;
        for (std::size_t j = 0; j < n; ++j) {
            if (coeffs[j] == 0) continue;
            const auto& vm = vmap[j];
            switch (vm.kind) {
                case detail::VarKind::ShiftLower:
                    r.z[vm.zpos] += coeffs[j];
                    r.rhs -= coeffs[j] * vm.shift;
                    break;
                case detail::VarKind::ShiftUpper:
                    r.z[vm.zpos] -= coeffs[j];
                    r.rhs -= coeffs[j] * vm.shift;
                    break;
                case detail::VarKind::Split:
                    r.z[vm.zpos] += coeffs[j];
                    r.z[vm.zneg] -= coeffs[j];
                    break;
            }
        }
        return r;
    };

    std::vector<InternalRow> irows;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& row = lp.rows[i];
        const bool flip = row.rel == Relation::GreaterEq;
        InternalRow r = x_row_to_z(flip ? negate(row.coeffs) : row.coeffs,
                                   flip ? -row.rhs : row.rhs);
        r.ineq = row.rel != Relation::Equal;
        r.orig = static_cast<int>(i);
        r.tau = flip ? -1 : 1;
        irows.push_back(std::move(r));
    }
    // Caps for doubly bounded variables: z <= u - l.
    for (std::size_t j = 0; j < n; ++j) {
        const std::optional<Rational> lo = j < lp.lower.size() ? lp.lower[j] : std::nullopt;
        const std::optional<Rational> hi = j < lp.upper.size() ? lp.upper[j] : std::nullopt;
        if (lo && hi) {
            if (*hi < *lo) {
                // Empty box: certificate cannot be expressed through rows
                // alone unless we surface it as crossed bound rows; reject
                // such inputs as structural (no caller builds them).
                throw StructuralError("variable with upper bound below lower bound");
            }
            InternalRow r;
            r.z.assign(zcount, Rational(0));
            r.z[vmap[j].zpos] = 1;
            r.rhs = *hi - *lo;
            r.ineq = true;
            r.orig = -1;
            r.tau = 1;
            irows.push_back(std::move(r));
        }
    }

    const std::size_t m = irows.size();
    // Assemble columns: z structurals, then one slack per inequality row.
    std::size_t ncols = zcount;
    std::vector<std::size_t> slack_col(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (irows[i].ineq) slack_col[i] = ncols++;

    std::vector<RatVec> a(m, RatVec(ncols, Rational(0)));
    RatVec b(m);
    std::vector<Rational> sigma(m, Rational(1));
    std::vector<std::optional<std::size_t>> unit_col(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Rational s = irows[i].rhs < 0 ? Rational(-1) : Rational(1);
        sigma[i] = s;
        for (std::size_t j = 0; j < zcount; ++j) a[i][j] = s * irows[i].z[j];
        if (irows[i].ineq) a[i][slack_col[i]] = s;
        b[i] = s * irows[i].rhs;
        if (irows[i].ineq && s == 1) unit_col[i] = slack_col[i];
    }

    detail::SimplexTableau tab(std::move(a), std::move(b), ncols);
    RatVec y;
    if (!tab.phase1(unit_col, &y)) {
        RatVec farkas(lp.rows.size(), Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (irows[i].orig < 0) continue;  // cap rows fold into the box replay
            farkas[static_cast<std::size_t>(irows[i].orig)] += irows[i].tau * sigma[i] * y[i];
        }
        if (!verify_farkas(input, farkas))
            throw CertificateDefect("Farkas certificate failed exact replay");
        return LpInfeasible{std::move(farkas)};
    }

    // Phase 2 objective in z-space (the constant from shifts is recomputed
    // from the x-space point at the end, so it is not tracked here).
    RatVec zcost(ncols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& vm = vmap[j];
        switch (vm.kind) {
            case detail::VarKind::ShiftLower: zcost[vm.zpos] += lp.objective[j]; break;
            case detail::VarKind::ShiftUpper: zcost[vm.zpos] -= lp.objective[j]; break;
            case detail::VarKind::Split:
                zcost[vm.zpos] += lp.objective[j];
                zcost[vm.zneg] -= lp.objective[j];
                break;
        }
    }

    auto z_to_x = [&](auto&& value_of) {
        RatVec x(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& vm = vmap[j];
            switch (vm.kind) {
                case detail::VarKind::ShiftLower: x[j] = vm.shift + value_of(vm.zpos); break;
                case detail::VarKind::ShiftUpper: x[j] = vm.shift - value_of(vm.zpos); break;
                case detail::VarKind::Split: x[j] = value_of(vm.zpos) - value_of(vm.zneg); break;
            }
        }
        return x;
    };
    auto z_to_x_dir = [&](const RatVec& z) {
        RatVec x(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& vm = vmap[j];
            switch (vm.kind) {
                case detail::VarKind::ShiftLower: x[j] = z[vm.zpos]; break;
                case detail::VarKind::ShiftUpper: x[j] = -z[vm.zpos]; break;
                case detail::VarKind::Split: x[j] = z[vm.zpos] - z[vm.zneg]; break;
            }
        }
        return x;
    };

    if (auto entering = tab.phase2(zcost)) {
        RatVec ray = z_to_x_dir(tab.ray_of(*entering));
        if (!verify_ray(input, ray)) throw CertificateDefect("unbounded ray failed exact replay");
        return LpUnbounded{std::move(ray)};
    }

    RatVec x = z_to_x([&](std::size_t col) { return tab.primal_value(col); });
    if (!point_satisfies(input, x)) throw CertificateDefect("optimal point failed exact replay");
    return LpOptimal{x, dot(input.objective, x)};
}

struct FeasiblePoint {
    RatVec point;
};
using FeasibilityOutcome = std::variant<FeasiblePoint, LpInfeasible>;

/// Pure feasibility query over rows plus an optional bound box.
inline FeasibilityOutcome check_feasible(const std::vector<ConstraintRow>& rows, std::size_t nvars,
                                         std::vector<std::optional<Rational>> lower = {},
                                         std::vector<std::optional<Rational>> upper = {}) {
    LinearProgram lp;
    lp.sense = Sense::Maximize;
    lp.objective = zero_vec(nvars);
    lp.rows = rows;
    lp.lower = std::move(lower);
    lp.upper = std::move(upper);
    LpOutcome out = solve_lp(lp);
    if (auto* opt = std::get_if<LpOptimal>(&out)) return FeasiblePoint{std::move(opt->point)};
    if (auto* inf = std::get_if<LpInfeasible>(&out)) return LpInfeasible{std::move(inf->farkas)};
    throw CertificateDefect("feasibility query reported unbounded with zero objective");
}

/// Dual of a bound-free maximize program: minimize b.y subject to A^T y = c
/// with y_i >= 0 on LessEq rows, <= 0 on GreaterEq rows, free on Equal rows.
inline LinearProgram dual_of(const LinearProgram& lp) {
    validate_structure(lp);
    if (lp.sense != Sense::Maximize) throw StructuralError("dual_of expects a maximize program");
    if (!lp.lower.empty() || !lp.upper.empty())
        throw StructuralError("dual_of expects bounds folded into rows");
    const std::size_t n = lp.num_vars();
    const std::size_t m = lp.rows.size();
    LinearProgram dual;
    dual.sense = Sense::Minimize;
    dual.objective.resize(m);
    dual.lower.assign(m, std::nullopt);
    dual.upper.assign(m, std::nullopt);
    for (std::size_t i = 0; i < m; ++i) {
        dual.objective[i] = lp.rows[i].rhs;
        if (lp.rows[i].rel == Relation::LessEq) dual.lower[i] = Rational(0);
        if (lp.rows[i].rel == Relation::GreaterEq) dual.upper[i] = Rational(0);
    }
    for (std::size_t j = 0; j < n; ++j) {
        ConstraintRow row;
        row.coeffs.resize(m);
        for (std::size_t i = 0; i < m; ++i) row.coeffs[i] = lp.rows[i].coeffs[j];
        row.rel = Relation::Equal;
        row.rhs = lp.objective[j];
        dual.rows.push_back(std::move(row));
    }
    return dual;
}

}  // namespace gaugecalc
