#include "pcm/solver.hpp"

#include "pcm/budget.hpp"
#include "pcm/equilibrium.hpp"
#include "pcm/errors.hpp"
#include "pcm/objective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace pcm {

namespace {

constexpr double kLinearTol = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double constraint_tol(const Affine2& g, IncentivePair p) {
    return kLinearTol *
           std::max({1.0, std::abs(g.c0), std::abs(g.cw * p.r_wp), std::abs(g.cl * p.r_ls)});
}

bool linear_ok(const std::vector<LinearConstraint>& cs, IncentivePair p) {
    if (!std::isfinite(p.r_wp) || !std::isfinite(p.r_ls))
        return false;
    for (const auto& c : cs)
        if (c.g(p) < -constraint_tol(c.g, p))
            return false;
    return true;
}

bool budget_ok(const Quadratic2& budget, IncentivePair p) {
    return budget(p) >= -kBudgetTolerance;
}

std::optional<IncentivePair> solve2(double a11, double a12, double a21, double a22, double b1,
                                    double b2) {
    const double det = a11 * a22 - a12 * a21;
    const double scale = std::max({std::abs(a11 * a22), std::abs(a12 * a21), 1e-300});
    if (!(std::abs(det) > 1e-13 * scale))
        return std::nullopt;
    return IncentivePair{(b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det};
}

struct Line {
    IncentivePair origin;
    std::array<double, 2> dir;

    IncentivePair at(double t) const { return {origin.r_wp + t * dir[0], origin.r_ls + t * dir[1]}; }
};

std::optional<Line> line_of(const Affine2& g) {
    const double nn = g.cw * g.cw + g.cl * g.cl;
    if (nn == 0.0)
        return std::nullopt;
    return Line{{-g.c0 * g.cw / nn, -g.c0 * g.cl / nn}, {-g.cl, g.cw}};
}

// c2 t^2 + c1 t + c0 along a line.
struct Quad1 {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double t) const { return (c2 * t + c1) * t + c0; }
};

Quad1 restrict_to(const Quadratic2& q, const Line& line) {
    const auto g = q.gradient(line.origin);
    const auto h = q.hessian();
    const auto& d = line.dir;
    return {0.5 * (h[0] * d[0] * d[0] + 2.0 * h[1] * d[0] * d[1] + h[2] * d[1] * d[1]),
            g[0] * d[0] + g[1] * d[1], q(line.origin)};
}

double curvature_floor(const Quadratic2& q, const Line& line) {
    const auto h = q.hessian();
    const double dd = line.dir[0] * line.dir[0] + line.dir[1] * line.dir[1];
    return 1e-12 * (std::abs(h[0]) + std::abs(h[1]) + std::abs(h[2])) * dd;
}

std::vector<double> roots(const Quad1& q) {
    const double scale = std::abs(q.c2) + std::abs(q.c1) + std::abs(q.c0);
    if (std::abs(q.c2) <= 1e-15 * scale) {
        if (std::abs(q.c1) <= 1e-15 * scale)
            return {};
        return {-q.c0 / q.c1};
    }
    const double disc = q.c1 * q.c1 - 4.0 * q.c2 * q.c0;
    if (disc < 0.0)
        return {};
    const double s = std::sqrt(disc);
    const double m = -0.5 * (q.c1 + std::copysign(s, q.c1));
    std::vector<double> out;
    if (m != 0.0) {
        out.push_back(m / q.c2);
        out.push_back(q.c0 / m);
    } else {
        out.push_back(0.0);
    }
    return out;
}

struct Candidate {
    IncentivePair p;
    bool budget_active = false;
};

// Stationary point, per-line minimizers and pairwise vertices: the KKT
// points of every active set made of linear constraints only.
std::vector<Candidate> linear_candidates(const SubProblem& sub, std::vector<IncentivePair>& vertices) {
    const auto& f = sub.objective;
    std::vector<Candidate> out;
    const auto h = f.hessian();
    if (auto p = solve2(h[0], h[1], h[1], h[2], -f.w, -f.l))
        out.push_back({*p});

    for (const auto& c : sub.linear) {
        const auto line = line_of(c.g);
        if (!line)
            continue;
        const Quad1 q = restrict_to(f, *line);
        if (q.c2 > curvature_floor(f, *line))
            out.push_back({line->at(-q.c1 / (2.0 * q.c2))});
    }

    for (std::size_t i = 0; i < sub.linear.size(); ++i) {
        for (std::size_t j = i + 1; j < sub.linear.size(); ++j) {
            const auto& gi = sub.linear[i].g;
            const auto& gj = sub.linear[j].g;
            if (auto p = solve2(gi.cw, gi.cl, gj.cw, gj.cl, -gi.c0, -gj.c0)) {
                out.push_back({*p});
                if (linear_ok(sub.linear, *p))
                    vertices.push_back(*p);
            }
        }
    }
    return out;
}

// Minimizer of the objective on the curve budget = 0, found by bisection
// on the multiplier of the convex constraint -budget <= 0. The budget along
// the stationary path is nondecreasing in the multiplier.
std::optional<IncentivePair> budget_only_candidate(const SubProblem& sub) {
    const auto& f = sub.objective;
    const auto& I = sub.budget;
    const auto hf = f.hessian();
    const auto hi = I.hessian();
    auto stationary = [&](double lambda) {
        return solve2(hf[0] - lambda * hi[0], hf[1] - lambda * hi[1], hf[1] - lambda * hi[1],
                      hf[2] - lambda * hi[2], -(f.w - lambda * I.w), -(f.l - lambda * I.l));
    };

    if (auto p0 = stationary(0.0); p0 && I(*p0) >= 0.0)
        return std::nullopt;

    double lo = 0.0;
    double up = 1e-8;
    std::optional<IncentivePair> p_up;
    for (;; up *= 4.0) {
        if (up > 1e16)
            return std::nullopt;
        p_up = stationary(up);
        if (p_up && I(*p_up) >= 0.0)
            break;
        lo = up;
    }
    for (int it = 0; it < 200 && up - lo > 1e-15 * up; ++it) {
        const double mid = 0.5 * (lo + up);
        const auto p = stationary(mid);
        if (!p)
            break;
        if (I(*p) >= 0.0) {
            up = mid;
            p_up = p;
        } else {
            lo = mid;
        }
    }
    return p_up;
}

// Moves p into every closed linear half-plane it misses by rounding.
IncentivePair repair(const std::vector<LinearConstraint>& cs, IncentivePair p) {
    for (int pass = 0; pass < 8; ++pass) {
        bool moved = false;
        for (const auto& c : cs) {
            const double v = c.g(p);
            if (v >= 0.0)
                continue;
            const double nn = c.g.cw * c.g.cw + c.g.cl * c.g.cl;
            if (nn == 0.0)
                continue;
            const double step = (-v + 1e-14 * std::max(1.0, std::abs(c.g.c0))) / nn;
            p.r_wp += step * c.g.cw;
            p.r_ls += step * c.g.cl;
            moved = true;
        }
        if (!moved)
            break;
    }
    return p;
}

struct Box {
    double wp_lo = kInf, wp_hi = -kInf, ls_lo = kInf, ls_hi = -kInf;

    void add(IncentivePair p) {
        wp_lo = std::min(wp_lo, p.r_wp);
        wp_hi = std::max(wp_hi, p.r_wp);
        ls_lo = std::min(ls_lo, p.r_ls);
        ls_hi = std::max(ls_hi, p.r_ls);
    }
    bool empty() const { return !(wp_lo <= wp_hi && ls_lo <= ls_hi); }
};

// Best feasible point of a grid x grid sample of the box.
std::optional<Candidate> grid_search(const SubProblem& sub, const Box& box, int grid) {
    std::optional<Candidate> best;
    double best_f = kInf;
    const int steps = std::max(grid - 1, 1);
    for (int i = 0; i < grid; ++i) {
        const double w = box.wp_lo + (box.wp_hi - box.wp_lo) * i / steps;
        for (int j = 0; j < grid; ++j) {
            const IncentivePair p{w, box.ls_lo + (box.ls_hi - box.ls_lo) * j / steps};
            if (!linear_ok(sub.linear, p) || !budget_ok(sub.budget, p))
                continue;
            const double v = sub.objective(p);
            if (v < best_f) {
                best_f = v;
                best = Candidate{p};
            }
        }
    }
    return best;
}

}  // namespace

double strict_margin(double rhs) {
    return 1e-9 * std::max(1.0, std::abs(rhs));
}

SubProblem assemble_subproblem(const HourData& h, const SubSpace& cell, std::span<const double> q,
                               double x_prev) {
    SubProblem sub;
    sub.cell = cell;
    sub.objective = expected_cost_quadratic(h, cell, q);
    sub.budget = budget_quadratic(h, cell, q);

    const int N = h.count();
    for (const auto& hp : cell.half_planes) {
        const Affine2 lb = hp.as_lower_bound(N);  // cw R_WP + cl R_LS >= c0
        double offset = lb.c0;
        if (hp.strict())
            offset += strict_margin(hp.rhs);
        const bool diagonal =
            hp.kind == HalfPlane::Kind::diagonal_ge || hp.kind == HalfPlane::Kind::diagonal_lt;
        sub.linear.push_back({{-offset, lb.cw, lb.cl}, diagonal ? "case" : "subspace"});
    }
    sub.linear.push_back({{-h.r_wp_floor, 1.0, 0.0}, "floor_wp"});
    sub.linear.push_back({{-h.r_ls_floor, 0.0, 1.0}, "floor_ls"});

    // ls>=wp: x_N is the largest total and x_0 the smallest; ls<wp swaps them.
    const Affine2 x0 = total_affine(h, 0);
    const Affine2 xN = total_affine(h, N);
    const bool ge = cell.order == PriceOrder::ls_ge_wp;
    const Affine2& upper = ge ? xN : x0;
    const Affine2& lower = ge ? x0 : xN;
    sub.linear.push_back({Affine2{x_prev + h.ramp_up, 0.0, 0.0} - upper, "ramp_up"});
    sub.linear.push_back({lower - Affine2{x_prev + h.ramp_down, 0.0, 0.0}, "ramp_down"});
    return sub;
}

const char* to_string(CellStatus status) {
    return status == CellStatus::optimal ? "optimal" : "infeasible";
}

CellResult solve_cell(const SubProblem& sub, const SolverOptions& options) {
    CellResult res;
    res.cell_id = sub.cell.id;
    res.n_sigma = sub.cell.n_sigma;
    res.order = sub.cell.order;

    const auto& f = sub.objective;
    std::vector<IncentivePair> vertices;
    const auto lin = linear_candidates(sub, vertices);

    std::optional<Candidate> qp_best;
    for (const auto& c : lin) {
        if (!linear_ok(sub.linear, c.p))
            continue;
        if (!qp_best || f(c.p) < f(qp_best->p))
            qp_best = c;
    }
    if (!qp_best) {
        res.reason = "linear constraints empty";
        return res;
    }

    Box box;
    for (const auto& v : vertices)
        box.add(v);

    std::optional<Candidate> best;
    if (budget_ok(sub.budget, qp_best->p)) {
        best = qp_best;
    } else {
        // The budget must be active at the optimum of the convex problem.
        std::vector<Candidate> cands;
        for (const auto& c : lin)
            cands.push_back(c);
        if (auto p = budget_only_candidate(sub))
            cands.push_back({*p, true});
        for (const auto& c : sub.linear) {
            const auto line = line_of(c.g);
            if (!line)
                continue;
            for (double t : roots(restrict_to(sub.budget, *line)))
                cands.push_back({line->at(t), true});
        }
        for (const auto& c : cands) {
            if (!linear_ok(sub.linear, c.p) || !budget_ok(sub.budget, c.p))
                continue;
            if (!best || f(c.p) < f(best->p))
                best = c;
        }
        if (!best) {
            // Second phase: sample the linear region before declaring the
            // budget infeasible.
            if (!box.empty()) {
                if (auto g = grid_search(sub, box, std::max(options.grid_size, 2))) {
                    res.warnings.push_back("budget-feasible grid point found after enumeration failed");
                    best = g;
                }
            }
            if (!best) {
                res.reason = "budget recovery infeasible";
                return res;
            }
        }
    }

    IncentivePair p = repair(sub.linear, best->p);
    if (!budget_ok(sub.budget, p))
        res.warnings.push_back("budget slack " + fmt(sub.budget(p)) + " after boundary repair");
    if (!sub.cell.contains(p))
        res.warnings.push_back("solution left its sub-space after repair");

    res.status = CellStatus::optimal;
    res.prices = p;
    res.cost = f(p);
    res.budget_active = best->budget_active;

    if (options.verify_grid && !box.empty()) {
        if (auto g = grid_search(sub, box, options.grid_size)) {
            const double gv = f(g->p);
            if (gv < res.cost - 1e-6 * std::max(1.0, std::abs(res.cost)))
                res.warnings.push_back("grid point (" + fmt(g->p.r_wp) + ", " + fmt(g->p.r_ls) +
                                       ") improves the cell objective to " + fmt(gv));
        }
    }
    return res;
}

std::vector<double> single_package_weights(std::size_t size) {
    std::vector<double> q(size + 1, 0.0);
    q[size] = 1.0;
    return q;
}

namespace {

// Cells that tie within rounding keep the earlier one; the strict-margin
// copy of a diagonal optimum would otherwise win on noise.
bool better(double cost, double incumbent) {
    return cost < incumbent - 1e-9 * std::max(1.0, std::abs(incumbent));
}

// A ls<wp winner sitting within the strict margin of the diagonal is the
// shifted copy of a diagonal point. Report the ls>=wp cell that holds the
// point itself when its cost ties.
std::optional<std::size_t> closed_copy(const std::vector<CellResult>& cells,
                                       const std::vector<std::size_t>& scan, std::size_t winner) {
    const auto& w = cells[winner];
    if (w.order != PriceOrder::ls_lt_wp)
        return std::nullopt;
    const double margin = 4.0 * strict_margin(w.prices.r_wp);
    if (w.prices.r_wp - w.prices.r_ls > margin)
        return std::nullopt;
    for (std::size_t idx : scan) {
        const auto& c = cells[idx];
        if (c.status != CellStatus::optimal || c.order != PriceOrder::ls_ge_wp || better(w.cost, c.cost))
            continue;
        if (std::abs(c.prices.r_wp - w.prices.r_wp) <= margin && std::abs(c.prices.r_ls - w.prices.r_ls) <= margin)
            return idx;
    }
    return std::nullopt;
}

std::size_t cell_index(int size, PriceOrder order, int n_sigma) {
    const int base = order == PriceOrder::ls_ge_wp ? 0 : size + 2;
    return static_cast<std::size_t>(base + n_sigma + 1);
}

// Linear feasibility of floors, ramp and the price order alone.
bool base_region_feasible(const HourData& h, double x_prev) {
    for (PriceOrder order : {PriceOrder::ls_ge_wp, PriceOrder::ls_lt_wp}) {
        SubSpace cell;
        cell.order = order;
        cell.n_sigma = -1;
        cell.half_planes.push_back(
            {order == PriceOrder::ls_ge_wp ? HalfPlane::Kind::diagonal_ge : HalfPlane::Kind::diagonal_lt,
             0, 0.0});
        cell.cb_table.assign(h.size() + 1, BalancingSide::up);
        const auto q = single_package_weights(h.size());
        SubProblem sub = assemble_subproblem(h, cell, q, x_prev);
        std::vector<IncentivePair> vertices;
        (void)linear_candidates(sub, vertices);
        if (!vertices.empty())
            return true;
    }
    return false;
}

std::string infeasibility_message(const HourData& h, const std::vector<CellResult>& cells,
                                  double x_prev) {
    std::vector<std::string> families;
    if (!base_region_feasible(h, x_prev)) {
        families.push_back("price floors vs ramp limits");
    } else {
        bool budget = false;
        for (const auto& c : cells)
            budget = budget || c.reason.find("budget") != std::string::npos;
        if (budget)
            families.push_back("budget recovery (I_t >= 0)");
        families.push_back("sub-space boundaries");
    }
    std::ostringstream os;
    os << "hour " << h.hour.value() << " infeasible in all " << cells.size()
       << " sub-spaces; binding constraint families:";
    for (std::size_t i = 0; i < families.size(); ++i)
        os << (i ? ", " : " ") << families[i];
    os << " (x_prev = " << x_prev << ")";
    return os.str();
}

void finish(const HourData& h, std::span<const double> q, const Partition& part,
            const SolverOptions& options, HourSolution& sol) {
    const SubSpace& cell = part.cells[static_cast<std::size_t>(sol.cell_id)];
    sol.expected_cost = expected_social_cost(h, sol.prices, cell, q);
    sol.budget = profit_floor(h, sol.prices, cell, q).i_t;
    double expected_total = 0.0;
    for (int n = 0; n <= h.count(); ++n)
        expected_total += q[static_cast<std::size_t>(n)] * equilibrium_total(h, n, sol.prices);
    sol.x_prev_out = expected_total;

    for (const auto& c : sol.per_cell)
        for (const auto& w : c.warnings)
            sol.warnings.push_back("cell " + std::to_string(c.cell_id) + ": " + w);

    if (options.verify_equilibrium) {
        for (int n = 0; n <= h.count(); ++n) {
            const Scenario s(h.size(), n == 64 ? ~0ULL : (std::uint64_t{1} << n) - 1);
            const auto closed = nash_equilibrium(h, s, sol.prices);
            const auto dense = best_response_oracle(h, s, sol.prices);
            double gap = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i)
                gap = std::max(gap, std::abs(closed.x[i] - dense.x[i]));
            if (gap > 1e-9 * std::max(1.0, std::abs(closed.x_tot)))
                sol.warnings.push_back("equilibrium cross-check gap " + fmt(gap) + " at n = " +
                                       std::to_string(n));
        }
    }
}

HourSolution solve_single_package(const HourData& h, double x_prev, const SolverOptions& options) {
    const int N = h.count();
    const auto q = single_package_weights(h.size());
    const Partition part = build_partition(h);
    const double k = h.slope_denominator();
    const double rhs = part.rhs;

    // Along the diagonal only F[-1] (all up) and F[N] (all down) are met.
    const double ramp_lo = (rhs - k * (x_prev + h.ramp_up)) / N;
    const double ramp_hi = (rhs - k * (x_prev + h.ramp_down)) / N;

    HourSolution sol;
    sol.hour = h.hour;
    sol.x_prev_in = x_prev;
    sol.per_cell.resize(part.cells.size());
    for (const auto& cell : part.cells) {
        auto& r = sol.per_cell[static_cast<std::size_t>(cell.id)];
        r.cell_id = cell.id;
        r.n_sigma = cell.n_sigma;
        r.order = cell.order;
        r.reason = "off the single-package diagonal";
    }

    std::optional<std::size_t> winner;
    for (int ns : {-1, N}) {
        const std::size_t idx = cell_index(N, PriceOrder::ls_ge_wp, ns);
        const SubSpace& cell = part.cells[idx];
        CellResult& r = sol.per_cell[idx];
        r.reason.clear();

        const Quadratic2 f2 = expected_cost_quadratic(h, cell, q);
        const Quadratic2 i2 = budget_quadratic(h, cell, q);
        const Quad1 f{f2.ww + f2.wl + f2.ll, f2.w + f2.l, f2.c};
        const Quad1 budget{i2.ww + i2.wl + i2.ll, i2.w + i2.l, i2.c};

        double lo = std::max(h.r_wp_floor, ramp_lo);
        double hi = ramp_hi;
        if (ns == -1)
            hi = std::min(hi, rhs / N);
        else
            lo = std::max(lo, (rhs + strict_margin(rhs)) / N);

        auto inside = [&](double v) {
            const double tol = kLinearTol * std::max(1.0, std::abs(v));
            return v >= lo - tol && v <= hi + tol && budget(v) >= -kBudgetTolerance;
        };
        std::vector<std::pair<double, bool>> cands{{lo, false}, {hi, false}};
        if (f.c2 > 0.0)
            cands.push_back({-f.c1 / (2.0 * f.c2), false});
        for (double t : roots(budget))
            cands.push_back({t, true});

        std::optional<std::pair<double, bool>> best;
        for (const auto& c : cands)
            if (inside(c.first) && (!best || f(c.first) < f(best->first)))
                best = c;
        if (!best) {
            r.reason = lo > hi ? "linear constraints empty" : "budget recovery infeasible";
            continue;
        }
        double v = std::clamp(best->first, lo, hi);
        for (int i = 0; i < 64 && !cell.contains({v, v}); ++i)
            v = std::nextafter(v, ns == -1 ? -kInf : kInf);
        r.status = CellStatus::optimal;
        r.prices = {v, v};
        r.cost = f(v);
        r.budget_active = best->second;
        if (!winner || better(r.cost, sol.per_cell[*winner].cost))
            winner = idx;
    }

    if (!winner)
        throw InfeasibleError(h.hour.value(), infeasibility_message(h, sol.per_cell, x_prev));
    const auto& w = sol.per_cell[*winner];
    sol.prices = w.prices;
    sol.cell_id = w.cell_id;
    sol.n_sigma_star = w.n_sigma;
    sol.order = w.order;
    finish(h, q, part, options, sol);
    return sol;
}

}  // namespace

HourSolution solve_hour(const HourData& h, std::span<const double> q, double x_prev,
                        const SolverOptions& options) {
    if (q.size() != h.size() + 1)
        throw InputError("selection weights have " + std::to_string(q.size()) + " entries, expected " +
                         std::to_string(h.size() + 1));
    if (options.single_package)
        return solve_single_package(h, x_prev, options);

    const Partition part = build_partition(h);
    HourSolution sol;
    sol.hour = h.hour;
    sol.x_prev_in = x_prev;
    sol.per_cell.resize(part.cells.size());

    auto run = [&](const SubSpace& cell) {
        return solve_cell(assemble_subproblem(h, cell, q, x_prev), options);
    };
    if (options.parallel) {
        std::vector<std::future<CellResult>> jobs;
        for (const auto& cell : part.cells)
            jobs.push_back(std::async(std::launch::async, run, std::cref(cell)));
        for (std::size_t i = 0; i < jobs.size(); ++i)
            sol.per_cell[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < part.cells.size(); ++i)
            sol.per_cell[i] = run(part.cells[i]);
    }

    // Ties go to the lowest n_sigma, ls>=wp before ls<wp. The second rule
    // also keeps an exact diagonal point over its strict-margin copy.
    std::vector<std::size_t> scan(sol.per_cell.size());
    std::iota(scan.begin(), scan.end(), std::size_t{0});
    std::stable_sort(scan.begin(), scan.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = sol.per_cell[x];
        const auto& b = sol.per_cell[y];
        if (a.n_sigma != b.n_sigma)
            return a.n_sigma < b.n_sigma;
        return a.order == PriceOrder::ls_ge_wp && b.order != PriceOrder::ls_ge_wp;
    });
    std::optional<std::size_t> winner;
    for (std::size_t idx : scan) {
        const auto& r = sol.per_cell[idx];
        if (r.status != CellStatus::optimal)
            continue;
        if (!winner || better(r.cost, sol.per_cell[*winner].cost))
            winner = idx;
    }
    if (!winner)
        throw InfeasibleError(h.hour.value(), infeasibility_message(h, sol.per_cell, x_prev));
    if (auto closed = closed_copy(sol.per_cell, scan, *winner))
        winner = closed;

    const auto& w = sol.per_cell[*winner];
    sol.prices = w.prices;
    sol.cell_id = w.cell_id;
    sol.n_sigma_star = w.n_sigma;
    sol.order = w.order;
    finish(h, q, part, options, sol);
    return sol;
}

std::vector<HourSolution> solve_day(const MarketInstance& instance, std::span<const double> q,
                                    const SolverOptions& options, ChainMode mode,
                                    const std::vector<Scenario>& realized) {
    if (mode == ChainMode::replay && realized.size() != static_cast<std::size_t>(instance.horizon))
        throw InputError("replay needs one realized scenario per hour (" +
                         std::to_string(instance.horizon) + "), got " + std::to_string(realized.size()));
    std::vector<HourSolution> out;
    out.reserve(static_cast<std::size_t>(std::max(instance.horizon, 0)));
    double x_prev = instance.ea.x_prev_init;
    for (int t = 1; t <= instance.horizon; ++t) {
        const HourData h = hour_data(instance, Hour(t));
        HourSolution sol = solve_hour(h, q, x_prev, options);
        if (mode == ChainMode::replay) {
            const Scenario& s = realized[static_cast<std::size_t>(t - 1)];
            sol.x_prev_out = nash_equilibrium(h, s, sol.prices).x_tot;
        }
        x_prev = sol.x_prev_out;
        out.push_back(std::move(sol));
    }
    return out;
}

}  // namespace pcm
