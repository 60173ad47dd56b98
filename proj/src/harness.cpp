#include "tsgronwall/harness.hpp"

#include "tsgronwall/calculus.hpp"
#include "tsgronwall/format.hpp"
#include "tsgronwall/rng.hpp"
#include "tsgronwall/volterra.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tsg {
namespace {

constexpr double kTinyDenominator = 1e-300;

double point_margin(double actual, double bound) {
    return (bound - actual) / std::max(std::abs(bound), kTinyDenominator);
}

const Expr& require_fn(const Scenario& sc, const std::string& name) {
    auto it = sc.functions.find(name);
    if (it == sc.functions.end())
        throw ConfigError("task '" + task_name(sc.task) + "' requires functions." + name);
    return it->second;
}

GridFunction fn_from_expr(const GridPtr& grid, const Expr& e, const std::string& name) {
    std::vector<double> vals(grid->n1() * grid->n2());
    for (std::size_t i = 0; i < grid->n1(); ++i)
        for (std::size_t j = 0; j < grid->n2(); ++j) {
            const double x = grid->x(i), y = grid->y(j);
            try {
                vals[i * grid->n2() + j] = e.eval({{"x", x}, {"y", y}});
            } catch (const EvalError& err) {
                throw ConfigError("functions." + name + " at (x, y) = (" + fmt17(x) + ", " +
                                  fmt17(y) + "): " + err.what());
            }
        }
    return GridFunction(grid, std::move(vals));
}

double scalar_from_expr(const Expr& e, const std::string& name) {
    try {
        return e.eval({});
    } catch (const EvalError& err) {
        throw ConfigError("functions." + name + " must be a constant expression: " +
                          std::string(err.what()));
    }
}

Kernel kernel_from_expr(const Expr& e) {
    return Kernel{[e](double x, double y, double eta, double tau, double u) {
        return e.eval({{"x", x}, {"y", y}, {"s", eta}, {"t", tau}, {"u", u}});
    }};
}

/// Fills rows and summary from an accepted bound, or marks the report refused.
void finish_report(BoundReport& rep, const BoundResult& br, const GridFunction* actual) {
    rep.hypotheses = br.hypotheses;
    rep.notes = br.notes;
    if (!br.ok() || actual == nullptr) {
        rep.refused = true;
        return;
    }
    const GridFunction& bound = *br.bound;
    const Grid2& gr = *bound.grid();
    ReportSummary sum;
    sum.max_margin = -std::numeric_limits<double>::infinity();
    sum.min_margin = std::numeric_limits<double>::infinity();
    rep.rows.reserve(gr.n1() * gr.n2());
    for (std::size_t i = 0; i < gr.n1(); ++i)
        for (std::size_t j = 0; j < gr.n2(); ++j) {
            const double a = (*actual)(i, j);
            const double b = bound(i, j);
            const double m = point_margin(a, b);
            if (m < -rep.rel_tol) ++sum.violation_count;
            double ratio;
            if (b != 0.0)
                ratio = a / b;
            else
                ratio = a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
            sum.tightness = std::max(sum.tightness, ratio);
            sum.max_margin = std::max(sum.max_margin, m);
            sum.min_margin = std::min(sum.min_margin, m);
            rep.rows.push_back({gr.x(i), gr.y(j), a, b, m});
        }
    rep.summary = sum;
}

} // namespace

BoundReport run_verify(const Scenario& sc) {
    GridPtr grid;
    try {
        grid = make_grid(sc.axis1.build(), sc.axis2.build());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("axis construction failed: ") + e.what());
    }

    BoundReport rep;
    rep.digest = scenario_digest(sc);
    rep.task = sc.task;
    rep.rel_tol = sc.rel_tol;

    SampleOptions sample_opt;
    sample_opt.seed = sc.seed;
    sample_opt.tol = sc.rel_tol;
    SampleOptions kernel_opt = kernel_sample_defaults();
    kernel_opt.seed = sc.seed;
    kernel_opt.tol = sc.rel_tol;

    try {
        switch (sc.task) {
            case Task::Const: {
                GridFunction p = fn_from_expr(grid, require_fn(sc, "p"), "p");
                const double k = scalar_from_expr(require_fn(sc, "k"), "k");
                BoundResult br = bound_const(k, p);
                if (!br.ok()) {
                    finish_report(rep, br, nullptr);
                    break;
                }
                Kernel K{[p](double, double, double eta, double tau, double u) {
                    return p.value_at(eta, tau) * u;
                }};
                GridFunction actual = solve_exact(GridFunction::constant(grid, k), K);
                finish_report(rep, br, &actual);
                break;
            }
            case Task::Factor: {
                GridFunction p = fn_from_expr(grid, require_fn(sc, "p"), "p");
                GridFunction q = fn_from_expr(grid, require_fn(sc, "q"), "q");
                BoundResult br = bound_factor(q, p);
                if (!br.ok()) {
                    finish_report(rep, br, nullptr);
                    break;
                }
                Kernel K{[p](double, double, double eta, double tau, double u) {
                    return p.value_at(eta, tau) * u;
                }};
                GridFunction actual = solve_exact(q, K);
                finish_report(rep, br, &actual);
                break;
            }
            case Task::Lipschitz: {
                GridFunction g = fn_from_expr(grid, require_fn(sc, "g"), "g");
                GridFunction h = fn_from_expr(grid, require_fn(sc, "h"), "h");
                const Expr le = require_fn(sc, "L");
                const Expr he = require_fn(sc, "H");
                LipschitzPair lp{
                    [le](double x, double y, double u) {
                        return le.eval({{"x", x}, {"y", y}, {"u", u}});
                    },
                    [he](double x, double y, double v) {
                        return he.eval({{"x", x}, {"y", y}, {"v", v}});
                    }};
                BoundResult br = bound_lipschitz(g, h, lp, sample_opt);
                if (!br.ok()) {
                    finish_report(rep, br, nullptr);
                    break;
                }
                Kernel K{[h, lp](double x, double y, double eta, double tau, double u) {
                    return h.value_at(x, y) * lp.L(eta, tau, u);
                }};
                GridFunction actual = solve_exact(g, K);
                finish_report(rep, br, &actual);
                break;
            }
            case Task::Affine: {
                GridFunction g = fn_from_expr(grid, require_fn(sc, "g"), "g");
                GridFunction h = fn_from_expr(grid, require_fn(sc, "h"), "h");
                GridFunction p = fn_from_expr(grid, require_fn(sc, "p"), "p");
                BoundResult br = bound_affine(g, h, p);
                if (!br.ok()) {
                    finish_report(rep, br, nullptr);
                    break;
                }
                Kernel K{[h, p](double x, double y, double eta, double tau, double u) {
                    return h.value_at(x, y) * p.value_at(eta, tau) * u;
                }};
                GridFunction actual = solve_exact(g, K);
                finish_report(rep, br, &actual);
                break;
            }
            case Task::Apriori: {
                GridFunction g = fn_from_expr(grid, require_fn(sc, "g"), "g");
                Kernel K = kernel_from_expr(require_fn(sc, "K"));
                GridFunction pEnv = fn_from_expr(grid, require_fn(sc, "pEnv"), "pEnv");
                GridFunction q = fn_from_expr(grid, require_fn(sc, "q"), "q");
                GridFunction r = fn_from_expr(grid, require_fn(sc, "r"), "r");
                BoundResult br = apriori_bound(pEnv, q, r);
                br.hypotheses.push_back(check_kernel_lipschitz(K, q, r, kernel_opt));
                br.hypotheses.push_back(check_envelope(g, K, pEnv, sc.rel_tol));
                bool usable = br.bound.has_value();
                for (const auto& h : br.hypotheses) usable = usable && h.passed;
                if (!usable) {
                    br.bound.reset();
                    finish_report(rep, br, nullptr);
                    break;
                }
                GridFunction actual = transform(solve_exact(g, K),
                                                [](double v) { return std::abs(v); });
                finish_report(rep, br, &actual);
                break;
            }
            case Task::Diff: {
                GridFunction g = fn_from_expr(grid, require_fn(sc, "g"), "g");
                Kernel K = kernel_from_expr(require_fn(sc, "K"));
                GridFunction q = fn_from_expr(grid, require_fn(sc, "q"), "q");
                GridFunction r = fn_from_expr(grid, require_fn(sc, "r"), "r");
                const double delta = scalar_from_expr(require_fn(sc, "delta"), "delta");
                auto it = sc.functions.find("phi");
                GridFunction phi = it != sc.functions.end()
                                       ? fn_from_expr(grid, it->second, "phi")
                                       : GridFunction::constant(grid, 1.0);
                HypothesisCheck lip = check_kernel_lipschitz(K, q, r, kernel_opt);
                const bool qr_ok = q.min_value() >= 0.0 && r.min_value() >= 0.0;
                if (!lip.passed || !qr_ok) {
                    BoundResult br = two_solution_bound(0.0, 0.0, q, r);
                    br.bound.reset();
                    br.hypotheses.push_back(lip);
                    finish_report(rep, br, nullptr);
                    break;
                }
                GridFunction u1 = solve_exact(g, K);
                GridFunction u2 =
                    zip(u1, phi, [delta](double a, double f) { return a + delta * f; });
                const double eps1 = residual_sup(u1, g, K);
                const double eps2 = residual_sup(u2, g, K);
                BoundResult br = two_solution_bound(eps1, eps2, q, r);
                br.hypotheses.push_back(lip);
                if (!br.ok()) {
                    finish_report(rep, br, nullptr);
                    break;
                }
                GridFunction actual =
                    zip(u1, u2, [](double a, double b) { return std::abs(a - b); });
                finish_report(rep, br, &actual);
                break;
            }
        }
    } catch (const EvalError& e) {
        throw ConfigError(std::string("expression evaluation failed: ") + e.what());
    }
    return rep;
}

void write_csv(std::ostream& os, const BoundReport& report) {
    os << "x,y,actual,bound,margin\n";
    for (const auto& r : report.rows)
        os << fmt17(r.x) << ',' << fmt17(r.y) << ',' << fmt17(r.actual) << ','
           << fmt17(r.bound) << ',' << fmt17(r.margin) << '\n';
}

void write_summary(std::ostream& os, const BoundReport& report) {
    os << "scenario " << report.digest << "\n";
    os << "task " << task_name(report.task) << "\n";
    for (const auto& h : report.hypotheses)
        os << "hypothesis " << (h.passed ? "PASS" : "FAIL") << " " << h.name
           << " (worst violation " << fmt17(h.worst_violation) << ")\n";
    for (const auto& n : report.notes) os << "note " << n << "\n";
    if (report.refused) {
        os << "bound evaluation refused: a hypothesis failed\n";
    } else {
        os << "points " << report.rows.size() << "\n";
        os << "violations " << report.summary.violation_count << " (rel tol "
           << fmt17(report.rel_tol) << ")\n";
        os << "margin min " << fmt17(report.summary.min_margin) << " max "
           << fmt17(report.summary.max_margin) << "\n";
        os << "tightness " << fmt17(report.summary.tightness) << "\n";
    }
    os << "RESULT " << (report.ok() ? "PASS" : "FAIL") << "\n";
}

std::string family_name(ScaleFamily f) {
    switch (f) {
        case ScaleFamily::Integers: return "integers";
        case ScaleFamily::Uniform: return "uniform";
        case ScaleFamily::Geometric: return "geometric";
        case ScaleFamily::Random: return "random";
    }
    throw std::logic_error("family_name: unreachable");
}

ScaleFamily family_from_name(const std::string& name) {
    if (name == "integers") return ScaleFamily::Integers;
    if (name == "uniform") return ScaleFamily::Uniform;
    if (name == "geometric") return ScaleFamily::Geometric;
    if (name == "random") return ScaleFamily::Random;
    throw std::invalid_argument("unknown scale family '" + name +
                                "' (expected integers, uniform, geometric, or random)");
}

namespace {

enum class FuzzCheck { Const, Factor, Lipschitz, Affine, Apriori, Diff };

constexpr FuzzCheck kAllChecks[] = {FuzzCheck::Const,  FuzzCheck::Factor,
                                    FuzzCheck::Lipschitz, FuzzCheck::Affine,
                                    FuzzCheck::Apriori, FuzzCheck::Diff};

const char* fuzz_check_name(FuzzCheck c) {
    switch (c) {
        case FuzzCheck::Const: return "const";
        case FuzzCheck::Factor: return "factor";
        case FuzzCheck::Lipschitz: return "lipschitz";
        case FuzzCheck::Affine: return "affine";
        case FuzzCheck::Apriori: return "apriori";
        case FuzzCheck::Diff: return "diff";
    }
    return "?";
}

/// One randomly drawn trial: axes plus admissible data tables on the full
/// grid. Tables are stored per point so that restricting the axes to index
/// subsets restricts the data consistently (the shrinker depends on that).
struct FuzzCase {
    ScaleFamily fam1 = ScaleFamily::Integers;
    ScaleFamily fam2 = ScaleFamily::Integers;
    std::vector<double> ax1, ax2;
    std::vector<double> p, g, h, q, r, phi;  // row-major on ax1 x ax2
    double k = 1.0;
    double la = 0.0, lb = 0.0, lm = 1.0;  // L(u) = la*u + lb*min(u, lm)
    double kl = 0.0, kg = 0.0;            // K = q(x,y) r(eta,tau) (kl*u + kg)
    double delta = 0.5;
    std::uint64_t check_seed = 1;
};

std::vector<double> random_axis(Rng& rng, ScaleFamily fam, std::size_t max_points) {
    const std::size_t n = 3 + rng.index(max_points - 2);
    std::vector<double> pts(n);
    switch (fam) {
        case ScaleFamily::Integers: {
            const long start = rng.range(-5, 5);
            for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(start) + i;
            break;
        }
        case ScaleFamily::Uniform: {
            const double lo = rng.uniform(-1.0, 1.0);
            const double len = rng.uniform(0.5, 2.0);
            for (std::size_t i = 0; i < n; ++i)
                pts[i] = lo + len * static_cast<double>(i) / static_cast<double>(n - 1);
            break;
        }
        case ScaleFamily::Geometric: {
            const double first = rng.uniform(0.1, 0.5);
            const double base = rng.uniform(1.05, 1.2);
            double v = first;
            for (std::size_t i = 0; i < n; ++i, v *= base) pts[i] = v;
            break;
        }
        case ScaleFamily::Random: {
            double v = rng.uniform(-1.0, 1.0);
            for (std::size_t i = 0; i < n; ++i) {
                pts[i] = v;
                v += rng.uniform(0.02, 0.3);
            }
            break;
        }
    }
    return pts;
}

std::vector<double> random_table(Rng& rng, std::size_t count, double lo, double hi) {
    std::vector<double> t(count);
    for (auto& v : t) v = rng.uniform(lo, hi);
    return t;
}

/// Nondecreasing in each index and strictly positive: base + row prefix sum
/// + column prefix sum of nonnegative increments. Prefix sums of
/// nonnegative terms stay nondecreasing in floating point.
std::vector<double> random_monotone_table(Rng& rng, std::size_t n1, std::size_t n2) {
    const double base = rng.uniform(0.1, 1.0);
    std::vector<double> rowsum(n1), colsum(n2);
    double acc = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        acc += rng.uniform(0.0, 0.5 / static_cast<double>(n1));
        rowsum[i] = acc;
    }
    acc = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
        acc += rng.uniform(0.0, 0.5 / static_cast<double>(n2));
        colsum[j] = acc;
    }
    std::vector<double> t(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) t[i * n2 + j] = base + rowsum[i] + colsum[j];
    return t;
}

std::vector<double> random_perturbation(Rng& rng, std::size_t n1, std::size_t n2) {
    std::vector<double> t(n1 * n2, 0.0);
    switch (rng.index(3)) {
        case 0:
            std::fill(t.begin(), t.end(), 1.0);
            break;
        case 1:
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) t[i * n2 + j] = (i + j) % 2 ? -1.0 : 1.0;
            break;
        default:
            t[rng.index(n1) * n2 + rng.index(n2)] = 1.0;
            break;
    }
    return t;
}

FuzzCase random_case(Rng& rng, const std::vector<ScaleFamily>& fams, std::size_t max_points) {
    FuzzCase c;
    c.fam1 = fams[rng.index(fams.size())];
    c.fam2 = fams[rng.index(fams.size())];
    c.ax1 = random_axis(rng, c.fam1, max_points);
    c.ax2 = random_axis(rng, c.fam2, max_points);
    const std::size_t count = c.ax1.size() * c.ax2.size();
    c.p = random_table(rng, count, 0.0, 2.0);
    c.g = random_table(rng, count, 0.0, 2.0);
    c.h = random_table(rng, count, 0.0, 2.0);
    c.q = random_monotone_table(rng, c.ax1.size(), c.ax2.size());
    c.r = random_table(rng, count, 0.0, 2.0);
    c.phi = random_perturbation(rng, c.ax1.size(), c.ax2.size());
    c.k = 10.0 * (1.0 - rng.unit());
    c.la = rng.uniform(0.0, 1.0);
    c.lb = rng.uniform(0.0, 1.0);
    c.lm = rng.uniform(0.5, 5.0);
    c.kl = rng.uniform(0.0, 1.0);
    c.kg = rng.uniform(-1.0, 1.0);
    c.delta = 1.0 - rng.unit();
    c.check_seed = rng.bits();
    return c;
}

struct Realized {
    GridPtr grid;
    GridFunction p, g, h, q, r, phi;
};

std::vector<double> select(const std::vector<double>& full, const std::vector<std::size_t>& idx) {
    std::vector<double> out(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) out[a] = full[idx[a]];
    return out;
}

std::vector<double> restrict_table(const std::vector<double>& full, std::size_t full_n2,
                                   const std::vector<std::size_t>& idx1,
                                   const std::vector<std::size_t>& idx2) {
    std::vector<double> out(idx1.size() * idx2.size());
    for (std::size_t a = 0; a < idx1.size(); ++a)
        for (std::size_t b = 0; b < idx2.size(); ++b)
            out[a * idx2.size() + b] = full[idx1[a] * full_n2 + idx2[b]];
    return out;
}

Realized materialize(const FuzzCase& c, const std::vector<std::size_t>& idx1,
                     const std::vector<std::size_t>& idx2) {
    GridPtr grid = make_grid(TimeScale(select(c.ax1, idx1)), TimeScale(select(c.ax2, idx2)));
    const std::size_t n2 = c.ax2.size();
    auto fn = [&](const std::vector<double>& full) {
        return GridFunction(grid, restrict_table(full, n2, idx1, idx2));
    };
    return Realized{grid, fn(c.p), fn(c.g), fn(c.h), fn(c.q), fn(c.r), fn(c.phi)};
}

Kernel product_kernel(const GridFunction& q, const GridFunction& r, double kl, double kg) {
    return Kernel{[q, r, kl, kg](double x, double y, double eta, double tau, double u) {
        return q.value_at(x, y) * r.value_at(eta, tau) * (kl * u + kg);
    }};
}

struct CheckOutcome {
    bool violated = false;
    std::size_t hypothesis_failures = 0;
};

CheckOutcome run_check(FuzzCheck which, const FuzzCase& c, const Realized& rz, double tol) {
    CheckOutcome out;
    auto tally = [&](const std::vector<HypothesisCheck>& hs) {
        for (const auto& h : hs)
            if (!h.passed) ++out.hypothesis_failures;
    };
    auto compare = [&](const BoundResult& br, const GridFunction& actual) {
        tally(br.hypotheses);
        if (!br.bound) return;
        for (std::size_t kdx = 0; kdx < actual.values().size(); ++kdx) {
            const double m = point_margin(actual.values()[kdx], br.bound->values()[kdx]);
            if (m < -tol) out.violated = true;
        }
    };
    SampleOptions mono_opt;
    mono_opt.seed = c.check_seed;
    SampleOptions kern_opt = kernel_sample_defaults();
    kern_opt.seed = c.check_seed;

    switch (which) {
        case FuzzCheck::Const: {
            BoundResult br = bound_const(c.k, rz.p);
            Kernel K{[p = rz.p](double, double, double eta, double tau, double u) {
                return p.value_at(eta, tau) * u;
            }};
            compare(br, solve_exact(GridFunction::constant(rz.grid, c.k), K));
            break;
        }
        case FuzzCheck::Factor: {
            BoundResult br = bound_factor(rz.q, rz.p);
            Kernel K{[p = rz.p](double, double, double eta, double tau, double u) {
                return p.value_at(eta, tau) * u;
            }};
            compare(br, solve_exact(rz.q, K));
            break;
        }
        case FuzzCheck::Lipschitz: {
            const double la = c.la, lb = c.lb, lm = c.lm;
            LipschitzPair lp{
                [la, lb, lm](double, double, double u) { return la * u + lb * std::min(u, lm); },
                [la, lb, lm](double, double, double v) { return la + (v < lm ? lb : 0.0); }};
            BoundResult br = bound_lipschitz(rz.g, rz.h, lp, mono_opt);
            Kernel K{[h = rz.h, la, lb, lm](double x, double y, double, double, double u) {
                return h.value_at(x, y) * (la * u + lb * std::min(u, lm));
            }};
            compare(br, solve_exact(rz.g, K));
            break;
        }
        case FuzzCheck::Affine: {
            BoundResult br = bound_affine(rz.g, rz.h, rz.p);
            Kernel K{[h = rz.h, p = rz.p](double x, double y, double eta, double tau, double u) {
                return h.value_at(x, y) * p.value_at(eta, tau) * u;
            }};
            compare(br, solve_exact(rz.g, K));
            break;
        }
        case FuzzCheck::Apriori: {
            Kernel K = product_kernel(rz.q, rz.r, c.kl, c.kg);
            GridFunction pEnv =
                transform(zero_section(rz.g, K), [](double v) { return std::abs(v); });
            HypothesisCheck lip = check_kernel_lipschitz(K, rz.q, rz.r, kern_opt);
            HypothesisCheck env = check_envelope(rz.g, K, pEnv);
            tally({lip, env});
            BoundResult br = apriori_bound(pEnv, rz.q, rz.r);
            if (!lip.passed || !env.passed) {
                tally(br.hypotheses);
                break;
            }
            compare(br, transform(solve_exact(rz.g, K), [](double v) { return std::abs(v); }));
            break;
        }
        case FuzzCheck::Diff: {
            Kernel K = product_kernel(rz.q, rz.r, c.kl, c.kg);
            HypothesisCheck lip = check_kernel_lipschitz(K, rz.q, rz.r, kern_opt);
            tally({lip});
            if (!lip.passed) break;
            GridFunction u1 = solve_exact(rz.g, K);
            const double delta = c.delta;
            GridFunction u2 =
                zip(u1, rz.phi, [delta](double a, double f) { return a + delta * f; });
            BoundResult br =
                two_solution_bound(residual_sup(u1, rz.g, K), residual_sup(u2, rz.g, K),
                                   rz.q, rz.r);
            compare(br, zip(u1, u2, [](double a, double b) { return std::abs(a - b); }));
            break;
        }
    }
    return out;
}

std::string serialize_counterexample(const FuzzCase& c, FuzzCheck which,
                                     const std::vector<std::size_t>& idx1,
                                     const std::vector<std::size_t>& idx2) {
    const std::size_t n2 = c.ax2.size();
    nlohmann::json j;
    j["check"] = fuzz_check_name(which);
    j["family1"] = family_name(c.fam1);
    j["family2"] = family_name(c.fam2);
    j["axis1"] = select(c.ax1, idx1);
    j["axis2"] = select(c.ax2, idx2);
    j["p"] = restrict_table(c.p, n2, idx1, idx2);
    j["g"] = restrict_table(c.g, n2, idx1, idx2);
    j["h"] = restrict_table(c.h, n2, idx1, idx2);
    j["q"] = restrict_table(c.q, n2, idx1, idx2);
    j["r"] = restrict_table(c.r, n2, idx1, idx2);
    j["phi"] = restrict_table(c.phi, n2, idx1, idx2);
    j["k"] = c.k;
    j["la"] = c.la;
    j["lb"] = c.lb;
    j["lm"] = c.lm;
    j["kl"] = c.kl;
    j["kg"] = c.kg;
    j["delta"] = c.delta;
    j["check_seed"] = c.check_seed;
    return j.dump();
}

} // namespace

FuzzSummary run_fuzz(const FuzzOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("run_fuzz: trials must be at least 1");
    if (opt.max_axis_points < 3)
        throw std::invalid_argument("run_fuzz: max_axis_points must be at least 3");
    if (!(opt.rel_tol >= 0.0)) throw std::invalid_argument("run_fuzz: rel_tol must be >= 0");
    std::vector<ScaleFamily> fams = opt.families;
    if (fams.empty())
        fams = {ScaleFamily::Integers, ScaleFamily::Uniform, ScaleFamily::Geometric,
                ScaleFamily::Random};

    Rng rng(opt.seed);
    FuzzSummary sum;
    sum.trials = opt.trials;
    for (const auto& f : fams) sum.axis_draws_per_family[family_name(f)] = 0;

    for (std::size_t trial = 0; trial < opt.trials; ++trial) {
        const FuzzCase c = random_case(rng, fams, opt.max_axis_points);
        ++sum.axis_draws_per_family[family_name(c.fam1)];
        ++sum.axis_draws_per_family[family_name(c.fam2)];

        std::vector<std::size_t> full1(c.ax1.size()), full2(c.ax2.size());
        std::iota(full1.begin(), full1.end(), 0);
        std::iota(full2.begin(), full2.end(), 0);

        for (FuzzCheck check : kAllChecks) {
            const CheckOutcome oc = run_check(check, c, materialize(c, full1, full2), opt.rel_tol);
            ++sum.checks_run;
            sum.hypothesis_failures += oc.hypothesis_failures;
            if (oc.violated) {
                ++sum.violations;
                auto holds = [&](const std::vector<std::size_t>& i1,
                                 const std::vector<std::size_t>& i2) {
                    return run_check(check, c, materialize(c, i1, i2), opt.rel_tol).violated;
                };
                auto [m1, m2] = shrink_grid(c.ax1.size(), c.ax2.size(), holds);
                sum.counterexamples.push_back(serialize_counterexample(c, check, m1, m2));
            }
        }
    }
    return sum;
}

std::string FuzzSummary::text() const {
    std::ostringstream os;
    os << "fuzz trials " << trials << "\n";
    os << "checks run " << checks_run << "\n";
    os << "violations " << violations << "\n";
    os << "hypothesis failures " << hypothesis_failures << "\n";
    os << "axis draws per family:";
    for (const auto& [name, count] : axis_draws_per_family) os << " " << name << "=" << count;
    os << "\n";
    for (const auto& ce : counterexamples) os << "counterexample " << ce << "\n";
    os << "RESULT " << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> shrink_grid(
    std::size_t n1, std::size_t n2,
    const std::function<bool(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>&
        predicate) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("shrink_grid: need at least 2x2");
    std::vector<std::size_t> idx1(n1), idx2(n2);
    std::iota(idx1.begin(), idx1.end(), 0);
    std::iota(idx2.begin(), idx2.end(), 0);

    auto pass_over = [&](std::vector<std::size_t>& own, const std::vector<std::size_t>& other,
                         bool own_is_first) {
        bool changed = false;
        std::size_t pos = 0;
        while (own.size() > 2 && pos < own.size()) {
            std::vector<std::size_t> trial = own;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(pos));
            const bool still = own_is_first ? predicate(trial, other) : predicate(other, trial);
            if (still) {
                own = std::move(trial);
                changed = true;
            } else {
                ++pos;
            }
        }
        return changed;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        if (pass_over(idx1, idx2, true)) changed = true;
        if (pass_over(idx2, idx1, false)) changed = true;
    }
    return {idx1, idx2};
}

ConvergeTable run_converge(const std::string& task, const std::vector<std::size_t>& levels) {
    if (levels.empty()) throw std::invalid_argument("run_converge: need at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 1)
            throw std::invalid_argument("run_converge: levels must be positive");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw std::invalid_argument("run_converge: levels must be strictly increasing");
    }
    const bool is_const = task == "const";
    const bool is_zero = task == "zero";
    const bool is_solve = task == "solve";
    if (!is_const && !is_zero && !is_solve)
        throw std::invalid_argument("run_converge: unknown task '" + task +
                                    "' (expected const, zero, or solve)");

    ConvergeTable tb;
    tb.task = task;
    double prev_value = 0.0, prev_err = 0.0;
    bool have_prev = false, have_prev_err = false;
    for (std::size_t n : levels) {
        GridPtr grid =
            make_grid(TimeScale::uniform(0.0, 1.0, n + 1), TimeScale::uniform(0.0, 1.0, n + 1));
        double value;
        if (is_solve) {
            Kernel K{[](double, double, double, double, double u) { return u; }};
            value = solve_exact(GridFunction::constant(grid, 1.0), K).value_at(1.0, 1.0);
        } else {
            BoundResult br = bound_const(1.0, GridFunction::constant(grid, is_const ? 0.5 : 0.0));
            value = br.bound->value_at(1.0, 1.0);
        }
        ConvergeRow row;
        row.n = n;
        row.value = value;
        if (is_const || is_zero) {
            row.error = std::abs(value - (is_const ? std::exp(0.25) : 1.0));
            row.has_error = true;
        } else if (have_prev) {
            row.error = std::abs(value - prev_value);
            row.has_error = true;
        }
        if (row.has_error && have_prev_err && row.error > 0.0 && prev_err > 0.0) {
            row.order = std::log2(prev_err / row.error);
            row.has_order = true;
        }
        if (row.has_error) {
            prev_err = row.error;
            have_prev_err = true;
        }
        prev_value = value;
        have_prev = true;
        tb.rows.push_back(row);
    }
    return tb;
}

std::string ConvergeTable::text() const {
    std::ostringstream os;
    os << "convergence task " << task << "\n";
    char line[120];
    std::snprintf(line, sizeof(line), "%8s  %-24s  %-24s  %s\n", "n", "value", "error", "order");
    os << line;
    for (const auto& r : rows) {
        const std::string err = r.has_error ? fmt17(r.error) : "-";
        std::string ord = "-";
        if (r.has_order) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.4f", r.order);
            ord = buf;
        }
        std::snprintf(line, sizeof(line), "%8zu  %-24s  %-24s  %s\n", r.n, fmt17(r.value).c_str(),
                      err.c_str(), ord.c_str());
        os << line;
    }
    return os.str();
}

} // namespace tsg
