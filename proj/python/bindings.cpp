#include "tsgronwall/calculus.hpp"
#include "tsgronwall/expr.hpp"
#include "tsgronwall/harness.hpp"
#include "tsgronwall/scenario.hpp"
#include "tsgronwall/timescale.hpp"
#include "tsgronwall/volterra.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tsg;

namespace {

GridPtr grid_of(const std::vector<double>& axis1, const std::vector<double>& axis2) {
    return make_grid(TimeScale(axis1), TimeScale(axis2));
}

GridFunction gf(const std::vector<double>& axis1, const std::vector<double>& axis2,
                std::vector<double> values) {
    return GridFunction(grid_of(axis1, axis2), std::move(values));
}

Kernel kernel_of(const std::function<double(double, double, double, double, double)>& f) {
    return Kernel{f};
}

py::dict bound_to_py(const BoundResult& br) {
    py::dict d;
    d["bound"] = br.bound ? py::cast(br.bound->values()) : py::object(py::none());
    d["hypotheses"] = py::cast(br.hypotheses);
    d["notes"] = py::cast(br.notes);
    d["ok"] = br.ok();
    return d;
}

py::dict report_to_py(const BoundReport& rep) {
    std::ostringstream summary, csv;
    write_summary(summary, rep);
    write_csv(csv, rep);
    py::dict d;
    d["digest"] = rep.digest;
    d["task"] = task_name(rep.task);
    d["refused"] = rep.refused;
    d["violations"] = rep.summary.violation_count;
    d["tightness"] = rep.summary.tightness;
    d["hypotheses"] = py::cast(rep.hypotheses);
    d["notes"] = py::cast(rep.notes);
    d["summary"] = summary.str();
    d["csv"] = csv.str();
    d["ok"] = rep.ok();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Explicit Gronwall-type bounds on finite two-variable time scales";

    py::class_<HypothesisCheck>(m, "HypothesisCheck")
        .def_readonly("name", &HypothesisCheck::name)
        .def_readonly("passed", &HypothesisCheck::passed)
        .def_readonly("worst_violation", &HypothesisCheck::worst_violation)
        .def("__repr__", [](const HypothesisCheck& h) {
            return "HypothesisCheck(name='" + h.name + "', passed=" +
                   (h.passed ? "True" : "False") + ")";
        });

    py::class_<TimeScale>(m, "TimeScale")
        .def(py::init<std::vector<double>>())
        .def_static("uniform", &TimeScale::uniform)
        .def_static("integers", &TimeScale::integers)
        .def_static("geometric", &TimeScale::geometric)
        .def("points", &TimeScale::points)
        .def("sigma", &TimeScale::sigma)
        .def("rho", &TimeScale::rho)
        .def("mu", &TimeScale::mu)
        .def("__len__", &TimeScale::size);

    m.def("cumulative_double",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& values) {
              return cumulative_double(gf(ax1, ax2, values)).values();
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("values"),
          "Row-major cumulative double integral from the minimal corner.");

    m.def("cumulative_triple",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& values) {
              return cumulative_triple(gf(ax1, ax2, values)).values();
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("values"),
          "Row-major cumulative triple integral (twice along axis 1).");

    m.def("ts_exp_axis1",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& values) {
              return ts_exp_axis1(gf(ax1, ax2, values)).values();
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("values"),
          "Time-scale exponential along axis 1.");

    m.def("solve_exact",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& g,
             const std::function<double(double, double, double, double, double)>& K) {
              return solve_exact(gf(ax1, ax2, g), kernel_of(K)).values();
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("g"), py::arg("kernel"),
          "Exact forward-substitution solution of u = g + triple integral of "
          "K(x, y, eta, tau, u).");

    m.def("picard_iterate",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& g,
             const std::function<double(double, double, double, double, double)>& K,
             const std::vector<double>& u0, double tol, std::size_t max_iter) {
              PicardResult r =
                  picard_iterate(gf(ax1, ax2, g), kernel_of(K), gf(ax1, ax2, u0), tol, max_iter);
              return py::make_tuple(r.u.values(), r.iterations);
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("g"), py::arg("kernel"), py::arg("u0"),
          py::arg("tol"), py::arg("max_iter"),
          "Whole-grid fixed-point iteration; returns (values, sweeps that moved the iterate).");

    m.def("residual_sup",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& u, const std::vector<double>& g,
             const std::function<double(double, double, double, double, double)>& K) {
              return residual_sup(gf(ax1, ax2, u), gf(ax1, ax2, g), kernel_of(K));
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("u"), py::arg("g"), py::arg("kernel"),
          "Sup-norm defect of u against the equation.");

    m.def("zero_section",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& g,
             const std::function<double(double, double, double, double, double)>& K) {
              return zero_section(gf(ax1, ax2, g), kernel_of(K)).values();
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("g"), py::arg("kernel"),
          "g plus the triple integral of the kernel at u = 0.");

    m.def("bound_const",
          [](double k, const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& p) { return bound_to_py(bound_const(k, gf(ax1, ax2, p))); },
          py::arg("k"), py::arg("axis1"), py::arg("axis2"), py::arg("p"),
          "Bound k * E for u <= k + triple integral of p*u.");

    m.def("bound_factor",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& q, const std::vector<double>& p) {
              return bound_to_py(bound_factor(gf(ax1, ax2, q), gf(ax1, ax2, p)));
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("q"), py::arg("p"),
          "Bound q * E for a positive nondecreasing free factor q.");

    m.def("bound_lipschitz",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& g, const std::vector<double>& h,
             const std::function<double(double, double, double)>& L,
             const std::function<double(double, double, double)>& H, double tol,
             std::uint64_t seed) {
              SampleOptions opt;
              opt.tol = tol;
              opt.seed = seed;
              return bound_to_py(bound_lipschitz(gf(ax1, ax2, g), gf(ax1, ax2, h),
                                                 LipschitzPair{L, H}, opt));
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("g"), py::arg("h"), py::arg("L"),
          py::arg("H"), py::arg("tol") = 1e-9, py::arg("seed") = 0x51bababb1e5eedULL,
          "Bound g + h*C*E for a sampled monotone Lipschitz kernel slope pair.");

    m.def("bound_affine",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& g, const std::vector<double>& h,
             const std::vector<double>& p) {
              return bound_to_py(bound_affine(gf(ax1, ax2, g), gf(ax1, ax2, h), gf(ax1, ax2, p)));
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("g"), py::arg("h"), py::arg("p"),
          "Bound g + h*C*E for u <= g + h * triple integral of p*u.");

    m.def("apriori_bound",
          [](const std::vector<double>& ax1, const std::vector<double>& ax2,
             const std::vector<double>& pEnv, const std::vector<double>& q,
             const std::vector<double>& r) {
              return bound_to_py(
                  apriori_bound(gf(ax1, ax2, pEnv), gf(ax1, ax2, q), gf(ax1, ax2, r)));
          },
          py::arg("axis1"), py::arg("axis2"), py::arg("pEnv"), py::arg("q"), py::arg("r"),
          "A-priori bound on |u| from the kernel Lipschitz factorization.");

    m.def("two_solution_bound",
          [](double eps1, double eps2, const std::vector<double>& ax1,
             const std::vector<double>& ax2, const std::vector<double>& q,
             const std::vector<double>& r) {
              return bound_to_py(two_solution_bound(eps1, eps2, gf(ax1, ax2, q), gf(ax1, ax2, r)));
          },
          py::arg("eps1"), py::arg("eps2"), py::arg("axis1"), py::arg("axis2"), py::arg("q"),
          py::arg("r"),
          "Bound on the gap between two approximate solutions.");

    m.def("eval_expression",
          [](const std::string& text, const std::map<std::string, double>& env) {
              return parse_expr(text).eval(env);
          },
          py::arg("text"), py::arg("env"),
          "Parse and evaluate an expression over variables x, y, s, t, u, v.");

    m.def("canonical_form",
          [](const std::string& text) { return parse_expr(text).str(); }, py::arg("text"),
          "Canonical printed form of an expression (parses back to the same tree).");

    m.def("verify_json",
          [](const std::string& text) { return report_to_py(run_verify(parse_scenario(text))); },
          py::arg("config_json"),
          "Run one verification scenario from a JSON document.");

    m.def("verify_file",
          [](const std::string& path) { return report_to_py(run_verify(load_scenario_file(path))); },
          py::arg("path"), "Run one verification scenario from a JSON file.");

    m.def("scenario_digest",
          [](const std::string& text) { return scenario_digest(parse_scenario(text)); },
          py::arg("config_json"), "Canonical 16-hex-digit digest of a scenario document.");

    m.def("fuzz",
          [](std::size_t trials, std::uint64_t seed, const std::vector<std::string>& families,
             double tol, std::size_t max_points) {
              FuzzOptions opt;
              opt.trials = trials;
              opt.seed = seed;
              for (const auto& f : families) opt.families.push_back(family_from_name(f));
              opt.rel_tol = tol;
              opt.max_axis_points = max_points;
              FuzzSummary sum = run_fuzz(opt);
              py::dict d;
              d["text"] = sum.text();
              d["ok"] = sum.ok();
              d["violations"] = sum.violations;
              d["hypothesis_failures"] = sum.hypothesis_failures;
              d["counterexamples"] = py::cast(sum.counterexamples);
              return d;
          },
          py::arg("trials") = 100, py::arg("seed") = 1,
          py::arg("families") = std::vector<std::string>{}, py::arg("tol") = 1e-9,
          py::arg("max_points") = 20,
          "Random grids and data against every bound; returns a summary dict.");

    m.def("converge",
          [](const std::string& task, const std::vector<std::size_t>& levels) {
              return run_converge(task, levels).text();
          },
          py::arg("task"), py::arg("levels"),
          "Refinement study on uniform grids; returns the table text.");
}
