#pragma once

#include "tsgronwall/bounds.hpp"
#include "tsgronwall/scenario.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tsg {

struct PointRow {
    double x = 0.0;
    double y = 0.0;
    double actual = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct ReportSummary {
    double max_margin = 0.0;
    double min_margin = 0.0;
    std::size_t violation_count = 0;
    double tightness = 0.0;
};

/// Full outcome of one verification run. When a hypothesis fails the bound
/// is refused: rows stay empty and refused is set. violation_count equals
/// the number of rows with margin < -rel_tol, where
/// margin = (bound - actual) / max(|bound|, tiny).
struct BoundReport {
    std::string digest;
    Task task = Task::Const;
    double rel_tol = 1e-9;
    bool refused = false;
    std::vector<PointRow> rows;
    std::vector<HypothesisCheck> hypotheses;
    std::vector<std::string> notes;
    ReportSummary summary;

    std::size_t hypothesis_failures() const {
        std::size_t n = 0;
        for (const auto& h : hypotheses)
            if (!h.passed) ++n;
        return n;
    }
    bool ok() const { return !refused && summary.violation_count == 0 && hypothesis_failures() == 0; }
};

/// Builds the scenario grid and functions, solves the matching integral
/// equality exactly, evaluates the bound, and compares pointwise.
/// Hypothesis failures are reported, not thrown; malformed scenarios throw
/// ConfigError.
BoundReport run_verify(const Scenario& sc);

/// Per-point CSV rows `x,y,actual,bound,margin`, 17 significant digits.
void write_csv(std::ostream& os, const BoundReport& report);

/// Plain-text summary block (digest, hypothesis results, margins,
/// violations, tightness). Deterministic for a given report.
void write_summary(std::ostream& os, const BoundReport& report);

/// Grid families the fuzzer draws axes from.
enum class ScaleFamily { Integers, Uniform, Geometric, Random };

std::string family_name(ScaleFamily f);
ScaleFamily family_from_name(const std::string& name);

struct FuzzOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::vector<ScaleFamily> families;  // empty means all four
    double rel_tol = 1e-9;
    std::size_t max_axis_points = 20;
};

struct FuzzSummary {
    std::size_t trials = 0;
    std::size_t checks_run = 0;
    std::size_t violations = 0;
    std::size_t hypothesis_failures = 0;
    std::map<std::string, std::size_t> axis_draws_per_family;
    std::vector<std::string> counterexamples;  // minimal shrunk scenarios

    bool ok() const { return violations == 0 && hypothesis_failures == 0; }
    /// Byte-stable rendering for a fixed seed (no timing, no addresses).
    std::string text() const;
};

/// Per trial: draws a random grid (3 to max_axis_points points per axis
/// from the chosen family), random admissible function data, and a random
/// admissible kernel, then checks every explicit bound against its exactly
/// solved equality. Violations are shrunk by greedily dropping grid points
/// while the violation persists and recorded in counterexamples.
FuzzSummary run_fuzz(const FuzzOptions& opt);

/// Greedy counterexample shrinker: starting from the full index sets
/// {0..n1-1} x {0..n2-1}, repeatedly drops single axis indices (keeping at
/// least two per axis) as long as predicate(idx1, idx2) stays true, until no
/// single removal preserves it. predicate must be deterministic and must
/// hold on the full sets.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> shrink_grid(
    std::size_t n1, std::size_t n2,
    const std::function<bool(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>&
        predicate);

struct ConvergeRow {
    std::size_t n = 0;       // subintervals per axis on [0,1]^2
    double value = 0.0;
    double error = 0.0;      // vs oracle, or vs previous level for "solve"
    double order = 0.0;      // log2 of successive error ratio
    bool has_error = false;
    bool has_order = false;
};

struct ConvergeTable {
    std::string task;
    std::vector<ConvergeRow> rows;
    std::string text() const;
};

/// Refinement study on uniform grids of [0,1]^2 with n subintervals per
/// axis. Tasks: "const" evaluates the constant-free-term bound at (1,1)
/// with p = 0.5, k = 1 against the closed-form limit exp(0.25); "solve"
/// evaluates the exact solution of u = 1 + triple integral of u at (1,1)
/// and reports successive differences.
ConvergeTable run_converge(const std::string& task, const std::vector<std::size_t>& levels);

} // namespace tsg
