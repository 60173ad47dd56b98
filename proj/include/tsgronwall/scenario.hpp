#pragma once

#include "tsgronwall/expr.hpp"
#include "tsgronwall/timescale.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace tsg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which checker a scenario drives. Each task solves the matching integral
/// equality exactly, evaluates the corresponding explicit bound, and
/// compares the two pointwise.
enum class Task { Const, Factor, Lipschitz, Affine, Apriori, Diff };

std::string task_name(Task task);
Task task_from_name(const std::string& name);

/// One axis of a scenario grid: an explicit point list or one of the three
/// generated families.
struct AxisSpec {
    enum class Type { Points, Uniform, Integers, Geometric };
    Type type = Type::Uniform;
    std::vector<double> points;
    double lo = 0.0, hi = 1.0;
    std::size_t n = 2;
    long ilo = 0, ihi = 1;
    double base = 2.0, first = 1.0;

    TimeScale build() const;
};

/// A complete verification scenario: grid, function bindings as expression
/// text, task selector, comparison tolerance, and the seed for sampled
/// hypothesis checks.
struct Scenario {
    AxisSpec axis1;
    AxisSpec axis2;
    std::map<std::string, Expr> functions;
    Task task = Task::Const;
    double rel_tol = 1e-9;
    std::uint64_t seed = 0;
};

/// Parses the JSON configuration document with keys axis1, axis2, functions,
/// task, tolerances, seed. Malformed documents throw ConfigError (expression
/// errors are wrapped with the function name and position).
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

/// Canonical serialization: sorted keys, expressions printed in canonical
/// form. parse_scenario(scenario_to_json(sc)) reproduces sc.
std::string scenario_to_json(const Scenario& sc);

/// 64-bit FNV-1a of the canonical serialization, as 16 hex digits. Stable
/// across whitespace and key-order variations of the input document.
std::string scenario_digest(const Scenario& sc);

} // namespace tsg
