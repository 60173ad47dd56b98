#include "tsgronwall/scenario.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tsg {

using nlohmann::json;

namespace {

const char* task_names[] = {"const", "factor", "lipschitz", "affine", "apriori", "diff"};

json axis_to_json(const AxisSpec& a) {
    json j;
    switch (a.type) {
        case AxisSpec::Type::Points:
            j["type"] = "points";
            j["points"] = a.points;
            break;
        case AxisSpec::Type::Uniform:
            j["type"] = "uniform";
            j["lo"] = a.lo;
            j["hi"] = a.hi;
            j["n"] = a.n;
            break;
        case AxisSpec::Type::Integers:
            j["type"] = "integers";
            j["lo"] = a.ilo;
            j["hi"] = a.ihi;
            break;
        case AxisSpec::Type::Geometric:
            j["type"] = "geometric";
            j["base"] = a.base;
            j["first"] = a.first;
            j["n"] = a.n;
            break;
    }
    return j;
}

void require_keys(const json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional, const std::string& where) {
    for (const auto& k : required)
        if (!j.contains(k)) throw ConfigError(where + ": missing key '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        bool known = false;
        for (const auto& r : required) known = known || r == k;
        for (const auto& o : optional) known = known || o == k;
        if (!known) throw ConfigError(where + ": unknown key '" + k + "'");
    }
}

double number_at(const json& j, const std::string& key, const std::string& where) {
    if (!j.at(key).is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
    return j.at(key).get<double>();
}

AxisSpec axis_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": must be an object");
    if (!j.contains("type") || !j.at("type").is_string())
        throw ConfigError(where + ": missing string key 'type'");
    const std::string type = j.at("type").get<std::string>();
    AxisSpec a;
    if (type == "points") {
        require_keys(j, {"type", "points"}, {}, where);
        if (!j.at("points").is_array()) throw ConfigError(where + ": 'points' must be an array");
        a.type = AxisSpec::Type::Points;
        for (const auto& v : j.at("points")) {
            if (!v.is_number()) throw ConfigError(where + ": 'points' entries must be numbers");
            a.points.push_back(v.get<double>());
        }
    } else if (type == "uniform") {
        require_keys(j, {"type", "lo", "hi", "n"}, {}, where);
        a.type = AxisSpec::Type::Uniform;
        a.lo = number_at(j, "lo", where);
        a.hi = number_at(j, "hi", where);
        a.n = j.at("n").get<std::size_t>();
    } else if (type == "integers") {
        require_keys(j, {"type", "lo", "hi"}, {}, where);
        a.type = AxisSpec::Type::Integers;
        a.ilo = j.at("lo").get<long>();
        a.ihi = j.at("hi").get<long>();
    } else if (type == "geometric") {
        require_keys(j, {"type", "base", "first", "n"}, {}, where);
        a.type = AxisSpec::Type::Geometric;
        a.base = number_at(j, "base", where);
        a.first = number_at(j, "first", where);
        a.n = j.at("n").get<std::size_t>();
    } else {
        throw ConfigError(where + ": unknown axis type '" + type + "'");
    }
    return a;
}

} // namespace

std::string task_name(Task task) { return task_names[static_cast<int>(task)]; }

Task task_from_name(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == task_names[i]) return static_cast<Task>(i);
    throw ConfigError("unknown task '" + name +
                      "' (expected const, factor, lipschitz, affine, apriori, or diff)");
}

TimeScale AxisSpec::build() const {
    switch (type) {
        case Type::Points: return TimeScale(points);
        case Type::Uniform: return TimeScale::uniform(lo, hi, n);
        case Type::Integers: return TimeScale::integers(ilo, ihi);
        case Type::Geometric: return TimeScale::geometric(base, first, n);
    }
    throw ConfigError("invalid axis spec");
}

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    require_keys(j, {"axis1", "axis2", "functions", "task"}, {"tolerances", "seed"}, "config");

    Scenario sc;
    sc.axis1 = axis_from_json(j.at("axis1"), "axis1");
    sc.axis2 = axis_from_json(j.at("axis2"), "axis2");

    if (!j.at("functions").is_object())
        throw ConfigError("'functions' must be an object of name -> expression text");
    for (auto it = j.at("functions").begin(); it != j.at("functions").end(); ++it) {
        if (!it.value().is_string())
            throw ConfigError("functions." + it.key() + ": expression must be a string");
        try {
            sc.functions[it.key()] = parse_expr(it.value().get<std::string>());
        } catch (const ParseError& e) {
            throw ConfigError("functions." + it.key() + ": " + e.what() + " at offset " +
                              std::to_string(e.offset()));
        }
    }

    if (!j.at("task").is_string()) throw ConfigError("'task' must be a string");
    sc.task = task_from_name(j.at("task").get<std::string>());

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
        require_keys(t, {}, {"rel"}, "tolerances");
        if (t.contains("rel")) {
            sc.rel_tol = number_at(t, "rel", "tolerances");
            if (!(sc.rel_tol >= 0.0)) throw ConfigError("tolerances.rel must be >= 0");
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw ConfigError("'seed' must be a nonnegative integer");
        sc.seed = j.at("seed").get<std::uint64_t>();
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["axis1"] = axis_to_json(sc.axis1);
    j["axis2"] = axis_to_json(sc.axis2);
    json fns = json::object();
    for (const auto& [name, e] : sc.functions) fns[name] = e.str();
    j["functions"] = fns;
    j["task"] = task_name(sc.task);
    j["tolerances"] = json{{"rel", sc.rel_tol}};
    j["seed"] = sc.seed;
    return j.dump();
}

std::string scenario_digest(const Scenario& sc) {
    const std::string canon = scenario_to_json(sc);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace tsg
