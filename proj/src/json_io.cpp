#include "cutlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cutlab {

namespace {

using nlohmann::json;

constexpr double kInfSentinel = 1e30;

double bound_from_json(const json& v) {
    if (v.is_null()) return kInf;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ModelError("unrecognized bound string '" + s + "'");
    }
    const double d = v.get<double>();
    if (std::isnan(d)) throw ModelError("NaN bound in instance file");
    if (d >= kInfSentinel) return kInf;
    if (d <= -kInfSentinel) return -kInf;
    return d;
}

double bound_to_json(double b) {
    if (b >= kInf) return kInfSentinel;
    if (b <= -kInf) return -kInfSentinel;
    return b;
}

Vec finite_vector(const json& arr, const char* what) {
    Vec v;
    v.reserve(arr.size());
    for (const auto& e : arr) {
        const double d = e.get<double>();
        if (!std::isfinite(d))
            throw ModelError(std::string("non-finite entry in ") + what);
        v.push_back(d);
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

namespace {
MipInstance instance_from_parsed(const json& j);
}

MipInstance instance_from_json(const std::string& text) {
    try {
        return instance_from_parsed(json::parse(text));
    } catch (const json::exception& e) {
        throw ModelError(std::string("invalid instance JSON: ") + e.what());
    }
}

namespace {
MipInstance instance_from_parsed(const json& j) {
    MipInstance inst;
    inst.name = j.value("name", "unnamed");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    if (n <= 0 || m < 0) throw ModelError("instance dimensions must satisfy n > 0, m >= 0");

    inst.objective = finite_vector(j.at("objective"), "objective");
    if (static_cast<int>(inst.objective.size()) != n)
        throw ModelError("objective length != n");

    const auto& rows = j.at("rows");
    if (static_cast<int>(rows.size()) != m) throw ModelError("rows count != m");
    inst.rows = Matrix(m, n);
    for (int i = 0; i < m; ++i) {
        const Vec r = finite_vector(rows[i], "rows");
        if (static_cast<int>(r.size()) != n)
            throw ModelError("row " + std::to_string(i) + " length != n");
        for (int c = 0; c < n; ++c) inst.rows(i, c) = r[c];
    }

    inst.rhs = finite_vector(j.at("rhs"), "rhs");
    if (static_cast<int>(inst.rhs.size()) != m) throw ModelError("rhs length != m");

    const auto& kinds = j.at("row_kind");
    if (static_cast<int>(kinds.size()) != m) throw ModelError("row_kind length != m");
    for (const auto& k : kinds) {
        const std::string s = k.get<std::string>();
        if (s == "LE")
            inst.row_kind.push_back(RowKind::LE);
        else if (s == "EQ")
            inst.row_kind.push_back(RowKind::EQ);
        else
            throw ModelError("unknown row kind '" + s + "'");
    }

    const auto& lo = j.at("lower");
    const auto& up = j.at("upper");
    if (static_cast<int>(lo.size()) != n || static_cast<int>(up.size()) != n)
        throw ModelError("bound arrays must have length n");
    for (const auto& v : lo) inst.lower.push_back(bound_from_json(v));
    for (const auto& v : up) inst.upper.push_back(bound_from_json(v));

    for (const auto& v : j.at("integer")) inst.integer_set.push_back(v.get<int>());
    std::sort(inst.integer_set.begin(), inst.integer_set.end());
    inst.integer_set.erase(std::unique(inst.integer_set.begin(), inst.integer_set.end()),
                           inst.integer_set.end());

    inst.validate();
    return inst;
}
}  // namespace

std::string instance_to_json(const MipInstance& inst, int indent) {
    json j;
    j["name"] = inst.name;
    j["n"] = inst.n();
    j["m"] = inst.m();
    j["objective"] = inst.objective;
    json rows = json::array();
    for (int i = 0; i < inst.m(); ++i) {
        json r = json::array();
        for (int c = 0; c < inst.n(); ++c) r.push_back(inst.rows(i, c));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["rhs"] = inst.rhs;
    json kinds = json::array();
    for (RowKind k : inst.row_kind) kinds.push_back(k == RowKind::LE ? "LE" : "EQ");
    j["row_kind"] = std::move(kinds);
    json lo = json::array(), up = json::array();
    for (double b : inst.lower) lo.push_back(bound_to_json(b));
    for (double b : inst.upper) up.push_back(bound_to_json(b));
    j["lower"] = std::move(lo);
    j["upper"] = std::move(up);
    j["integer"] = inst.integer_set;
    return j.dump(indent);
}

MipInstance load_instance(const std::string& path) {
    return instance_from_json(read_file(path));
}

void save_instance(const MipInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write file: " + path);
    out << instance_to_json(inst) << "\n";
}

Incumbent incumbent_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(std::string("invalid incumbent JSON: ") + e.what());
    }
    Incumbent inc;
    inc.point = finite_vector(j.at("point"), "incumbent point");
    inc.value = j.value("value", 0.0);
    inc.source = IncumbentSource::Provided;
    return inc;
}

Incumbent load_incumbent(const std::string& path) {
    return incumbent_from_json(read_file(path));
}

}  // namespace cutlab
