#include "cutlab/mps_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace cutlab {

namespace {

struct MpsRow {
    char kind;  // 'N', 'L', 'G', 'E'
    std::string name;
};

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

}  // namespace

MipInstance instance_from_mps(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;

    std::string name = "mps";
    std::vector<MpsRow> rows;
    std::string obj_row;
    std::map<std::string, int> row_index;  // constraint rows only
    std::map<std::string, int> col_index;
    std::vector<std::string> col_names;
    std::vector<bool> col_integer;
    // (row, col) -> coef, col -> obj coef
    std::vector<std::map<int, double>> col_entries;
    std::vector<double> obj_coef;
    std::map<std::string, double> rhs_map;
    struct BoundChange {
        std::string type, col;
        double value;
        bool has_value;
    };
    std::vector<BoundChange> bounds;
    bool integer_mode = false;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '*') continue;  // comment
        const bool header = line[0] != ' ' && line[0] != '\t';
        const auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (header) {
            section = toks[0];
            if (section == "NAME") {
                if (toks.size() > 1) name = toks[1];
            } else if (section == "OBJSENSE") {
                // value may follow on the same or the next line
                if (toks.size() > 1 && toks[1] != "MIN" && toks[1] != "MINIMIZE")
                    throw ModelError("MPS reader supports minimization only");
                if (toks.size() == 1) section = "OBJSENSE_BODY";
            } else if (section == "RANGES") {
                throw ModelError("MPS RANGES section is not supported");
            } else if (section != "ROWS" && section != "COLUMNS" && section != "RHS" &&
                       section != "BOUNDS" && section != "ENDATA") {
                throw ModelError("unsupported MPS section '" + section + "'");
            }
            if (section == "ENDATA") break;
            continue;
        }

        if (section == "OBJSENSE_BODY") {
            if (toks[0] != "MIN" && toks[0] != "MINIMIZE")
                throw ModelError("MPS reader supports minimization only");
            continue;
        }
        if (section == "ROWS") {
            if (toks.size() != 2) throw ModelError("malformed ROWS line: " + line);
            const char kind = std::toupper(toks[0][0]);
            if (kind == 'N') {
                if (obj_row.empty()) obj_row = toks[1];
                continue;
            }
            if (kind != 'L' && kind != 'G' && kind != 'E')
                throw ModelError("unsupported row type in: " + line);
            row_index[toks[1]] = static_cast<int>(rows.size());
            rows.push_back({kind, toks[1]});
        } else if (section == "COLUMNS") {
            if (toks.size() >= 3 && toks[2] == "'INTORG'") {
                integer_mode = true;
                continue;
            }
            if (toks.size() >= 3 && toks[2] == "'INTEND'") {
                integer_mode = false;
                continue;
            }
            if (toks.size() != 3 && toks.size() != 5)
                throw ModelError("malformed COLUMNS line: " + line);
            const std::string& col = toks[0];
            if (!col_index.count(col)) {
                col_index[col] = static_cast<int>(col_names.size());
                col_names.push_back(col);
                col_integer.push_back(integer_mode);
                col_entries.emplace_back();
                obj_coef.push_back(0.0);
            }
            const int c = col_index[col];
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                const std::string& rname = toks[k];
                const double v = std::stod(toks[k + 1]);
                if (rname == obj_row) {
                    obj_coef[c] = v;
                } else {
                    auto it = row_index.find(rname);
                    if (it == row_index.end())
                        throw ModelError("COLUMNS references unknown row '" + rname + "'");
                    col_entries[c][it->second] = v;
                }
            }
        } else if (section == "RHS") {
            // first token is the rhs set name
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                if (toks[k] == obj_row) continue;  // objective offset ignored
                if (!row_index.count(toks[k]))
                    throw ModelError("RHS references unknown row '" + toks[k] + "'");
                rhs_map[toks[k]] = std::stod(toks[k + 1]);
            }
        } else if (section == "BOUNDS") {
            if (toks.size() < 3) throw ModelError("malformed BOUNDS line: " + line);
            BoundChange b;
            b.type = toks[0];
            b.col = toks[2];
            b.has_value = toks.size() > 3;
            b.value = b.has_value ? std::stod(toks[3]) : 0.0;
            bounds.push_back(b);
        } else {
            throw ModelError("data line outside a known section: " + line);
        }
    }

    if (obj_row.empty()) throw ModelError("MPS file has no objective (N) row");
    const int n = static_cast<int>(col_names.size());
    const int m = static_cast<int>(rows.size());
    if (n == 0) throw ModelError("MPS file has no columns");

    MipInstance inst;
    inst.name = name;
    inst.objective = obj_coef;
    inst.rows = Matrix(m, n);
    inst.rhs.assign(m, 0.0);
    inst.row_kind.assign(m, RowKind::LE);
    for (int c = 0; c < n; ++c)
        for (const auto& [r, v] : col_entries[c]) inst.rows(r, c) = v;
    for (int r = 0; r < m; ++r) {
        auto it = rhs_map.find(rows[r].name);
        double b = it != rhs_map.end() ? it->second : 0.0;
        if (rows[r].kind == 'G') {
            for (int c = 0; c < n; ++c) inst.rows(r, c) = -inst.rows(r, c);
            b = -b;
        }
        inst.rhs[r] = b;
        inst.row_kind[r] = rows[r].kind == 'E' ? RowKind::EQ : RowKind::LE;
    }

    inst.lower.assign(n, 0.0);
    inst.upper.assign(n, kInf);
    for (const BoundChange& b : bounds) {
        auto it = col_index.find(b.col);
        if (it == col_index.end())
            throw ModelError("BOUNDS references unknown column '" + b.col + "'");
        const int c = it->second;
        if (b.type == "UP" || b.type == "UI") {
            if (!b.has_value) throw ModelError("bound UP needs a value");
            inst.upper[c] = b.value;
        } else if (b.type == "LO" || b.type == "LI") {
            if (!b.has_value) throw ModelError("bound LO needs a value");
            inst.lower[c] = b.value;
        } else if (b.type == "FX") {
            if (!b.has_value) throw ModelError("bound FX needs a value");
            inst.lower[c] = b.value;
            inst.upper[c] = b.value;
        } else if (b.type == "BV") {
            inst.lower[c] = 0.0;
            inst.upper[c] = 1.0;
            col_integer[c] = true;
        } else if (b.type == "MI") {
            inst.lower[c] = -kInf;
        } else if (b.type == "PL") {
            inst.upper[c] = kInf;
        } else {
            throw ModelError("unsupported bound type '" + b.type + "'");
        }
        if (b.type == "UI" || b.type == "LI") col_integer[c] = true;
    }

    for (int c = 0; c < n; ++c)
        if (col_integer[c]) inst.integer_set.push_back(c);
    inst.validate();
    return inst;
}

MipInstance load_mps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return instance_from_mps(ss.str());
}

}  // namespace cutlab
