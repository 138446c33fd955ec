#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtrep/errors.hpp"
#include "gtrep/patterns.hpp"
#include "gtrep/pyramid.hpp"
#include "gtrep/repbuild.hpp"
#include "gtrep/verify.hpp"

namespace gtrep {

// Insertion-ordered JSON throughout, so identical inputs serialize to
// byte-identical output.
using json = nlohmann::ordered_json;

inline json weights_json(const HighestWeightSpec& spec) {
    json j;
    j["pyramid"] = spec.pyramid().row_lengths();
    json lam = json::object();
    for (int i = 1; i <= spec.pyramid().height(); ++i) {
        std::vector<std::string> row;
        for (int k = 1; k <= spec.pyramid().row(i); ++k)
            row.push_back(to_string(spec.entry(i, k)));
        lam[std::to_string(i)] = row;
    }
    j["lambda"] = lam;
    return j;
}

/// Weight input schema:
///   { "pyramid": [p_1, ..., p_n], "lambda": { "<i>": ["<rational>", ...] } }
/// An explicit pyramid (from the command line) replaces the one in the file.
inline HighestWeightSpec parse_weights_json(const json& j,
                                            const std::vector<int>* pyramid_override =
                                                nullptr) {
    if (!j.is_object()) throw InvalidInput("weights file: top level must be an object");
    std::vector<int> rows;
    if (pyramid_override) {
        rows = *pyramid_override;
    } else {
        if (!j.contains("pyramid") || !j["pyramid"].is_array())
            throw InvalidInput("weights file: missing \"pyramid\" array");
        for (const auto& v : j["pyramid"]) {
            if (!v.is_number_integer())
                throw InvalidInput("weights file: pyramid entries must be integers");
            rows.push_back(v.get<int>());
        }
    }
    Pyramid pyr(rows);
    if (!j.contains("lambda") || !j["lambda"].is_object())
        throw InvalidInput("weights file: missing \"lambda\" object");
    std::vector<std::vector<Rat>> grid(static_cast<std::size_t>(pyr.height()));
    for (int i = 1; i <= pyr.height(); ++i) {
        const std::string key = std::to_string(i);
        if (!j["lambda"].contains(key))
            throw InvalidInput("weights file: missing lambda row \"" + key + "\"");
        const auto& row = j["lambda"][key];
        if (!row.is_array())
            throw InvalidInput("weights file: lambda row \"" + key +
                               "\" must be an array");
        for (const auto& v : row) {
            if (!v.is_string())
                throw InvalidInput(
                    "weights file: lambda entries must be rational strings");
            grid[static_cast<std::size_t>(i - 1)].push_back(
                rat_from_string(v.get<std::string>()));
        }
    }
    return HighestWeightSpec::validate(std::move(pyr), std::move(grid));
}

inline HighestWeightSpec load_weights_file(const std::string& path,
                                           const std::vector<int>* pyramid_override =
                                               nullptr) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open weights file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("weights file " + path + ": " + e.what());
    }
    return parse_weights_json(j, pyramid_override);
}

/// Pattern schema: { "columns": [ { "k": k, "triangle": [[row n], ...] } ] }
/// with triangle rows from the top row down and rationals as strings.
inline json pattern_json(const GTPattern& p) {
    const auto& pyr = p.spec().pyramid();
    const int n = pyr.height();
    json cols = json::array();
    for (int k = 1; k <= pyr.columns(); ++k) {
        json tri = json::array();
        for (int r = n; r >= pyr.column_start_row(k); --r) {
            std::vector<std::string> row;
            for (int i = pyr.column_start_row(k); i <= r; ++i)
                row.push_back(to_string(p.entry(r, i, k)));
            tri.push_back(row);
        }
        cols.push_back(json{{"k", k}, {"triangle", tri}});
    }
    return json{{"columns", cols}};
}

inline json basis_json(const Representation& rep) {
    json j;
    j["pyramid"] = rep.pyramid().row_lengths();
    j["lambda"] = weights_json(rep.spec())["lambda"];
    j["dim"] = rep.basis().dimension();
    json pats = json::array();
    for (std::size_t t = 0; t < rep.basis().dimension(); ++t)
        pats.push_back(pattern_json(rep.basis().pattern(t)));
    j["patterns"] = pats;
    return j;
}

/// Matrix export schema:
///   { "op": "A|B|C|tau_low|tau_high", "r": r, "dim": d,
///     "coeffs": [ { "power": j, "entries": [[row, col, "num/den"], ...] } ] }
/// Rows/columns are 0-based basis indices; zero coefficient matrices are
/// omitted.
inline json matrix_poly_json(const std::string& op, int r, int dim,
                             const MatrixPoly& m) {
    json j;
    j["op"] = op;
    j["r"] = r;
    j["dim"] = dim;
    json coeffs = json::array();
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (m[p].is_zero()) continue;
        json entries = json::array();
        m[p].for_each_entry([&](int row, int col, const Rat& v) {
            entries.push_back(json::array({row, col, to_string(v)}));
        });
        coeffs.push_back(json{{"power", p}, {"entries", entries}});
    }
    j["coeffs"] = coeffs;
    return j;
}

/// Report schema:
///   { "suite": name, "config": { "pyramid": ..., "weights": ... },
///     "results": [ { "id", "params", "status", "witness"? } ],
///     "elapsed_ms": t }
inline json report_json(const VerificationReport& rep, const HighestWeightSpec& spec) {
    json j;
    j["suite"] = rep.suite;
    const json w = weights_json(spec);
    j["config"] = json{{"pyramid", w["pyramid"]}, {"weights", w["lambda"]}};
    json results = json::array();
    for (const auto& r : rep.results) {
        json e;
        e["id"] = r.id;
        json params = json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        e["params"] = params;
        e["status"] = r.pass ? "pass" : "fail";
        if (r.observed) e["observed"] = true;
        if (!r.witness.empty()) {
            json w2 = json::object();
            for (const auto& [k, v] : r.witness) w2[k] = v;
            e["witness"] = w2;
        }
        results.push_back(e);
    }
    j["results"] = results;
    j["elapsed_ms"] = rep.elapsed_ms;
    return j;
}

inline json branch_json(const Representation& rep,
                        const std::vector<BranchingDatum>& data) {
    json j;
    j["pyramid"] = rep.pyramid().row_lengths();
    j["lambda"] = weights_json(rep.spec())["lambda"];
    j["module_dim"] = rep.basis().dimension();
    json branches = json::array();
    std::size_t total = 0;
    for (const auto& d : data) {
        json b;
        json mu = json::object();
        for (std::size_t i = 0; i < d.mu.size(); ++i) {
            std::vector<std::string> row;
            for (const Rat& v : d.mu[i]) row.push_back(to_string(v));
            mu[std::to_string(i + 1)] = row;
        }
        b["mu"] = mu;
        b["dim"] = d.sub_dimension;
        total += d.sub_dimension;
        json zeta = json::array();
        for (const auto& [idx, v] : d.zeta.entries())
            zeta.push_back(json::array({idx, to_string(v)}));
        b["zeta"] = zeta;
        branches.push_back(b);
    }
    j["branches"] = branches;
    j["branch_dim_sum"] = total;
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace gtrep
