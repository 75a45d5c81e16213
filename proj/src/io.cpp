#include "graphalign/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace graphalign {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void dump_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

[[noreturn]] void fail(const std::string& path, const std::string& where,
                       const std::string& what) {
    throw std::runtime_error(path + ": " + where + ": " + what);
}

LabeledGraph parse_graph(const json& jg, const std::string& path,
                         const std::string& where) {
    if (!jg.is_object()) fail(path, where, "graph entry must be an object");
    if (!jg.contains("n") || !jg["n"].is_number_integer())
        fail(path, where, "missing integer field 'n'");
    const int n = jg["n"].get<int>();
    if (n < 1) fail(path, where, "'n' must be positive");
    Matrix adj = Matrix::Zero(n, n);
    if (!jg.contains("edges") || !jg["edges"].is_array())
        fail(path, where, "missing array field 'edges'");
    int idx = 0;
    for (const auto& je : jg["edges"]) {
        const std::string ewhere = where + ".edges[" + std::to_string(idx++) + "]";
        if (!je.is_array() || (je.size() != 2 && je.size() != 3))
            fail(path, ewhere, "edge must be [u,v] or [u,v,w]");
        if (!je[0].is_number_integer() || !je[1].is_number_integer())
            fail(path, ewhere, "endpoints must be integers");
        const int u = je[0].get<int>();
        const int v = je[1].get<int>();
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail(path, ewhere, "endpoint out of range");
        if (u >= v) fail(path, ewhere, "edges must satisfy u<v");
        double w = 1.0;
        if (je.size() == 3) {
            if (!je[2].is_number()) fail(path, ewhere, "weight must be a number");
            w = je[2].get<double>();
        }
        if (!(w >= 0.0 && w <= 1.0)) fail(path, ewhere, "weight outside [0,1]");
        if (adj(u, v) != 0.0) fail(path, ewhere, "duplicate edge");
        adj(u, v) = adj(v, u) = w;
    }
    std::optional<Matrix> feats;
    if (jg.contains("features") && !jg["features"].is_null()) {
        const auto& jf = jg["features"];
        if (!jf.is_array() || static_cast<int>(jf.size()) != n)
            fail(path, where + ".features", "must be null or one row per node");
        const int f = jf.empty() ? 0 : static_cast<int>(jf[0].size());
        feats = Matrix::Zero(n, f);
        for (int i = 0; i < n; ++i) {
            if (!jf[i].is_array() || static_cast<int>(jf[i].size()) != f)
                fail(path, where + ".features[" + std::to_string(i) + "]",
                     "ragged feature rows");
            for (int k = 0; k < f; ++k) {
                if (!jf[i][k].is_number())
                    fail(path, where + ".features[" + std::to_string(i) + "]",
                         "features must be numbers");
                (*feats)(i, k) = jf[i][k].get<double>();
            }
        }
    }
    try {
        return LabeledGraph::from_adjacency(std::move(adj), std::move(feats));
    } catch (const std::exception& e) {
        fail(path, where, e.what());
    }
}

json graph_to_json(const LabeledGraph& g) {
    json jg;
    jg["n"] = g.size();
    json edges = json::array();
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v) {
            const double w = g.adj(u, v);
            if (w == 0.0) continue;
            if (w == 1.0)
                edges.push_back(json::array({u, v}));
            else
                edges.push_back(json::array({u, v, w}));
        }
    jg["edges"] = std::move(edges);
    if (g.features) {
        json rows = json::array();
        for (int i = 0; i < g.features->rows(); ++i) {
            json row = json::array();
            for (int k = 0; k < g.features->cols(); ++k)
                row.push_back((*g.features)(i, k));
            rows.push_back(std::move(row));
        }
        jg["features"] = std::move(rows);
    } else {
        jg["features"] = nullptr;
    }
    return jg;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(path, where, "expected a nonempty matrix");
    const int r = static_cast<int>(j.size());
    const int c = static_cast<int>(j[0].size());
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != c)
            fail(path, where, "ragged matrix rows");
        for (int k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

} // namespace

GraphSet read_graphset(const std::string& path) {
    const json j = load_json(path);
    if (!j.is_object() || !j.contains("graphs") || !j["graphs"].is_array())
        fail(path, "$", "expected object with a 'graphs' array");
    GraphSet set;
    set.name = j.value("name", "");
    int idx = 0;
    for (const auto& jg : j["graphs"])
        set.graphs.push_back(parse_graph(jg, path, "graphs[" + std::to_string(idx++) + "]"));
    return set;
}

void write_graphset(const GraphSet& set, const std::string& path) {
    json j;
    j["name"] = set.name;
    json graphs = json::array();
    for (const auto& g : set.graphs) graphs.push_back(graph_to_json(g));
    j["graphs"] = std::move(graphs);
    dump_json(j, path);
}

AlignmentFile read_alignment(const std::string& path) {
    const json j = load_json(path);
    AlignmentFile a;
    if (!j.is_object() || !j.contains("permutations") || !j["permutations"].is_array())
        fail(path, "$", "expected object with a 'permutations' array");
    for (const auto& jp : j["permutations"]) {
        PermutationMatrix p(jp.get<std::vector<int>>());
        p.validate();
        a.permutations.push_back(std::move(p));
    }
    a.objective = j.value("objective", 0.0);
    a.method = j.value("method", "");
    return a;
}

void write_alignment(const AlignmentFile& a, const std::string& path) {
    json j;
    j["frame"] = 0;
    json perms = json::array();
    for (const auto& p : a.permutations) perms.push_back(p.perm);
    j["permutations"] = std::move(perms);
    j["objective"] = a.objective;
    j["method"] = a.method;
    dump_json(j, path);
}

void write_center(const CenterEstimate& center, const std::string& path) {
    json j;
    j["name"] = "center";
    j["graphs"] = json::array({graph_to_json(center.hard)});
    j["soft"] = matrix_to_json(center.soft);
    j["threshold"] = center.threshold;
    dump_json(j, path);
}

CenterEstimate read_center(const std::string& path) {
    const json j = load_json(path);
    if (!j.is_object() || !j.contains("graphs") || !j["graphs"].is_array() ||
        j["graphs"].size() != 1)
        fail(path, "$", "center file must hold exactly one graph");
    CenterEstimate c;
    c.hard = parse_graph(j["graphs"][0], path, "graphs[0]");
    if (!j.contains("soft")) fail(path, "$", "missing 'soft' matrix");
    c.soft = matrix_from_json(j["soft"], path, "soft");
    c.threshold = j.value("threshold", 0.5);
    return c;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) { // prefer the shortest representation that round-trips
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

void write_stats_csv(const std::vector<StatProfile>& profiles, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "graph,degree_mean,degree_std,clustering_mean,clustering_std,"
           "assortativity,triangles,wedges,claws\n";
    auto mean_std = [](const std::vector<double>& v) {
        double mu = 0.0;
        for (double x : v) mu += x;
        mu /= v.empty() ? 1.0 : static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mu) * (x - mu);
        var /= v.empty() ? 1.0 : static_cast<double>(v.size());
        return std::pair<double, double>(mu, std::sqrt(var));
    };
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& s = profiles[i];
        const auto [dmu, dsd] = mean_std(s.degree_dist);
        const auto [cmu, csd] = mean_std(s.clustering_dist);
        out << i << ',' << format_double(dmu) << ',' << format_double(dsd) << ','
            << format_double(cmu) << ',' << format_double(csd) << ','
            << format_double(s.assortativity) << ',' << s.triangles << ','
            << s.wedges << ',' << s.claws << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");

    json sidecar;
    sidecar["degree_dist"] = json::array();
    sidecar["clustering_dist"] = json::array();
    for (const auto& s : profiles) {
        sidecar["degree_dist"].push_back(s.degree_dist);
        sidecar["clustering_dist"].push_back(s.clustering_dist);
    }
    dump_json(sidecar, path + ".dists.json");
}

void write_manifest(const RunManifest& m, const std::string& path) {
    json j;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["seed"] = m.seed;
    j["version"] = m.version;
    json phases = json::array();
    for (const auto& [name, secs] : m.phases)
        phases.push_back(json{{"name", name}, {"seconds", secs}});
    j["phases"] = std::move(phases);
    j["alignment_seconds"] = m.alignment_seconds;
    dump_json(j, path);
}

} // namespace graphalign
