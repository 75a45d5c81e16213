#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphalign/graph.hpp"
#include "graphalign/metrics.hpp"
#include "graphalign/multi.hpp"

namespace graphalign {

// Graph-set JSON:
//   {"name": str, "graphs": [{"n": int, "edges": [[u,v] | [u,v,w]],
//                             "features": [[...]] | null}]}
// Edges store u<v only; the weight is omitted when it is 1. Malformed files
// raise std::runtime_error with a field diagnostic.
GraphSet read_graphset(const std::string& path);
void write_graphset(const GraphSet& set, const std::string& path);

// Alignment JSON: {"frame": 0, "permutations": [[...],...],
//                  "objective": float, "method": "galign"|"fermat"}
struct AlignmentFile {
    std::vector<PermutationMatrix> permutations;
    double objective = 0.0;
    std::string method;
};
AlignmentFile read_alignment(const std::string& path);
void write_alignment(const AlignmentFile& a, const std::string& path);

// Center JSON: graph-set format holding the hard center, plus "soft" and
// "threshold".
void write_center(const CenterEstimate& center, const std::string& path);
CenterEstimate read_center(const std::string& path);

// Stats CSV: one row per graph; distribution statistics as mean and standard
// deviation, raw lists in a JSON sidecar next to the CSV.
void write_stats_csv(const std::vector<StatProfile>& profiles, const std::string& path);

// Run manifest, emitted next to every output artifact.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::pair<std::string, double>> phases; // name -> seconds
    double alignment_seconds = 0.0;                     // t_a
};
void write_manifest(const RunManifest& m, const std::string& path);

std::string format_double(double v); // shortest round-trip decimal

} // namespace graphalign
