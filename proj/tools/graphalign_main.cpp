// Command-line toolkit: synthetic graph-set generation, joint alignment
// (direct or accelerated), distributional evaluation, and perturbation
// sweeps. Every randomized subcommand requires an explicit --seed and is
// deterministic given --seed and --workers.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphalign/accel.hpp"
#include "graphalign/generators.hpp"
#include "graphalign/io.hpp"
#include "graphalign/metrics.hpp"
#include "graphalign/multi.hpp"
#include "graphalign/parallel.hpp"
#include "graphalign/rng.hpp"

namespace ga = graphalign;

namespace {

constexpr const char* kVersion = "0.1.0";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct GenParams {
    std::string family;
    std::vector<int> sizes{5, 15, 17};
    double p = 0.7;
    double inter_frac = 0.05;
    int rows = 6, cols = 6;
    int total_nodes = 950, attach = 5, hops = 1;
    int count = 1;
    double rho = 0.0;
    std::uint64_t seed = 0;
};

void add_family_options(CLI::App* cmd, GenParams& gp) {
    cmd->add_option("--family", gp.family, "community | grid | ego-ba")
        ->required()
        ->check(CLI::IsMember({"community", "grid", "ego-ba"}));
    cmd->add_option("--sizes", gp.sizes, "community sizes, e.g. 5,15,17")
        ->delimiter(',');
    cmd->add_option("--p", gp.p, "intra-community edge probability");
    cmd->add_option("--inter-frac", gp.inter_frac,
                    "inter-community edges as a fraction of |V|");
    cmd->add_option("--rows", gp.rows, "grid rows");
    cmd->add_option("--cols", gp.cols, "grid cols");
    cmd->add_option("--total-nodes", gp.total_nodes, "BA graph size before the ego cut");
    cmd->add_option("--attach", gp.attach, "BA attachments per node");
    cmd->add_option("--hops", gp.hops, "ego neighborhood radius");
}

// Paper-style set construction: one base graph, randomly permuted copies,
// then edge perturbation. Ego graphs are drawn independently instead.
ga::GraphSet build_set(const GenParams& gp) {
    if (gp.rho < 0.0 || gp.rho > 1.0)
        throw CLI::ValidationError("--perturb", "must lie in [0,1]");
    if (gp.count < 1) throw CLI::ValidationError("--count", "must be positive");

    ga::GraphSet set;
    set.name = gp.family;
    ga::Rng rng(ga::mix_seed(gp.seed, 0x6E5EEDULL));
    if (gp.family == "ego-ba") {
        for (int i = 0; i < gp.count; ++i) {
            auto g = ga::gen_ego_ba(gp.total_nodes, gp.attach, gp.hops, rng.next_u64());
            if (gp.rho > 0.0) g = ga::perturb(g, gp.rho, rng.next_u64());
            set.graphs.push_back(std::move(g));
        }
        return set;
    }
    const ga::LabeledGraph base =
        gp.family == "grid" ? ga::gen_grid(gp.rows, gp.cols)
                            : ga::gen_community(gp.sizes, gp.p, gp.inter_frac,
                                                ga::mix_seed(gp.seed, 0xBA5EULL));
    for (int i = 0; i < gp.count; ++i) {
        auto g = ga::permute_graph(
            base, ga::PermutationMatrix(rng.permutation(base.size())));
        if (gp.rho > 0.0) g = ga::perturb(g, gp.rho, rng.next_u64());
        set.graphs.push_back(std::move(g));
    }
    return set;
}

struct AlignOutcome {
    std::vector<ga::PermutationMatrix> permutations;
    ga::CenterEstimate center;
    double objective = 0.0;
    bool converged = true;
    std::vector<std::pair<std::string, double>> phases;
    double d0 = 0.0;
};

struct AlignParams {
    std::string method = "galign";
    std::string accel = "none";
    int group_size = 4;
    int clusters = 2;
    int workers = 1;
    int outer_iters = 300;
    int inner_iters = 1000;
    double tol = 1e-7;
    double tau = 0.5;
    double dummy_weight = 0.01;
    std::uint64_t seed = 0;
    std::string dump_stages;
};

ga::MultiAlignConfig make_inner(const AlignParams& ap) {
    ga::MultiAlignConfig cfg;
    cfg.method = ga::method_from_name(ap.method);
    cfg.outer_iters = ap.outer_iters;
    cfg.inner_iters = ap.inner_iters;
    cfg.tol = ap.tol;
    cfg.threshold = ap.tau;
    cfg.seed = ap.seed;
    cfg.workers = ap.workers;
    return cfg;
}

AlignOutcome run_alignment(const ga::GraphSet& input, const AlignParams& ap) {
    ga::GraphSet set = input.equal_sizes()
                           ? input
                           : ga::pad_with_dummies(input, ap.dummy_weight);
    AlignOutcome out;

    if (ap.accel == "none") {
        const auto t0 = Clock::now();
        auto res = ga::multi_align(set, make_inner(ap));
        out.phases.emplace_back("align", seconds_since(t0));
        out.permutations = std::move(res.permutations);
        out.center = std::move(res.center);
        out.objective = res.relaxed_objective;
        out.converged = res.converged;
        out.d0 = ga::d0_score(set, out.permutations, out.center.hard);
        return out;
    }

    ga::AccelConfig acfg;
    acfg.group_size = ap.group_size;
    acfg.clusters = ap.clusters;
    acfg.workers = ap.workers;
    acfg.inner = make_inner(ap);
    acfg.inner.workers = 1; // the group pool owns the parallelism
    acfg.seed = ap.seed;
    acfg.dummy_weight = ap.dummy_weight;

    ga::AccelReport report;
    report.capture_stages = !ap.dump_stages.empty();
    ga::LabeledGraph center;
    if (ap.accel == "g-parallel")
        center = ga::g_parallel(set, acfg, &report);
    else if (ap.accel == "c-serial")
        center = ga::c_serial(set, acfg, &report);
    else
        center = ga::cg_parallel(set, acfg, &report);
    for (int s = 0; s < static_cast<int>(report.stage_seconds.size()); ++s)
        out.phases.emplace_back("stage-" + std::to_string(s + 1),
                                report.stage_seconds[s]);
    if (!ap.dump_stages.empty())
        for (std::size_t s = 0; s < report.stage_centers.size(); ++s)
            ga::write_graphset(report.stage_centers[s],
                               ap.dump_stages + ".stage" + std::to_string(s + 1) +
                                   ".json");

    // Every graph is then aligned pairwise with the final center.
    if (center.size() > set.max_nodes()) {
        for (auto& g : set.graphs) g = ga::pad_graph(g, center.size(), ap.dummy_weight);
    }
    const auto t1 = Clock::now();
    ga::PairAlignConfig pw;
    pw.max_iters = ap.inner_iters;
    pw.tol = ap.tol;
    const int n = set.size();
    std::vector<ga::PermutationMatrix> perms(n);
    std::vector<double> dist(n, 0.0);
    std::vector<char> conv(n, 1);
    ga::parallel_for(n, ap.workers, [&](std::size_t i) {
        auto res = ga::frank_wolfe_align(set.graphs[i].adj, center.adj, nullptr, pw);
        perms[i] = ga::project_to_permutation(res.alignment);
        dist[i] = res.distance;
        conv[i] = res.converged ? 1 : 0;
    });
    out.phases.emplace_back("align-to-center", seconds_since(t1));
    out.permutations = std::move(perms);
    out.center = std::move(report.final_center);
    out.converged = report.converged;
    for (int i = 0; i < n; ++i) {
        out.objective += dist[i];
        out.converged = out.converged && (conv[i] != 0);
    }
    out.d0 = ga::d0_score(set, out.permutations, out.center.hard);
    return out;
}

ga::RunManifest make_manifest(const std::string& command, int argc, char** argv,
                              std::uint64_t seed,
                              std::vector<std::pair<std::string, double>> phases) {
    ga::RunManifest m;
    m.command = command;
    for (int i = 0; i < argc; ++i) m.argv.emplace_back(argv[i]);
    m.seed = seed;
    m.version = kVersion;
    for (const auto& [name, secs] : phases) m.alignment_seconds += secs;
    m.phases = std::move(phases);
    return m;
}

std::vector<ga::StatProfile> profiles_of(const ga::GraphSet& set, int workers) {
    std::vector<ga::StatProfile> out(set.size());
    ga::parallel_for(set.size(), workers, [&](std::size_t i) {
        out[i] = ga::graph_stats(set.graphs[i]);
    });
    return out;
}

void write_scores_csv(const std::string& path, const ga::ScoreReport& rep,
                      int n_generated, int n_reference, const double* d0) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "metric,value\n";
    for (int stat = 0; stat < 6; ++stat)
        out << "mmd2_" << ga::kStatisticNames[stat] << ','
            << ga::format_double(rep.mmd2_terms[stat]) << '\n';
    for (int stat = 0; stat < 6; ++stat)
        out << "mvr_" << ga::kStatisticNames[stat] << ','
            << ga::format_double(rep.mvr_terms[stat]) << '\n';
    out << "s_mmd," << ga::format_double(rep.s_mmd) << '\n';
    out << "s_mvr," << ga::format_double(rep.s_mvr) << '\n';
    out << "sigma," << ga::format_double(rep.sigma) << '\n';
    out << "n_generated," << n_generated << '\n';
    out << "n_reference," << n_reference << '\n';
    if (d0) out << "d0," << ga::format_double(*d0) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

int cmd_gen(const GenParams& gp, const std::string& out_path, int argc, char** argv) {
    auto set = build_set(gp);
    ga::write_graphset(set, out_path);
    ga::write_manifest(make_manifest("gen", argc, argv, gp.seed, {}),
                       out_path + ".manifest.json");
    std::cout << "wrote " << set.size() << " graphs to " << out_path << "\n";
    return 0;
}

int cmd_align(const std::string& input, const AlignParams& ap,
              const std::string& out_prefix, int argc, char** argv) {
    const auto set = ga::read_graphset(input);
    if (set.size() < 2)
        throw CLI::ValidationError("--input", "needs at least two graphs");
    auto outcome = run_alignment(set, ap);

    ga::AlignmentFile af;
    af.permutations = outcome.permutations;
    af.objective = outcome.objective;
    af.method = ap.method;
    ga::write_alignment(af, out_prefix + ".alignment.json");
    ga::write_center(outcome.center, out_prefix + ".center.json");
    ga::write_manifest(
        make_manifest("align", argc, argv, ap.seed, outcome.phases),
        out_prefix + ".manifest.json");
    std::cout << "method=" << ap.method << " accel=" << ap.accel
              << " objective=" << ga::format_double(outcome.objective)
              << " d0=" << ga::format_double(outcome.d0)
              << (outcome.converged ? "" : " (not converged)") << "\n";
    return outcome.converged ? 0 : 1;
}

int cmd_eval(const std::string& generated, const std::string& reference, double sigma,
             const std::string& out_path, const std::string& alignment_path,
             const std::string& center_path, const std::string& stats_out, int workers,
             int argc, char** argv) {
    auto gen_set = ga::read_graphset(generated);
    auto ref_set = ga::read_graphset(reference);
    if (gen_set.size() != ref_set.size()) {
        const int n = std::min(gen_set.size(), ref_set.size());
        std::cerr << "warning: set sizes differ (" << gen_set.size() << " vs "
                  << ref_set.size() << "); truncating to " << n << "\n";
        gen_set.graphs.resize(n);
        ref_set.graphs.resize(n);
    }
    if (gen_set.size() < 2)
        throw CLI::ValidationError("--generated", "MMD needs at least 2 graphs per set");

    const auto t0 = Clock::now();
    const auto gen_prof = profiles_of(gen_set, workers);
    const auto ref_prof = profiles_of(ref_set, workers);
    const auto rep = ga::score_sets(gen_prof, ref_prof, sigma);

    double d0 = 0.0;
    bool have_d0 = false;
    if (!alignment_path.empty() || !center_path.empty()) {
        if (alignment_path.empty() || center_path.empty())
            throw CLI::ValidationError("--alignment",
                                       "requires --center (and vice versa)");
        const auto af = ga::read_alignment(alignment_path);
        const auto center = ga::read_center(center_path);
        d0 = ga::d0_score(gen_set, af.permutations, center.hard);
        have_d0 = true;
    }

    write_scores_csv(out_path, rep, gen_set.size(), ref_set.size(),
                     have_d0 ? &d0 : nullptr);
    if (!stats_out.empty()) ga::write_stats_csv(gen_prof, stats_out);
    ga::write_manifest(make_manifest("eval", argc, argv, 0,
                                     {{"eval", seconds_since(t0)}}),
                       out_path + ".manifest.json");
    std::cout << "s_mmd=" << ga::format_double(rep.s_mmd)
              << " s_mvr=" << ga::format_double(rep.s_mvr);
    if (have_d0) std::cout << " d0=" << ga::format_double(d0);
    std::cout << "\n";
    return 0;
}

int cmd_perturb_sweep(GenParams gp, AlignParams ap, std::vector<double> rhos,
                      double sigma, const std::string& out_path, int argc,
                      char** argv) {
    if (rhos.empty()) throw CLI::ValidationError("--rho-list", "must be nonempty");
    for (double r : rhos)
        if (r < 0.0 || r > 1.0)
            throw CLI::ValidationError("--rho-list", "entries must lie in [0,1]");

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot open file for writing");
    out << "rho,s_mmd,s_mvr,d0_aligned,d0_identity,t_align_s\n";

    std::vector<std::pair<std::string, double>> phases;
    GenParams ref_params = gp;
    ref_params.rho = 0.0;
    ref_params.seed = ga::mix_seed(gp.seed, 0x4E4FULL);
    const auto ref_set = build_set(ref_params);
    const auto ref_prof = profiles_of(ref_set, ap.workers);

    for (double rho : rhos) {
        GenParams run = gp;
        run.rho = rho;
        run.seed = ga::mix_seed(gp.seed, static_cast<std::uint64_t>(
                                             std::llround(rho * 1e6)));
        auto set = build_set(run);

        const auto t0 = Clock::now();
        AlignParams run_ap = ap;
        run_ap.seed = ga::mix_seed(ap.seed, static_cast<std::uint64_t>(
                                                std::llround(rho * 1e6)));
        auto outcome = run_alignment(set, run_ap);
        const double t_align = seconds_since(t0);
        phases.emplace_back("rho=" + ga::format_double(rho), t_align);

        ga::GraphSet sized = set;
        if (!sized.equal_sizes()) sized = ga::pad_with_dummies(sized, ap.dummy_weight);
        std::vector<ga::PermutationMatrix> ids(
            sized.size(), ga::PermutationMatrix::identity(sized.graphs[0].size()));
        const double d0_id =
            ga::d0_score(sized, ids, ga::center_graph(sized, ap.tau).hard);

        const auto gen_prof = profiles_of(set, ap.workers);
        const auto rep = ga::score_sets(gen_prof, ref_prof, sigma);
        out << ga::format_double(rho) << ',' << ga::format_double(rep.s_mmd) << ','
            << ga::format_double(rep.s_mvr) << ',' << ga::format_double(outcome.d0)
            << ',' << ga::format_double(d0_id) << ',' << ga::format_double(t_align)
            << '\n';
    }
    if (!out) throw std::runtime_error(out_path + ": write failed");
    out.close();
    ga::write_manifest(make_manifest("perturb-sweep", argc, argv, gp.seed, phases),
                       out_path + ".manifest.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint graph alignment and evaluation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GenParams gp;
    AlignParams ap;
    std::string in_path, out_path, generated, reference;
    std::string alignment_path, center_path, stats_out;
    double sigma = 1.0;
    std::vector<double> rhos;

    auto* gen = app.add_subcommand("gen", "generate a synthetic graph set");
    add_family_options(gen, gp);
    gen->add_option("--count", gp.count, "number of graphs");
    gen->add_option("--perturb", gp.rho, "fraction of edges rewired per copy");
    gen->add_option("--seed", gp.seed, "RNG seed")->required();
    gen->add_option("--out", out_path, "output graph-set JSON")->required();

    auto* align = app.add_subcommand("align", "jointly align a graph set");
    align->add_option("--input", in_path, "graph-set JSON")->required();
    align->add_option("--method", ap.method, "galign | fermat")
        ->check(CLI::IsMember({"galign", "fermat"}));
    align->add_option("--accel", ap.accel, "none | g-parallel | c-serial | cg-parallel")
        ->check(CLI::IsMember({"none", "g-parallel", "c-serial", "cg-parallel"}));
    align->add_option("--K", ap.group_size, "group size for grouped schemes");
    align->add_option("--c", ap.clusters, "cluster count for coarsening schemes");
    align->add_option("--workers", ap.workers, "worker pool size");
    align->add_option("--outer-iters", ap.outer_iters, "outer iteration budget");
    align->add_option("--inner-iters", ap.inner_iters, "Frank-Wolfe budget");
    align->add_option("--tol", ap.tol, "relative convergence tolerance");
    align->add_option("--tau", ap.tau, "center binarization threshold");
    align->add_option("--dummy-weight", ap.dummy_weight, "padding edge weight");
    align->add_option("--dump-stages", ap.dump_stages,
                      "prefix for per-stage center dumps");
    align->add_option("--seed", ap.seed, "RNG seed")->required();
    align->add_option("--out", out_path, "output prefix")->required();

    auto* eval = app.add_subcommand("eval", "score a generated set against a reference");
    eval->add_option("--generated", generated, "generated graph-set JSON")->required();
    eval->add_option("--reference", reference, "reference graph-set JSON")->required();
    eval->add_option("--sigma", sigma, "kernel bandwidth");
    eval->add_option("--alignment", alignment_path, "alignment JSON (enables d0)");
    eval->add_option("--center", center_path, "center JSON (enables d0)");
    eval->add_option("--stats-out", stats_out, "per-graph statistics CSV");
    eval->add_option("--workers", ap.workers, "worker pool size");
    eval->add_option("--out", out_path, "scores CSV")->required();

    auto* sweep = app.add_subcommand("perturb-sweep",
                                     "alignment quality across perturbation levels");
    add_family_options(sweep, gp);
    sweep->add_option("--count", gp.count, "graphs per set");
    sweep->add_option("--rho-list", rhos, "perturbation fractions")
        ->required()
        ->delimiter(',');
    sweep->add_option("--method", ap.method, "galign | fermat")
        ->check(CLI::IsMember({"galign", "fermat"}));
    sweep->add_option("--accel", ap.accel, "none | g-parallel | c-serial | cg-parallel")
        ->check(CLI::IsMember({"none", "g-parallel", "c-serial", "cg-parallel"}));
    sweep->add_option("--K", ap.group_size, "group size");
    sweep->add_option("--c", ap.clusters, "cluster count");
    sweep->add_option("--workers", ap.workers, "worker pool size");
    sweep->add_option("--outer-iters", ap.outer_iters, "outer iteration budget");
    sweep->add_option("--inner-iters", ap.inner_iters, "Frank-Wolfe budget");
    sweep->add_option("--tol", ap.tol, "relative convergence tolerance");
    sweep->add_option("--tau", ap.tau, "center binarization threshold");
    sweep->add_option("--sigma", sigma, "kernel bandwidth");
    sweep->add_option("--seed", gp.seed, "RNG seed")->required();
    sweep->add_option("--out", out_path, "sweep CSV")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gp, out_path, argc, argv);
        if (align->parsed()) return cmd_align(in_path, ap, out_path, argc, argv);
        if (eval->parsed())
            return cmd_eval(generated, reference, sigma, out_path, alignment_path,
                            center_path, stats_out, ap.workers, argc, argv);
        ap.seed = gp.seed;
        return cmd_perturb_sweep(gp, ap, rhos, sigma, out_path, argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
