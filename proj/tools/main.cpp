// Command-line harness for the perturbed-digraph tree-embedding library.
// Exit codes: 0 success, 1 phase/containment failure, 2 invalid input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpd/absorption.hpp"
#include "rpd/almost_embed.hpp"
#include "rpd/concentration.hpp"
#include "rpd/oracle.hpp"
#include "rpd/pipeline.hpp"
#include "rpd/random_models.hpp"
#include "rpd/rng.hpp"
#include "rpd/text_io.hpp"
#include "rpd/tree_gen.hpp"
#include "rpd/util.hpp"

using json = nlohmann::json;
using namespace rpd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPhaseFailure = 1;
constexpr int kExitInvalidInput = 2;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    require(f.good(), "cannot open for writing: " + path);
    f << content;
}

void emit_digraph(const Digraph& d, const std::string& out) {
    if (out.empty())
        write_digraph(std::cout, d);
    else
        save_digraph(out, d);
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.delta = j.at("delta").get<int>();
    cfg.c = j.at("c").get<double>();
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.gamma = j.value("gamma", 0.0);
    cfg.tau = j.value("tau", -1L);
    cfg.master_seed = j.value("seed", 0ULL);
    if (j.contains("policy")) {
        cfg.policy.backtrack_budget = j["policy"].value("backtrack_budget", 100000L);
        cfg.policy.max_restarts = j["policy"].value("max_restarts", 20);
    }
    if (j.contains("tree")) cfg.tree.kind = j["tree"].value("kind", "random");
    if (j.contains("base"))
        cfg.base.style = base_style_from_string(j["base"].value("style", "doubled-bipartite"));
    cfg.full_sweep_max_n = j.value("full_sweep_max_n", 400);
    return cfg;
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "cannot open config: " + path);
    return json::parse(f);
}

std::vector<PipelineConfig> grid_from_json(const json& j) {
    PipelineConfig base_cfg = config_from_json(j);
    std::vector<PipelineConfig> cells{base_cfg};
    if (!j.contains("grid")) return cells;
    const json& grid = j["grid"];
    auto expand = [&](const std::string& key, auto setter) {
        if (!grid.contains(key)) return;
        std::vector<PipelineConfig> next;
        for (const auto& cell : cells)
            for (const auto& value : grid[key]) {
                PipelineConfig cfg = cell;
                setter(cfg, value);
                next.push_back(cfg);
            }
        cells = std::move(next);
    };
    expand("c", [](PipelineConfig& cfg, const json& v) { cfg.c = v.get<double>(); });
    expand("n", [](PipelineConfig& cfg, const json& v) { cfg.n = v.get<int>(); });
    expand("alpha", [](PipelineConfig& cfg, const json& v) { cfg.alpha = v.get<double>(); });
    expand("delta", [](PipelineConfig& cfg, const json& v) { cfg.delta = v.get<int>(); });
    expand("epsilon", [](PipelineConfig& cfg, const json& v) { cfg.epsilon = v.get<double>(); });
    return cells;
}

void write_trial_witnesses(const TrialRecord& rec, const PipelineConfig& cfg,
                           const std::string& dir, int trial) {
    std::filesystem::create_directories(dir);
    const std::string stem = dir + "/trial_" + std::to_string(trial);
    save_digraph(stem + "_random.txt", trial_random_part(cfg, trial));
    if (rec.prefix_witness) save_embedding(stem + "_prefix_embedding.txt", *rec.prefix_witness);
    if (rec.witness) save_embedding(stem + "_embedding.txt", *rec.witness);
    write_text(stem + "_record.txt", rec.canonical_string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning oriented trees in randomly perturbed digraphs"};
    app.require_subcommand(1);

    // gen-base
    auto* gen_base = app.add_subcommand("gen-base", "dense base digraph with semidegree >= alpha*n");
    int gb_n = 0;
    double gb_alpha = 0.0;
    std::string gb_style = "doubled-bipartite", gb_out;
    std::uint64_t gb_seed = 0;
    gen_base->add_option("--n", gb_n)->required();
    gen_base->add_option("--alpha", gb_alpha)->required();
    gen_base->add_option("--style", gb_style);
    gen_base->add_option("--seed", gb_seed);
    gen_base->add_option("--out", gb_out);

    // gen-tree
    auto* gen_tree = app.add_subcommand("gen-tree", "bounded-degree oriented tree");
    int gt_n = 0, gt_delta = 3;
    std::string gt_kind = "random", gt_out;
    std::uint64_t gt_seed = 0;
    gen_tree->add_option("--n", gt_n)->required();
    gen_tree->add_option("--kind", gt_kind);
    gen_tree->add_option("--delta", gt_delta);
    gen_tree->add_option("--seed", gt_seed);
    gen_tree->add_option("--out", gt_out);

    // gen-random
    auto* gen_random = app.add_subcommand("gen-random", "binomial or mirrored random digraph");
    int gr_n = 0;
    double gr_p = -1.0, gr_c = -1.0;
    bool gr_mirrored = false;
    std::string gr_out;
    std::uint64_t gr_seed = 0;
    gen_random->add_option("--n", gr_n)->required();
    gen_random->add_option("--p", gr_p);
    gen_random->add_option("--c", gr_c);
    gen_random->add_flag("--mirrored", gr_mirrored);
    gen_random->add_option("--seed", gr_seed);
    gen_random->add_option("--out", gr_out);

    // embed
    auto* embed = app.add_subcommand("embed", "almost-embedding of a tree");
    std::string em_tree, em_host, em_random, em_out;
    bool em_random_only = false;
    std::uint64_t em_seed = 0;
    long em_budget = 100000;
    int em_restarts = 20, em_root = 0;
    embed->add_option("--tree", em_tree)->required();
    embed->add_option("--host", em_host)->required();
    embed->add_option("--random", em_random);
    embed->add_flag("--random-only", em_random_only);
    embed->add_option("--seed", em_seed);
    embed->add_option("--backtrack", em_budget);
    embed->add_option("--restarts", em_restarts);
    embed->add_option("--root", em_root);
    embed->add_option("--out", em_out);

    // absorb-count
    auto* absorb = app.add_subcommand("absorb-count", "absorbing-star counts over all triples");
    std::string ab_tree, ab_graph, ab_embedding, ab_csv;
    double ab_gamma = 0.0;
    int ab_cap = -1;
    absorb->add_option("--tree", ab_tree)->required();
    absorb->add_option("--graph", ab_graph)->required();
    absorb->add_option("--embedding", ab_embedding)->required();
    absorb->add_option("--gamma", ab_gamma);
    absorb->add_option("--cap", ab_cap);
    absorb->add_option("--csv", ab_csv);

    // concentration
    auto* conc = app.add_subcommand("concentration", "uniform-injection good-star experiment");
    int co_n = 0, co_delta = 3, co_trials = 2000, co_triples = 64, co_adversarial = 8;
    double co_alpha = 0.3, co_gamma = 0.0;
    std::string co_style = "doubled-bipartite", co_csv, co_json;
    std::uint64_t co_seed = 0;
    conc->add_option("--n", co_n)->required();
    conc->add_option("--alpha", co_alpha);
    conc->add_option("--delta", co_delta);
    conc->add_option("--gamma", co_gamma);
    conc->add_option("--trials", co_trials);
    conc->add_option("--triples", co_triples);
    conc->add_option("--adversarial", co_adversarial);
    bool co_full_sweep = false;
    conc->add_flag("--full-sweep", co_full_sweep);
    conc->add_option("--base-style", co_style);
    conc->add_option("--seed", co_seed);
    conc->add_option("--csv", co_csv);
    conc->add_option("--json", co_json);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact containment for small hosts");
    std::string or_tree, or_graph, or_witness;
    int or_limit = 12;
    oracle->add_option("--tree", or_tree)->required();
    oracle->add_option("--graph", or_graph)->required();
    oracle->add_option("--limit", or_limit);
    oracle->add_option("--witness", or_witness);

    // run
    auto* run = app.add_subcommand("run", "one end-to-end trial from a JSON config");
    std::string rn_config, rn_csv, rn_witness_dir;
    int rn_trial = 0;
    run->add_option("--config", rn_config)->required();
    run->add_option("--trial", rn_trial);
    run->add_option("--csv", rn_csv);
    run->add_option("--witness-dir", rn_witness_dir);

    // sweep
    auto* sw = app.add_subcommand("sweep", "grid of cells, many trials per cell");
    std::string sw_config, sw_csv, sw_trials_csv;
    int sw_parallelism = 0, sw_trials = 0;
    sw->add_option("--config", sw_config)->required();
    sw->add_option("--csv", sw_csv);
    sw->add_option("--trials-csv", sw_trials_csv);
    sw->add_option("--trials", sw_trials);
    sw->add_option("--parallelism", sw_parallelism);

    // verify
    auto* verify = app.add_subcommand("verify", "check an embedding file against a graph");
    std::string vf_tree, vf_graph, vf_embedding, vf_random;
    bool vf_random_only = false;
    verify->add_option("--tree", vf_tree)->required();
    verify->add_option("--graph", vf_graph)->required();
    verify->add_option("--embedding", vf_embedding)->required();
    verify->add_option("--random", vf_random);
    verify->add_flag("--random-only", vf_random_only);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_base->parsed()) {
            emit_digraph(dense_base(gb_n, gb_alpha, base_style_from_string(gb_style), gb_seed),
                         gb_out);
            return kExitOk;
        }

        if (gen_tree->parsed()) {
            OrientedTree t = gt_kind == "random"
                                 ? random_tree(gt_n, gt_delta, gt_seed)
                                 : family_tree(tree_family_from_string(gt_kind), gt_n);
            if (gt_out.empty())
                write_tree(std::cout, t);
            else
                save_tree(gt_out, t);
            return kExitOk;
        }

        if (gen_random->parsed()) {
            require((gr_p >= 0.0) != (gr_c >= 0.0), "give exactly one of --p or --c");
            const double p = gr_p >= 0.0 ? gr_p : gr_c / gr_n;
            emit_digraph(gr_mirrored ? sample_mirrored_digraph(gr_n, p, gr_seed)
                                     : sample_binomial_digraph(gr_n, p, gr_seed),
                         gr_out);
            return kExitOk;
        }

        if (embed->parsed()) {
            OrientedTree t = load_tree(em_tree);
            Digraph host = load_digraph(em_host);
            std::optional<Digraph> random_part;
            if (!em_random.empty()) random_part = load_digraph(em_random);
            const Digraph& search = random_part ? *random_part : host;
            EdgeOrdering ord = valid_ordering(t, em_root);
            AlmostEmbedResult res =
                embed_almost(t, ord, search, em_seed, RetryPolicy{em_budget, em_restarts});
            if (!res.success()) {
                std::cerr << "embedding failed; deepest prefix " << res.deepest_prefix_edges
                          << " of " << t.edge_count() << " edges\n";
                return kExitPhaseFailure;
            }
            const Digraph verify_target =
                random_part && !em_random_only ? graph_union(host, *random_part) : search;
            const bool ok = verify_embedding(t, verify_target, *res.embedding);
            if (!em_out.empty()) save_embedding(em_out, *res.embedding);
            std::cout << "embedded " << t.order() << " vertices; verification "
                      << (ok ? "passed" : "failed") << "\n";
            return ok ? kExitOk : kExitPhaseFailure;
        }

        if (absorb->parsed()) {
            OrientedTree t = load_tree(ab_tree);
            Digraph g = load_digraph(ab_graph);
            Embedding phi = load_embedding(ab_embedding, t.order(), g.order());
            StarPack pack = greedy_star_pack(t);
            if (ab_gamma > 0.0)
                pack = truncate_pack(pack, static_cast<int>(ceil_count(ab_gamma * g.order())),
                                     t.order());
            if (ab_cap >= 0) pack = truncate_pack(pack, ab_cap, t.order());
            std::vector<char> used(pack.stars.size(), 0);
            std::string csv = "u,w,sign,count\n";
            long min_count = pack.size() + 1;
            Triple argmin;
            for (int u = 0; u < g.order(); ++u)
                for (int w = 0; w < g.order(); ++w)
                    for (Sign sign : {Sign::plus, Sign::minus}) {
                        const long cnt = count_absorbing(pack, used, phi, g, u, sign, w);
                        csv += std::to_string(u) + "," + std::to_string(w) + "," +
                               sign_char(sign) + "," + std::to_string(cnt) + "\n";
                        if (cnt < min_count) {
                            min_count = cnt;
                            argmin = Triple{u, sign, w};
                        }
                    }
            if (ab_csv.empty())
                std::cout << csv;
            else
                write_text(ab_csv, csv);
            std::cout << "pack " << pack.size() << " stars; min " << min_count << " at ("
                      << argmin.u << "," << sign_char(argmin.sign) << "," << argmin.w << ")\n";
            return kExitOk;
        }

        if (conc->parsed()) {
            const double gamma = co_gamma > 0.0
                                     ? co_gamma
                                     : 1.0 / (2.0 * (static_cast<double>(co_delta) * co_delta + 1.0));
            Digraph base = dense_base(co_n, co_alpha, base_style_from_string(co_style),
                                      derive_seed(co_seed, "base"));
            OrientedTree tp = random_tree(co_n, co_delta, derive_seed(co_seed, "tree"));
            StarPack pack = greedy_star_pack(tp);
            GoodStarParams params = GoodStarParams::make(co_n, co_alpha, gamma, co_delta);
            std::vector<Triple> triples;
            if (co_full_sweep) {
                require(co_n <= 80, "full triple sweep is limited to n <= 80");
                for (int u = 0; u < co_n; ++u)
                    for (int w = 0; w < co_n; ++w)
                        for (Sign sign : {Sign::plus, Sign::minus})
                            triples.push_back(Triple{u, sign, w});
            } else {
                triples = sample_triples(co_n, co_triples, co_adversarial,
                                         derive_seed(co_seed, "triples"));
            }
            ConcentrationReport rep = run_concentration_experiment(
                base, tp, pack, params, triples, co_trials, derive_seed(co_seed, "mc"));

            if (!co_csv.empty()) {
                std::string csv = "triple_id,trial,count\n";
                StarPack capped = truncate_pack(pack, params.n_cap, tp.order());
                const int set_size = static_cast<int>(floor_count(co_alpha * co_n / 3.0));
                std::vector<DesignatedSets> sets;
                for (const Triple& tr : triples)
                    sets.push_back(pick_designated_sets(base, tr.u, tr.sign, tr.w, set_size));
                for (int trial = 0; trial < co_trials; ++trial) {
                    Embedding phi = sample_uniform_injection(
                        tp.order(), co_n,
                        derive_seed(derive_seed(co_seed, "mc"), "injection",
                                    static_cast<std::uint64_t>(trial)));
                    for (std::size_t ti = 0; ti < triples.size(); ++ti)
                        csv += std::to_string(ti) + "," + std::to_string(trial) + "," +
                               std::to_string(count_good(capped, phi, sets[ti])) + "\n";
                }
                write_text(co_csv, csv);
            }

            json summary{{"n", rep.n},
                         {"trials", rep.trials},
                         {"stars", rep.star_count},
                         {"expected", rep.expected},
                         {"azuma_bound", rep.azuma_bound},
                         {"measured_max_diff", rep.measured_max_diff},
                         {"c4_estimate", rep.c4_estimate},
                         {"crude_diff_bound", rep.crude_diff_bound},
                         {"diff_exceeds_crude", rep.diff_exceeds_crude},
                         {"min_observed", rep.min_observed},
                         {"max_deviation_prob", rep.max_deviation_prob},
                         {"median", rep.quantile(0.5)}};
            json per_triple = json::array();
            for (const TripleStats& ts : rep.per_triple)
                per_triple.push_back({{"u", ts.triple.u},
                                      {"sign", std::string(1, sign_char(ts.triple.sign))},
                                      {"w", ts.triple.w},
                                      {"mean", ts.mean},
                                      {"stddev", ts.stddev},
                                      {"min", ts.min_count},
                                      {"deviation_prob", ts.deviation_prob}});
            summary["per_triple"] = per_triple;
            if (co_json.empty())
                std::cout << summary.dump(2) << "\n";
            else
                write_text(co_json, summary.dump(2) + "\n");
            return kExitOk;
        }

        if (oracle->parsed()) {
            OrientedTree t = load_tree(or_tree);
            Digraph g = load_digraph(or_graph);
            OracleResult res = contains_tree_bruteforce(t, g, or_limit);
            std::cout << (res.contains ? "contains\n" : "does-not-contain\n");
            if (res.contains && !or_witness.empty()) save_embedding(or_witness, *res.witness);
            return res.contains ? kExitOk : kExitPhaseFailure;
        }

        if (run->parsed()) {
            PipelineConfig cfg = config_from_json(load_json(rn_config));
            cfg.validate();
            OrientedTree t = make_tree(cfg);
            Digraph base = make_base(cfg);
            TrialRecord rec = run_trial(cfg, t, base, rn_trial);
            const std::string csv = TrialRecord::csv_header() + "\n" + rec.csv_row() + "\n";
            if (rn_csv.empty())
                std::cout << csv;
            else
                write_text(rn_csv, csv);
            if (!rn_witness_dir.empty()) write_trial_witnesses(rec, cfg, rn_witness_dir, rn_trial);
            return rec.success() ? kExitOk : kExitPhaseFailure;
        }

        if (sw->parsed()) {
            json j = load_json(sw_config);
            std::vector<PipelineConfig> grid = grid_from_json(j);
            const int trials = sw_trials > 0 ? sw_trials : j.value("trials", 50);
            const int parallelism = sw_parallelism > 0 ? sw_parallelism : j.value("parallelism", 4);
            SweepResult res = sweep(grid, trials, parallelism);
            if (sw_csv.empty())
                std::cout << res.cells_csv();
            else
                write_text(sw_csv, res.cells_csv());
            if (!sw_trials_csv.empty()) write_text(sw_trials_csv, res.trials_csv());
            return kExitOk;
        }

        if (verify->parsed()) {
            OrientedTree t = load_tree(vf_tree);
            Digraph g = load_digraph(vf_graph);
            Digraph target = g;
            if (!vf_random.empty()) {
                Digraph r = load_digraph(vf_random);
                target = vf_random_only ? r : graph_union(g, r);
            }
            Embedding phi = load_embedding(vf_embedding, t.order(), target.order());
            const bool ok = verify_embedding(t, target, phi);
            std::cout << (ok ? "valid\n" : "invalid\n");
            return ok ? kExitOk : kExitPhaseFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
