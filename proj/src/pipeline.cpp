#include "rpd/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <thread>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::uint64_t double_bits(double x) {
    std::uint64_t b = 0;
    std::memcpy(&b, &x, sizeof(b));
    return b;
}

std::string triple_str(const Triple& t) {
    if (t.u < 0) return "-";
    std::string s = std::to_string(t.u);
    s += sign_char(t.sign);
    s += std::to_string(t.w);
    return s;
}

}  // namespace

void PipelineConfig::validate() const {
    require(n >= 4, "n too small for the pipeline");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    require(delta >= 1, "delta must be positive");
    require(c >= 0.0 && c / n <= 1.0, "c must satisfy 0 <= c/n <= 1");
    require(epsilon > 0.0 && epsilon < 1.0 / 3.0, "epsilon must lie in (0, 1/3)");
    require(effective_gamma() * n >= 1.0, "gamma*n below one star");
    require(policy.backtrack_budget >= 0 && policy.max_restarts >= 0, "bad retry policy");
}

double PipelineConfig::effective_gamma() const {
    return gamma > 0.0 ? gamma : 1.0 / (2.0 * (static_cast<double>(delta) * delta + 1.0));
}

long PipelineConfig::effective_tau() const {
    return tau >= 0 ? tau : 2 * ceil_count(epsilon * n);
}

int PipelineConfig::prefix_order() const {
    return static_cast<int>(ceil_count((1.0 - epsilon) * n));
}

OrientedTree make_tree(const PipelineConfig& cfg) {
    const std::uint64_t s = derive_seed(cfg.master_seed, "tree-instance",
                                        static_cast<std::uint64_t>(cfg.n),
                                        static_cast<std::uint64_t>(cfg.delta));
    if (cfg.tree.kind == "random") return random_tree(cfg.n, cfg.delta, s);
    return family_tree(tree_family_from_string(cfg.tree.kind), cfg.n);
}

Digraph make_base(const PipelineConfig& cfg) {
    const std::uint64_t s = derive_seed(cfg.master_seed, "base-instance",
                                        static_cast<std::uint64_t>(cfg.n), double_bits(cfg.alpha));
    return dense_base(cfg.n, cfg.alpha, cfg.base.style, s);
}

Digraph trial_random_part(const PipelineConfig& cfg, int trial_index) {
    return sample_binomial_digraph(
        cfg.n, cfg.c / cfg.n,
        derive_seed(cfg.master_seed, "random-part", static_cast<std::uint64_t>(trial_index)));
}

TrialRecord run_trial(const PipelineConfig& cfg, const OrientedTree& t, const Digraph& d_base,
                      int trial_index) {
    cfg.validate();
    require(t.order() == cfg.n && d_base.order() == cfg.n, "instance sizes disagree with config");
    require(min_semidegree(d_base) >= static_cast<int>(ceil_count(cfg.alpha * cfg.n)),
            "base graph misses the semidegree bound");
    require(t.max_total_degree() <= cfg.delta, "tree exceeds the degree bound");

    TrialRecord rec;
    rec.trial_index = trial_index;
    rec.config = cfg;
    rec.seed = derive_seed(cfg.master_seed, "trial", static_cast<std::uint64_t>(trial_index));

    const EdgeOrdering ord = valid_ordering(t, 0);
    const int np = cfg.prefix_order();
    const int prefix_edges = np - 1;
    PrefixSubtree prefix = prefix_subtree(t, ord, prefix_edges);

    auto t0 = std::chrono::steady_clock::now();
    const Digraph r = trial_random_part(cfg, trial_index);
    rec.timings.ms_random = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    AlmostEmbedResult ar = embed_almost(
        prefix.tree, identity_ordering(prefix_edges), r,
        derive_seed(cfg.master_seed, "almost-embed", static_cast<std::uint64_t>(trial_index)),
        cfg.policy);
    rec.timings.ms_embed = ms_since(t0);
    rec.almost_success = ar.success();
    rec.almost_depth = ar.deepest_prefix_edges;
    rec.restarts_used = ar.restarts_used;

    t0 = std::chrono::steady_clock::now();
    StarPack pack_sub = greedy_star_pack(prefix.tree);
    StarPack pack_all = translate_pack(pack_sub, prefix.to_original, cfg.n);
    const int gamma_cap = static_cast<int>(ceil_count(cfg.effective_gamma() * cfg.n));
    StarPack pack_gamma = truncate_pack(pack_all, gamma_cap, cfg.n);
    const int n_cap = static_cast<int>(ceil_count(
        std::min(cfg.effective_gamma() * cfg.n, cfg.alpha * cfg.n / (6.0 * (cfg.delta + 1)))));
    StarPack pack_ncap = truncate_pack(pack_all, n_cap, cfg.n);
    rec.pack_full = pack_all.size();
    rec.pack_gamma = pack_gamma.size();
    rec.pack_ncap = pack_ncap.size();
    rec.timings.ms_pack = ms_since(t0);

    if (!ar.success()) return rec;

    // Re-express the prefix embedding in the full tree's vertex ids.
    Embedding phi0(cfg.n, cfg.n);
    for (int sv = 0; sv < prefix.tree.order(); ++sv)
        phi0.map(prefix.to_original[static_cast<std::size_t>(sv)], ar.embedding->image(sv));
    rec.prefix_witness = phi0;
    rec.prefix_random_only = verify_embedding(prefix.tree, r, *ar.embedding);

    const Digraph host = graph_union(d_base, r);
    const std::vector<int> unembedded = phi0.unused_host_vertices();

    t0 = std::chrono::steady_clock::now();
    if (cfg.n <= cfg.full_sweep_max_n) {
        MinAbsorbingResult mres = min_absorbing_over_triples(pack_ncap, phi0, host, unembedded);
        rec.min_abs_all = mres.min_all;
        rec.argmin_all = mres.argmin_all;
        if (mres.min_unembedded) {
            rec.min_abs_unembedded = *mres.min_unembedded;
            rec.argmin_unembedded = mres.argmin_unembedded;
        }
    } else if (auto best = detail::min_absorbing_restricted(pack_ncap, phi0, host, unembedded)) {
        rec.min_abs_unembedded = best->first;
        rec.argmin_unembedded = best->second;
    }
    rec.timings.ms_count = ms_since(t0);
    const long measured = rec.min_abs_all >= 0 ? rec.min_abs_all : rec.min_abs_unembedded;
    rec.hypothesis_met = measured >= 0 && measured >= cfg.effective_tau();

    t0 = std::chrono::steady_clock::now();
    CompletionResult cr = complete_embedding(t, ord, phi0, host, pack_gamma, false);
    rec.timings.ms_complete = ms_since(t0);
    rec.completion_success = cr.success();
    rec.min_step_count = cr.min_step_count();
    if (cr.failure) rec.completion_fail_step = cr.failure->step;

    if (cr.success()) {
        t0 = std::chrono::steady_clock::now();
        rec.verified = verify_embedding(t, host, *cr.embedding);
        rec.timings.ms_verify = ms_since(t0);
        rec.witness = std::move(cr.embedding);
    }
    return rec;
}

std::string TrialRecord::canonical_string() const {
    std::ostringstream os;
    os << "trial=" << trial_index << "\nseed=" << seed << "\nn=" << config.n
       << "\nalpha=" << fmt_double(config.alpha) << "\ndelta=" << config.delta
       << "\nc=" << fmt_double(config.c) << "\nepsilon=" << fmt_double(config.epsilon)
       << "\ngamma=" << fmt_double(config.effective_gamma()) << "\ntau=" << config.effective_tau()
       << "\nbacktrack_budget=" << config.policy.backtrack_budget
       << "\nmax_restarts=" << config.policy.max_restarts << "\ntree=" << config.tree.kind
       << "\nbase=" << to_string(config.base.style) << "\nmaster_seed=" << config.master_seed
       << "\nprefix_n=" << config.prefix_order() << "\nalmost_success=" << almost_success
       << "\nalmost_depth=" << almost_depth << "\nrestarts_used=" << restarts_used
       << "\npack_full=" << pack_full << "\npack_gamma=" << pack_gamma
       << "\npack_ncap=" << pack_ncap << "\nmin_abs_all=" << min_abs_all << "@"
       << triple_str(argmin_all) << "\nmin_abs_unembedded=" << min_abs_unembedded << "@"
       << triple_str(argmin_unembedded) << "\nhypothesis_met=" << hypothesis_met
       << "\ncompletion_success=" << completion_success
       << "\ncompletion_fail_step=" << completion_fail_step
       << "\nmin_step_count=" << min_step_count << "\nverified=" << verified
       << "\nprefix_random_only=" << prefix_random_only << "\n";
    auto dump = [&](const char* tag, const std::optional<Embedding>& phi) {
        os << tag << "=";
        if (phi) {
            for (int v = 0; v < phi->tree_size(); ++v)
                if (phi->tree_mapped(v)) os << v << ":" << phi->image(v) << ",";
        } else {
            os << "-";
        }
        os << "\n";
    };
    dump("witness", witness);
    dump("prefix_witness", prefix_witness);
    return os.str();
}

std::string TrialRecord::csv_header() {
    return "trial,seed,n,alpha,delta,c,epsilon,gamma,tau,prefix_n,almost_success,almost_depth,"
           "restarts_used,pack_full,pack_gamma,pack_ncap,min_abs_all,min_abs_unembedded,"
           "hypothesis_met,completion_success,completion_fail_step,min_step_count,verified,"
           "prefix_random_only,ms_random,ms_embed,ms_pack,ms_count,ms_complete,ms_verify";
}

std::string TrialRecord::csv_row() const {
    std::ostringstream os;
    os << trial_index << "," << seed << "," << config.n << "," << fmt_double(config.alpha) << ","
       << config.delta << "," << fmt_double(config.c) << "," << fmt_double(config.epsilon) << ","
       << fmt_double(config.effective_gamma()) << "," << config.effective_tau() << ","
       << config.prefix_order() << "," << almost_success << "," << almost_depth << ","
       << restarts_used << "," << pack_full << "," << pack_gamma << "," << pack_ncap << ","
       << min_abs_all << "," << min_abs_unembedded << "," << hypothesis_met << ","
       << completion_success << "," << completion_fail_step << "," << min_step_count << ","
       << verified << "," << prefix_random_only << "," << fmt_double(timings.ms_random) << ","
       << fmt_double(timings.ms_embed) << "," << fmt_double(timings.ms_pack) << ","
       << fmt_double(timings.ms_count) << "," << fmt_double(timings.ms_complete) << ","
       << fmt_double(timings.ms_verify);
    return os.str();
}

namespace {

// Cells comparable for the monotone-in-c check: everything but c agrees.
bool same_family(const PipelineConfig& a, const PipelineConfig& b) {
    return a.n == b.n && a.alpha == b.alpha && a.delta == b.delta && a.epsilon == b.epsilon &&
           a.gamma == b.gamma && a.tau == b.tau && a.policy == b.policy &&
           a.master_seed == b.master_seed && a.tree == b.tree && a.base == b.base;
}

}  // namespace

SweepResult sweep(const std::vector<PipelineConfig>& grid, int trials_per_cell, int parallelism) {
    require(!grid.empty(), "empty sweep grid");
    require(trials_per_cell >= 1, "need at least one trial per cell");
    const int workers = std::max(1, parallelism);

    SweepResult result;
    result.cells.resize(grid.size());

    struct CellInstance {
        std::optional<OrientedTree> tree;
        std::optional<Digraph> base;
    };
    std::vector<CellInstance> instances(grid.size());

    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
        SweepCellResult& cell = result.cells[ci];
        cell.cfg = grid[ci];
        try {
            cell.cfg.validate();
            instances[ci].tree = make_tree(cell.cfg);
            instances[ci].base = make_base(cell.cfg);
            const Digraph& b = *instances[ci].base;
            require(min_semidegree(b) >= static_cast<int>(ceil_count(cell.cfg.alpha * cell.cfg.n)),
                    "base graph misses the semidegree bound");
            cell.trials = trials_per_cell;
            cell.records.resize(static_cast<std::size_t>(trials_per_cell));
        } catch (const std::exception& e) {
            cell.status = std::string("invalid: ") + e.what();
        }
    }

    struct Task {
        std::size_t cell;
        int trial;
    };
    std::vector<Task> tasks;
    for (std::size_t ci = 0; ci < grid.size(); ++ci)
        if (result.cells[ci].status == "ok")
            for (int tr = 0; tr < trials_per_cell; ++tr) tasks.push_back({ci, tr});

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            const Task& task = tasks[i];
            SweepCellResult& cell = result.cells[task.cell];
            cell.records[static_cast<std::size_t>(task.trial)] =
                run_trial(cell.cfg, *instances[task.cell].tree, *instances[task.cell].base,
                          task.trial);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (auto& cell : result.cells) {
        if (cell.status != "ok") continue;
        for (const auto& recd : cell.records)
            if (recd.success()) ++cell.successes;
        cell.wilson = wilson_interval(cell.successes, cell.trials);
    }

    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        for (std::size_t j = 0; j < result.cells.size(); ++j) {
            if (i == j) continue;
            SweepCellResult& a = result.cells[i];
            SweepCellResult& b = result.cells[j];
            if (a.status != "ok" || b.status != "ok") continue;
            if (!same_family(a.cfg, b.cfg) || !(a.cfg.c < b.cfg.c)) continue;
            if (a.wilson.lo > b.wilson.hi) {
                a.monotone_violation = true;
                b.monotone_violation = true;
            }
        }
    }
    return result;
}

std::string SweepResult::cells_csv() const {
    std::ostringstream os;
    os << "cell,n,alpha,delta,c,epsilon,gamma,tau,seed,tree,base,status,trials,successes,rate,"
          "wilson_lo,wilson_hi,monotone_violation\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const SweepCellResult& cell = cells[i];
        const double rate = cell.trials > 0 ? static_cast<double>(cell.successes) / cell.trials : 0.0;
        std::string status = cell.status;
        for (char& ch : status)
            if (ch == ',') ch = ';';
        os << i << "," << cell.cfg.n << "," << fmt_double(cell.cfg.alpha) << "," << cell.cfg.delta
           << "," << fmt_double(cell.cfg.c) << "," << fmt_double(cell.cfg.epsilon) << ","
           << fmt_double(cell.cfg.effective_gamma()) << "," << cell.cfg.effective_tau() << ","
           << cell.cfg.master_seed << "," << cell.cfg.tree.kind << ","
           << to_string(cell.cfg.base.style) << "," << status << "," << cell.trials << ","
           << cell.successes << "," << fmt_double(rate) << "," << fmt_double(cell.wilson.lo) << ","
           << fmt_double(cell.wilson.hi) << "," << cell.monotone_violation << "\n";
    }
    return os.str();
}

std::string SweepResult::trials_csv() const {
    std::ostringstream os;
    os << "cell," << TrialRecord::csv_header() << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (const auto& recd : cells[i].records) os << i << "," << recd.csv_row() << "\n";
    return os.str();
}

}  // namespace rpd
