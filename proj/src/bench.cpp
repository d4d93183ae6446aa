#include "mmsa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

#include "mmsa/median_msa.hpp"
#include "mmsa/msa_score.hpp"
#include "mmsa/pairwise_align.hpp"
#include "mmsa/parallel.hpp"

namespace mmsa {

namespace {

std::vector<std::vector<AlignmentPath>> reference_pair_table(const SimOutput& sim) {
    const int k = static_cast<int>(sim.descendants.size());
    std::vector<std::vector<AlignmentPath>> paths(k, std::vector<AlignmentPath>(k));
    for (int i = 0; i < k; ++i) {
        paths[i][i] = extract_reference_pairwise(sim, i, i);
        for (int j = i + 1; j < k; ++j) {
            paths[i][j] = extract_reference_pairwise(sim, i, j);
            paths[j][i] = invert(paths[i][j]);
        }
    }
    return paths;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const SimParams& base, const std::vector<int>& k_list,
                                    int replicates, int n_threads) {
    if (replicates < 1) {
        throw std::invalid_argument("need at least one replicate");
    }
    struct Job {
        int k = 0;
        int replicate = 0;
    };
    std::vector<Job> jobs;
    for (int k : k_list) {
        for (int r = 0; r < replicates; ++r) {
            jobs.push_back({k, r});
        }
    }
    std::vector<BenchRow> rows(2 * jobs.size());
    const ScoringScheme scheme = dna_default_scheme();
    parallel_for(static_cast<int>(jobs.size()), n_threads, [&](int index) {
        const Job& job = jobs[index];
        SimParams params = base;
        params.k = job.k;
        params.seed = derive_seed(base.seed, static_cast<std::uint64_t>(job.k),
                                  static_cast<std::uint64_t>(job.replicate));
        SimOutput sim = simulate(params);

        PairTable estimated = align_all_pairs(sim.descendants, scheme, 1);
        MsaTables est_tables = build_tables(sim.descendants, estimated.paths);
        ScoreReport est = score_msa(render(est_tables, sim.descendants), sim.reference);

        MsaTables ref_tables = build_tables(sim.descendants, reference_pair_table(sim));
        ScoreReport ref = score_msa(render(ref_tables, sim.descendants), sim.reference);

        rows[2 * index] = {job.k, job.replicate, "estimated", est.sp, est.tc};
        rows[2 * index + 1] = {job.k, job.replicate, "reference", ref.sp, ref.tc};
    });
    return rows;
}

void write_bench_tsv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "k\treplicate\tvariant\tsp\ttc\n";
    for (const BenchRow& row : rows) {
        out << row.k << '\t' << row.replicate << '\t' << row.variant << '\t' << row.sp << '\t'
            << row.tc << '\n';
    }
}

AlignmentPath random_path(Rng& rng, int n, int m) {
    AlignmentPath path;
    path.points.push_back({0, 0});
    int x = 0;
    int y = 0;
    while (x < n || y < m) {
        if (x < n && y < m) {
            switch (rng.below(3)) {
                case 0:
                    ++x;
                    ++y;
                    break;
                case 1:
                    ++x;
                    break;
                default:
                    ++y;
            }
        } else if (x < n) {
            ++x;
        } else {
            ++y;
        }
        path.points.push_back({x, y});
    }
    return path;
}

double median_combine_seconds(int n, int k, int runs, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Sequence> seqs(k);
    for (int i = 0; i < k; ++i) {
        seqs[i].id = "S" + std::to_string(i + 1);
        seqs[i].residues.assign(static_cast<size_t>(n), 'A');
    }
    AlignmentPath diagonal;
    for (int x = 0; x <= n; ++x) {
        diagonal.points.push_back({x, x});
    }
    std::vector<std::vector<AlignmentPath>> paths(k, std::vector<AlignmentPath>(k));
    for (int i = 0; i < k; ++i) {
        paths[i][i] = diagonal;
        for (int j = i + 1; j < k; ++j) {
            paths[i][j] = random_path(rng, n, n);
            paths[j][i] = invert(paths[i][j]);
        }
    }
    std::vector<double> seconds;
    for (int run = 0; run < runs; ++run) {
        auto start = std::chrono::steady_clock::now();
        MsaTables tables = build_tables(seqs, paths);
        auto stop = std::chrono::steady_clock::now();
        if (tables.n_hat != n) {
            throw std::logic_error("combine-step timing input is inconsistent");
        }
        seconds.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::nth_element(seconds.begin(), seconds.begin() + runs / 2, seconds.end());
    return seconds[runs / 2];
}

}  // namespace mmsa
