// Acceptance checks, one printed line per criterion. Exit status is zero
// only if every criterion passes. All tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmsa/bench.hpp"
#include "mmsa/evolve_sim.hpp"
#include "mmsa/median_msa.hpp"
#include "mmsa/msa_score.hpp"
#include "mmsa/pairwise_align.hpp"
#include "mmsa/rng.hpp"
#include "mmsa/seqio.hpp"
#include "mmsa/warp_path.hpp"
#include "oracle.hpp"

using namespace mmsa;

namespace {

// criterion 3: random pairwise optimality
constexpr int kPairCases = 1000;
constexpr int kPairMaxLen = 6;
constexpr double kPairBudgetSeconds = 60.0;

// criteria 4 and 5: replicated benchmark
const std::vector<int> kBenchKList = {10, 20};
constexpr int kBenchReplicates = 20;
constexpr double kRefMedianSpMin = 0.99;
constexpr double kRefMedianTcMin = 0.95;
constexpr double kBenchBudgetSeconds = 300.0;

// criterion 6: combine-step scaling at the (N=200, K=32) baseline
constexpr int kScaleN = 200;
constexpr int kScaleK = 32;
constexpr int kScaleRuns = 5;
constexpr double kScaleKRatioMax = 5.0;
constexpr double kScaleNRatioMax = 2.6;

// criterion 7: simulator statistics, all within 3 standard errors
constexpr int kStatSims = 11;       // 11 x (K=100 x N=100) links
constexpr int kLengthReplicates = 1000;

// criterion 8: invariant suite sizes
constexpr int kInvariantPaths = 10000;
constexpr int kInvariantBundles = 10000;

bool report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!detail.empty()) {
        std::cout << " (" << detail << ")";
    }
    std::cout << std::endl;
    return pass;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    size_t k = values.size();
    return k % 2 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

bool criterion_golden_path() {
    AlignmentPath path = path_from_alignment("ACAGTA-GT", "-CT-TAAG-");
    std::vector<Point> expected = {{0, 0}, {1, 0}, {2, 1}, {3, 2}, {4, 2},
                                   {5, 3}, {6, 4}, {6, 5}, {7, 6}, {8, 6}};
    std::vector<Point> mirrored = {{0, 0}, {0, 1}, {1, 2}, {2, 3}, {2, 4},
                                   {3, 5}, {4, 6}, {5, 6}, {6, 7}, {6, 8}};
    bool pass = path.points == expected && invert(path).points == mirrored;
    return report(1, "golden path transcription and inversion", pass);
}

bool criterion_golden_tables() {
    Msa msa;
    msa.ids = {"X", "Y", "Z"};
    msa.rows = {"ACAGTA--T", "-CT-CCAG-", "TCAC---CT"};
    std::vector<int> hom_cols = {2, 3, 4, 8};
    MsaTables tables = extract_tables(msa, hom_cols);
    std::vector<std::vector<int>> want_hom = {{2, 3, 4, 0}, {1, 2, 0, 6}, {2, 3, 4, 5}};
    std::vector<std::vector<int>> want_ins = {{1, 0, 0, 2, 1}, {0, 0, 0, 3, 0},
                                              {1, 0, 0, 0, 1}};
    bool pass = tables.n_hat == 4 && tables.hom == want_hom && tables.ins == want_ins;

    std::vector<Sequence> seqs = {{"X", "ACAGTAT"}, {"Y", "CTCCAG"}, {"Z", "TCACCT"}};
    Msa back = render(tables, seqs);
    pass = pass && back.rows == msa.rows && back.width() == 9 &&
           back.homologous_columns == hom_cols;
    return report(2, "golden table encoding round-trip", pass);
}

bool criterion_pairwise_optimal() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(314159);
    ScoringScheme global = dna_default_scheme();
    ScoringScheme overlap = dna_default_scheme();
    overlap.set_mode(AlignMode::Overlap);
    int bad = 0;
    for (int trial = 0; trial < kPairCases; ++trial) {
        std::string x = oracle::random_dna(rng, static_cast<int>(rng.below(kPairMaxLen + 1)));
        std::string y = oracle::random_dna(rng, static_cast<int>(rng.below(kPairMaxLen + 1)));
        for (const ScoringScheme& scheme : {global, overlap}) {
            PairwiseResult got = align_pair({"x", x}, {"y", y}, scheme);
            oracle::BruteResult want = oracle::best_alignment(x, y, scheme);
            if (std::abs(got.score - want.best) > 1e-9 || !is_valid(got.path) ||
                std::abs(oracle::score_path(got.path, x, y, scheme) - got.score) > 1e-9) {
                ++bad;
            }
        }
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << kPairCases << " cases x 2 modes, " << bad << " mismatches, " << seconds << "s";
    return report(3, "pairwise scores equal brute-force optima",
                  bad == 0 && seconds < kPairBudgetSeconds, detail.str());
}

SimParams bench_base() {
    SimParams base;
    base.n_ancestor = 100;
    base.lambda = 0.03;
    base.mu = 0.03;
    base.alpha = 0.1;
    base.seed = 20260814;
    return base;
}

std::vector<BenchRow> shared_benchmark() {
    return run_benchmark(bench_base(), kBenchKList, kBenchReplicates, 1);
}

// Fraction of reference columns that any rendered MSA can reproduce. The
// renderer left-justifies all insert runs of a bucket in one shared block,
// so a branch-exclusive reference insert column is representable only when
// its offset is occupied by exactly one branch; homologous columns always
// are. This is the "maximum score possible" for the TC metric here.
double layout_ceiling(const SimOutput& sim) {
    MsaTables truth = extract_tables(sim.reference, sim.reference.homologous_columns);
    int recoverable = truth.n_hat;
    for (int p = 0; p <= truth.n_hat; ++p) {
        int deepest = 0;
        for (int i = 0; i < truth.depth(); ++i) {
            deepest = std::max(deepest, truth.ins[i][p]);
        }
        for (int o = 0; o < deepest; ++o) {
            int occupants = 0;
            for (int i = 0; i < truth.depth(); ++i) {
                occupants += truth.ins[i][p] > o;
            }
            recoverable += occupants == 1;
        }
    }
    return static_cast<double>(recoverable) / sim.reference.width();
}

bool criterion_reference_near_perfect(const std::vector<BenchRow>& rows, double seconds) {
    std::vector<double> sp;
    std::vector<double> tc;
    for (const BenchRow& row : rows) {
        if (row.variant == "reference") {
            sp.push_back(row.sp);
            tc.push_back(row.tc);
        }
    }
    double med_sp = median_of(sp);
    double med_tc = median_of(tc);

    // compare every reference-variant tc against the representable ceiling
    int at_ceiling = 0;
    int total = 0;
    std::vector<double> ceilings;
    for (int k : kBenchKList) {
        for (int rep = 0; rep < kBenchReplicates; ++rep) {
            SimParams params = bench_base();
            params.k = k;
            params.seed = derive_seed(params.seed, static_cast<std::uint64_t>(k),
                                      static_cast<std::uint64_t>(rep));
            double ceiling = layout_ceiling(simulate(params));
            ceilings.push_back(ceiling);
            for (const BenchRow& row : rows) {
                if (row.variant == "reference" && row.k == k && row.replicate == rep) {
                    ++total;
                    at_ceiling += std::abs(row.tc - ceiling) <= 1e-9;
                }
            }
        }
    }

    std::ostringstream detail;
    detail << "median sp " << med_sp << " >= " << kRefMedianSpMin << ", median tc " << med_tc
           << " >= " << kRefMedianTcMin << ", tc at representable ceiling in " << at_ceiling
           << "/" << total << " replicates (ceiling median " << median_of(ceilings) << "), "
           << seconds << "s";
    return report(4, "true pairwise paths give a near-perfect MSA",
                  med_sp >= kRefMedianSpMin && med_tc >= kRefMedianTcMin &&
                      seconds < kBenchBudgetSeconds,
                  detail.str());
}

bool criterion_variant_ordering(const std::vector<BenchRow>& rows) {
    bool pass = true;
    std::ostringstream detail;
    for (int k : kBenchKList) {
        std::vector<double> est_sp, est_tc, ref_sp, ref_tc;
        for (const BenchRow& row : rows) {
            if (row.k != k) {
                continue;
            }
            (row.variant == "reference" ? ref_sp : est_sp).push_back(row.sp);
            (row.variant == "reference" ? ref_tc : est_tc).push_back(row.tc);
        }
        double e_sp = median_of(est_sp), e_tc = median_of(est_tc);
        double r_sp = median_of(ref_sp), r_tc = median_of(ref_tc);
        pass = pass && r_sp >= e_sp && r_tc >= e_tc && e_sp > 0 && e_tc > 0;
        detail << "K=" << k << " est (" << e_sp << "," << e_tc << ") ref (" << r_sp << ","
               << r_tc << ") ";
    }

    // a degenerate staggered MSA really scores zero; the indel-free reference
    // keeps every column at K residues, so no column is trivially recovered
    SimParams params;
    params.n_ancestor = 50;
    params.k = 5;
    params.lambda = 0;
    params.mu = 0;
    params.seed = 424242;
    SimOutput sim = simulate(params);
    int total = 0;
    for (const Sequence& d : sim.descendants) {
        total += d.length();
    }
    Msa staggered;
    int offset = 0;
    for (const Sequence& d : sim.descendants) {
        staggered.ids.push_back(d.id);
        std::string row(total, kGap);
        row.replace(offset, d.residues.size(), d.residues);
        offset += d.length();
        staggered.rows.push_back(row);
    }
    ScoreReport degenerate = score_msa(staggered, sim.reference);
    pass = pass && degenerate.sp == 0.0 && degenerate.tc == 0.0;
    detail << "staggered (0,0)";
    return report(5, "reference-fed medians dominate estimated ones", pass, detail.str());
}

bool criterion_combine_scaling() {
    double base = median_combine_seconds(kScaleN, kScaleK, kScaleRuns, 1);
    double twice_k = median_combine_seconds(kScaleN, 2 * kScaleK, kScaleRuns, 2);
    double twice_n = median_combine_seconds(2 * kScaleN, kScaleK, kScaleRuns, 3);
    double k_ratio = twice_k / base;
    double n_ratio = twice_n / base;
    std::ostringstream detail;
    detail << "T(K)=" << base << "s, T(2K)/T(K)=" << k_ratio << " <= " << kScaleKRatioMax
           << ", T(2N)/T(N)=" << n_ratio << " <= " << kScaleNRatioMax;
    return report(6, "combine step scales like N*K^2",
                  k_ratio <= kScaleKRatioMax && n_ratio <= kScaleNRatioMax, detail.str());
}

bool criterion_simulator_statistics() {
    long long links = 0, survived = 0, mismatched = 0;
    for (int s = 1; s <= kStatSims; ++s) {
        SimParams params;
        params.n_ancestor = 100;
        params.k = 100;
        params.seed = 900000 + s;
        SimOutput sim = simulate(params);
        links += 100LL * 100;
        for (size_t c = 0; c < sim.reference.homologous_columns.size(); ++c) {
            int col = sim.reference.homologous_columns[c];
            char ancestral = sim.ancestor.residues[sim.homologous_ancestor[c] - 1];
            for (int i = 0; i < sim.reference.depth(); ++i) {
                char got = sim.reference.rows[i][col - 1];
                if (got != kGap) {
                    ++survived;
                    mismatched += got != ancestral;
                }
            }
        }
    }
    double p_surv = std::exp(-0.03);
    double got_surv = static_cast<double>(survived) / links;
    double se_surv = std::sqrt(p_surv * (1 - p_surv) / links);
    bool surv_ok = std::abs(got_surv - p_surv) <= 3 * se_surv;

    double p_mis = 0.75 * -std::expm1(-0.4 / 3.0);
    double got_mis = static_cast<double>(mismatched) / survived;
    double se_mis = std::sqrt(p_mis * (1 - p_mis) / survived);
    bool mis_ok = std::abs(got_mis - p_mis) <= 3 * se_mis;

    double sum = 0, sum_sq = 0;
    for (int rep = 0; rep < kLengthReplicates; ++rep) {
        SimParams params;
        params.n_ancestor = 100;
        params.k = 1;
        params.seed = 700000 + rep;
        double len = simulate(params).descendants[0].length();
        sum += len;
        sum_sq += len * len;
    }
    double mean = sum / kLengthReplicates;
    double var = (sum_sq - sum * sum / kLengthReplicates) / (kLengthReplicates - 1);
    double se_mean = std::sqrt(var / kLengthReplicates);
    bool len_ok = std::abs(mean - 100.0) <= 3 * se_mean;

    std::ostringstream detail;
    detail << "survival " << got_surv << " vs " << p_surv << ", mismatch " << got_mis << " vs "
           << p_mis << ", mean length " << mean << " vs 100";
    return report(7, "simulator statistics match closed forms", surv_ok && mis_ok && len_ok,
                  detail.str());
}

bool criterion_invariants(const std::vector<BenchRow>& rows) {
    bool pass = true;

    // inversion is an involution and keeps paths valid
    Rng rng(5150);
    for (int trial = 0; trial < kInvariantPaths && pass; ++trial) {
        AlignmentPath path = random_path(rng, static_cast<int>(rng.below(12)),
                                         static_cast<int>(rng.below(12)));
        pass = is_valid(path) && is_valid(invert(path)) && invert(invert(path)) == path;
    }
    bool inversion_ok = pass;

    // median paths of random bundles are valid and land on (n, n_hat)
    for (int trial = 0; trial < kInvariantBundles && pass; ++trial) {
        int n = static_cast<int>(rng.below(9));
        int k = 1 + static_cast<int>(rng.below(6));
        int self = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
        std::vector<AlignmentPath> bundle;
        std::vector<int> lengths;
        for (int j = 0; j < k; ++j) {
            if (j == self) {
                AlignmentPath identity;
                for (int x = 0; x <= n; ++x) {
                    identity.points.push_back({x, x});
                }
                bundle.push_back(identity);
                lengths.push_back(n);
            } else {
                int m = static_cast<int>(rng.below(9));
                bundle.push_back(random_path(rng, n, m));
                lengths.push_back(m);
            }
        }
        int n_hat = integer_median(lengths);
        AlignmentPath med = median_path(self, bundle, n_hat);
        pass = is_valid(med) && med.n() == n && med.m() == n_hat;
    }
    bool medians_ok = pass;

    // every residue lands in exactly one table cell
    SimParams params;
    params.n_ancestor = 40;
    params.k = 6;
    params.seed = 616;
    SimOutput sim = simulate(params);
    PairTable table = align_all_pairs(sim.descendants, dna_default_scheme());
    MsaTables tables = build_tables(sim.descendants, table.paths);
    bool accounting_ok = true;
    for (int i = 0; i < tables.depth(); ++i) {
        int placed = 0;
        for (int h : tables.hom[i]) {
            placed += h != 0;
        }
        for (int b : tables.ins[i]) {
            placed += b;
        }
        accounting_ok = accounting_ok && placed == sim.descendants[i].length();
    }

    // score bounds, and a perfect column score forces a perfect pair score
    bool bounds_ok = true;
    for (const BenchRow& row : rows) {
        bounds_ok = bounds_ok && row.sp >= 0 && row.sp <= 1 && row.tc >= 0 && row.tc <= 1;
        if (row.tc == 1.0) {
            bounds_ok = bounds_ok && row.sp == 1.0;
        }
    }

    // permuting sequences permutes table rows
    std::vector<int> perm = {3, 1, 5, 0, 4, 2};
    std::vector<Sequence> shuffled;
    std::vector<std::vector<AlignmentPath>> shuffled_paths(6, std::vector<AlignmentPath>(6));
    for (int a = 0; a < 6; ++a) {
        shuffled.push_back(sim.descendants[perm[a]]);
        for (int b = 0; b < 6; ++b) {
            shuffled_paths[a][b] = table.paths[perm[a]][perm[b]];
        }
    }
    MsaTables moved = build_tables(shuffled, shuffled_paths);
    bool permutation_ok = moved.n_hat == tables.n_hat;
    for (int a = 0; a < 6; ++a) {
        permutation_ok = permutation_ok && moved.hom[a] == tables.hom[perm[a]] &&
                         moved.ins[a] == tables.ins[perm[a]];
    }

    // fixed seeds pin every byte of the pipeline
    SimOutput sim2 = simulate(params);
    std::ostringstream once, twice;
    write_tables_tsv(once, tables);
    write_tables_tsv(twice, build_tables(sim2.descendants,
                                         align_all_pairs(sim2.descendants, dna_default_scheme(),
                                                         2)
                                             .paths));
    write_aligned_fasta(once, sim.reference);
    write_aligned_fasta(twice, sim2.reference);
    bool determinism_ok = once.str() == twice.str();

    std::ostringstream detail;
    detail << "inversion " << (inversion_ok ? "ok" : "bad") << ", medians "
           << (medians_ok ? "ok" : "bad") << ", accounting " << (accounting_ok ? "ok" : "bad")
           << ", bounds " << (bounds_ok ? "ok" : "bad") << ", permutation "
           << (permutation_ok ? "ok" : "bad") << ", determinism "
           << (determinism_ok ? "ok" : "bad");
    return report(8, "invariant suite",
                  inversion_ok && medians_ok && accounting_ok && bounds_ok && permutation_ok &&
                      determinism_ok,
                  detail.str());
}

}  // namespace

int main() {
    bool all = true;
    all &= criterion_golden_path();
    all &= criterion_golden_tables();
    all &= criterion_pairwise_optimal();
    auto bench_start = std::chrono::steady_clock::now();
    std::vector<BenchRow> rows = shared_benchmark();
    double bench_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - bench_start).count();
    all &= criterion_reference_near_perfect(rows, bench_seconds);
    all &= criterion_variant_ordering(rows);
    all &= criterion_combine_scaling();
    all &= criterion_simulator_statistics();
    all &= criterion_invariants(rows);
    return all ? 0 : 1;
}
