#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmsa/evolve_sim.hpp"
#include "mmsa/rng.hpp"
#include "mmsa/warp_path.hpp"

namespace mmsa {

// One scored replicate variant. "estimated" builds the MSA from computed
// pairwise alignments, "reference" from the true pairwise paths of the
// simulation; both are scored against the true MSA.
struct BenchRow {
    int k = 0;
    int replicate = 0;
    std::string variant;
    double sp = 0;
    double tc = 0;
};

// Replicated simulation benchmark over the given branch counts. Row order
// and values depend only on base (its k is overridden), k_list, and
// replicates; jobs are distributed over n_threads workers. Each replicate
// seeds its own stream derived from (base.seed, k, replicate).
std::vector<BenchRow> run_benchmark(const SimParams& base, const std::vector<int>& k_list,
                                    int replicates, int n_threads);

// Header "k\treplicate\tvariant\tsp\ttc", then one line per row.
void write_bench_tsv(std::ostream& out, const std::vector<BenchRow>& rows);

// Uniformly random step choices, for property tests and timing inputs.
AlignmentPath random_path(Rng& rng, int n, int m);

// Median wall-clock seconds of the table-combination step alone over the
// given number of runs, on k random consistent paths between length-n
// sequences.
double median_combine_seconds(int n, int k, int runs, std::uint64_t seed);

}  // namespace mmsa
