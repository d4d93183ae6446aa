#pragma once

#include <iosfwd>
#include <vector>

#include "mmsa/seqio.hpp"
#include "mmsa/warp_path.hpp"

namespace mmsa {

// Integer median: odd count takes the middle order statistic; even count
// takes the mean of the two middle order statistics when that mean is an
// integer, otherwise its floor. Expected linear time.
int integer_median(std::vector<int> values);

// Integer median of the sequence lengths, the estimated ancestor length.
int estimate_n_hat(const std::vector<int>& lengths);

// Per-sequence positive weights summing to 1.
struct Weights {
    std::vector<double> w;
};

// w_i = (1 - d_i/(d_max+eps)) / sum_k (1 - d_k/(d_max+eps)).
Weights compute_weights(const std::vector<double>& distances, double epsilon);

// Smallest value whose cumulative weight reaches 1/2. When the cumulative
// weight lands exactly on 1/2 the unweighted mean-or-floor rule is applied
// to the two straddling values, so uniform weights reproduce integer_median.
int weighted_integer_median(std::vector<int> values, const Weights& weights);

// Counters for the two guarded corner cases of the median construction.
struct MedianDiagnostics {
    int clamped_points = 0;
    int hom_collisions = 0;
};

// Median of K alignment paths that share their first axis (sequence
// self_index, which must carry the identity self-alignment). For each
// position u the per-path step coordinates are reduced to median points
// (u-1, med v1) and (u, med v2); gaps between consecutive median points are
// filled with vertical steps and the result is padded to end at (n, n_hat).
// Second coordinates above n_hat are clamped (counted in diag).
AlignmentPath median_path(int self_index, const std::vector<AlignmentPath>& paths, int n_hat,
                          const Weights* weights = nullptr,
                          MedianDiagnostics* diag = nullptr);

// Homologous/insertion encoding of an MSA of K sequences against an
// estimated ancestor of length n_hat. hom[i] has n_hat entries, the residue
// index (1-based) homologous to each ancestor position, 0 for none. ins[i]
// has n_hat+1 entries, the number of residues inserted before ancestor
// position 1, between consecutive positions, and after position n_hat.
// paths[i] runs over the (n_i, n_hat) grid.
struct MsaTables {
    int n_hat = 0;
    std::vector<std::vector<int>> hom;
    std::vector<std::vector<int>> ins;
    std::vector<AlignmentPath> paths;

    int depth() const { return static_cast<int>(hom.size()); }
};

// Median paths for every sequence, classified into Hom/Ins tables. The
// pairwise table must satisfy pairwise[j][i] = invert(pairwise[i][j]) with
// identity diagonal. Rows are independent and run on n_threads workers.
MsaTables build_tables(const std::vector<Sequence>& seqs,
                       const std::vector<std::vector<AlignmentPath>>& pairwise,
                       const Weights* weights = nullptr, int n_threads = 1,
                       MedianDiagnostics* diag = nullptr);

// MSA from tables: homologous residues share their ancestor column; insert
// runs occupy per-bucket blocks sized by the deepest run, left-justified.
// Total width is n_hat + sum of per-bucket maxima. homologous_columns of
// the result marks the ancestor columns.
Msa render(const MsaTables& tables, const std::vector<Sequence>& seqs);

// Inverse of render given the homologous column positions (1-based).
MsaTables extract_tables(const Msa& msa, const std::vector<int>& homologous_columns);

// Header line "K <tab> n_hat", then K Hom rows and K Ins rows, tab-separated.
void write_tables_tsv(std::ostream& out, const MsaTables& tables);

}  // namespace mmsa
