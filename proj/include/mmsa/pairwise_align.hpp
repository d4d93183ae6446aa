#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmsa/seqio.hpp"
#include "mmsa/warp_path.hpp"

namespace mmsa {

enum class AlignMode { Global, Overlap };

// Symmetric substitution scores over a symbol set plus affine gap penalties.
// A gap run of length l >= 1 costs gap_open + l * gap_extend; penalties are
// nonnegative magnitudes subtracted from the score. In Overlap mode gap runs
// touching either end of either sequence cost nothing.
class ScoringScheme {
public:
    ScoringScheme(std::string symbols, std::vector<double> matrix, double gap_open,
                  double gap_extend, AlignMode mode);

    double substitution(char a, char b) const;
    bool covers(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }
    const std::string& symbols() const { return symbols_; }
    double gap_open() const { return gap_open_; }
    double gap_extend() const { return gap_extend_; }
    AlignMode mode() const { return mode_; }
    void set_mode(AlignMode mode) { mode_ = mode; }

private:
    std::string symbols_;
    std::vector<double> matrix_;
    int index_[256];
    double gap_open_ = 0;
    double gap_extend_ = 0;
    AlignMode mode_ = AlignMode::Global;
};

// DNA scheme: match +5, mismatch -4, gap_open 10, gap_extend 0.5, Global.
ScoringScheme dna_default_scheme();

// Protein scheme: BLOSUM62 with gap_open 10, gap_extend 0.5.
ScoringScheme blosum62_scheme(AlignMode mode);

// Square matrix from text: a header row of residue symbols, then one row of
// scores per symbol (an optional leading row label is accepted). '#' lines
// are comments. The matrix must be symmetric.
ScoringScheme load_matrix_scheme(std::istream& in, double gap_open, double gap_extend,
                                 AlignMode mode);

struct PairwiseResult {
    AlignmentPath path;
    double score = 0;
};

// Exact optimum over all alignments under the scheme (Gotoh three-state
// recursion). Traceback ties are broken by the type of the alignment's next
// column: diagonal first, then the column consuming y, then the column
// consuming x. Overlap mode ends at the best cell of the last row or column,
// scanned from (n,m) outward, and pads the path with free terminal steps.
PairwiseResult align_pair(const Sequence& x, const Sequence& y, const ScoringScheme& scheme);

// All-pairs table: paths[i][j] aligns sequence i to sequence j,
// paths[j][i] = invert(paths[i][j]), and the diagonal holds identity
// self-alignments. Upper-triangle jobs run on n_threads workers.
struct PairTable {
    std::vector<std::vector<AlignmentPath>> paths;
    std::vector<std::vector<double>> scores;
};

PairTable align_all_pairs(const std::vector<Sequence>& seqs, const ScoringScheme& scheme,
                          int n_threads = 1);

}  // namespace mmsa
