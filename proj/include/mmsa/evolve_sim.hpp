#pragma once

#include <cstdint>
#include <vector>

#include "mmsa/seqio.hpp"
#include "mmsa/warp_path.hpp"

namespace mmsa {

// Star-tree evolution: one random ancestor of length n_ancestor, k branches
// of length branch_length, a birth-death indel process with insertion rate
// lambda and deletion rate mu, and one-parameter substitutions at rate
// alpha over uniform base frequencies.
struct SimParams {
    int n_ancestor = 100;
    int k = 10;
    double lambda = 0.03;
    double mu = 0.03;
    double alpha = 0.1;
    double branch_length = 1.0;
    std::uint64_t seed = 1;
};

// reference.homologous_columns flags the columns descending from surviving
// ancestral residues; homologous_ancestor gives each one's ancestral
// position (1-based). Ancestral positions deleted on every branch have no
// column.
struct SimOutput {
    Sequence ancestor;
    std::vector<Sequence> descendants;
    Msa reference;
    std::vector<int> homologous_ancestor;
};

// Fixing the seed fixes the whole output. Each branch draws from its own
// derived RNG stream, so branches are independent. Descendant ids are
// S1..Sk; insert runs of different branches are never placed in a common
// column.
SimOutput simulate(const SimParams& params);

// True pairwise path of rows i and j: project the reference MSA onto the
// two rows, drop gap/gap columns, transcribe the rest.
AlignmentPath extract_reference_pairwise(const SimOutput& output, int i, int j);

}  // namespace mmsa
