#pragma once

#include <iosfwd>

#include "mmsa/seqio.hpp"

namespace mmsa {

// Agreement of a test MSA with a reference MSA. sp counts residue pairs
// placed in a common column by both (over the pairs the reference aligns);
// tc counts reference columns whose exact residue/gap content reappears as a
// test column. Gap-only columns are ignored on both sides.
struct ScoreReport {
    double sp = 0;
    double tc = 0;
    long long aligned_pairs_ref = 0;
    long long aligned_pairs_correct = 0;
    int columns_ref = 0;
    int columns_correct = 0;
};

// Rows are matched by id; both MSAs must hold the same sequences. Residues
// are identified by (sequence, index), never by character.
ScoreReport score_msa(const Msa& test, const Msa& reference);

double sp_score(const Msa& test, const Msa& reference);
double tc_score(const Msa& test, const Msa& reference);

// Single TSV line: sp, tc, then the four counters.
void write_score_tsv(std::ostream& out, const ScoreReport& report);

}  // namespace mmsa
