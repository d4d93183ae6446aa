#include "mmsa/msa_score.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmsa {

namespace {

// test row order permuted to match the reference's id order
std::vector<int> match_rows(const Msa& test, const Msa& reference) {
    if (test.depth() != reference.depth()) {
        throw std::invalid_argument("MSAs hold different numbers of sequences");
    }
    std::map<std::string, int> by_id;
    for (int i = 0; i < test.depth(); ++i) {
        if (!by_id.emplace(test.ids[i], i).second) {
            throw std::invalid_argument("duplicate sequence id '" + test.ids[i] + "'");
        }
    }
    std::vector<int> perm(reference.depth());
    for (int i = 0; i < reference.depth(); ++i) {
        auto it = by_id.find(reference.ids[i]);
        if (it == by_id.end()) {
            throw std::invalid_argument("sequence '" + reference.ids[i] +
                                        "' missing from test MSA");
        }
        perm[i] = it->second;
    }
    return perm;
}

// residue index per cell, -1 for gaps; rows follow the given permutation
std::vector<std::vector<int>> residue_grid(const Msa& msa, const std::vector<int>& perm) {
    std::vector<std::vector<int>> grid(perm.size());
    for (size_t r = 0; r < perm.size(); ++r) {
        const std::string& row = msa.rows[perm[r]];
        grid[r].reserve(row.size());
        int u = 0;
        for (char c : row) {
            grid[r].push_back(c == kGap ? -1 : ++u);
        }
    }
    return grid;
}

}  // namespace

ScoreReport score_msa(const Msa& test, const Msa& reference) {
    std::vector<int> perm = match_rows(test, reference);
    const int k = reference.depth();
    for (int i = 0; i < k; ++i) {
        std::string ref_plain;
        std::string test_plain;
        for (char c : reference.rows[i]) {
            if (c != kGap) {
                ref_plain.push_back(c);
            }
        }
        for (char c : test.rows[perm[i]]) {
            if (c != kGap) {
                test_plain.push_back(c);
            }
        }
        if (ref_plain != test_plain) {
            throw std::invalid_argument("sequence '" + reference.ids[i] +
                                        "' differs between the two MSAs");
        }
    }

    std::vector<int> identity(k);
    for (int i = 0; i < k; ++i) {
        identity[i] = i;
    }
    std::vector<std::vector<int>> ref_grid = residue_grid(reference, identity);
    std::vector<std::vector<int>> test_grid = residue_grid(test, perm);

    // column of each residue in the test MSA
    std::vector<std::vector<int>> test_col(k);
    for (int i = 0; i < k; ++i) {
        test_col[i].assign(test.width() + 1, -1);
        for (int c = 0; c < test.width(); ++c) {
            if (test_grid[i][c] > 0) {
                test_col[i][test_grid[i][c]] = c;
            }
        }
    }

    // residue/gap signatures of test columns, for whole-column lookup
    std::map<std::vector<int>, int> test_signatures;
    for (int c = 0; c < test.width(); ++c) {
        std::vector<int> sig(k);
        bool any = false;
        for (int i = 0; i < k; ++i) {
            sig[i] = test_grid[i][c];
            any = any || sig[i] > 0;
        }
        if (any) {
            ++test_signatures[std::move(sig)];
        }
    }

    ScoreReport report;
    for (int c = 0; c < reference.width(); ++c) {
        std::vector<int> members;
        std::vector<int> sig(k);
        for (int i = 0; i < k; ++i) {
            sig[i] = ref_grid[i][c];
            if (sig[i] > 0) {
                members.push_back(i);
            }
        }
        if (members.empty()) {
            continue;
        }
        ++report.columns_ref;
        if (test_signatures.count(sig)) {
            ++report.columns_correct;
        }
        for (size_t a = 0; a < members.size(); ++a) {
            for (size_t b = a + 1; b < members.size(); ++b) {
                int i = members[a];
                int j = members[b];
                ++report.aligned_pairs_ref;
                if (test_col[i][ref_grid[i][c]] == test_col[j][ref_grid[j][c]]) {
                    ++report.aligned_pairs_correct;
                }
            }
        }
    }
    report.sp = report.aligned_pairs_ref
                    ? static_cast<double>(report.aligned_pairs_correct) / report.aligned_pairs_ref
                    : 0.0;
    report.tc = report.columns_ref
                    ? static_cast<double>(report.columns_correct) / report.columns_ref
                    : 0.0;
    return report;
}

double sp_score(const Msa& test, const Msa& reference) {
    return score_msa(test, reference).sp;
}

double tc_score(const Msa& test, const Msa& reference) {
    return score_msa(test, reference).tc;
}

void write_score_tsv(std::ostream& out, const ScoreReport& report) {
    out << report.sp << '\t' << report.tc << '\t' << report.aligned_pairs_ref << '\t'
        << report.aligned_pairs_correct << '\t' << report.columns_ref << '\t'
        << report.columns_correct << '\n';
}

}  // namespace mmsa
