#include "mmsa/pairwise_align.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mmsa/parallel.hpp"

namespace mmsa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// BLOSUM62, row-major over ARNDCQEGHILKMFPSTWYV.
constexpr signed char kBlosum62[400] = {
    //  A   R   N   D   C   Q   E   G   H   I   L   K   M   F   P   S   T   W   Y   V
        4, -1, -2, -2,  0, -1, -1,  0, -2, -1, -1, -1, -1, -2, -1,  1,  0, -3, -2,  0,  // A
       -1,  5,  0, -2, -3,  1,  0, -2,  0, -3, -2,  2, -1, -3, -2, -1, -1, -3, -2, -3,  // R
       -2,  0,  6,  1, -3,  0,  0,  0,  1, -3, -3,  0, -2, -3, -2,  1,  0, -4, -2, -3,  // N
       -2, -2,  1,  6, -3,  0,  2, -1, -1, -3, -4, -1, -3, -3, -1,  0, -1, -4, -3, -3,  // D
        0, -3, -3, -3,  9, -3, -4, -3, -3, -1, -1, -3, -1, -2, -3, -1, -1, -2, -2, -1,  // C
       -1,  1,  0,  0, -3,  5,  2, -2,  0, -3, -2,  1,  0, -3, -1,  0, -1, -2, -1, -2,  // Q
       -1,  0,  0,  2, -4,  2,  5, -2,  0, -3, -3,  1, -2, -3, -1,  0, -1, -3, -2, -2,  // E
        0, -2,  0, -1, -3, -2, -2,  6, -2, -4, -4, -2, -3, -3, -2,  0, -2, -2, -3, -3,  // G
       -2,  0,  1, -1, -3,  0,  0, -2,  8, -3, -3, -1, -2, -1, -2, -1, -2, -2,  2, -3,  // H
       -1, -3, -3, -3, -1, -3, -3, -4, -3,  4,  2, -3,  1,  0, -3, -2, -1, -3, -1,  3,  // I
       -1, -2, -3, -4, -1, -2, -3, -4, -3,  2,  4, -2,  2,  0, -3, -2, -1, -2, -1,  1,  // L
       -1,  2,  0, -1, -3,  1,  1, -2, -1, -3, -2,  5, -1, -3, -1,  0, -1, -3, -2, -2,  // K
       -1, -1, -2, -3, -1,  0, -2, -3, -2,  1,  2, -1,  5,  0, -2, -1, -1, -1, -1,  1,  // M
       -2, -3, -3, -3, -2, -3, -3, -3, -1,  0,  0, -3,  0,  6, -4, -2, -2,  1,  3, -1,  // F
       -1, -2, -2, -1, -3, -1, -1, -2, -2, -3, -3, -1, -2, -4,  7, -1, -1, -4, -3, -2,  // P
        1, -1,  1,  0, -1,  0,  0,  0, -1, -2, -2,  0, -1, -2, -1,  4,  1, -3, -2, -2,  // S
        0, -1,  0, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, -2, -1,  1,  5, -2, -2,  0,  // T
       -3, -3, -4, -4, -2, -2, -3, -2, -2, -3, -2, -3, -1,  1, -4, -3, -2, 11,  2, -3,  // W
       -2, -2, -2, -3, -2, -1, -2, -3,  2, -1, -1, -2, -1,  3, -3, -2, -2,  2,  7, -1,  // Y
        0, -3, -3, -3, -1, -2, -2, -3, -3,  3,  1, -2,  1, -1, -2, -2,  0, -3, -1,  4,  // V
};

// DP states, also the traceback precedence: the alignment column a state
// ends with is diagonal for M, consumes y for GapY, consumes x for GapX.
enum State : int { kM = 0, kGapY = 1, kGapX = 2 };

struct Matrix {
    std::vector<double> v;
    int cols = 0;

    Matrix(int rows, int cols_, double fill) : v(size_t(rows) * cols_, fill), cols(cols_) {}
    double& at(int i, int j) { return v[size_t(i) * cols + j]; }
    double at(int i, int j) const { return v[size_t(i) * cols + j]; }
};

struct ByteMatrix {
    std::vector<signed char> v;
    int cols = 0;

    ByteMatrix(int rows, int cols_) : v(size_t(rows) * cols_, -1), cols(cols_) {}
    signed char& at(int i, int j) { return v[size_t(i) * cols + j]; }
    signed char at(int i, int j) const { return v[size_t(i) * cols + j]; }
};

// max over the three states with precedence M > GapY > GapX on ties
int best_state(double m, double gy, double gx) {
    int state = kM;
    double best = m;
    if (gy > best) {
        best = gy;
        state = kGapY;
    }
    if (gx > best) {
        state = kGapX;
    }
    return state;
}

void check_covered(const Sequence& seq, const ScoringScheme& scheme) {
    for (char c : seq.residues) {
        if (!scheme.covers(c)) {
            throw std::invalid_argument("sequence '" + seq.id + "': symbol '" +
                                        std::string(1, c) + "' not covered by scoring scheme");
        }
    }
}

AlignmentPath diagonal_path(int n) {
    AlignmentPath path;
    path.points.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        path.points.push_back({i, i});
    }
    return path;
}

}  // namespace

ScoringScheme::ScoringScheme(std::string symbols, std::vector<double> matrix, double gap_open,
                             double gap_extend, AlignMode mode)
    : symbols_(std::move(symbols)),
      matrix_(std::move(matrix)),
      gap_open_(gap_open),
      gap_extend_(gap_extend),
      mode_(mode) {
    size_t a = symbols_.size();
    if (matrix_.size() != a * a) {
        throw std::invalid_argument("substitution matrix size does not match symbol count");
    }
    if (gap_open_ < 0 || gap_extend_ < 0) {
        throw std::invalid_argument("gap penalties must be nonnegative");
    }
    std::fill(std::begin(index_), std::end(index_), -1);
    for (size_t i = 0; i < a; ++i) {
        unsigned char c = static_cast<unsigned char>(symbols_[i]);
        if (index_[c] >= 0) {
            throw std::invalid_argument("duplicate symbol in substitution matrix");
        }
        index_[c] = static_cast<int>(i);
    }
    for (size_t i = 0; i < a; ++i) {
        for (size_t j = i + 1; j < a; ++j) {
            if (matrix_[i * a + j] != matrix_[j * a + i]) {
                throw std::invalid_argument("substitution matrix is not symmetric");
            }
        }
    }
}

double ScoringScheme::substitution(char a, char b) const {
    int ia = index_[static_cast<unsigned char>(a)];
    int ib = index_[static_cast<unsigned char>(b)];
    if (ia < 0 || ib < 0) {
        throw std::invalid_argument("symbol not covered by scoring scheme");
    }
    return matrix_[size_t(ia) * symbols_.size() + ib];
}

ScoringScheme dna_default_scheme() {
    const std::string symbols = "ACGT";
    std::vector<double> matrix(16, -4.0);
    for (int i = 0; i < 4; ++i) {
        matrix[i * 4 + i] = 5.0;
    }
    return ScoringScheme(symbols, std::move(matrix), 10.0, 0.5, AlignMode::Global);
}

ScoringScheme blosum62_scheme(AlignMode mode) {
    const std::string symbols = "ARNDCQEGHILKMFPSTWYV";
    std::vector<double> matrix(kBlosum62, kBlosum62 + 400);
    return ScoringScheme(symbols, std::move(matrix), 10.0, 0.5, mode);
}

ScoringScheme load_matrix_scheme(std::istream& in, double gap_open, double gap_extend,
                                 AlignMode mode) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::vector<std::string> toks;
        std::string tok;
        while (fields >> tok) {
            toks.push_back(tok);
        }
        if (!toks.empty()) {
            rows.push_back(std::move(toks));
        }
    }
    if (rows.empty()) {
        throw std::runtime_error("matrix file: missing header row of symbols");
    }
    std::string symbols;
    for (const std::string& tok : rows[0]) {
        if (tok.size() != 1 || !std::isalpha(static_cast<unsigned char>(tok[0]))) {
            throw std::runtime_error("matrix file: bad header symbol '" + tok + "'");
        }
        symbols.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0]))));
    }
    size_t a = symbols.size();
    if (rows.size() != a + 1) {
        throw std::runtime_error("matrix file: expected one score row per symbol");
    }
    std::vector<double> matrix(a * a);
    for (size_t i = 0; i < a; ++i) {
        const std::vector<std::string>& toks = rows[i + 1];
        size_t off = 0;
        if (toks.size() == a + 1) {
            // optional row label, must repeat the header symbol
            if (toks[0].size() != 1 ||
                std::toupper(static_cast<unsigned char>(toks[0][0])) != symbols[i]) {
                throw std::runtime_error("matrix file: bad row label '" + toks[0] + "'");
            }
            off = 1;
        } else if (toks.size() != a) {
            throw std::runtime_error("matrix file: truncated score rows");
        }
        for (size_t j = 0; j < a; ++j) {
            size_t used = 0;
            try {
                matrix[i * a + j] = std::stod(toks[off + j], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != toks[off + j].size()) {
                throw std::runtime_error("matrix file: bad score token '" + toks[off + j] +
                                         "'");
            }
        }
    }
    return ScoringScheme(std::move(symbols), std::move(matrix), gap_open, gap_extend, mode);
}

PairwiseResult align_pair(const Sequence& x, const Sequence& y, const ScoringScheme& scheme) {
    check_covered(x, scheme);
    check_covered(y, scheme);
    const int n = x.length();
    const int m = y.length();
    const bool overlap = scheme.mode() == AlignMode::Overlap;
    const double open_cost = scheme.gap_open() + scheme.gap_extend();
    const double ext_cost = scheme.gap_extend();

    Matrix score_m(n + 1, m + 1, kNegInf);
    Matrix score_gy(n + 1, m + 1, kNegInf);
    Matrix score_gx(n + 1, m + 1, kNegInf);
    ByteMatrix tb_m(n + 1, m + 1);
    ByteMatrix tb_gy(n + 1, m + 1);
    ByteMatrix tb_gx(n + 1, m + 1);

    score_m.at(0, 0) = 0;
    for (int i = 1; i <= n; ++i) {
        score_gx.at(i, 0) = overlap ? 0.0 : -(scheme.gap_open() + i * ext_cost);
        tb_gx.at(i, 0) = i == 1 ? kM : kGapX;
    }
    for (int j = 1; j <= m; ++j) {
        score_gy.at(0, j) = overlap ? 0.0 : -(scheme.gap_open() + j * ext_cost);
        tb_gy.at(0, j) = j == 1 ? kM : kGapY;
    }

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            double sub = scheme.substitution(x.residues[i - 1], y.residues[j - 1]);
            int from = best_state(score_m.at(i - 1, j - 1), score_gy.at(i - 1, j - 1),
                                  score_gx.at(i - 1, j - 1));
            double base = from == kM     ? score_m.at(i - 1, j - 1)
                          : from == kGapY ? score_gy.at(i - 1, j - 1)
                                          : score_gx.at(i - 1, j - 1);
            score_m.at(i, j) = base + sub;
            tb_m.at(i, j) = static_cast<signed char>(from);

            from = best_state(score_m.at(i, j - 1) - open_cost,
                              score_gy.at(i, j - 1) - ext_cost,
                              score_gx.at(i, j - 1) - open_cost);
            score_gy.at(i, j) = from == kM     ? score_m.at(i, j - 1) - open_cost
                                : from == kGapY ? score_gy.at(i, j - 1) - ext_cost
                                                : score_gx.at(i, j - 1) - open_cost;
            tb_gy.at(i, j) = static_cast<signed char>(from);

            from = best_state(score_m.at(i - 1, j) - open_cost,
                              score_gy.at(i - 1, j) - open_cost,
                              score_gx.at(i - 1, j) - ext_cost);
            score_gx.at(i, j) = from == kM     ? score_m.at(i - 1, j) - open_cost
                                : from == kGapY ? score_gy.at(i - 1, j) - open_cost
                                                : score_gx.at(i - 1, j) - ext_cost;
            tb_gx.at(i, j) = static_cast<signed char>(from);
        }
    }

    auto cell_best = [&](int i, int j) {
        return std::max(score_m.at(i, j), std::max(score_gy.at(i, j), score_gx.at(i, j)));
    };

    // End cell: (n,m) in Global mode; the best cell on the last row or
    // column in Overlap mode, scanned outward from (n,m), keeping the first
    // maximum so terminal gaps are the shortest among ties.
    int end_i = n;
    int end_j = m;
    if (overlap) {
        double best = cell_best(n, m);
        for (int j = m - 1; j >= 0; --j) {
            if (cell_best(n, j) > best) {
                best = cell_best(n, j);
                end_i = n;
                end_j = j;
            }
        }
        for (int i = n - 1; i >= 0; --i) {
            if (cell_best(i, m) > best) {
                best = cell_best(i, m);
                end_i = i;
                end_j = m;
            }
        }
    }

    PairwiseResult result;
    result.score = cell_best(end_i, end_j);

    // Traceback, collecting points in reverse. Terminal free steps first.
    std::vector<Point> rev;
    rev.push_back({n, m});
    for (int j = m - 1; j >= end_j; --j) {
        rev.push_back({n, j});
    }
    for (int i = n - 1; i >= end_i; --i) {
        rev.push_back({i, m});
    }
    if (rev.back() != Point{end_i, end_j}) {
        rev.push_back({end_i, end_j});
    }

    int i = end_i;
    int j = end_j;
    int state = best_state(score_m.at(i, j), score_gy.at(i, j), score_gx.at(i, j));
    while (i > 0 || j > 0) {
        if (overlap && (i == 0 || j == 0)) {
            // leading free run straight to the origin
            while (i > 0) {
                rev.push_back({--i, 0});
            }
            while (j > 0) {
                rev.push_back({0, --j});
            }
            break;
        }
        int from;
        if (state == kM) {
            from = tb_m.at(i, j);
            --i;
            --j;
        } else if (state == kGapY) {
            from = tb_gy.at(i, j);
            --j;
        } else {
            from = tb_gx.at(i, j);
            --i;
        }
        rev.push_back({i, j});
        state = from;
    }

    std::reverse(rev.begin(), rev.end());
    result.path.points = std::move(rev);
    return result;
}

PairTable align_all_pairs(const std::vector<Sequence>& seqs, const ScoringScheme& scheme,
                          int n_threads) {
    const int k = static_cast<int>(seqs.size());
    PairTable table;
    table.paths.assign(k, std::vector<AlignmentPath>(k));
    table.scores.assign(k, std::vector<double>(k, 0.0));

    for (int i = 0; i < k; ++i) {
        table.paths[i][i] = diagonal_path(seqs[i].length());
        double self = 0;
        for (char c : seqs[i].residues) {
            self += scheme.substitution(c, c);
        }
        table.scores[i][i] = self;
    }

    std::vector<std::pair<int, int>> jobs;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            jobs.push_back({i, j});
        }
    }
    parallel_for(static_cast<int>(jobs.size()), n_threads, [&](int job) {
        auto [i, j] = jobs[job];
        PairwiseResult r = align_pair(seqs[i], seqs[j], scheme);
        table.scores[i][j] = r.score;
        table.scores[j][i] = r.score;
        table.paths[j][i] = invert(r.path);
        table.paths[i][j] = std::move(r.path);
    });
    return table;
}

}  // namespace mmsa
