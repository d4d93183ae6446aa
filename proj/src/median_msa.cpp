#include "mmsa/median_msa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "mmsa/parallel.hpp"

namespace mmsa {

namespace {

// weight mass considered equal to 1/2 when testing for a straddle
constexpr double kHalfTolerance = 1e-9;

// mean of two order statistics a <= b under the integer constraint
int mean_or_floor(int a, int b) {
    long long sum = static_cast<long long>(a) + b;
    // sum >= 0 here (path coordinates and lengths), so >> 1 floors
    return static_cast<int>(sum % 2 == 0 ? sum / 2 : sum >> 1);
}

bool is_identity_path(const AlignmentPath& path) {
    for (const Point& p : path.points) {
        if (p.x != p.y) {
            return false;
        }
    }
    return !path.points.empty();
}

}  // namespace

int integer_median(std::vector<int> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of empty list");
    }
    size_t k = values.size();
    auto mid = values.begin() + k / 2;
    std::nth_element(values.begin(), mid, values.end());
    if (k % 2 == 1) {
        return *mid;
    }
    int upper = *mid;
    int lower = *std::max_element(values.begin(), mid);
    return mean_or_floor(lower, upper);
}

int estimate_n_hat(const std::vector<int>& lengths) {
    return integer_median(lengths);
}

Weights compute_weights(const std::vector<double>& distances, double epsilon) {
    if (distances.empty()) {
        throw std::invalid_argument("weights need at least one distance");
    }
    if (epsilon <= 0) {
        throw std::invalid_argument("epsilon must be positive");
    }
    for (double d : distances) {
        if (d < 0) {
            throw std::invalid_argument("negative distance");
        }
    }
    double d_max = *std::max_element(distances.begin(), distances.end());
    Weights weights;
    weights.w.reserve(distances.size());
    double total = 0;
    for (double d : distances) {
        double unnorm = 1.0 - d / (d_max + epsilon);
        weights.w.push_back(unnorm);
        total += unnorm;
    }
    for (double& w : weights.w) {
        w /= total;
    }
    return weights;
}

int weighted_integer_median(std::vector<int> values, const Weights& weights) {
    if (values.empty()) {
        throw std::invalid_argument("median of empty list");
    }
    if (values.size() != weights.w.size()) {
        throw std::invalid_argument("value and weight counts differ");
    }
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    double cum = 0;
    for (size_t t = 0; t < order.size(); ++t) {
        cum += weights.w[order[t]];
        if (cum > 0.5 + kHalfTolerance) {
            return values[order[t]];
        }
        if (cum >= 0.5 - kHalfTolerance) {
            // exactly half the mass at or below this value: the median
            // straddles this value and the next one
            int a = values[order[t]];
            int b = t + 1 < order.size() ? values[order[t + 1]] : a;
            return mean_or_floor(a, b);
        }
    }
    return values[order.back()];
}

AlignmentPath median_path(int self_index, const std::vector<AlignmentPath>& paths, int n_hat,
                          const Weights* weights, MedianDiagnostics* diag) {
    const int k = static_cast<int>(paths.size());
    if (k == 0) {
        throw std::invalid_argument("median of zero paths");
    }
    if (self_index < 0 || self_index >= k) {
        throw std::invalid_argument("self index out of range");
    }
    if (!is_identity_path(paths[self_index])) {
        throw std::invalid_argument("missing identity self-alignment");
    }
    const int n = paths[0].n();
    std::vector<std::vector<StepCoords>> coords;
    coords.reserve(k);
    for (const AlignmentPath& path : paths) {
        if (path.n() != n) {
            throw std::invalid_argument("paths disagree on the shared first axis");
        }
        coords.push_back(all_step_coords(path));
    }
    if (weights && static_cast<int>(weights->w.size()) != k) {
        throw std::invalid_argument("weight count does not match path count");
    }

    AlignmentPath out;
    out.points.reserve(n + n_hat + 1);
    out.points.push_back({0, 0});
    std::vector<int> v1s(k);
    std::vector<int> v2s(k);
    int clamped = 0;
    for (int u = 1; u <= n; ++u) {
        for (int j = 0; j < k; ++j) {
            v1s[j] = coords[j][u - 1].v1;
            v2s[j] = coords[j][u - 1].v2;
        }
        int med1 = weights ? weighted_integer_median(v1s, *weights) : integer_median(v1s);
        int med2 = weights ? weighted_integer_median(v2s, *weights) : integer_median(v2s);
        if (med1 > n_hat) {
            med1 = n_hat;
            ++clamped;
        }
        if (med2 > n_hat) {
            med2 = n_hat;
            ++clamped;
        }
        // med1 never falls below the previous med2: per-path step coordinates
        // satisfy v1(u) >= v2(u-1) and the median preserves coordinate-wise
        // order over a common index set
        if (med1 < out.points.back().y || med2 < med1 || med2 > med1 + 1) {
            throw std::logic_error("median points are not monotone");
        }
        for (int y = out.points.back().y + 1; y <= med1; ++y) {
            out.points.push_back({u - 1, y});
        }
        out.points.push_back({u, med2});
    }
    for (int y = out.points.back().y + 1; y <= n_hat; ++y) {
        out.points.push_back({n, y});
    }
    if (diag) {
        diag->clamped_points += clamped;
    }
    return out;
}

MsaTables build_tables(const std::vector<Sequence>& seqs,
                       const std::vector<std::vector<AlignmentPath>>& pairwise,
                       const Weights* weights, int n_threads, MedianDiagnostics* diag) {
    const int k = static_cast<int>(seqs.size());
    if (k == 0) {
        throw std::invalid_argument("no sequences");
    }
    if (static_cast<int>(pairwise.size()) != k) {
        throw std::invalid_argument("pairwise table is not K x K");
    }
    std::vector<int> lengths(k);
    for (int i = 0; i < k; ++i) {
        lengths[i] = seqs[i].length();
        if (static_cast<int>(pairwise[i].size()) != k) {
            throw std::invalid_argument("pairwise table is not K x K");
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const AlignmentPath& p = pairwise[i][j];
            if (!is_valid(p) || p.n() != lengths[i] || p.m() != lengths[j]) {
                throw std::invalid_argument("pairwise path does not fit its sequences");
            }
            if (j > i && pairwise[j][i] != invert(p)) {
                throw std::invalid_argument("pairwise table is not mirror-consistent");
            }
        }
    }

    MsaTables tables;
    tables.n_hat = estimate_n_hat(lengths);
    tables.hom.assign(k, std::vector<int>(tables.n_hat, 0));
    tables.ins.assign(k, std::vector<int>(tables.n_hat + 1, 0));
    tables.paths.assign(k, {});
    std::atomic<int> clamped{0};
    std::atomic<int> collisions{0};

    parallel_for(k, n_threads, [&](int i) {
        MedianDiagnostics local;
        tables.paths[i] = median_path(i, pairwise[i], tables.n_hat, weights, &local);
        clamped += local.clamped_points;
        // classify every position of sequence i off its median path: a
        // diagonal step lands in a homologous column, a horizontal step in
        // the insertion bucket at its height
        for (const StepCoords& step : all_step_coords(tables.paths[i])) {
            if (step.v2 == step.v1 + 1) {
                if (tables.hom[i][step.v2 - 1] == 0) {
                    tables.hom[i][step.v2 - 1] = step.u;
                    continue;
                }
                // column already claimed (possible only after clamping);
                // the later residue demotes to an insertion
                ++collisions;
            }
            ++tables.ins[i][step.v2];
        }
    });
    if (diag) {
        diag->clamped_points += clamped.load();
        diag->hom_collisions += collisions.load();
    }
    return tables;
}

Msa render(const MsaTables& tables, const std::vector<Sequence>& seqs) {
    const int k = tables.depth();
    const int n_hat = tables.n_hat;
    if (static_cast<int>(seqs.size()) != k) {
        throw std::invalid_argument("sequence count does not match tables");
    }
    // bucket b spans the columns before homologous column b+1
    std::vector<int> depth(n_hat + 1, 0);
    for (int b = 0; b <= n_hat; ++b) {
        for (int i = 0; i < k; ++i) {
            depth[b] = std::max(depth[b], tables.ins[i][b]);
        }
    }
    int width = n_hat + std::accumulate(depth.begin(), depth.end(), 0);

    std::vector<int> bucket_start(n_hat + 1, 0);
    std::vector<int> hom_col(n_hat, 0);
    int col = 0;
    for (int b = 0; b <= n_hat; ++b) {
        bucket_start[b] = col;
        col += depth[b];
        if (b < n_hat) {
            hom_col[b] = col++;
        }
    }

    Msa msa;
    msa.ids.reserve(k);
    msa.rows.assign(k, std::string(width, kGap));
    for (int b = 0; b < n_hat; ++b) {
        msa.homologous_columns.push_back(hom_col[b] + 1);
    }
    for (int i = 0; i < k; ++i) {
        msa.ids.push_back(seqs[i].id);
        const std::string& residues = seqs[i].residues;
        int u = 1;
        for (int b = 0; b <= n_hat; ++b) {
            for (int r = 0; r < tables.ins[i][b]; ++r) {
                if (u > seqs[i].length()) {
                    throw std::invalid_argument("tables place more residues than sequence '" +
                                                seqs[i].id + "' has");
                }
                msa.rows[i][bucket_start[b] + r] = residues[u++ - 1];
            }
            if (b < n_hat && tables.hom[i][b] != 0) {
                if (tables.hom[i][b] != u) {
                    throw std::invalid_argument("tables are not in residue order for '" +
                                                seqs[i].id + "'");
                }
                msa.rows[i][hom_col[b]] = residues[u++ - 1];
            }
        }
        if (u != seqs[i].length() + 1) {
            throw std::invalid_argument("tables do not account for every residue of '" +
                                        seqs[i].id + "'");
        }
    }
    return msa;
}

MsaTables extract_tables(const Msa& msa, const std::vector<int>& homologous_columns) {
    const int k = msa.depth();
    const int width = msa.width();
    std::vector<bool> is_hom(width + 1, false);
    for (int c : homologous_columns) {
        if (c < 1 || c > width) {
            throw std::out_of_range("homologous column " + std::to_string(c) +
                                    " outside 1.." + std::to_string(width));
        }
        is_hom[c] = true;
    }
    const int n_hat = static_cast<int>(homologous_columns.size());

    MsaTables tables;
    tables.n_hat = n_hat;
    tables.hom.assign(k, std::vector<int>(n_hat, 0));
    tables.ins.assign(k, std::vector<int>(n_hat + 1, 0));
    tables.paths.assign(k, {});
    for (int i = 0; i < k; ++i) {
        AlignmentPath& path = tables.paths[i];
        path.points.push_back({0, 0});
        int u = 0;
        int b = 0;
        for (int c = 1; c <= width; ++c) {
            bool residue = msa.rows[i][c - 1] != kGap;
            if (is_hom[c]) {
                if (residue) {
                    tables.hom[i][b] = ++u;
                }
                ++b;
                path.points.push_back({u, b});
            } else if (residue) {
                ++tables.ins[i][b];
                path.points.push_back({++u, b});
            }
        }
    }
    return tables;
}

void write_tables_tsv(std::ostream& out, const MsaTables& tables) {
    out << tables.depth() << '\t' << tables.n_hat << '\n';
    for (const auto& row : tables.hom) {
        for (size_t j = 0; j < row.size(); ++j) {
            out << (j ? "\t" : "") << row[j];
        }
        out << '\n';
    }
    for (const auto& row : tables.ins) {
        for (size_t j = 0; j < row.size(); ++j) {
            out << (j ? "\t" : "") << row[j];
        }
        out << '\n';
    }
}

}  // namespace mmsa
