#include "mmsa/evolve_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmsa/rng.hpp"

namespace mmsa {

namespace {

constexpr char kBases[] = "ACGT";

// Per-branch transition probabilities of the birth-death indel process over
// elapsed time t. alpha: residue survival. beta: geometric parameter of
// insert bursts. gamma: probability that a dying residue still leaves a
// burst behind.
struct LinkModel {
    double alpha = 1;
    double beta = 0;
    double gamma = 0;
    double sub_other = 0;  // probability of substituting to one given other base
};

LinkModel link_model(const SimParams& p) {
    double t = p.branch_length;
    LinkModel model;
    model.alpha = std::exp(-p.mu * t);
    if (p.lambda == p.mu) {
        model.beta = p.lambda * t / (1 + p.lambda * t);
    } else {
        // beta = lambda (1 - e^{(lambda-mu)t}) / (mu - lambda e^{(lambda-mu)t}),
        // written with expm1 to stay stable for lambda close to mu
        double e = std::expm1((p.lambda - p.mu) * t);
        model.beta = -p.lambda * e / ((p.mu - p.lambda) - p.lambda * e);
    }
    if (p.lambda > 0 && model.alpha < 1) {
        model.gamma = 1 - p.mu * model.beta / (p.lambda * (1 - model.alpha));
    }
    model.sub_other = 0.25 * -std::expm1(-4.0 * p.alpha * t / 3.0);
    return model;
}

int geometric(Rng& rng, double beta) {
    int count = 0;
    while (rng.u01() < beta) {
        ++count;
    }
    return count;
}

char substituted(Rng& rng, char base, double sub_other) {
    if (rng.u01() >= 3 * sub_other) {
        return base;
    }
    int skip = static_cast<int>(rng.below(3));
    for (char other : {kBases[0], kBases[1], kBases[2], kBases[3]}) {
        if (other != base && skip-- == 0) {
            return other;
        }
    }
    return base;  // unreachable
}

std::string random_dna(Rng& rng, int length) {
    std::string s;
    s.reserve(length);
    for (int i = 0; i < length; ++i) {
        s.push_back(kBases[rng.below(4)]);
    }
    return s;
}

struct Branch {
    // survivor[p-1]: substituted character of ancestral position p, or 0 if
    // the position died on this branch. run[s]: residues inserted after
    // ancestral position s (s = 0: before the first position).
    std::string survivor;
    std::vector<std::string> run;
};

Branch evolve_branch(const std::string& ancestor, const LinkModel& model, Rng& rng) {
    const int n = static_cast<int>(ancestor.size());
    Branch branch;
    branch.survivor.assign(n, '\0');
    branch.run.assign(n + 1, "");
    branch.run[0] = random_dna(rng, geometric(rng, model.beta));
    for (int p = 1; p <= n; ++p) {
        if (rng.u01() < model.alpha) {
            branch.survivor[p - 1] = substituted(rng, ancestor[p - 1], model.sub_other);
            branch.run[p] = random_dna(rng, geometric(rng, model.beta));
        } else if (model.gamma > 0 && rng.u01() < model.gamma) {
            branch.run[p] = random_dna(rng, 1 + geometric(rng, model.beta));
        }
    }
    return branch;
}

}  // namespace

SimOutput simulate(const SimParams& params) {
    if (params.lambda < 0 || params.mu < 0 || params.alpha < 0 || params.branch_length < 0) {
        throw std::invalid_argument("rates and branch length must be nonnegative");
    }
    if (params.n_ancestor < 1 || params.k < 1) {
        throw std::invalid_argument("need at least one ancestral residue and one branch");
    }
    const int n = params.n_ancestor;
    const int k = params.k;
    LinkModel model = link_model(params);

    SimOutput out;
    Rng ancestor_rng(derive_seed(params.seed, 0, 0));
    out.ancestor = {"ancestor", random_dna(ancestor_rng, n)};

    std::vector<Branch> branches;
    branches.reserve(k);
    for (int b = 0; b < k; ++b) {
        Rng rng(derive_seed(params.seed, 1, static_cast<std::uint64_t>(b)));
        branches.push_back(evolve_branch(out.ancestor.residues, model, rng));
    }

    // Column layout: insert runs after ancestral position s, branch by
    // branch, then the column of position s+1 when anyone survived it.
    out.reference.ids.reserve(k);
    out.reference.rows.assign(k, "");
    for (int b = 0; b < k; ++b) {
        out.reference.ids.push_back("S" + std::to_string(b + 1));
    }
    auto emit_runs = [&](int s) {
        for (int b = 0; b < k; ++b) {
            const std::string& run = branches[b].run[s];
            for (char c : run) {
                for (int other = 0; other < k; ++other) {
                    out.reference.rows[other].push_back(other == b ? c : kGap);
                }
            }
        }
    };
    emit_runs(0);
    for (int p = 1; p <= n; ++p) {
        bool survived = false;
        for (int b = 0; b < k; ++b) {
            survived = survived || branches[b].survivor[p - 1] != '\0';
        }
        if (survived) {
            for (int b = 0; b < k; ++b) {
                char c = branches[b].survivor[p - 1];
                out.reference.rows[b].push_back(c ? c : kGap);
            }
            out.reference.homologous_columns.push_back(
                static_cast<int>(out.reference.rows[0].size()));
            out.homologous_ancestor.push_back(p);
        }
        emit_runs(p);
    }

    out.descendants = strip_gaps(out.reference);
    return out;
}

AlignmentPath extract_reference_pairwise(const SimOutput& output, int i, int j) {
    const Msa& ref = output.reference;
    if (i < 0 || j < 0 || i >= ref.depth() || j >= ref.depth()) {
        throw std::out_of_range("row index outside the reference MSA");
    }
    std::string row_i;
    std::string row_j;
    for (int c = 0; c < ref.width(); ++c) {
        if (ref.rows[i][c] == kGap && ref.rows[j][c] == kGap) {
            continue;
        }
        row_i.push_back(ref.rows[i][c]);
        row_j.push_back(ref.rows[j][c]);
    }
    return path_from_alignment(row_i, row_j);
}

}  // namespace mmsa
