// mmsa: median-warping multiple sequence alignment toolkit.
//
// Subcommands: pairwise (all-pairs affine-gap alignment), align (median
// MSA), score (SP/TC against a reference), simulate (star-tree indel +
// substitution evolution), bench (replicated simulation benchmark).

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmsa/bench.hpp"
#include "mmsa/evolve_sim.hpp"
#include "mmsa/median_msa.hpp"
#include "mmsa/msa_score.hpp"
#include "mmsa/pairwise_align.hpp"
#include "mmsa/seqio.hpp"

namespace {

using namespace mmsa;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file '" + path + "'");
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    return out;
}

const Alphabet& alphabet_by_name(const std::string& name) {
    if (name == "dna") {
        return Alphabet::dna();
    }
    if (name == "protein") {
        return Alphabet::protein();
    }
    throw std::runtime_error("unknown alphabet '" + name + "'");
}

ScoringScheme scheme_by_name(const std::string& name, const std::string& mode) {
    AlignMode m;
    if (mode == "global") {
        m = AlignMode::Global;
    } else if (mode == "overlap") {
        m = AlignMode::Overlap;
    } else {
        throw std::runtime_error("unknown mode '" + mode + "'");
    }
    if (name == "dna-default") {
        ScoringScheme scheme = dna_default_scheme();
        scheme.set_mode(m);
        return scheme;
    }
    if (name == "blosum62") {
        return blosum62_scheme(m);
    }
    throw std::runtime_error("unknown scheme '" + name + "'");
}

std::string path_to_string(const AlignmentPath& path) {
    std::ostringstream out;
    for (size_t i = 0; i < path.points.size(); ++i) {
        out << (i ? " " : "") << path.points[i].x << ',' << path.points[i].y;
    }
    return out.str();
}

Weights weights_from_file(const std::string& path, const std::vector<Sequence>& seqs,
                          double epsilon) {
    std::ifstream in = open_input(path);
    std::map<std::string, double> by_id;
    std::string id;
    double distance;
    while (in >> id >> distance) {
        if (!by_id.emplace(id, distance).second) {
            throw std::runtime_error("duplicate id '" + id + "' in weights file");
        }
    }
    std::vector<double> distances;
    for (const Sequence& seq : seqs) {
        auto it = by_id.find(seq.id);
        if (it == by_id.end()) {
            throw std::runtime_error("weights file has no distance for '" + seq.id + "'");
        }
        distances.push_back(it->second);
    }
    if (by_id.size() != seqs.size()) {
        throw std::runtime_error("weights file lists ids absent from the input");
    }
    return compute_weights(distances, epsilon);
}

struct CommonOptions {
    std::string in;
    std::string out;
    std::string alphabet = "dna";
    std::string scheme = "dna-default";
    std::string mode = "global";
    int threads = 1;
};

int cmd_pairwise(const CommonOptions& opt) {
    std::ifstream in = open_input(opt.in);
    std::vector<Sequence> seqs = read_fasta(in, alphabet_by_name(opt.alphabet));
    if (seqs.size() < 2) {
        throw std::runtime_error("pairwise needs at least two sequences");
    }
    PairTable table = align_all_pairs(seqs, scheme_by_name(opt.scheme, opt.mode), opt.threads);
    std::ofstream out = open_output(opt.out);
    out << "i\tj\tscore\tpath\n";
    for (size_t i = 0; i < seqs.size(); ++i) {
        for (size_t j = i + 1; j < seqs.size(); ++j) {
            out << seqs[i].id << '\t' << seqs[j].id << '\t' << table.scores[i][j] << '\t'
                << path_to_string(table.paths[i][j]) << '\n';
        }
    }
    return 0;
}

int cmd_align(const CommonOptions& opt, const std::string& weights_file, double epsilon,
              const std::string& tables_file) {
    std::ifstream in = open_input(opt.in);
    std::vector<Sequence> seqs = read_fasta(in, alphabet_by_name(opt.alphabet));
    if (seqs.size() < 2) {
        throw std::runtime_error("align needs at least two sequences");
    }
    PairTable table = align_all_pairs(seqs, scheme_by_name(opt.scheme, opt.mode), opt.threads);
    Weights weights;
    const Weights* weights_ptr = nullptr;
    if (!weights_file.empty()) {
        weights = weights_from_file(weights_file, seqs, epsilon);
        weights_ptr = &weights;
    }
    MsaTables tables = build_tables(seqs, table.paths, weights_ptr, opt.threads);
    Msa msa = render(tables, seqs);
    std::ofstream out = open_output(opt.out);
    write_aligned_fasta(out, msa);
    if (!tables_file.empty()) {
        std::ofstream tsv = open_output(tables_file);
        write_tables_tsv(tsv, tables);
    }
    return 0;
}

int cmd_score(const std::string& test_file, const std::string& ref_file,
              const std::string& alphabet, const std::string& out_file) {
    std::ifstream test_in = open_input(test_file);
    std::ifstream ref_in = open_input(ref_file);
    const Alphabet& a = alphabet_by_name(alphabet);
    Msa test = read_aligned_fasta(test_in, a);
    Msa reference = read_aligned_fasta(ref_in, a);
    ScoreReport report = score_msa(test, reference);
    if (out_file.empty()) {
        write_score_tsv(std::cout, report);
    } else {
        std::ofstream out = open_output(out_file);
        write_score_tsv(out, report);
    }
    return 0;
}

int cmd_simulate(const SimParams& params, const std::string& prefix) {
    SimOutput sim = simulate(params);
    {
        std::ofstream out = open_output(prefix + ".ancestor.fasta");
        write_fasta(out, {sim.ancestor});
    }
    {
        std::ofstream out = open_output(prefix + ".descendants.fasta");
        write_fasta(out, sim.descendants);
    }
    {
        std::ofstream out = open_output(prefix + ".reference.fasta");
        write_aligned_fasta(out, sim.reference);
    }
    std::ofstream out = open_output(prefix + ".homcols.txt");
    for (size_t i = 0; i < sim.reference.homologous_columns.size(); ++i) {
        out << (i ? " " : "") << sim.reference.homologous_columns[i];
    }
    out << '\n';
    return 0;
}

int cmd_bench(const SimParams& base, const std::string& k_list_csv, int replicates,
              int threads, const std::string& out_file) {
    std::vector<int> k_list;
    std::stringstream csv(k_list_csv);
    std::string item;
    while (std::getline(csv, item, ',')) {
        k_list.push_back(std::stoi(item));
    }
    if (k_list.empty()) {
        throw std::runtime_error("--k-list is empty");
    }
    std::vector<BenchRow> rows = run_benchmark(base, k_list, replicates, threads);
    std::ofstream out = open_output(out_file);
    write_bench_tsv(out, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"median-warping multiple sequence alignment toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string weights_file;
    double epsilon = 1.0;
    std::string tables_file;
    std::string test_file;
    std::string ref_file;
    std::string prefix;
    SimParams params;
    std::string k_list_csv = "10,20";
    int replicates = 10;

    auto add_scheme_flags = [&](CLI::App* cmd) {
        cmd->add_option("--alphabet", opt.alphabet, "dna or protein")
            ->check(CLI::IsMember({"dna", "protein"}));
        cmd->add_option("--scheme", opt.scheme, "dna-default or blosum62")
            ->check(CLI::IsMember({"dna-default", "blosum62"}));
        cmd->add_option("--mode", opt.mode, "global or overlap")
            ->check(CLI::IsMember({"global", "overlap"}));
    };
    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", params.n_ancestor, "ancestor length");
        cmd->add_option("--k", params.k, "number of sequences");
        cmd->add_option("--lambda", params.lambda, "insertion rate");
        cmd->add_option("--mu", params.mu, "deletion rate");
        cmd->add_option("--alpha", params.alpha, "substitution rate");
        cmd->add_option("--t", params.branch_length, "branch length");
        cmd->add_option("--seed", params.seed, "RNG seed");
    };

    CLI::App* pairwise = app.add_subcommand("pairwise", "all-pairs alignment scores and paths");
    pairwise->add_option("--in", opt.in, "input FASTA")->required();
    pairwise->add_option("--out", opt.out, "output TSV")->required();
    pairwise->add_option("--threads", opt.threads, "worker threads");
    add_scheme_flags(pairwise);

    CLI::App* align = app.add_subcommand("align", "median multiple sequence alignment");
    align->add_option("--in", opt.in, "input FASTA")->required();
    align->add_option("--out", opt.out, "output aligned FASTA")->required();
    align->add_option("--weights", weights_file, "two-column id/distance file");
    align->add_option("--epsilon", epsilon, "weight formula epsilon");
    align->add_option("--tables", tables_file, "also write Hom/Ins tables TSV");
    align->add_option("--threads", opt.threads, "worker threads");
    add_scheme_flags(align);

    CLI::App* score = app.add_subcommand("score", "SP/TC scores against a reference");
    score->add_option("--test", test_file, "test aligned FASTA")->required();
    score->add_option("--ref", ref_file, "reference aligned FASTA")->required();
    score->add_option("--out", opt.out, "output TSV (default: stdout)");
    score->add_option("--alphabet", opt.alphabet, "dna or protein")
        ->check(CLI::IsMember({"dna", "protein"}));

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "star-tree sequence evolution");
    simulate_cmd->add_option("--out", prefix, "output file prefix")->required();
    add_sim_flags(simulate_cmd);

    CLI::App* bench = app.add_subcommand("bench", "replicated simulation benchmark");
    bench->add_option("--out", opt.out, "output TSV")->required();
    bench->add_option("--k-list", k_list_csv, "comma-separated sequence counts");
    bench->add_option("--replicates", replicates, "replicates per count");
    bench->add_option("--threads", opt.threads, "worker threads");
    add_sim_flags(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        if (pairwise->parsed()) {
            return cmd_pairwise(opt);
        }
        if (align->parsed()) {
            return cmd_align(opt, weights_file, epsilon, tables_file);
        }
        if (score->parsed()) {
            return cmd_score(test_file, ref_file, opt.alphabet, opt.out);
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(params, prefix);
        }
        if (bench->parsed()) {
            return cmd_bench(params, k_list_csv, replicates, opt.threads, opt.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
