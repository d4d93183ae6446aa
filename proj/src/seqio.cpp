#include "mmsa/seqio.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mmsa {

namespace {

constexpr int kWrapWidth = 80;

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "fasta parse error at line " << line_no << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string header_id(const std::string& header) {
    size_t start = 1;
    while (start < header.size() && std::isspace(static_cast<unsigned char>(header[start]))) {
        ++start;
    }
    size_t end = start;
    while (end < header.size() && !std::isspace(static_cast<unsigned char>(header[end]))) {
        ++end;
    }
    return header.substr(start, end - start);
}

// Shared record scan; residue validation differs between plain and aligned
// readers, so it is left to the caller.
std::vector<Sequence> read_records(std::istream& in) {
    std::vector<Sequence> records;
    std::string line;
    int line_no = 0;
    bool in_record = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '>') {
            std::string id = header_id(line);
            if (id.empty()) {
                parse_fail(line_no, "empty record id");
            }
            records.push_back({std::move(id), ""});
            in_record = true;
            continue;
        }
        if (!in_record) {
            parse_fail(line_no, "residue data before first '>' header");
        }
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                continue;
            }
            records.back().residues.push_back(
                static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    return records;
}

void require_symbols(const Sequence& seq, const Alphabet& alphabet, bool allow_gap) {
    for (char c : seq.residues) {
        if (allow_gap && c == kGap) {
            continue;
        }
        if (!alphabet.contains(c)) {
            throw std::runtime_error("sequence '" + seq.id + "': symbol '" +
                                     std::string(1, c) + "' not in " + alphabet.name() +
                                     " alphabet");
        }
    }
}

void write_wrapped(std::ostream& out, const std::string& id, const std::string& residues) {
    out << '>' << id << '\n';
    for (size_t pos = 0; pos < residues.size(); pos += kWrapWidth) {
        out << residues.substr(pos, kWrapWidth) << '\n';
    }
    if (residues.empty()) {
        out << '\n';
    }
}

}  // namespace

Alphabet::Alphabet(AlphabetKind kind, std::string_view symbols)
    : kind_(kind), symbols_(symbols) {
    std::fill(std::begin(index_), std::end(index_), -1);
    for (size_t i = 0; i < symbols_.size(); ++i) {
        index_[static_cast<unsigned char>(symbols_[i])] = static_cast<int>(i);
    }
}

const Alphabet& Alphabet::dna() {
    static const Alphabet a(AlphabetKind::Dna, "ACGT");
    return a;
}

const Alphabet& Alphabet::protein() {
    static const Alphabet a(AlphabetKind::Protein, "ARNDCQEGHILKMFPSTWYV");
    return a;
}

const Alphabet& Alphabet::by_kind(AlphabetKind kind) {
    return kind == AlphabetKind::Dna ? dna() : protein();
}

const char* Alphabet::name() const {
    return kind_ == AlphabetKind::Dna ? "dna" : "protein";
}

std::vector<Sequence> read_fasta(std::istream& in, const Alphabet& alphabet) {
    std::vector<Sequence> seqs = read_records(in);
    if (seqs.empty()) {
        throw std::runtime_error("fasta input contains no records");
    }
    for (const Sequence& seq : seqs) {
        require_symbols(seq, alphabet, /*allow_gap=*/false);
    }
    return seqs;
}

Msa read_aligned_fasta(std::istream& in, const Alphabet& alphabet) {
    std::vector<Sequence> seqs = read_records(in);
    if (seqs.empty()) {
        throw std::runtime_error("fasta input contains no records");
    }
    Msa msa;
    const std::string first_id = seqs.front().id;
    const size_t width = seqs.front().residues.size();
    for (Sequence& seq : seqs) {
        require_symbols(seq, alphabet, /*allow_gap=*/true);
        if (seq.residues.size() != width) {
            throw std::runtime_error("aligned fasta rows differ in length: '" + first_id +
                                     "' vs '" + seq.id + "'");
        }
        msa.ids.push_back(std::move(seq.id));
        msa.rows.push_back(std::move(seq.residues));
    }
    return msa;
}

void write_fasta(std::ostream& out, const std::vector<Sequence>& seqs) {
    for (const Sequence& seq : seqs) {
        write_wrapped(out, seq.id, seq.residues);
    }
}

void write_aligned_fasta(std::ostream& out, const Msa& msa) {
    for (int i = 0; i < msa.depth(); ++i) {
        write_wrapped(out, msa.ids[i], msa.rows[i]);
    }
}

std::vector<Sequence> strip_gaps(const Msa& msa) {
    std::vector<Sequence> seqs;
    seqs.reserve(msa.rows.size());
    for (int i = 0; i < msa.depth(); ++i) {
        Sequence seq;
        seq.id = msa.ids[i];
        for (char c : msa.rows[i]) {
            if (c != kGap) {
                seq.residues.push_back(c);
            }
        }
        seqs.push_back(std::move(seq));
    }
    return seqs;
}

}  // namespace mmsa
