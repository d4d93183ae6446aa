#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mmsa {

inline constexpr char kGap = '-';

enum class AlphabetKind { Dna, Protein };

// Residue alphabet. Symbols are unique uppercase letters; the gap symbol is
// never a member.
class Alphabet {
public:
    static const Alphabet& dna();
    static const Alphabet& protein();
    static const Alphabet& by_kind(AlphabetKind kind);

    AlphabetKind kind() const { return kind_; }
    const std::string& symbols() const { return symbols_; }
    int size() const { return static_cast<int>(symbols_.size()); }
    bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }
    // index of a symbol, -1 if absent
    int index(char c) const { return index_[static_cast<unsigned char>(c)]; }
    const char* name() const;

private:
    Alphabet(AlphabetKind kind, std::string_view symbols);

    AlphabetKind kind_;
    std::string symbols_;
    int index_[256];
};

struct Sequence {
    std::string id;
    std::string residues;

    int length() const { return static_cast<int>(residues.size()); }
};

// Aligned rows of equal length over alphabet + gap. Column indices are
// 1-based throughout; homologous_columns is optional metadata (empty when
// unknown).
struct Msa {
    std::vector<std::string> ids;
    std::vector<std::string> rows;
    std::vector<int> homologous_columns;

    int depth() const { return static_cast<int>(rows.size()); }
    int width() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

// FASTA input. Residues are uppercased and validated against the alphabet;
// errors report the offending line number. Ids are the first whitespace
// token of the header.
std::vector<Sequence> read_fasta(std::istream& in, const Alphabet& alphabet);

// Same record grammar but rows may contain gaps and must share one length.
Msa read_aligned_fasta(std::istream& in, const Alphabet& alphabet);

void write_fasta(std::ostream& out, const std::vector<Sequence>& seqs);
void write_aligned_fasta(std::ostream& out, const Msa& msa);

// Rows with gap symbols removed, as plain sequences.
std::vector<Sequence> strip_gaps(const Msa& msa);

}  // namespace mmsa
