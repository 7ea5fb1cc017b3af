#pragma once

#include <compare>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "wilf/alphabet.hpp"
#include "wilf/series.hpp"

namespace wilf {

/// A finite sequence of letters from one alphabet, stored as letter ids.
class Word {
public:
    Word() = default;
    explicit Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
    Word(AlphabetPtr alphabet, std::vector<int> ids);

    /// Letters joined by '.', e.g. "21.1.21" or "a.b.c". "" is the empty word.
    static Word parse(AlphabetPtr alphabet, const std::string& text);

    const AlphabetPtr& alphabet() const { return alphabet_; }
    int length() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    int id(int i) const { return ids_.at(static_cast<size_t>(i)); }
    const std::vector<int>& ids() const { return ids_; }
    int weight() const;
    int first() const;
    int last() const;

    Word prefix(int count) const { return subword(0, count); }
    Word subword(int begin, int end) const;  // letter range [begin, end)
    Word append(int letter_id) const;
    Word concat(const Word& other) const;

    /// The sum of the letter payloads (permutation alphabets only).
    Permutation to_permutation() const;

    std::string str() const;

    friend bool operator==(const Word& a, const Word& b);
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    AlphabetPtr alphabet_;
    std::vector<int> ids_;
};

/// Throws when the operands live over different alphabets.
void require_same_alphabet(const Word& a, const Word& b);

/// Greedy step of the embedding order: starting with `progress` letters of
/// `w` already embedded, returns the new progress after absorbing the
/// maximal further segment of `w` into the single letter `letter_id`.
int advance_progress(const Word& w, int progress, int letter_id);

/// The embedding order, decided by the greedy scan.
bool leq(const Word& w, const Word& v);

/// Minimal containment: v contains w but no proper prefix of v does.
bool leq_star(const Word& w, const Word& v);

TruncatedSeries series_A(const Alphabet& a, int cutoff);

/// Container counts of w by weight, via the progress-state DP.
TruncatedSeries series_I(const Word& w, int cutoff);
/// Minimal-container counts of w by weight, via the progress-state DP.
TruncatedSeries series_I_star(const Word& w, int cutoff);

/// Exhaustive-enumeration counterparts; independent of the DP path.
TruncatedSeries series_I_oracle(const Word& w, int cutoff);
TruncatedSeries series_I_star_oracle(const Word& w, int cutoff);

/// Checks I_W = I*_W / (1 - A) coefficientwise through the cutoff,
/// with both sides enumerated exhaustively.
bool check_quotient_identity(const Word& w, int cutoff);

/// No single letter of the alphabet contains the two-letter word ab.
bool incompatible(const Alphabet& a, int first_id, int second_id);

/// `cuts` lists interior boundaries (letter indexes in [1, length-1],
/// strictly increasing) splitting w into nonempty parts.
bool is_incompatible_factorisation(const Word& w, const std::vector<int>& cuts);

/// Checks I_W = prod_i I*_{W_i} / (1 - A) for an incompatible factorisation.
/// Throws when the factorisation is not incompatible.
bool check_factorisation_identity(const Word& w, const std::vector<int>& cuts, int cutoff);

/// All concatenations of the parts, over every reordering that is again an
/// incompatible factorisation. Throws when the given order is not one.
std::set<Word> shuffle_orbit(const std::vector<Word>& parts);

/// Maximum number of pairwise disjoint consecutive occurrences of p in w,
/// by greedy left-to-right scan. Throws when p is empty.
int count_disjoint_blocks(const Word& w, const Word& p);

std::vector<Word> words_of_weight(const AlphabetPtr& a, int weight);
std::vector<Word> words_up_to_weight(const AlphabetPtr& a, int max_weight);

using SegmentOracle = std::function<bool(const Alphabet&, std::span<const int>, int)>;

struct EmbeddingOrderReport {
    bool ok = true;
    std::string detail;  // first counterexample, or a success summary
};

/// Brute-force check of the embedding-order axioms over all words up to
/// max_weight. The oracle overload exists so tests can inject a corrupted
/// letter-containment relation as a negative control.
EmbeddingOrderReport validate_embedding_order(const AlphabetPtr& a, int max_weight);
EmbeddingOrderReport validate_embedding_order(const AlphabetPtr& a, int max_weight,
                                              const SegmentOracle& oracle);

}  // namespace wilf
