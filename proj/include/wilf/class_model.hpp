#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wilf/word.hpp"

namespace wilf {

/// Growth data of L* for a finite loop alphabet L.
struct LoopGrowth {
    double rho = 0;       // unique positive root of 1 - L(x); +infinity when L is empty
    double gamma = 0;     // 1/rho; 0 when L is empty
    double constant = 0;  // c with |L*_n| ~ c * gamma^n; 0 when L is empty
};

/// Solves 1 - L(x) = 0 on (0, 1] by bisection to 1e-12 and reads the
/// asymptotic constant off the simple pole. Nonempty alphabets must hold a
/// weight-1 letter (the lemma hypothesis alpha_1 >= 1).
LoopGrowth growth(const Alphabet& a, const std::vector<int>& loop_letters);

/// Exact |L*_n| for n = 0..max_n by the weighted recurrence.
std::vector<BigInt> loop_word_counts(const Alphabet& a, const std::vector<int>& loop_letters,
                                     int max_n);

/// One side (prefix or suffix) of the state machinery: reachable valid
/// states, transitions, loop alphabets and growth/dominance data.
struct StateGraph {
    std::vector<std::vector<int>> states;          // tuples; index 0 is the initial state
    std::vector<std::vector<int>> transitions;     // [state][letter] -> state index, -1 = exit
    std::vector<std::vector<int>> loop_alphabets;  // [state] -> sorted letter ids
    std::vector<std::vector<int>> successors;      // [state] -> distinct valid targets != state
    std::vector<LoopGrowth> state_growth;
    std::vector<bool> dominant;
    double gamma = 0;  // max growth rate over states
    int max_dominant_on_path = 0;

    int state_count() const { return static_cast<int>(states.size()); }
    int find(const std::vector<int>& tuple) const;  // -1 when absent
};

/// Loop blocks and transition letters of a word, in word order. For prefix
/// decompositions block_states[j] indexes the prefix graph; for suffix
/// decompositions it indexes the suffix graph, and the governing states
/// increase from right to left.
struct Decomposition {
    std::vector<Word> blocks;
    std::vector<std::pair<int, int>> block_ranges;  // letter ranges [begin, end)
    std::vector<int> block_states;
    std::vector<int> transition_letters;
    std::vector<int> transition_positions;  // 0-based letter indexes
    Word reassemble() const;
};

struct EquitablePartition {
    std::vector<int> boundaries;   // Q+1 letter indexes, boundaries[0] = 0
    std::vector<bool> free_slice;  // slice j spans [boundaries[j], boundaries[j+1])
    int slice_count() const { return static_cast<int>(free_slice.size()); }
};

struct SliceTypicality {
    int slice = 0;
    bool dominant_blocks = false;  // condition 1
    bool flank_balance = false;    // condition 2: d_X + d_Y = D + 1
    bool states_match = false;     // condition 3
    bool blocks_abundant = false;  // condition 4
    bool ok() const { return dominant_blocks && flank_balance && states_match && blocks_abundant; }
};

struct TypicalityReport {
    bool typical = false;
    int threshold = 0;
    std::vector<SliceTypicality> free_slices;
};

/// A permutation class (or abstract word class) presented over the alphabet
/// of its sum-indecomposables, with the forbidden-word automaton built by
/// closure from the initial state. Immutable once constructed.
class ClassModel {
public:
    /// Sum closure of the given indecomposables (letters are closed downward
    /// so the result is a genuine class); F is empty.
    static ClassModel sum_closed(std::vector<Permutation> letters);

    /// Av(basis) when it has finitely many sum-indecomposables. Enumeration
    /// proceeds by size and stops at the first empty size >= 2; exceeding the
    /// cap reports "alphabet not finite under cap".
    static ClassModel from_basis(const std::vector<Permutation>& basis, int indec_cap = 16);

    /// Explicit alphabet and explicit forbidden words (the abstract setting).
    static ClassModel with_forbidden(AlphabetPtr alphabet, std::vector<Word> forbidden);

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const std::vector<Word>& forbidden() const { return forbidden_; }
    bool is_sum_closed() const { return forbidden_.empty(); }
    const std::optional<std::vector<Permutation>>& basis() const { return basis_; }

    int max_letter_weight() const { return alphabet_->max_weight(); }  // K
    int q() const { return q_; }                                       // 3(|P|+|S|)
    int large_block_weight() const { return 2 * max_letter_weight() * q() + 1; }

    const StateGraph& prefix_graph() const { return prefix_; }
    const StateGraph& suffix_graph() const { return suffix_; }

    double gamma() const { return prefix_.gamma; }
    int dominance_count() const { return prefix_.max_dominant_on_path; }  // D
    const std::string& dominance_warning() const { return dominance_warning_; }

    /// Tuple-level transition formulas. The input tuple must be valid; the
    /// result may be invalid, signalling exit from the class.
    std::vector<int> prefix_transition_tuple(const std::vector<int>& p, int letter) const;
    std::vector<int> suffix_transition_tuple(const std::vector<int>& s, int letter) const;
    bool valid_tuple(const std::vector<int>& t) const;

    /// Letter index at which the word leaves the class, if it does.
    std::optional<int> first_violation(const Word& w) const;
    bool member(const Word& w) const { return !first_violation(w).has_value(); }

    Decomposition prefix_decomposition(const Word& w) const;
    Decomposition suffix_decomposition(const Word& w) const;

    /// Prefix state index after the first `len` letters of w.
    int prefix_state_after(const Word& w, int len) const;
    /// Suffix state index of the suffix w[from..).
    int suffix_state_of_suffix(const Word& w, int from) const;

    std::vector<BigInt> class_counts(int max_n) const;  // c_0..c_max
    BigInt count_by_path(const std::vector<int>& path_states,
                         const std::vector<int>& transition_letters, int n) const;
    /// Every prefix transition path paired with every choice of transition
    /// letters; desk-scale cross-check against class_counts.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> transition_paths() const;

    std::vector<Word> level(int n) const;  // C_n in lexicographic id order

    bool overlap(int prefix_state, int suffix_state) const;
    bool compatible(int prefix_state, int suffix_state) const;
    /// Compatible, and every one-step successor on either side overlaps the
    /// other. A positive answer asserts equal loop alphabets.
    bool match(int prefix_state, int suffix_state) const;

    EquitablePartition equitable_partition(const Word& w) const;

    /// The four typicality conditions per free slice. block_threshold < 0
    /// means ceil(sqrt(weight)); the threshold is a parameter because the
    /// required block count is an asymptotic device.
    TypicalityReport is_typical(const Word& w, int block_threshold = -1) const;

private:
    ClassModel() = default;
    void build(AlphabetPtr alphabet, std::vector<Word> forbidden,
               std::optional<std::vector<Permutation>> basis);
    StateGraph build_graph(bool prefix_side) const;
    void finish_graph(StateGraph& g, std::string& warning) const;
    Decomposition decompose(const Word& w, bool prefix_side) const;

    AlphabetPtr alphabet_;
    std::vector<Word> forbidden_;
    std::vector<int> forbidden_lengths_;
    std::optional<std::vector<Permutation>> basis_;
    StateGraph prefix_;
    StateGraph suffix_;
    int q_ = 0;
    std::string dominance_warning_;
};

}  // namespace wilf
