#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wilf/permutation.hpp"
#include "wilf/series.hpp"

namespace wilf {

/// A weighted letter: either a sum-indecomposable permutation (weight = size)
/// or a named abstract symbol with an explicit weight.
class Letter {
public:
    static Letter perm(Permutation p);
    static Letter abstract(std::string name, int weight);

    int weight() const { return weight_; }
    bool is_perm() const { return is_perm_; }
    const Permutation& permutation() const;
    std::string str() const { return name_; }

    friend bool operator==(const Letter&, const Letter&) = default;

    /// Canonical order: weight first, then payload text. Alphabets keep
    /// their letters sorted this way, which fixes letter ids and makes
    /// sampling reproducible.
    friend std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
        if (a.weight_ != b.weight_) return a.weight_ <=> b.weight_;
        return a.name_ <=> b.name_;
    }

private:
    Letter(Permutation p, std::string name, int weight, bool is_perm);

    Permutation perm_;
    std::string name_;
    int weight_ = 0;
    bool is_perm_ = false;
};

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A finite weighted alphabet together with its letter-containment oracle.
/// Permutation mode tests pattern containment of sums; subword mode treats
/// the letters as an antichain, so a word embeds in a single letter only if
/// it is empty or equals that letter.
class Alphabet {
public:
    enum class Mode { permutation, subword };

    static AlphabetPtr permutations(std::vector<Permutation> letters);
    static AlphabetPtr abstract(std::vector<std::pair<std::string, int>> letters);

    Mode mode() const { return mode_; }
    int size() const { return static_cast<int>(letters_.size()); }
    const Letter& letter(int id) const { return letters_.at(static_cast<size_t>(id)); }
    int weight(int id) const { return letters_.at(static_cast<size_t>(id)).weight(); }
    int max_weight() const;
    int weight_gcd() const;
    int find(const std::string& token) const;  // -1 when absent

    TruncatedSeries series(int cutoff) const;  // A(x)

    /// Does the word segment (letter ids) embed into the single letter
    /// `target`? This is the oracle behind the greedy embedding order.
    bool segment_embeds(std::span<const int> segment, int target) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.mode_ == b.mode_ && a.letters_ == b.letters_;
    }

private:
    Alphabet(Mode mode, std::vector<Letter> letters);

    Mode mode_;
    std::vector<Letter> letters_;
};

}  // namespace wilf
