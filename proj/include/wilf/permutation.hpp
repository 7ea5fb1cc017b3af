#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace wilf {

/// A permutation in one-line notation with 1-based ranks. The empty
/// permutation is a legal value and is the identity of both sums.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> entries);

    /// Accepts contiguous digits ("2315746") or whitespace-separated ranks
    /// ("10 3 2 1 ..."). The empty string parses to the empty permutation.
    static Permutation parse(const std::string& text);

    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    int operator[](int pos) const { return entries_[static_cast<size_t>(pos)]; }
    const std::vector<int>& entries() const { return entries_; }

    /// Canonical text form: contiguous digits for size <= 9, otherwise
    /// space-separated ranks.
    std::string str() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> entries_;
};

/// Orders by size first, then lexicographically. Groups each level C_k
/// together, which partition output relies on.
std::strong_ordering operator<=>(const Permutation& a, const Permutation& b);

/// Pattern containment: some subsequence of text relabels to pattern.
/// Backtracking over text positions left to right with remaining-length
/// pruning.
bool contains(const Permutation& pattern, const Permutation& text);

Permutation sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

/// The unique maximal decomposition p = a_1 (+) ... (+) a_k into
/// sum-indecomposable components. Empty input gives an empty sequence.
std::vector<Permutation> sum_decompose(const Permutation& p);

/// Throws std::invalid_argument on the empty permutation.
bool is_sum_indecomposable(const Permutation& p);

/// Distinct one-point deletions, relabelled. Throws on the empty permutation.
std::set<Permutation> deletions(const Permutation& p);

/// An element of the dihedral group acting on the point set {(i, p_i)}.
/// Composition of reverse, complement and inverse generates all eight.
class Symmetry {
public:
    Symmetry() = default;

    static const Symmetry identity;
    static const Symmetry reverse;     // flip positions
    static const Symmetry complement;  // flip values
    static const Symmetry inverse;     // transpose position/value

    /// Group composition: apply *this first, then next.
    Symmetry then(const Symmetry& next) const;

    Permutation operator()(const Permutation& p) const;
    std::string name() const;

    friend bool operator==(const Symmetry&, const Symmetry&) = default;

private:
    Symmetry(bool swap, bool flip_pos, bool flip_val)
        : swap_(swap), flip_pos_(flip_pos), flip_val_(flip_val) {}

    bool swap_ = false;
    bool flip_pos_ = false;
    bool flip_val_ = false;
};

/// All eight dihedral symmetries, identity first, in a fixed order.
const std::vector<Symmetry>& dihedral_group();

}  // namespace wilf
