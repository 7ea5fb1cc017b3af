#include "wilf/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wilf {

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    const int n = size();
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : entries_) {
        if (v < 1 || v > n || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("not a permutation of 1.." + std::to_string(n));
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::parse(const std::string& text) {
    std::vector<int> entries;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(text);
        int v = 0;
        while (in >> v) entries.push_back(v);
        if (!in.eof()) throw std::invalid_argument("bad permutation token in '" + text + "'");
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw std::invalid_argument("bad permutation digit in '" + text + "'");
            entries.push_back(c - '0');
        }
    }
    return Permutation(std::move(entries));
}

std::string Permutation::str() const {
    std::string out;
    if (size() <= 9) {
        for (int v : entries_) out += static_cast<char>('0' + v);
    } else {
        for (int i = 0; i < size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(entries_[static_cast<size_t>(i)]);
        }
    }
    return out;
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.entries() <=> b.entries();
}

bool contains(const Permutation& pattern, const Permutation& text) {
    const int k = pattern.size();
    const int n = text.size();
    if (k == 0) return true;
    if (k > n) return false;

    // chosen[j] = text position matched to pattern position j
    std::vector<int> chosen(static_cast<size_t>(k), -1);
    auto consistent = [&](int j, int pos) {
        for (int j2 = 0; j2 < j; ++j2) {
            const bool pat_less = pattern[j2] < pattern[j];
            const bool txt_less = text[chosen[static_cast<size_t>(j2)]] < text[pos];
            if (pat_less != txt_less) return false;
        }
        return true;
    };

    // Depth-first over positions; prune when the remaining text is too short.
    int j = 0;
    int pos = 0;
    while (true) {
        if (j == k) return true;
        if (n - pos < k - j) {
            // backtrack
            --j;
            if (j < 0) return false;
            pos = chosen[static_cast<size_t>(j)] + 1;
            continue;
        }
        if (consistent(j, pos)) {
            chosen[static_cast<size_t>(j)] = pos;
            ++j;
            ++pos;
        } else {
            ++pos;
        }
    }
}

Permutation sum(const Permutation& a, const Permutation& b) {
    std::vector<int> entries = a.entries();
    entries.reserve(static_cast<size_t>(a.size() + b.size()));
    for (int v : b.entries()) entries.push_back(v + a.size());
    return Permutation(std::move(entries));
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(a.size() + b.size()));
    for (int v : a.entries()) entries.push_back(v + b.size());
    for (int v : b.entries()) entries.push_back(v);
    return Permutation(std::move(entries));
}

std::vector<Permutation> sum_decompose(const Permutation& p) {
    std::vector<Permutation> parts;
    std::vector<int> current;
    int max_seen = 0;
    int offset = 0;
    for (int i = 0; i < p.size(); ++i) {
        current.push_back(p[i] - offset);
        max_seen = std::max(max_seen, p[i]);
        if (max_seen == i + 1) {
            // a component ends exactly where prefix max equals prefix length
            parts.emplace_back(std::move(current));
            current.clear();
            offset = i + 1;
        }
    }
    return parts;
}

bool is_sum_indecomposable(const Permutation& p) {
    if (p.empty())
        throw std::invalid_argument("indecomposability is undefined for the empty permutation");
    int max_seen = 0;
    for (int i = 0; i + 1 < p.size(); ++i) {
        max_seen = std::max(max_seen, p[i]);
        if (max_seen == i + 1) return false;
    }
    return true;
}

std::set<Permutation> deletions(const Permutation& p) {
    if (p.empty()) throw std::invalid_argument("cannot delete from the empty permutation");
    std::set<Permutation> out;
    for (int skip = 0; skip < p.size(); ++skip) {
        std::vector<int> entries;
        entries.reserve(static_cast<size_t>(p.size() - 1));
        for (int i = 0; i < p.size(); ++i) {
            if (i == skip) continue;
            entries.push_back(p[i] - (p[i] > p[skip] ? 1 : 0));
        }
        out.emplace(std::move(entries));
    }
    return out;
}

const Symmetry Symmetry::identity{false, false, false};
const Symmetry Symmetry::reverse{false, true, false};
const Symmetry Symmetry::complement{false, false, true};
const Symmetry Symmetry::inverse{true, false, false};

Symmetry Symmetry::then(const Symmetry& next) const {
    Symmetry out;
    out.swap_ = swap_ != next.swap_;
    if (next.swap_) {
        out.flip_pos_ = flip_val_ != next.flip_pos_;
        out.flip_val_ = flip_pos_ != next.flip_val_;
    } else {
        out.flip_pos_ = flip_pos_ != next.flip_pos_;
        out.flip_val_ = flip_val_ != next.flip_val_;
    }
    return out;
}

Permutation Symmetry::operator()(const Permutation& p) const {
    const int n = p.size();
    std::vector<std::pair<int, int>> points;
    points.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int x = i + 1;
        int y = p[i];
        if (swap_) std::swap(x, y);
        if (flip_pos_) x = n + 1 - x;
        if (flip_val_) y = n + 1 - y;
        points.emplace_back(x, y);
    }
    std::sort(points.begin(), points.end());
    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(n));
    for (auto& [x, y] : points) entries.push_back(y);
    return Permutation(std::move(entries));
}

std::string Symmetry::name() const {
    if (!swap_) {
        if (!flip_pos_ && !flip_val_) return "id";
        if (flip_pos_ && !flip_val_) return "reverse";
        if (!flip_pos_ && flip_val_) return "complement";
        return "rotate180";
    }
    if (!flip_pos_ && !flip_val_) return "inverse";
    if (flip_pos_ && !flip_val_) return "rotate90";
    if (!flip_pos_ && flip_val_) return "rotate270";
    return "antidiagonal";
}

const std::vector<Symmetry>& dihedral_group() {
    static const std::vector<Symmetry> group = [] {
        std::vector<Symmetry> out{Symmetry::identity};
        // close {reverse, complement, inverse} under composition
        const std::vector<Symmetry> gens{Symmetry::reverse, Symmetry::complement,
                                         Symmetry::inverse};
        for (size_t i = 0; i < out.size(); ++i) {
            for (const auto& h : gens) {
                Symmetry c = out[i].then(h);
                if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
            }
        }
        return out;
    }();
    return group;
}

}  // namespace wilf
