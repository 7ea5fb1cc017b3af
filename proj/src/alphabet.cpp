#include "wilf/alphabet.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wilf {

Letter::Letter(Permutation p, std::string name, int weight, bool is_perm)
    : perm_(std::move(p)), name_(std::move(name)), weight_(weight), is_perm_(is_perm) {}

Letter Letter::perm(Permutation p) {
    if (!is_sum_indecomposable(p))
        throw std::invalid_argument("letter " + p.str() + " is not sum-indecomposable");
    std::string name = p.str();
    int weight = p.size();
    return Letter(std::move(p), std::move(name), weight, true);
}

Letter Letter::abstract(std::string name, int weight) {
    if (weight < 1) throw std::invalid_argument("letter weight must be positive");
    if (name.empty() || name.find('.') != std::string::npos)
        throw std::invalid_argument("bad abstract letter name '" + name + "'");
    return Letter(Permutation{}, std::move(name), weight, false);
}

const Permutation& Letter::permutation() const {
    if (!is_perm_) throw std::logic_error("abstract letter has no permutation payload");
    return perm_;
}

Alphabet::Alphabet(Mode mode, std::vector<Letter> letters)
    : mode_(mode), letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::sort(letters_.begin(), letters_.end());
    for (size_t i = 0; i + 1 < letters_.size(); ++i)
        if (letters_[i] == letters_[i + 1])
            throw std::invalid_argument("duplicate letter " + letters_[i].str());
}

AlphabetPtr Alphabet::permutations(std::vector<Permutation> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (auto& p : letters) out.push_back(Letter::perm(std::move(p)));
    return AlphabetPtr(new Alphabet(Mode::permutation, std::move(out)));
}

AlphabetPtr Alphabet::abstract(std::vector<std::pair<std::string, int>> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (auto& [name, weight] : letters) out.push_back(Letter::abstract(std::move(name), weight));
    return AlphabetPtr(new Alphabet(Mode::subword, std::move(out)));
}

int Alphabet::max_weight() const {
    return letters_.back().weight();  // letters are sorted by weight
}

int Alphabet::weight_gcd() const {
    int g = 0;
    for (const auto& l : letters_) g = std::gcd(g, l.weight());
    return g;
}

int Alphabet::find(const std::string& token) const {
    for (int id = 0; id < size(); ++id)
        if (letters_[static_cast<size_t>(id)].str() == token) return id;
    return -1;
}

TruncatedSeries Alphabet::series(int cutoff) const {
    TruncatedSeries out(cutoff);
    for (const auto& l : letters_)
        if (l.weight() <= cutoff) out.set_coeff(l.weight(), out.coeff(l.weight()) + 1);
    return out;
}

bool Alphabet::segment_embeds(std::span<const int> segment, int target) const {
    if (segment.empty()) return true;
    if (mode_ == Mode::subword) return segment.size() == 1 && segment[0] == target;
    const Letter& host = letter(target);
    int total = 0;
    for (int id : segment) total += weight(id);
    if (total > host.weight()) return false;
    Permutation sigma;
    for (int id : segment) sigma = sum(sigma, letter(id).permutation());
    return contains(sigma, host.permutation());
}

}  // namespace wilf
