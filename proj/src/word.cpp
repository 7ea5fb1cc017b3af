#include "wilf/word.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wilf {

Word::Word(AlphabetPtr alphabet, std::vector<int> ids)
    : alphabet_(std::move(alphabet)), ids_(std::move(ids)) {
    if (!alphabet_) throw std::invalid_argument("word requires an alphabet");
    for (int id : ids_)
        if (id < 0 || id >= alphabet_->size())
            throw std::invalid_argument("letter id out of range");
}

Word Word::parse(AlphabetPtr alphabet, const std::string& text) {
    if (!alphabet) throw std::invalid_argument("word requires an alphabet");
    std::vector<int> ids;
    if (!text.empty()) {
        std::istringstream in(text);
        std::string token;
        while (std::getline(in, token, '.')) {
            int id = alphabet->find(token);
            if (id < 0) throw std::invalid_argument("unknown letter '" + token + "'");
            ids.push_back(id);
        }
    }
    return Word(std::move(alphabet), std::move(ids));
}

int Word::weight() const {
    int total = 0;
    for (int id : ids_) total += alphabet_->weight(id);
    return total;
}

int Word::first() const {
    if (empty()) throw std::logic_error("first() of the empty word");
    return ids_.front();
}

int Word::last() const {
    if (empty()) throw std::logic_error("last() of the empty word");
    return ids_.back();
}

Word Word::subword(int begin, int end) const {
    if (begin < 0 || end > length() || begin > end)
        throw std::invalid_argument("bad subword range");
    return Word(alphabet_, std::vector<int>(ids_.begin() + begin, ids_.begin() + end));
}

Word Word::append(int letter_id) const {
    Word out = *this;
    if (letter_id < 0 || letter_id >= alphabet_->size())
        throw std::invalid_argument("letter id out of range");
    out.ids_.push_back(letter_id);
    return out;
}

Word Word::concat(const Word& other) const {
    require_same_alphabet(*this, other);
    Word out = *this;
    out.ids_.insert(out.ids_.end(), other.ids_.begin(), other.ids_.end());
    return out;
}

Permutation Word::to_permutation() const {
    if (!alphabet_ || alphabet_->mode() != Alphabet::Mode::permutation)
        throw std::logic_error("word does not encode a permutation");
    Permutation out;
    for (int id : ids_) out = sum(out, alphabet_->letter(id).permutation());
    return out;
}

std::string Word::str() const {
    std::string out;
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (i) out += '.';
        out += alphabet_->letter(ids_[i]).str();
    }
    return out;
}

bool operator==(const Word& a, const Word& b) {
    if (!a.alphabet_ || !b.alphabet_) return a.ids_.empty() && b.ids_.empty();
    return (a.alphabet_ == b.alphabet_ || *a.alphabet_ == *b.alphabet_) && a.ids_ == b.ids_;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) { return a.ids_ <=> b.ids_; }

void require_same_alphabet(const Word& a, const Word& b) {
    if (!a.alphabet() || !b.alphabet())
        throw std::invalid_argument("word without an alphabet");
    if (a.alphabet() == b.alphabet()) return;
    if (!(*a.alphabet() == *b.alphabet()))
        throw std::invalid_argument("words over different alphabets");
}

int advance_progress(const Word& w, int progress, int letter_id) {
    const auto& ids = w.ids();
    int m = progress;
    while (m < w.length() &&
           w.alphabet()->segment_embeds(std::span<const int>(&ids[static_cast<size_t>(progress)],
                                                             static_cast<size_t>(m + 1 - progress)),
                                        letter_id))
        ++m;
    return m;
}

bool leq(const Word& w, const Word& v) {
    require_same_alphabet(w, v);
    int progress = 0;
    for (int i = 0; i < v.length() && progress < w.length(); ++i)
        progress = advance_progress(w, progress, v.id(i));
    return progress == w.length();
}

bool leq_star(const Word& w, const Word& v) {
    if (v.empty()) return leq(w, v);  // the empty word minimally contains only itself
    return leq(w, v) && !leq(w, v.prefix(v.length() - 1));
}

TruncatedSeries series_A(const Alphabet& a, int cutoff) { return a.series(cutoff); }

namespace {

// Counts of words arriving at full progress exactly on their last letter.
std::vector<BigInt> minimal_container_counts(const Word& w, int cutoff) {
    const Alphabet& a = *w.alphabet();
    const int len = w.length();
    std::vector<BigInt> arrive(static_cast<size_t>(cutoff) + 1, 0);
    if (len == 0) {
        arrive[0] = 1;
        return arrive;
    }
    // live[j][n]: words of weight n whose greedy progress into w is j < len
    std::vector<std::vector<BigInt>> live(
        static_cast<size_t>(len), std::vector<BigInt>(static_cast<size_t>(cutoff) + 1, 0));
    std::vector<std::vector<int>> trans(static_cast<size_t>(len),
                                        std::vector<int>(static_cast<size_t>(a.size())));
    for (int j = 0; j < len; ++j)
        for (int b = 0; b < a.size(); ++b) trans[static_cast<size_t>(j)][static_cast<size_t>(b)] =
            advance_progress(w, j, b);
    live[0][0] = 1;
    for (int n = 0; n <= cutoff; ++n) {
        for (int j = 0; j < len; ++j) {
            const BigInt& src = live[static_cast<size_t>(j)][static_cast<size_t>(n)];
            if (src == 0) continue;
            for (int b = 0; b < a.size(); ++b) {
                int n2 = n + a.weight(b);
                if (n2 > cutoff) continue;
                int j2 = trans[static_cast<size_t>(j)][static_cast<size_t>(b)];
                if (j2 == len)
                    arrive[static_cast<size_t>(n2)] += src;
                else
                    live[static_cast<size_t>(j2)][static_cast<size_t>(n2)] += src;
            }
        }
    }
    return arrive;
}

void require_cutoff(const Word& w, int cutoff) {
    if (cutoff < w.weight())
        throw std::invalid_argument("series cutoff below the weight of the word");
}

}  // namespace

TruncatedSeries series_I_star(const Word& w, int cutoff) {
    require_cutoff(w, cutoff);
    return TruncatedSeries(cutoff, minimal_container_counts(w, cutoff));
}

TruncatedSeries series_I(const Word& w, int cutoff) {
    require_cutoff(w, cutoff);
    auto arrive = minimal_container_counts(w, cutoff);
    const Alphabet& a = *w.alphabet();
    // absorbed[n] = arrive[n] + sum over letters of absorbed[n - weight]
    std::vector<BigInt> absorbed(std::move(arrive));
    for (int n = 0; n <= cutoff; ++n)
        for (int b = 0; b < a.size(); ++b)
            if (n - a.weight(b) >= 0)
                absorbed[static_cast<size_t>(n)] +=
                    absorbed[static_cast<size_t>(n - a.weight(b))];
    return TruncatedSeries(cutoff, std::move(absorbed));
}

TruncatedSeries series_I_oracle(const Word& w, int cutoff) {
    require_cutoff(w, cutoff);
    TruncatedSeries out(cutoff);
    for (const Word& v : words_up_to_weight(w.alphabet(), cutoff))
        if (leq(w, v)) out.set_coeff(v.weight(), out.coeff(v.weight()) + 1);
    return out;
}

TruncatedSeries series_I_star_oracle(const Word& w, int cutoff) {
    require_cutoff(w, cutoff);
    TruncatedSeries out(cutoff);
    for (const Word& v : words_up_to_weight(w.alphabet(), cutoff))
        if (leq_star(w, v)) out.set_coeff(v.weight(), out.coeff(v.weight()) + 1);
    return out;
}

bool check_quotient_identity(const Word& w, int cutoff) {
    TruncatedSeries lhs = series_I_oracle(w, cutoff);
    TruncatedSeries star = series_I_star_oracle(w, cutoff);
    TruncatedSeries a_star =
        (TruncatedSeries::one(cutoff) - series_A(*w.alphabet(), cutoff)).reciprocal();
    return lhs == star * a_star;
}

bool incompatible(const Alphabet& a, int first_id, int second_id) {
    const int pair[2] = {first_id, second_id};
    for (int c = 0; c < a.size(); ++c)
        if (a.segment_embeds(std::span<const int>(pair, 2), c)) return false;
    return true;
}

namespace {

std::vector<Word> split_by_cuts(const Word& w, const std::vector<int>& cuts) {
    if (w.empty()) throw std::invalid_argument("factorisation of the empty word has an empty part");
    int prev = 0;
    std::vector<Word> parts;
    for (int cut : cuts) {
        if (cut <= prev || cut >= w.length())
            throw std::invalid_argument("factorisation cut positions must be strictly increasing interior boundaries");
        parts.push_back(w.subword(prev, cut));
        prev = cut;
    }
    parts.push_back(w.subword(prev, w.length()));
    return parts;
}

bool adjacent_pairs_incompatible(const std::vector<Word>& parts) {
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (!incompatible(*parts[i].alphabet(), parts[i].last(), parts[i + 1].first()))
            return false;
    return true;
}

}  // namespace

bool is_incompatible_factorisation(const Word& w, const std::vector<int>& cuts) {
    return adjacent_pairs_incompatible(split_by_cuts(w, cuts));
}

bool check_factorisation_identity(const Word& w, const std::vector<int>& cuts, int cutoff) {
    auto parts = split_by_cuts(w, cuts);
    if (!adjacent_pairs_incompatible(parts))
        throw std::invalid_argument("factorisation is not incompatible");
    TruncatedSeries rhs = TruncatedSeries::one(cutoff);
    for (const Word& part : parts) rhs = rhs * series_I_star_oracle(part, cutoff);
    TruncatedSeries a_star =
        (TruncatedSeries::one(cutoff) - series_A(*w.alphabet(), cutoff)).reciprocal();
    return series_I_oracle(w, cutoff) == rhs * a_star;
}

std::set<Word> shuffle_orbit(const std::vector<Word>& parts) {
    if (parts.empty()) throw std::invalid_argument("shuffle orbit of no parts");
    for (const Word& part : parts) {
        if (part.empty()) throw std::invalid_argument("shuffle orbit parts must be nonempty");
        require_same_alphabet(parts.front(), part);
    }
    if (!adjacent_pairs_incompatible(parts))
        throw std::invalid_argument("given part order is not an incompatible factorisation");

    std::vector<int> order(parts.size());
    std::iota(order.begin(), order.end(), 0);
    std::set<Word> orbit;
    do {
        std::vector<Word> arranged;
        arranged.reserve(parts.size());
        for (int i : order) arranged.push_back(parts[static_cast<size_t>(i)]);
        if (!adjacent_pairs_incompatible(arranged)) continue;
        Word whole = arranged.front();
        for (size_t i = 1; i < arranged.size(); ++i) whole = whole.concat(arranged[i]);
        orbit.insert(std::move(whole));
    } while (std::next_permutation(order.begin(), order.end()));
    return orbit;
}

int count_disjoint_blocks(const Word& w, const Word& p) {
    require_same_alphabet(w, p);
    if (p.empty()) throw std::invalid_argument("P-blocks of the empty pattern are undefined");
    int count = 0;
    int i = 0;
    while (i + p.length() <= w.length()) {
        bool hit = std::equal(p.ids().begin(), p.ids().end(), w.ids().begin() + i);
        if (hit) {
            ++count;
            i += p.length();
        } else {
            ++i;
        }
    }
    return count;
}

namespace {

void generate_words(const AlphabetPtr& a, int remaining, bool exact, std::vector<int>& stack,
                    std::vector<Word>& out) {
    if (!exact || remaining == 0) out.emplace_back(a, stack);
    for (int b = 0; b < a->size(); ++b) {
        if (a->weight(b) > remaining) continue;
        stack.push_back(b);
        generate_words(a, remaining - a->weight(b), exact, stack, out);
        stack.pop_back();
    }
}

}  // namespace

std::vector<Word> words_of_weight(const AlphabetPtr& a, int weight) {
    std::vector<Word> out;
    std::vector<int> stack;
    generate_words(a, weight, true, stack, out);
    return out;
}

std::vector<Word> words_up_to_weight(const AlphabetPtr& a, int max_weight) {
    std::vector<Word> out;
    std::vector<int> stack;
    generate_words(a, max_weight, false, stack, out);
    return out;
}

EmbeddingOrderReport validate_embedding_order(const AlphabetPtr& a, int max_weight) {
    return validate_embedding_order(
        a, max_weight,
        [](const Alphabet& alpha, std::span<const int> segment, int target) {
            return alpha.segment_embeds(segment, target);
        });
}

namespace {

// Greedy scan that tolerates non-monotone oracles: the stripped prefix is the
// largest one the oracle accepts, searched over the whole remaining suffix.
bool oracle_leq(const Word& w, const Word& v, const SegmentOracle& oracle) {
    const Alphabet& a = *w.alphabet();
    int progress = 0;
    for (int i = 0; i < v.length(); ++i) {
        int best = progress;
        for (int m = progress + 1; m <= w.length(); ++m) {
            std::span<const int> seg(&w.ids()[static_cast<size_t>(progress)],
                                     static_cast<size_t>(m - progress));
            if (oracle(a, seg, v.id(i))) best = m;
        }
        progress = best;
    }
    return progress == w.length();
}

// The factorisation-axiom definition, evaluated recursively.
bool recursive_leq(const Word& w, const Word& v, const SegmentOracle& oracle) {
    const Alphabet& a = *w.alphabet();
    const int wl = w.length(), vl = v.length();
    // memo[wi][vi]: 0 unknown, 1 true, 2 false
    std::vector<std::vector<char>> memo(static_cast<size_t>(wl) + 1,
                                        std::vector<char>(static_cast<size_t>(vl) + 1, 0));
    auto rec = [&](auto&& self, int wi, int vi) -> bool {
        char& slot = memo[static_cast<size_t>(wi)][static_cast<size_t>(vi)];
        if (slot) return slot == 1;
        bool result;
        if (vi == vl) {
            result = (wi == wl);
        } else {
            result = false;
            for (int m = wi; m <= wl && !result; ++m) {
                std::span<const int> seg(w.ids().data() + wi, static_cast<size_t>(m - wi));
                if (oracle(a, seg, v.id(vi)) && self(self, m, vi + 1)) result = true;
            }
        }
        slot = result ? 1 : 2;
        return result;
    };
    return rec(rec, 0, 0);
}

}  // namespace

EmbeddingOrderReport validate_embedding_order(const AlphabetPtr& a, int max_weight,
                                              const SegmentOracle& oracle) {
    auto words = words_up_to_weight(a, max_weight);
    for (const Word& w : words) {
        for (const Word& v : words) {
            bool greedy = oracle_leq(w, v, oracle);
            if (w.empty() && !greedy)
                return {false, "axiom 1 violated: empty word not below " + v.str()};
            if (greedy && !(w == v) && w.weight() >= v.weight())
                return {false, "axiom 2 violated: " + w.str() + " <= " + v.str() +
                                   " without strictly smaller weight"};
            if (greedy != recursive_leq(w, v, oracle))
                return {false, "axiom 3 violated: greedy and factorisation answers differ for W=" +
                                   w.str() + ", V=" + v.str()};
        }
    }
    return {true, "all embedding-order axioms hold on " + std::to_string(words.size()) +
                      " words up to weight " + std::to_string(max_weight)};
}

}  // namespace wilf
