#include "wilf/class_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace wilf {

LoopGrowth growth(const Alphabet& a, const std::vector<int>& loop_letters) {
    LoopGrowth out;
    if (loop_letters.empty()) {
        out.rho = std::numeric_limits<double>::infinity();
        out.gamma = 0;
        out.constant = 0;
        return out;
    }
    std::vector<int> weights;
    weights.reserve(loop_letters.size());
    bool has_unit = false;
    for (int id : loop_letters) {
        weights.push_back(a.weight(id));
        if (a.weight(id) == 1) has_unit = true;
    }
    if (!has_unit)
        throw std::invalid_argument(
            "loop alphabet without a weight-1 letter is outside the growth lemma");

    auto L = [&](double x) {
        double acc = 0;
        for (int w : weights) acc += std::pow(x, w);
        return acc;
    };
    double rho;
    if (weights.size() == 1) {
        rho = 1.0;  // L(x) = x
    } else {
        double lo = 0.0, hi = 1.0;  // 1 - L decreases from 1 to 1 - |L| < 0
        while (hi - lo > 1e-13) {
            double mid = 0.5 * (lo + hi);
            (1.0 - L(mid) > 0 ? lo : hi) = mid;
        }
        rho = 0.5 * (lo + hi);
    }
    double deriv = 0;
    for (int w : weights) deriv += w * std::pow(rho, w - 1);
    out.rho = rho;
    out.gamma = 1.0 / rho;
    out.constant = 1.0 / (rho * deriv);
    return out;
}

std::vector<BigInt> loop_word_counts(const Alphabet& a, const std::vector<int>& loop_letters,
                                     int max_n) {
    std::vector<BigInt> counts(static_cast<size_t>(max_n) + 1, 0);
    counts[0] = 1;
    for (int n = 1; n <= max_n; ++n)
        for (int id : loop_letters)
            if (n - a.weight(id) >= 0)
                counts[static_cast<size_t>(n)] += counts[static_cast<size_t>(n - a.weight(id))];
    return counts;
}

int StateGraph::find(const std::vector<int>& tuple) const {
    for (int i = 0; i < state_count(); ++i)
        if (states[static_cast<size_t>(i)] == tuple) return i;
    return -1;
}

Word Decomposition::reassemble() const {
    if (blocks.empty()) throw std::logic_error("empty decomposition");
    Word out(blocks.front().alphabet());
    for (size_t j = 0; j < blocks.size(); ++j) {
        out = out.concat(blocks[j]);
        if (j < transition_letters.size()) out = out.append(transition_letters[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// construction

namespace {

// All sum-indecomposable permutations contained in any of the seeds,
// collected by repeated one-point deletions.
std::set<Permutation> indecomposable_closure(const std::vector<Permutation>& seeds) {
    std::set<Permutation> visited;
    std::vector<Permutation> queue;
    for (const auto& p : seeds)
        if (!p.empty() && visited.insert(p).second) queue.push_back(p);
    for (size_t head = 0; head < queue.size(); ++head) {
        Permutation p = queue[head];
        if (p.size() == 1) continue;
        for (const auto& q : deletions(p))
            if (visited.insert(q).second) queue.push_back(q);
    }
    std::set<Permutation> out;
    for (const auto& p : visited)
        if (is_sum_indecomposable(p)) out.insert(p);
    return out;
}

std::set<Permutation> insertions(const Permutation& p) {
    std::set<Permutation> out;
    const int n = p.size();
    for (int pos = 0; pos <= n; ++pos)
        for (int val = 1; val <= n + 1; ++val) {
            std::vector<int> entries;
            entries.reserve(static_cast<size_t>(n) + 1);
            for (int i = 0; i < n; ++i) {
                if (i == pos) entries.push_back(val);
                entries.push_back(p[i] + (p[i] >= val ? 1 : 0));
            }
            if (pos == n) entries.push_back(val);
            out.emplace(std::move(entries));
        }
    return out;
}

bool avoids_all(const Permutation& p, const std::vector<Permutation>& basis) {
    for (const auto& b : basis)
        if (contains(b, p)) return false;
    return true;
}

}  // namespace

ClassModel ClassModel::sum_closed(std::vector<Permutation> letters) {
    auto closed = indecomposable_closure(letters);
    if (closed.empty()) throw std::invalid_argument("sum-closed class needs at least one letter");
    std::vector<Permutation> letter_list(closed.begin(), closed.end());
    AlphabetPtr alphabet = Alphabet::permutations(letter_list);

    // Basis of the sum closure: indecomposable minimal non-members. Every
    // such permutation is a one-point insertion of a member of the alphabet.
    std::set<Permutation> basis;
    auto in_class = [&](const Permutation& p) {
        for (const auto& part : sum_decompose(p))
            if (!closed.count(part)) return false;
        return true;
    };
    for (const auto& a : letter_list) {
        for (const auto& cand : insertions(a)) {
            if (!is_sum_indecomposable(cand) || closed.count(cand)) continue;
            bool minimal = true;
            for (const auto& d : deletions(cand))
                if (!in_class(d)) minimal = false;
            if (minimal) basis.insert(cand);
        }
    }

    ClassModel model;
    model.build(std::move(alphabet), {}, std::vector<Permutation>(basis.begin(), basis.end()));
    return model;
}

ClassModel ClassModel::from_basis(const std::vector<Permutation>& basis, int indec_cap) {
    if (basis.empty())
        throw std::invalid_argument(
            "empty basis: the class of all permutations has infinitely many indecomposables");
    for (const auto& b : basis) {
        if (b.empty()) throw std::invalid_argument("basis contains the empty permutation");
        if (b.size() == 1) throw std::invalid_argument("basis contains 1; the class is trivial");
    }
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            if (i != j && contains(basis[i], basis[j]))
                throw std::invalid_argument("basis is not an antichain: " + basis[i].str() +
                                            " is contained in " + basis[j].str());

    // Indecomposables avoiding the basis, by size. Every indecomposable of
    // size n >= 2 has an indecomposable one-point deletion, so level n is
    // covered by insertions into level n-1, and an empty level closes the
    // enumeration.
    std::set<Permutation> all;
    std::vector<Permutation> prev{Permutation({1})};
    all.insert(prev.front());
    for (int n = 2; n <= indec_cap + 1; ++n) {
        std::set<Permutation> next;
        for (const auto& p : prev)
            for (const auto& cand : insertions(p))
                if (is_sum_indecomposable(cand) && avoids_all(cand, basis)) next.insert(cand);
        if (next.empty()) break;
        if (n == indec_cap + 1)
            throw std::runtime_error("alphabet not finite under cap " + std::to_string(indec_cap));
        all.insert(next.begin(), next.end());
        prev.assign(next.begin(), next.end());
    }

    AlphabetPtr alphabet = Alphabet::permutations({all.begin(), all.end()});
    std::vector<Word> forbidden;
    for (const auto& b : basis) {
        auto parts = sum_decompose(b);
        if (parts.size() < 2) continue;  // indecomposable basis elements never embed in a word
        std::vector<int> ids;
        bool ok = true;
        for (const auto& part : parts) {
            int id = alphabet->find(part.str());
            if (id < 0) {
                ok = false;
                break;
            }
            ids.push_back(id);
        }
        if (ok) forbidden.emplace_back(alphabet, std::move(ids));
    }

    ClassModel model;
    model.build(std::move(alphabet), std::move(forbidden), basis);
    return model;
}

ClassModel ClassModel::with_forbidden(AlphabetPtr alphabet, std::vector<Word> forbidden) {
    for (const auto& w : forbidden) {
        require_same_alphabet(Word(alphabet), w);
        if (w.empty()) throw std::invalid_argument("forbidden word must be nonempty");
    }
    ClassModel model;
    model.build(std::move(alphabet), std::move(forbidden), std::nullopt);
    return model;
}

void ClassModel::build(AlphabetPtr alphabet, std::vector<Word> forbidden,
                       std::optional<std::vector<Permutation>> basis) {
    alphabet_ = std::move(alphabet);
    forbidden_ = std::move(forbidden);
    basis_ = std::move(basis);
    for (const auto& w : forbidden_) forbidden_lengths_.push_back(w.length());
    for (size_t i = 0; i < forbidden_.size(); ++i)
        for (size_t j = 0; j < forbidden_.size(); ++j)
            if (i != j && leq(forbidden_[i], forbidden_[j]))
                throw std::invalid_argument("forbidden words are not an antichain: " +
                                            forbidden_[i].str() + " embeds in " +
                                            forbidden_[j].str());

    prefix_ = build_graph(true);
    suffix_ = build_graph(false);
    finish_graph(prefix_, dominance_warning_);
    finish_graph(suffix_, dominance_warning_);
    q_ = 3 * (prefix_.state_count() + suffix_.state_count());

    if (std::abs(prefix_.gamma - suffix_.gamma) > 1e-9)
        throw std::logic_error("prefix and suffix growth rates disagree");
    if (prefix_.max_dominant_on_path != suffix_.max_dominant_on_path)
        throw std::logic_error("prefix and suffix dominance counts disagree");
}

bool ClassModel::valid_tuple(const std::vector<int>& t) const {
    for (size_t i = 0; i < forbidden_.size(); ++i)
        if (t[i] >= forbidden_lengths_[i]) return false;
    return true;
}

std::vector<int> ClassModel::prefix_transition_tuple(const std::vector<int>& p, int letter) const {
    if (p.size() != forbidden_.size() || !valid_tuple(p))
        throw std::invalid_argument("prefix transition from an invalid state");
    std::vector<int> out(p);
    for (size_t i = 0; i < forbidden_.size(); ++i) {
        const auto& ids = forbidden_[i].ids();
        const int len = forbidden_lengths_[i];
        int m = p[i];
        while (m < len &&
               alphabet_->segment_embeds(
                   std::span<const int>(ids.data() + p[i], static_cast<size_t>(m + 1 - p[i])),
                   letter))
            ++m;
        out[i] = m;
    }
    return out;
}

std::vector<int> ClassModel::suffix_transition_tuple(const std::vector<int>& s, int letter) const {
    if (s.size() != forbidden_.size() || !valid_tuple(s))
        throw std::invalid_argument("suffix transition from an invalid state");
    std::vector<int> out(s);
    for (size_t i = 0; i < forbidden_.size(); ++i) {
        const auto& ids = forbidden_[i].ids();
        const int len = forbidden_lengths_[i];
        int m = s[i];
        while (m < len && alphabet_->segment_embeds(
                              std::span<const int>(ids.data() + (len - m - 1),
                                                   static_cast<size_t>(m + 1 - s[i])),
                              letter))
            ++m;
        out[i] = m;
    }
    return out;
}

StateGraph ClassModel::build_graph(bool prefix_side) const {
    StateGraph g;
    std::map<std::vector<int>, int> index;
    std::vector<int> initial(forbidden_.size(), 0);
    index[initial] = 0;
    g.states.push_back(initial);
    for (size_t head = 0; head < g.states.size(); ++head) {
        std::vector<int> row(static_cast<size_t>(alphabet_->size()), -1);
        for (int b = 0; b < alphabet_->size(); ++b) {
            std::vector<int> target = prefix_side ? prefix_transition_tuple(g.states[head], b)
                                                  : suffix_transition_tuple(g.states[head], b);
            if (!valid_tuple(target)) continue;
            auto [it, fresh] = index.emplace(target, static_cast<int>(g.states.size()));
            if (fresh) g.states.push_back(target);
            row[static_cast<size_t>(b)] = it->second;
        }
        g.transitions.push_back(std::move(row));
    }
    return g;
}

void ClassModel::finish_graph(StateGraph& g, std::string& warning) const {
    const int n = g.state_count();
    g.loop_alphabets.resize(static_cast<size_t>(n));
    g.successors.resize(static_cast<size_t>(n));
    g.state_growth.resize(static_cast<size_t>(n));
    g.dominant.assign(static_cast<size_t>(n), false);

    for (int s = 0; s < n; ++s) {
        std::set<int> succ;
        for (int b = 0; b < alphabet_->size(); ++b) {
            int t = g.transitions[static_cast<size_t>(s)][static_cast<size_t>(b)];
            if (t == s)
                g.loop_alphabets[static_cast<size_t>(s)].push_back(b);
            else if (t >= 0)
                succ.insert(t);
        }
        g.successors[static_cast<size_t>(s)].assign(succ.begin(), succ.end());

        // loop alphabets are down-sets of the alphabet under letter containment
        for (int a : g.loop_alphabets[static_cast<size_t>(s)])
            for (int b = 0; b < alphabet_->size(); ++b) {
                const int seg[1] = {b};
                if (alphabet_->segment_embeds(std::span<const int>(seg, 1), a) &&
                    g.transitions[static_cast<size_t>(s)][static_cast<size_t>(b)] != s)
                    throw std::logic_error("loop alphabet is not a down-set");
            }

        g.state_growth[static_cast<size_t>(s)] =
            growth(*alphabet_, g.loop_alphabets[static_cast<size_t>(s)]);
    }

    g.gamma = 0;
    for (int s = 0; s < n; ++s)
        g.gamma = std::max(g.gamma, g.state_growth[static_cast<size_t>(s)].gamma);

    // structural dominance: states with equal loop-weight multisets share a
    // growth polynomial; a cross-multiset tie within 1e-9 is flagged
    std::vector<std::vector<int>> keys(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        for (int id : g.loop_alphabets[static_cast<size_t>(s)])
            keys[static_cast<size_t>(s)].push_back(alphabet_->weight(id));
        std::sort(keys[static_cast<size_t>(s)].begin(), keys[static_cast<size_t>(s)].end());
    }
    std::vector<int> argmax_key;
    for (int s = 0; s < n; ++s) {
        if (g.loop_alphabets[static_cast<size_t>(s)].empty()) continue;
        if (g.state_growth[static_cast<size_t>(s)].gamma >= g.gamma - 1e-9) {
            g.dominant[static_cast<size_t>(s)] = true;
            if (argmax_key.empty())
                argmax_key = keys[static_cast<size_t>(s)];
            else if (argmax_key != keys[static_cast<size_t>(s)] && warning.empty())
                warning =
                    "dominance decided by numeric tie between structurally different loop "
                    "alphabets";
        }
    }

    // D: the most dominant states on a transition path from the initial state
    std::vector<int> memo(static_cast<size_t>(n), -1);
    auto best = [&](auto&& self, int s) -> int {
        int& slot = memo[static_cast<size_t>(s)];
        if (slot >= 0) return slot;
        int sub = 0;
        for (int t : g.successors[static_cast<size_t>(s)]) sub = std::max(sub, self(self, t));
        slot = sub + (g.dominant[static_cast<size_t>(s)] ? 1 : 0);
        return slot;
    };
    g.max_dominant_on_path = best(best, 0);
}

// ---------------------------------------------------------------------------
// membership and decomposition

std::optional<int> ClassModel::first_violation(const Word& w) const {
    require_same_alphabet(Word(alphabet_), w);
    int state = 0;
    for (int i = 0; i < w.length(); ++i) {
        state = prefix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
        if (state < 0) return i;
    }
    return std::nullopt;
}

Decomposition ClassModel::decompose(const Word& w, bool prefix_side) const {
    const StateGraph& g = prefix_side ? prefix_ : suffix_;
    struct Step {
        int pos;
        int letter;
        int state_after;
    };
    std::vector<Step> steps;
    int state = 0;
    if (prefix_side) {
        for (int i = 0; i < w.length(); ++i) {
            int nxt = g.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
            if (nxt < 0)
                throw std::invalid_argument("word leaves the class at letter index " +
                                            std::to_string(i));
            if (nxt != state) steps.push_back({i, w.id(i), nxt});
            state = nxt;
        }
    } else {
        for (int i = w.length() - 1; i >= 0; --i) {
            int nxt = g.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
            if (nxt < 0)
                throw std::invalid_argument("word leaves the class at letter index " +
                                            std::to_string(i) + " (scanning from the right)");
            if (nxt != state) steps.push_back({i, w.id(i), nxt});
            state = nxt;
        }
        std::reverse(steps.begin(), steps.end());
    }

    Decomposition d;
    const int k = static_cast<int>(steps.size());
    int begin = 0;
    for (int j = 0; j <= k; ++j) {
        int end = (j < k) ? steps[static_cast<size_t>(j)].pos : w.length();
        d.blocks.push_back(w.subword(begin, end));
        d.block_ranges.emplace_back(begin, end);
        int governing;
        if (prefix_side)
            governing = (j == 0) ? 0 : steps[static_cast<size_t>(j - 1)].state_after;
        else
            governing = (j == k) ? 0 : steps[static_cast<size_t>(j)].state_after;
        d.block_states.push_back(governing);
        if (j < k) {
            d.transition_letters.push_back(steps[static_cast<size_t>(j)].letter);
            d.transition_positions.push_back(steps[static_cast<size_t>(j)].pos);
            begin = steps[static_cast<size_t>(j)].pos + 1;
        }
    }
    return d;
}

Decomposition ClassModel::prefix_decomposition(const Word& w) const { return decompose(w, true); }
Decomposition ClassModel::suffix_decomposition(const Word& w) const { return decompose(w, false); }

int ClassModel::prefix_state_after(const Word& w, int len) const {
    int state = 0;
    for (int i = 0; i < len; ++i) {
        state = prefix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
        if (state < 0)
            throw std::invalid_argument("word leaves the class at letter index " +
                                        std::to_string(i));
    }
    return state;
}

int ClassModel::suffix_state_of_suffix(const Word& w, int from) const {
    int state = 0;
    for (int i = w.length() - 1; i >= from; --i) {
        state = suffix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
        if (state < 0)
            throw std::invalid_argument("word leaves the class at letter index " +
                                        std::to_string(i) + " (scanning from the right)");
    }
    return state;
}

// ---------------------------------------------------------------------------
// counting

std::vector<BigInt> ClassModel::class_counts(int max_n) const {
    const int states = prefix_.state_count();
    std::vector<std::vector<BigInt>> ways(
        static_cast<size_t>(states), std::vector<BigInt>(static_cast<size_t>(max_n) + 1, 0));
    ways[0][0] = 1;
    for (int n = 0; n <= max_n; ++n)
        for (int s = 0; s < states; ++s) {
            const BigInt& src = ways[static_cast<size_t>(s)][static_cast<size_t>(n)];
            if (src == 0) continue;
            for (int b = 0; b < alphabet_->size(); ++b) {
                int t = prefix_.transitions[static_cast<size_t>(s)][static_cast<size_t>(b)];
                int n2 = n + alphabet_->weight(b);
                if (t < 0 || n2 > max_n) continue;
                ways[static_cast<size_t>(t)][static_cast<size_t>(n2)] += src;
            }
        }
    std::vector<BigInt> counts(static_cast<size_t>(max_n) + 1, 0);
    for (int n = 0; n <= max_n; ++n)
        for (int s = 0; s < states; ++s)
            counts[static_cast<size_t>(n)] += ways[static_cast<size_t>(s)][static_cast<size_t>(n)];
    return counts;
}

BigInt ClassModel::count_by_path(const std::vector<int>& path_states,
                                 const std::vector<int>& transition_letters, int n) const {
    if (path_states.empty() || path_states.front() != 0)
        throw std::invalid_argument("transition path must start at the initial state");
    if (transition_letters.size() + 1 != path_states.size())
        throw std::invalid_argument("need exactly one transition letter per edge");
    int transit_weight = 0;
    for (size_t j = 0; j + 1 < path_states.size(); ++j) {
        int from = path_states[j], to = path_states[j + 1], b = transition_letters[j];
        if (from < 0 || from >= prefix_.state_count() || b < 0 || b >= alphabet_->size() ||
            prefix_.transitions[static_cast<size_t>(from)][static_cast<size_t>(b)] != to ||
            to == from)
            throw std::invalid_argument("bad transition path edge");
        transit_weight += alphabet_->weight(b);
    }
    int budget = n - transit_weight;
    if (budget < 0) return 0;

    std::vector<BigInt> conv(static_cast<size_t>(budget) + 1, 0);
    conv[0] = 1;
    for (int s : path_states) {
        auto counts =
            loop_word_counts(*alphabet_, prefix_.loop_alphabets[static_cast<size_t>(s)], budget);
        std::vector<BigInt> next(static_cast<size_t>(budget) + 1, 0);
        for (int u = 0; u <= budget; ++u) {
            if (conv[static_cast<size_t>(u)] == 0) continue;
            for (int v = 0; u + v <= budget; ++v)
                next[static_cast<size_t>(u + v)] +=
                    conv[static_cast<size_t>(u)] * counts[static_cast<size_t>(v)];
        }
        conv = std::move(next);
    }
    return conv[static_cast<size_t>(budget)];
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> ClassModel::transition_paths() const {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    std::vector<int> path{0};
    std::vector<int> letters;
    auto rec = [&](auto&& self, int state) -> void {
        out.emplace_back(path, letters);
        for (int b = 0; b < alphabet_->size(); ++b) {
            int t = prefix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(b)];
            if (t < 0 || t == state) continue;
            path.push_back(t);
            letters.push_back(b);
            self(self, t);
            path.pop_back();
            letters.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Word> ClassModel::level(int n) const {
    std::vector<Word> out;
    std::vector<int> stack;
    auto rec = [&](auto&& self, int state, int remaining) -> void {
        if (remaining == 0) {
            out.emplace_back(alphabet_, stack);
            return;
        }
        for (int b = 0; b < alphabet_->size(); ++b) {
            if (alphabet_->weight(b) > remaining) continue;
            int t = prefix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(b)];
            if (t < 0) continue;
            stack.push_back(b);
            self(self, t, remaining - alphabet_->weight(b));
            stack.pop_back();
        }
    };
    rec(rec, 0, n);
    return out;
}

// ---------------------------------------------------------------------------
// overlap, match, typicality

bool ClassModel::overlap(int prefix_state, int suffix_state) const {
    const auto& p = prefix_.states.at(static_cast<size_t>(prefix_state));
    const auto& s = suffix_.states.at(static_cast<size_t>(suffix_state));
    for (size_t i = 0; i < forbidden_.size(); ++i)
        if (p[i] + s[i] >= forbidden_lengths_[i]) return true;
    return false;
}

bool ClassModel::compatible(int prefix_state, int suffix_state) const {
    return !overlap(prefix_state, suffix_state);
}

bool ClassModel::match(int prefix_state, int suffix_state) const {
    if (overlap(prefix_state, suffix_state)) return false;
    for (int p2 : prefix_.successors[static_cast<size_t>(prefix_state)])
        if (!overlap(p2, suffix_state)) return false;
    for (int s2 : suffix_.successors[static_cast<size_t>(suffix_state)])
        if (!overlap(prefix_state, s2)) return false;
    if (prefix_.loop_alphabets[static_cast<size_t>(prefix_state)] !=
        suffix_.loop_alphabets[static_cast<size_t>(suffix_state)])
        throw std::logic_error("matching states must share their loop alphabet");
    return true;
}

EquitablePartition ClassModel::equitable_partition(const Word& w) const {
    const int n = w.weight();
    if (n < q_) throw std::invalid_argument("word too short for equitable partition");
    auto pre = prefix_decomposition(w);  // also certifies membership
    auto suf = suffix_decomposition(w);

    EquitablePartition part;
    part.boundaries.push_back(0);
    int cumulative = 0;
    int t = 0;
    const int Q = q_;
    for (int j = 1; j <= Q; ++j) {
        // shortest prefix whose weight is at least j*n/Q
        while (static_cast<long long>(Q) * cumulative < static_cast<long long>(j) * n) {
            cumulative += alphabet_->weight(w.id(t));
            ++t;
        }
        part.boundaries.push_back(t);
    }
    if (part.boundaries.back() != w.length())
        throw std::logic_error("equitable partition does not exhaust the word");

    const int K = max_letter_weight();
    int prev_cum = 0, cum = 0, idx = 0;
    for (int j = 1; j <= Q; ++j) {
        while (idx < part.boundaries[static_cast<size_t>(j)]) cum += alphabet_->weight(w.id(idx++));
        int slice_weight = cum - prev_cum;
        if (!(static_cast<long long>(Q) * slice_weight > n - static_cast<long long>(K) * Q &&
              static_cast<long long>(Q) * slice_weight < n + static_cast<long long>(K) * Q))
            throw std::logic_error("slice weight outside the equitable window");
        prev_cum = cum;
    }

    std::set<int> transition_positions(pre.transition_positions.begin(),
                                       pre.transition_positions.end());
    transition_positions.insert(suf.transition_positions.begin(), suf.transition_positions.end());
    part.free_slice.assign(static_cast<size_t>(Q), true);
    for (int pos : transition_positions) {
        for (int j = 0; j < Q; ++j)
            if (pos >= part.boundaries[static_cast<size_t>(j)] &&
                pos < part.boundaries[static_cast<size_t>(j + 1)])
                part.free_slice[static_cast<size_t>(j)] = false;
    }

    int run = 0, best_run = 0;
    for (int j = 0; j < Q; ++j) {
        run = part.free_slice[static_cast<size_t>(j)] ? run + 1 : 0;
        best_run = std::max(best_run, run);
    }
    if (best_run < 3)
        throw std::logic_error("equitable partition lacks three consecutive free slices");
    return part;
}

TypicalityReport ClassModel::is_typical(const Word& w, int block_threshold) const {
    const int n = w.weight();
    TypicalityReport report;
    report.threshold =
        block_threshold >= 0 ? block_threshold : static_cast<int>(std::ceil(std::sqrt(n)));
    auto part = equitable_partition(w);

    const int D = dominance_count();
    report.typical = true;
    for (int j = 0; j < part.slice_count(); ++j) {
        if (!part.free_slice[static_cast<size_t>(j)]) continue;
        const int begin = part.boundaries[static_cast<size_t>(j)];
        const int end = part.boundaries[static_cast<size_t>(j + 1)];

        SliceTypicality s;
        s.slice = j;

        int pj = prefix_state_after(w, begin);
        int sj = suffix_state_of_suffix(w, end);

        // condition 1: the slice sits in dominant loop blocks on both sides
        s.dominant_blocks = prefix_.dominant[static_cast<size_t>(pj)] &&
                            suffix_.dominant[static_cast<size_t>(sj)];

        // condition 2: dominant states on the flanking transition paths
        int d_x = prefix_.dominant[0] ? 1 : 0;
        {
            int state = 0;
            for (int i = 0; i < begin; ++i) {
                int nxt =
                    prefix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
                if (nxt != state && prefix_.dominant[static_cast<size_t>(nxt)]) ++d_x;
                state = nxt;
            }
        }
        int d_y = suffix_.dominant[0] ? 1 : 0;
        {
            int state = 0;
            for (int i = w.length() - 1; i >= end; --i) {
                int nxt =
                    suffix_.transitions[static_cast<size_t>(state)][static_cast<size_t>(w.id(i))];
                if (nxt != state && suffix_.dominant[static_cast<size_t>(nxt)]) ++d_y;
                state = nxt;
            }
        }
        s.flank_balance = (d_x + d_y == D + 1);

        // condition 3
        s.states_match = match(pj, sj);
        if (!s.states_match && compatible(pj, sj) && s.flank_balance &&
            prefix_.dominant[static_cast<size_t>(pj)] &&
            prefix_.loop_alphabets[static_cast<size_t>(pj)] ==
                suffix_.loop_alphabets[static_cast<size_t>(sj)])
            throw std::logic_error(
                "compatible dominant flanks with equal loop alphabets and balanced dominant "
                "counts must match");

        // condition 4: every short loop-alphabet pattern occurs often in the slice
        const auto& loop = prefix_.loop_alphabets[static_cast<size_t>(pj)];
        Word slice = w.subword(begin, end);
        s.blocks_abundant = true;
        if (loop.empty()) {
            s.blocks_abundant = false;
        } else {
            const int plen = std::max<int>(4, static_cast<int>(loop.size()));
            std::vector<int> digits(static_cast<size_t>(plen), 0);
            while (true) {
                std::vector<int> ids;
                ids.reserve(static_cast<size_t>(plen));
                for (int d : digits) ids.push_back(loop[static_cast<size_t>(d)]);
                if (count_disjoint_blocks(slice, Word(alphabet_, ids)) < report.threshold) {
                    s.blocks_abundant = false;
                    break;
                }
                int carry = plen - 1;
                while (carry >= 0 &&
                       ++digits[static_cast<size_t>(carry)] == static_cast<int>(loop.size())) {
                    digits[static_cast<size_t>(carry)] = 0;
                    --carry;
                }
                if (carry < 0) break;
            }
        }

        if (!s.ok()) report.typical = false;
        report.free_slices.push_back(s);
    }
    return report;
}

}  // namespace wilf
