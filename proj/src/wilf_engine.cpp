#include "wilf/wilf_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace wilf {

const BigInt& WilfSignature::at(int n) const {
    if (n < pattern_weight || n > horizon)
        throw std::out_of_range("avoider count outside the computed range");
    return avoiders.at(static_cast<size_t>(n - pattern_weight));
}

namespace {

// Live product states (class prefix state, greedy progress), reachable and
// not yet containing the pattern.
int live_product_states(const ClassModel& m, const Word& pattern) {
    const auto& g = m.prefix_graph();
    const Alphabet& a = *m.alphabet();
    const int len = pattern.length();
    std::vector<std::vector<int>> ptrans(static_cast<size_t>(len),
                                         std::vector<int>(static_cast<size_t>(a.size())));
    for (int j = 0; j < len; ++j)
        for (int b = 0; b < a.size(); ++b)
            ptrans[static_cast<size_t>(j)][static_cast<size_t>(b)] =
                advance_progress(pattern, j, b);

    std::vector<std::vector<bool>> seen(
        static_cast<size_t>(g.state_count()), std::vector<bool>(static_cast<size_t>(len) + 1));
    std::vector<std::pair<int, int>> queue;
    auto push = [&](int cs, int j) {
        if (!seen[static_cast<size_t>(cs)][static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(cs)][static_cast<size_t>(j)] = true;
            queue.emplace_back(cs, j);
        }
    };
    if (len == 0) return 0;
    push(0, 0);
    int live = 0;
    for (size_t h = 0; h < queue.size(); ++h) {
        auto [cs, j] = queue[h];
        if (j == len) continue;
        ++live;
        for (int b = 0; b < a.size(); ++b) {
            int cs2 = g.transitions[static_cast<size_t>(cs)][static_cast<size_t>(b)];
            if (cs2 < 0) continue;
            push(cs2, ptrans[static_cast<size_t>(j)][static_cast<size_t>(b)]);
        }
    }
    return live;
}

}  // namespace

int signature_horizon(const ClassModel& m, const Word& pattern) {
    return 2 * live_product_states(m, pattern) * m.max_letter_weight() + pattern.weight();
}

int exact_horizon_for_level(const ClassModel& m, int k) {
    int best = k;
    for (const auto& pattern : m.level(k))
        best = std::max(best, signature_horizon(m, pattern));
    return best;
}

WilfSignature avoider_series(const ClassModel& m, const Word& pattern, int max_n) {
    require_same_alphabet(Word(m.alphabet()), pattern);
    if (!m.member(pattern))
        throw std::invalid_argument("pattern " + pattern.str() + " is not in the class");
    const int k = pattern.weight();
    if (max_n < k) throw std::invalid_argument("horizon below the pattern weight");

    const auto& g = m.prefix_graph();
    const Alphabet& a = *m.alphabet();
    const int len = pattern.length();
    const int states = g.state_count();
    const int K = m.max_letter_weight();

    std::vector<std::vector<int>> ptrans(static_cast<size_t>(len),
                                         std::vector<int>(static_cast<size_t>(a.size())));
    for (int j = 0; j < len; ++j)
        for (int b = 0; b < a.size(); ++b)
            ptrans[static_cast<size_t>(j)][static_cast<size_t>(b)] =
                advance_progress(pattern, j, b);

    WilfSignature sig;
    sig.pattern = pattern;
    sig.pattern_weight = k;
    sig.horizon = max_n;
    sig.exact_horizon = signature_horizon(m, pattern);
    sig.exact = max_n >= sig.exact_horizon;

    if (len == 0) {  // every word contains the empty pattern
        sig.avoiders.assign(static_cast<size_t>(max_n - k) + 1, 0);
        return sig;
    }

    // rolling DP layers over weight; layer[w % (K+1)][cs][j]
    const int window = K + 1;
    std::vector<std::vector<std::vector<BigInt>>> layers(
        static_cast<size_t>(window),
        std::vector<std::vector<BigInt>>(static_cast<size_t>(states),
                                         std::vector<BigInt>(static_cast<size_t>(len), 0)));
    layers[0][0][0] = 1;
    std::vector<BigInt> avoiders;
    for (int n = 0; n <= max_n; ++n) {
        auto& layer = layers[static_cast<size_t>(n % window)];
        BigInt total = 0;
        for (int cs = 0; cs < states; ++cs)
            for (int j = 0; j < len; ++j) total += layer[static_cast<size_t>(cs)][static_cast<size_t>(j)];
        if (n >= k) avoiders.push_back(total);

        // push transitions into the upcoming layers
        for (int cs = 0; cs < states; ++cs)
            for (int j = 0; j < len; ++j) {
                const BigInt& src = layer[static_cast<size_t>(cs)][static_cast<size_t>(j)];
                if (src == 0) continue;
                for (int b = 0; b < a.size(); ++b) {
                    int n2 = n + a.weight(b);
                    if (n2 > max_n) continue;
                    int cs2 = g.transitions[static_cast<size_t>(cs)][static_cast<size_t>(b)];
                    if (cs2 < 0) continue;
                    int j2 = ptrans[static_cast<size_t>(j)][static_cast<size_t>(b)];
                    if (j2 == len) continue;  // contains the pattern: absorbed
                    layers[static_cast<size_t>(n2 % window)][static_cast<size_t>(cs2)]
                          [static_cast<size_t>(j2)] += src;
                }
            }
        // this slot is consumed; weight n + K + 1 reuses it and needs it empty
        for (auto& row : layer) std::fill(row.begin(), row.end(), BigInt(0));
    }
    sig.avoiders = std::move(avoiders);
    return sig;
}

WilfPartition wilf_partition(const ClassModel& m, int k, int max_n) {
    if (max_n < k) throw std::invalid_argument("horizon below the level weight");
    WilfPartition part;
    part.k = k;
    auto patterns = m.level(k);
    part.level_count = static_cast<long long>(patterns.size());

    std::map<std::vector<BigInt>, int> by_signature;
    std::vector<std::vector<Word>> blocks;
    std::vector<WilfSignature> reps;
    std::vector<bool> all_exact;
    for (const auto& pattern : patterns) {
        auto sig = avoider_series(m, pattern, max_n);
        auto [it, fresh] = by_signature.emplace(sig.avoiders, static_cast<int>(blocks.size()));
        if (fresh) {
            blocks.emplace_back();
            reps.push_back(sig);
            all_exact.push_back(true);
        }
        blocks[static_cast<size_t>(it->second)].push_back(pattern);
        all_exact[static_cast<size_t>(it->second)] =
            all_exact[static_cast<size_t>(it->second)] && sig.exact;
    }

    // deterministic order: sort members, then blocks by first member
    std::vector<int> order(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        std::sort(blocks[i].begin(), blocks[i].end());
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return blocks[static_cast<size_t>(x)].front() < blocks[static_cast<size_t>(y)].front();
    });
    part.exact = true;
    for (int idx : order) {
        part.blocks.push_back(std::move(blocks[static_cast<size_t>(idx)]));
        part.block_signatures.push_back(std::move(reps[static_cast<size_t>(idx)]));
        part.block_exact.push_back(all_exact[static_cast<size_t>(idx)]);
        part.exact = part.exact && part.block_exact.back();
    }
    return part;
}

int WilfPartition::block_of(const Word& pattern) const {
    for (int i = 0; i < block_count(); ++i)
        for (const auto& w : blocks[static_cast<size_t>(i)])
            if (w == pattern) return i;
    return -1;
}

std::set<Word> symmetry_orbit(const ClassModel& m, const Word& pattern) {
    if (!m.member(pattern))
        throw std::invalid_argument("pattern " + pattern.str() + " is not in the class");
    std::set<Word> orbit{pattern};
    if (!m.basis().has_value() || m.alphabet()->mode() != Alphabet::Mode::permutation)
        return orbit;
    const auto& basis = *m.basis();
    std::set<Permutation> basis_set(basis.begin(), basis.end());
    Permutation sigma = pattern.to_permutation();
    for (const auto& g : dihedral_group()) {
        std::set<Permutation> image;
        for (const auto& b : basis) image.insert(g(b));
        if (image != basis_set) continue;
        std::vector<int> ids;
        bool ok = true;
        for (const auto& part : sum_decompose(g(sigma))) {
            int id = m.alphabet()->find(part.str());
            if (id < 0) {
                ok = false;  // cannot happen for a symmetry fixing the basis
                break;
            }
            ids.push_back(id);
        }
        if (ok) orbit.emplace(m.alphabet(), std::move(ids));
    }
    return orbit;
}

std::set<Word> shuffle_equivalents(const ClassModel& m, const Word& pattern) {
    if (!m.is_sum_closed())
        throw std::invalid_argument(
            "shuffle equivalents need a sum-closed class; use symmetry or the poly move");
    if (!m.member(pattern))
        throw std::invalid_argument("pattern " + pattern.str() + " is not in the class");
    if (pattern.empty()) return {pattern};

    // maximal incompatible factorisation: cut at every incompatible adjacency
    std::vector<Word> parts;
    int begin = 0;
    for (int i = 0; i + 1 < pattern.length(); ++i)
        if (incompatible(*m.alphabet(), pattern.id(i), pattern.id(i + 1))) {
            parts.push_back(pattern.subword(begin, i + 1));
            begin = i + 1;
        }
    parts.push_back(pattern.subword(begin, pattern.length()));
    return shuffle_orbit(parts);
}

namespace {

struct MoveSelection {
    std::pair<int, int> source_central;  // letter range within the word
    std::pair<int, int> target_central;
};

// Chooses the donor block (holding three consecutive free slices, not the
// last dominant block in scan order) and the receiving block on the other
// side's decomposition, for either scan direction.
std::optional<MoveSelection> select_blocks(const ClassModel& m, const Word& w,
                                           const EquitablePartition& part, bool prefix_side) {
    const auto& own = prefix_side ? m.prefix_decomposition(w) : m.suffix_decomposition(w);
    const auto& other = prefix_side ? m.suffix_decomposition(w) : m.prefix_decomposition(w);
    const auto& own_graph = prefix_side ? m.prefix_graph() : m.suffix_graph();
    const auto& other_graph = prefix_side ? m.suffix_graph() : m.prefix_graph();
    const int margin = m.large_block_weight();          // 2KQ+1 symbols kept on each side
    const int central_pad = m.max_letter_weight() * m.q();  // KQ letters around central symbols

    for (int j = 1; j + 1 < part.slice_count(); ++j) {
        if (!part.free_slice[static_cast<size_t>(j - 1)] ||
            !part.free_slice[static_cast<size_t>(j)] ||
            !part.free_slice[static_cast<size_t>(j + 1)])
            continue;
        int lo = part.boundaries[static_cast<size_t>(j - 1)];
        int hi = part.boundaries[static_cast<size_t>(j + 2)];
        // locate the block of the scanning-side decomposition holding [lo, hi)
        int block = -1;
        for (size_t b = 0; b < own.block_ranges.size(); ++b)
            if (own.block_ranges[b].first <= lo && hi <= own.block_ranges[b].second)
                block = static_cast<int>(b);
        if (block < 0) continue;
        if (!own_graph.dominant[static_cast<size_t>(own.block_states[static_cast<size_t>(block)])])
            continue;
        // skip when this is the final dominant block in scan order
        bool later_dominant = false;
        for (size_t b = static_cast<size_t>(block) + 1; b < own.blocks.size(); ++b)
            if (prefix_side &&
                own_graph.dominant[static_cast<size_t>(own.block_states[b])])
                later_dominant = true;
        for (size_t b = 0; b < static_cast<size_t>(block); ++b)
            if (!prefix_side &&
                own_graph.dominant[static_cast<size_t>(own.block_states[b])])
                later_dominant = true;
        if (!later_dominant) continue;

        auto [bb, be] = own.block_ranges[static_cast<size_t>(block)];
        std::pair<int, int> source{bb + margin, be - margin};
        if (source.second - source.first < 1) continue;

        // receiving block: nearest dominant block of the other decomposition
        // beyond the donor, in scan order
        int target = -1;
        if (prefix_side) {
            for (size_t b = 0; b < other.blocks.size(); ++b)
                if (other.block_ranges[b].first >= be &&
                    other_graph.dominant[static_cast<size_t>(other.block_states[b])]) {
                    target = static_cast<int>(b);
                    break;
                }
        } else {
            for (int b = static_cast<int>(other.blocks.size()) - 1; b >= 0; --b)
                if (other.block_ranges[static_cast<size_t>(b)].second <= bb &&
                    other_graph.dominant[static_cast<size_t>(other.block_states[static_cast<size_t>(b)])]) {
                    target = b;
                    break;
                }
        }
        if (target < 0) continue;
        auto [tb, te] = other.block_ranges[static_cast<size_t>(target)];
        std::pair<int, int> central{tb + central_pad, te - central_pad};
        if (central.second - central.first < 1) continue;
        return MoveSelection{source, central};
    }
    return std::nullopt;
}

}  // namespace

Word move_poly(const ClassModel& m, const Word& w, int k, const MovePolyOptions& options) {
    if (std::abs(m.gamma() - 1.0) > 1e-9 || m.dominance_count() <= 1)
        throw std::invalid_argument(
            "not an unbounded polynomial class: needs growth rate 1 and more than one dominant "
            "state on a path");
    if (!m.member(w)) throw std::invalid_argument("word is not in the class");
    if (k == 0) return w;
    if (k < 0) throw std::invalid_argument("k out of range");

    auto typ = m.is_typical(w, options.typicality_threshold);
    if (!typ.typical) {
        std::string which;
        for (const auto& s : typ.free_slices)
            if (!s.ok()) {
                which = !s.dominant_blocks  ? "condition 1 (dominant blocks)"
                        : !s.flank_balance  ? "condition 2 (flank counts)"
                        : !s.states_match   ? "condition 3 (matching states)"
                                            : "condition 4 (block abundance)";
                break;
            }
        throw std::invalid_argument("not-typical: free slice fails " + which);
    }

    const int large = m.large_block_weight();
    for (bool prefix_side : {true, false}) {
        const auto& d = prefix_side ? m.prefix_decomposition(w) : m.suffix_decomposition(w);
        const auto& g = prefix_side ? m.prefix_graph() : m.suffix_graph();
        for (size_t b = 0; b < d.blocks.size(); ++b)
            if (g.dominant[static_cast<size_t>(d.block_states[b])] &&
                d.blocks[b].weight() < large)
                throw std::invalid_argument("block-not-large: a dominant block has weight " +
                                            std::to_string(d.blocks[b].weight()) +
                                            " below " + std::to_string(large));
    }

    auto part = m.equitable_partition(w);
    auto selection = select_blocks(m, w, part, true);
    if (!selection) selection = select_blocks(m, w, part, false);
    if (!selection)
        throw std::invalid_argument(
            "B-rightmost: every candidate block is the last dominant block on its side and no "
            "mirrored alternative exists");

    auto [src, dst] = *selection;
    const int available = src.second - src.first;
    if (k > available)
        throw std::invalid_argument("k out of range: the central piece has " +
                                    std::to_string(available) + " letters");

    const int unit = m.alphabet()->find("1");
    for (int i = src.first; i < src.second; ++i)
        if (m.alphabet()->weight(w.id(i)) != 1)
            throw std::logic_error("central piece of a dominant block must consist of unit letters");

    std::vector<int> ids = w.ids();
    ids.erase(ids.begin() + src.first, ids.begin() + src.first + k);
    int insert_at = dst.first > src.first ? dst.first - k : dst.first;
    int unit_id = unit >= 0 ? unit : w.id(src.first);
    ids.insert(ids.begin() + insert_at, static_cast<size_t>(k), unit_id);
    Word moved(m.alphabet(), std::move(ids));

    if (moved.weight() != w.weight()) throw std::logic_error("the move must preserve weight");
    if (!m.member(moved)) throw std::logic_error("the moved word must stay in the class");

    if (options.verify_signatures) {
        int horizon = options.verify_horizon > 0
                          ? options.verify_horizon
                          : std::max(signature_horizon(m, w), signature_horizon(m, moved));
        auto sig_a = avoider_series(m, w, horizon);
        auto sig_b = avoider_series(m, moved, horizon);
        if (sig_a.avoiders != sig_b.avoiders)
            throw std::logic_error("predicted equivalence failed signature verification");
    }
    return moved;
}

namespace {

// All words with the same transition path and transition letters, obtained
// by redistributing the loop weight over the loop-block slots.
std::vector<Word> same_path_family(const ClassModel& m, const Word& w) {
    auto d = m.prefix_decomposition(w);
    const auto& g = m.prefix_graph();
    int total = 0;
    std::vector<int> slots;  // block indexes with a nonempty loop alphabet
    for (size_t b = 0; b < d.blocks.size(); ++b) {
        total += d.blocks[b].weight();
        if (!g.loop_alphabets[static_cast<size_t>(d.block_states[b])].empty())
            slots.push_back(static_cast<int>(b));
        else if (d.blocks[b].length() > 0)
            return {w};  // letters in a loop-free slot: nothing to redistribute
    }

    // polynomial classes have unit loop alphabets, so a block of weight t is
    // the unique word 1^t; other classes are not redistributed here
    for (int slot : slots)
        if (g.loop_alphabets[static_cast<size_t>(d.block_states[static_cast<size_t>(slot)])].size() != 1)
            return {w};

    std::vector<Word> family;
    std::vector<int> weights(slots.size(), 0);
    auto emit = [&]() {
        std::vector<int> ids;
        size_t slot_pos = 0;
        for (size_t b = 0; b < d.blocks.size(); ++b) {
            if (slot_pos < slots.size() && slots[slot_pos] == static_cast<int>(b)) {
                int unit = g.loop_alphabets[static_cast<size_t>(d.block_states[b])][0];
                for (int t = 0; t < weights[slot_pos]; ++t) ids.push_back(unit);
                ++slot_pos;
            }
            if (b < d.transition_letters.size()) ids.push_back(d.transition_letters[b]);
        }
        family.emplace_back(m.alphabet(), std::move(ids));
    };
    auto rec = [&](auto&& self, size_t slot, int remaining) -> void {
        if (slot + 1 == weights.size()) {
            weights[slot] = remaining;
            emit();
            return;
        }
        for (int t = 0; t <= remaining; ++t) {
            weights[slot] = t;
            self(self, slot + 1, remaining - t);
        }
    };
    if (slots.empty()) return {w};
    rec(rec, 0, total);
    return family;
}

}  // namespace

PredictionReport verify_predictions(const ClassModel& m, int k, int max_n) {
    PredictionReport report;
    report.partition = wilf_partition(m, k, max_n);
    const bool poly_class = std::abs(m.gamma() - 1.0) <= 1e-9 && m.dominance_count() > 1;

    for (const auto& pattern : m.level(k)) {
        std::vector<std::pair<std::string, std::set<Word>>> orbits;
        orbits.emplace_back("symmetry", symmetry_orbit(m, pattern));
        if (m.is_sum_closed()) orbits.emplace_back("shuffle", shuffle_equivalents(m, pattern));
        if (poly_class) {
            auto family = same_path_family(m, pattern);
            orbits.emplace_back("poly-move", std::set<Word>(family.begin(), family.end()));
        }

        for (auto& [kind, orbit] : orbits) {
            OrbitCheck check;
            check.kind = kind;
            check.pattern = pattern;
            check.orbit.assign(orbit.begin(), orbit.end());
            int block = report.partition.block_of(pattern);
            check.within_one_block = true;
            check.exact = report.partition.block_exact[static_cast<size_t>(block)];
            for (const auto& member : orbit) {
                int other = report.partition.block_of(member);
                if (other != block) check.within_one_block = false;
                if (other >= 0)
                    check.exact =
                        check.exact && report.partition.block_exact[static_cast<size_t>(other)];
            }
            if (!check.within_one_block) {
                if (check.exact)
                    ++report.hard_violations;
                else
                    ++report.warnings;
            }
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

std::vector<CollapseRow> collapse_report(const ClassModel& m, int k_from, int k_to, int max_n) {
    std::vector<CollapseRow> rows;
    for (int k = k_from; k <= k_to; ++k) {
        auto part = wilf_partition(m, k, max_n);
        CollapseRow row;
        row.k = k;
        row.level_count = part.level_count;
        row.wilf_classes = part.block_count();
        double c = part.level_count.convert_to<double>();
        row.ratio = c > 0 ? row.wilf_classes / c : 0.0;
        row.mean_block = row.wilf_classes > 0 ? c / row.wilf_classes : 0.0;
        row.exact = part.exact;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace wilf
