#include "wilf/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "wilf/class_spec.hpp"
#include "wilf/sampler.hpp"
#include "wilf/wilf_engine.hpp"

namespace wilf::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
    std::string class_path;
    int max = -1;      // -1: subcommand-specific default
    int size = -1;
    std::string pattern;
    int samples = 1000;
    std::uint64_t seed = 0;
    std::string format;  // subcommand default when empty
    std::string out_path;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

ordered_json json_count(const BigInt& v) {
    if (v <= std::numeric_limits<long long>::max())
        return ordered_json(v.convert_to<long long>());
    return ordered_json(v.str());
}

// Accepts a dotted word or, for permutation alphabets, a plain permutation
// whose sum components must all be letters.
Word parse_pattern(const ClassModel& m, const std::string& text) {
    try {
        return Word::parse(m.alphabet(), text);
    } catch (const std::invalid_argument&) {
        if (m.alphabet()->mode() != Alphabet::Mode::permutation) throw;
    }
    Permutation p = Permutation::parse(text);
    std::vector<int> ids;
    for (const auto& part : sum_decompose(p)) {
        int id = m.alphabet()->find(part.str());
        if (id < 0)
            throw std::invalid_argument("pattern component " + part.str() +
                                        " is not a letter of the class alphabet");
        ids.push_back(id);
    }
    return Word(m.alphabet(), std::move(ids));
}

std::string pattern_name(const ClassModel& m, const Word& w) {
    return m.alphabet()->mode() == Alphabet::Mode::permutation ? w.to_permutation().str()
                                                               : w.str();
}

std::string run_automaton(const ClassModel& model, const RunConfig& cfg) {
    if (cfg.format == "csv")
        throw std::invalid_argument("the automaton dump is json only");
    return automaton_json(model) + "\n";
}

std::string run_growth(const ClassModel& model, const RunConfig& cfg) {
    const int max_n = cfg.max >= 0 ? cfg.max : 10;
    auto counts = model.class_counts(max_n);
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "side,state,rho,gamma,constant,dominant\n";
        for (int side = 0; side < 2; ++side) {
            const auto& g = side == 0 ? model.prefix_graph() : model.suffix_graph();
            for (int s = 0; s < g.state_count(); ++s) {
                const auto& gr = g.state_growth[static_cast<size_t>(s)];
                out << (side == 0 ? "prefix" : "suffix") << ',' << s << ','
                    << fmt_double(gr.rho) << ',' << fmt_double(gr.gamma) << ','
                    << fmt_double(gr.constant) << ','
                    << (g.dominant[static_cast<size_t>(s)] ? "true" : "false") << '\n';
            }
        }
        out << "# gamma=" << fmt_double(model.gamma()) << " D=" << model.dominance_count()
            << " K=" << model.max_letter_weight() << " Q=" << model.q() << '\n';
        return out.str();
    }
    ordered_json doc;
    doc["gamma"] = model.gamma();
    doc["D"] = model.dominance_count();
    doc["K"] = model.max_letter_weight();
    doc["Q"] = model.q();
    ordered_json cs = ordered_json::array();
    for (const auto& c : counts) cs.push_back(json_count(c));
    doc["counts"] = std::move(cs);
    for (int side = 0; side < 2; ++side) {
        const auto& g = side == 0 ? model.prefix_graph() : model.suffix_graph();
        ordered_json states = ordered_json::array();
        for (int s = 0; s < g.state_count(); ++s) {
            const auto& gr = g.state_growth[static_cast<size_t>(s)];
            ordered_json entry;
            entry["tuple"] = g.states[static_cast<size_t>(s)];
            entry["rho"] = gr.rho;
            entry["gamma"] = gr.gamma;
            entry["constant"] = gr.constant;
            entry["dominant"] = static_cast<bool>(g.dominant[static_cast<size_t>(s)]);
            states.push_back(std::move(entry));
        }
        doc[side == 0 ? "prefix_states" : "suffix_states"] = std::move(states);
    }
    return doc.dump(2) + "\n";
}

std::string run_count(const ClassModel& model, const RunConfig& cfg) {
    const int max_n = cfg.max >= 0 ? cfg.max : 10;
    auto counts = model.class_counts(max_n);
    if (cfg.format == "json") {
        ordered_json doc;
        ordered_json cs = ordered_json::array();
        for (const auto& c : counts) cs.push_back(json_count(c));
        doc["counts"] = std::move(cs);
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "n,count\n";
    for (int n = 0; n <= max_n; ++n) out << n << ',' << counts[static_cast<size_t>(n)] << '\n';
    return out.str();
}

std::string run_series(const ClassModel& model, const RunConfig& cfg) {
    Word w = cfg.pattern.empty() ? Word(model.alphabet()) : parse_pattern(model, cfg.pattern);
    const int max_n = cfg.max >= 0 ? cfg.max : std::max(10, w.weight());
    auto a_series = series_A(*model.alphabet(), max_n);
    auto i_series = series_I(w, max_n);
    auto i_star = series_I_star(w, max_n);
    bool identity = check_quotient_identity(w, max_n);
    if (cfg.format == "json") {
        ordered_json doc;
        doc["pattern"] = w.str();
        auto dump = [&](const TruncatedSeries& s) {
            ordered_json arr = ordered_json::array();
            for (int d = 0; d <= s.cutoff(); ++d) arr.push_back(json_count(s.coeff(d)));
            return arr;
        };
        doc["A"] = dump(a_series);
        doc["I"] = dump(i_series);
        doc["Istar"] = dump(i_star);
        doc["quotient_identity"] = identity;
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "series,degree,coefficient\n";
    auto rows = [&](const char* name, const TruncatedSeries& s) {
        for (int d = 0; d <= s.cutoff(); ++d) out << name << ',' << d << ',' << s.coeff(d) << '\n';
    };
    rows("A", a_series);
    rows("I", i_series);
    rows("Istar", i_star);
    out << "# quotient_identity=" << (identity ? "true" : "false") << '\n';
    return out.str();
}

std::string run_avoid(const ClassModel& model, const RunConfig& cfg) {
    if (cfg.pattern.empty()) throw std::invalid_argument("avoid needs --pattern");
    Word w = parse_pattern(model, cfg.pattern);
    const int max_n = cfg.max >= 0 ? cfg.max : signature_horizon(model, w);
    auto sig = avoider_series(model, w, max_n);
    if (cfg.format == "json") {
        ordered_json doc;
        doc["pattern"] = pattern_name(model, w);
        doc["word"] = w.str();
        doc["from"] = sig.pattern_weight;
        doc["exact_horizon"] = sig.exact_horizon;
        doc["exact"] = sig.exact;
        ordered_json arr = ordered_json::array();
        for (const auto& c : sig.avoiders) arr.push_back(json_count(c));
        doc["avoiders"] = std::move(arr);
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "n,avoiders\n";
    for (int n = sig.pattern_weight; n <= sig.horizon; ++n) out << n << ',' << sig.at(n) << '\n';
    out << "# exact_horizon=" << sig.exact_horizon << " exact=" << (sig.exact ? "true" : "false")
        << '\n';
    return out.str();
}

std::string run_wilf(const ClassModel& model, const RunConfig& cfg) {
    if (cfg.size < 1) throw std::invalid_argument("wilf needs --size");
    if (cfg.format == "csv") {
        const int max_n = cfg.max >= 0 ? cfg.max : exact_horizon_for_level(model, cfg.size);
        auto rows = collapse_report(model, 1, cfg.size, max_n);
        std::ostringstream out;
        out << "k,c_k,w_k,ratio,mean_block,exact\n";
        for (const auto& row : rows)
            out << row.k << ',' << row.level_count << ',' << row.wilf_classes << ','
                << fmt_double(row.ratio) << ',' << fmt_double(row.mean_block) << ','
                << (row.exact ? "true" : "false") << '\n';
        return out.str();
    }
    const int max_n = cfg.max >= 0 ? cfg.max : exact_horizon_for_level(model, cfg.size);
    auto part = wilf_partition(model, cfg.size, max_n);
    ordered_json doc;
    doc["k"] = part.k;
    doc["c"] = json_count(part.level_count);
    doc["w"] = part.block_count();
    doc["exact"] = part.exact;
    ordered_json blocks = ordered_json::array();
    for (const auto& block : part.blocks) {
        ordered_json members = ordered_json::array();
        for (const auto& w : block) members.push_back(pattern_name(model, w));
        blocks.push_back(std::move(members));
    }
    doc["blocks"] = std::move(blocks);
    return doc.dump(2) + "\n";
}

std::string run_orbits(const ClassModel& model, const RunConfig& cfg, int& exit_code) {
    if (cfg.size < 1) throw std::invalid_argument("orbits needs --size");
    const int max_n = cfg.max >= 0 ? cfg.max : exact_horizon_for_level(model, cfg.size);
    auto report = verify_predictions(model, cfg.size, max_n);
    ordered_json doc;
    doc["k"] = cfg.size;
    doc["max"] = max_n;
    doc["hard_violations"] = report.hard_violations;
    doc["warnings"] = report.warnings;
    doc["w"] = report.partition.block_count();
    ordered_json checks = ordered_json::array();
    for (const auto& check : report.checks) {
        ordered_json entry;
        entry["kind"] = check.kind;
        entry["pattern"] = pattern_name(model, check.pattern);
        ordered_json orbit = ordered_json::array();
        for (const auto& w : check.orbit) orbit.push_back(pattern_name(model, w));
        entry["orbit"] = std::move(orbit);
        entry["within_one_block"] = check.within_one_block;
        entry["exact"] = check.exact;
        checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    if (report.hard_violations > 0) exit_code = 2;
    return doc.dump(2) + "\n";
}

std::string run_sample(const ClassModel& model, const RunConfig& cfg) {
    if (cfg.max < 0) throw std::invalid_argument("sample needs --max for the target weight");
    RandomSource rng(cfg.seed);
    ClassSampler sampler(model, cfg.max);
    const int count = cfg.samples;
    if (cfg.format == "json") {
        ordered_json doc;
        doc["seed"] = cfg.seed;
        doc["n"] = cfg.max;
        ordered_json words = ordered_json::array();
        for (int i = 0; i < count; ++i) words.push_back(sampler.sample(rng).str());
        doc["words"] = std::move(words);
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "# seed=" << cfg.seed << "\n";
    out << "index,word\n";
    for (int i = 0; i < count; ++i) out << i << ',' << sampler.sample(rng).str() << '\n';
    return out.str();
}

std::string run_stats(const ClassModel& model, const RunConfig& cfg) {
    if (cfg.max < 0) throw std::invalid_argument("stats needs --max for the word weight");
    RandomSource rng(cfg.seed);
    EmpiricalOptions opt;
    if (!cfg.pattern.empty()) {
        opt.block_patterns = {parse_pattern(model, cfg.pattern)};
    } else {
        // default probe pattern: unit letter around the second letter
        std::vector<int> ids;
        if (model.alphabet()->size() >= 2)
            ids = {0, 1, 0};
        else
            ids = {0, 0, 0};
        opt.block_patterns = {Word(model.alphabet(), ids)};
    }
    auto report = empirical_suite(model, cfg.max, cfg.samples, rng, opt);
    if (cfg.format == "json") {
        ordered_json doc;
        doc["seed"] = cfg.seed;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json entry;
            entry["statistic"] = row.statistic;
            entry["n"] = row.n;
            entry["samples"] = row.samples;
            entry["value"] = row.value;
            rows.push_back(std::move(entry));
        }
        doc["rows"] = std::move(rows);
        ordered_json hists = ordered_json::object();
        for (const auto& [name, hist] : report.histograms) {
            ordered_json h = ordered_json::object();
            for (const auto& [value, cnt] : hist) h[std::to_string(value)] = cnt;
            hists[name] = std::move(h);
        }
        doc["histograms"] = std::move(hists);
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "# seed=" << cfg.seed << "\n";
    out << "statistic,n,samples,value\n";
    for (const auto& row : report.rows)
        out << row.statistic << ',' << row.n << ',' << row.samples << ','
            << fmt_double(row.value) << '\n';
    for (const auto& [name, hist] : report.histograms) {
        out << "# histogram: " << name << "\n";
        out << "value,count\n";
        for (const auto& [value, cnt] : hist) out << value << ',' << cnt << '\n';
    }
    return out.str();
}

std::string run_validate(const ClassModel& model, const RunConfig& cfg, int& exit_code) {
    const int max_w = cfg.max >= 0 ? cfg.max : 6;
    std::ostringstream out;
    out << "check,ok,detail\n";
    auto embed = validate_embedding_order(model.alphabet(), max_w);
    out << "embedding_order," << (embed.ok ? "true" : "false") << ',' << embed.detail << '\n';
    bool all_ok = embed.ok;

    if (model.alphabet()->mode() == Alphabet::Mode::permutation) {
        bool agree = true;
        std::string detail;
        auto words = words_up_to_weight(model.alphabet(), std::min(max_w, 7));
        for (const auto& w : words) {
            for (const auto& v : words)
                if (leq(w, v) != contains(w.to_permutation(), v.to_permutation())) {
                    agree = false;
                    detail = "W=" + w.str() + " V=" + v.str();
                    break;
                }
            if (!agree) break;
        }
        if (agree)
            detail = "greedy containment matches permutation containment on " +
                     std::to_string(words.size()) + " words";
        out << "greedy_vs_containment," << (agree ? "true" : "false") << ',' << detail << '\n';
        all_ok = all_ok && agree;
    }
    if (!all_ok) exit_code = 2;
    return out.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wilf-class laboratory for sum-decomposed permutation classes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_class) {
        auto* opt = sub->add_option("--class", cfg.class_path, "class spec file (json)");
        if (needs_class) opt->required();
        sub->add_option("--max", cfg.max, "weight horizon");
        sub->add_option("--size", cfg.size, "pattern size k");
        sub->add_option("--pattern", cfg.pattern, "pattern (word like 21.1 or permutation)");
        sub->add_option("--samples", cfg.samples, "sample count");
        sub->add_option("--seed", cfg.seed, "random seed (default 0)");
        sub->add_option("--format", cfg.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "output file (default standard output)");
    };
    const char* names[] = {"automaton", "growth", "count", "series", "avoid",
                           "wilf",      "orbits", "sample", "stats", "validate"};
    const char* descs[] = {"dump the state machinery",
                           "growth rates, constants and dominance",
                           "class counts by weight",
                           "container series and the quotient identity",
                           "avoider counts for one pattern",
                           "observed Wilf partition (json) or collapse table (csv)",
                           "predicted equivalence orbits checked against the partition",
                           "uniform random class words",
                           "empirical distributions over random class words",
                           "embedding-order axioms and containment cross-checks"};
    for (size_t i = 0; i < std::size(names); ++i) add_common(app.add_subcommand(names[i], descs[i]), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    int exit_code = 0;
    std::string output;
    try {
        ClassModel model = class_from_file(cfg.class_path);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "automaton")
            output = run_automaton(model, cfg);
        else if (sub == "growth")
            output = run_growth(model, cfg);
        else if (sub == "count")
            output = run_count(model, cfg);
        else if (sub == "series")
            output = run_series(model, cfg);
        else if (sub == "avoid")
            output = run_avoid(model, cfg);
        else if (sub == "wilf")
            output = run_wilf(model, cfg);
        else if (sub == "orbits")
            output = run_orbits(model, cfg, exit_code);
        else if (sub == "sample")
            output = run_sample(model, cfg);
        else if (sub == "stats")
            output = run_stats(model, cfg);
        else if (sub == "validate")
            output = run_validate(model, cfg, exit_code);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (!cfg.out_path.empty()) {
        std::ofstream file(cfg.out_path);
        if (!file) {
            err << "error: cannot write '" << cfg.out_path << "'\n";
            return 1;
        }
        file << output;
    } else {
        out << output;
    }
    return exit_code;
}

}  // namespace wilf::cli
