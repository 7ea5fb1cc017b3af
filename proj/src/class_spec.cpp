#include "wilf/class_spec.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace wilf {

using nlohmann::ordered_json;

ClassModel class_from_json(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("malformed class spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind"))
        throw std::invalid_argument("class spec needs a \"kind\" field");
    const std::string kind = doc["kind"].get<std::string>();

    if (kind == "basis") {
        if (!doc.contains("basis") || !doc["basis"].is_array())
            throw std::invalid_argument("basis spec needs a \"basis\" array");
        std::vector<Permutation> basis;
        for (const auto& item : doc["basis"])
            basis.push_back(Permutation::parse(item.get<std::string>()));
        int cap = doc.value("indec_cap", 16);
        return ClassModel::from_basis(basis, cap);
    }
    if (kind == "alphabet") {
        if (!doc.contains("letters") || !doc["letters"].is_array())
            throw std::invalid_argument("alphabet spec needs a \"letters\" array");
        std::vector<Permutation> letters;
        for (const auto& item : doc["letters"])
            letters.push_back(Permutation::parse(item.get<std::string>()));
        return ClassModel::sum_closed(letters);
    }
    if (kind == "abstract") {
        if (!doc.contains("letters") || !doc["letters"].is_array())
            throw std::invalid_argument("abstract spec needs a \"letters\" array");
        std::vector<std::pair<std::string, int>> letters;
        for (const auto& item : doc["letters"])
            letters.emplace_back(item.at("name").get<std::string>(), item.at("weight").get<int>());
        auto alphabet = Alphabet::abstract(std::move(letters));
        std::vector<Word> forbidden;
        if (doc.contains("forbidden"))
            for (const auto& item : doc["forbidden"])
                forbidden.push_back(Word::parse(alphabet, item.get<std::string>()));
        return ClassModel::with_forbidden(std::move(alphabet), std::move(forbidden));
    }
    throw std::invalid_argument("unknown class spec kind '" + kind + "'");
}

ClassModel class_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open class spec '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return class_from_json(buffer.str());
}

namespace {

ordered_json graph_json(const ClassModel& m, const StateGraph& g) {
    ordered_json states = ordered_json::array();
    for (int s = 0; s < g.state_count(); ++s) {
        ordered_json entry;
        entry["tuple"] = g.states[static_cast<size_t>(s)];
        ordered_json loop = ordered_json::array();
        for (int id : g.loop_alphabets[static_cast<size_t>(s)])
            loop.push_back(m.alphabet()->letter(id).str());
        entry["loop_alphabet"] = std::move(loop);
        entry["successors"] = g.successors[static_cast<size_t>(s)];
        const auto& growth = g.state_growth[static_cast<size_t>(s)];
        entry["gamma"] = growth.gamma;
        entry["dominant"] = static_cast<bool>(g.dominant[static_cast<size_t>(s)]);
        ordered_json trans = ordered_json::object();
        for (int b = 0; b < m.alphabet()->size(); ++b) {
            int t = g.transitions[static_cast<size_t>(s)][static_cast<size_t>(b)];
            trans[m.alphabet()->letter(b).str()] = t;  // -1 marks the exit
        }
        entry["transitions"] = std::move(trans);
        states.push_back(std::move(entry));
    }
    return states;
}

}  // namespace

std::string automaton_json(const ClassModel& m) {
    ordered_json doc;
    ordered_json letters = ordered_json::array();
    for (int b = 0; b < m.alphabet()->size(); ++b) {
        ordered_json entry;
        entry["letter"] = m.alphabet()->letter(b).str();
        entry["weight"] = m.alphabet()->weight(b);
        letters.push_back(std::move(entry));
    }
    doc["mode"] =
        m.alphabet()->mode() == Alphabet::Mode::permutation ? "permutation" : "subword";
    doc["alphabet"] = std::move(letters);
    ordered_json forbidden = ordered_json::array();
    for (const auto& w : m.forbidden()) forbidden.push_back(w.str());
    doc["forbidden"] = std::move(forbidden);
    doc["sum_closed"] = m.is_sum_closed();
    doc["K"] = m.max_letter_weight();
    doc["Q"] = m.q();
    doc["gamma"] = m.gamma();
    doc["D"] = m.dominance_count();
    if (m.basis().has_value()) {
        ordered_json basis = ordered_json::array();
        for (const auto& b : *m.basis()) basis.push_back(b.str());
        doc["basis"] = std::move(basis);
    }
    if (!m.dominance_warning().empty()) doc["dominance_warning"] = m.dominance_warning();
    doc["prefix_states"] = graph_json(m, m.prefix_graph());
    doc["suffix_states"] = graph_json(m, m.suffix_graph());
    return doc.dump(2);
}

}  // namespace wilf
