#include "edsynth/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace edsynth
{

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace
{

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
    const json& v = field(obj, key, where);
    if (!v.is_string())
        throw InputError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

bool flag(const json& obj, const char* key, bool fallback, const std::string& where)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_boolean())
        throw InputError(where + "." + key + ": expected true or false");
    return obj.at(key).get<bool>();
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

Automaton automaton_from_json(const json& doc, const std::string& root)
{
    if (!doc.is_object())
        throw InputError(root + ": expected an object");
    Automaton a(doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "G");

    std::set<std::string> hidden;
    const json& events = doc.contains("events") ? doc.at("events") : json::array();
    if (!events.is_array())
        throw InputError(root + "events: expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const std::string where = root + "events[" + std::to_string(i) + "]";
        const std::string name = string_field(events[i], "name", where);
        if (name == kTauName)
            throw InputError(where + ": 'tau' is reserved and cannot be declared");
        if (a.find_event(name) || hidden.contains(name))
            throw InputError(where + ": duplicate event '" + name + "'");
        if (!flag(events[i], "observable", true, where))
            hidden.insert(name);
        else
            a.add_event(name, flag(events[i], "controllable", true, where));
    }

    const json& states = field(doc, "states", root.empty() ? "document" : root);
    if (!states.is_array())
        throw InputError(root + "states: expected an array");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string where = root + "states[" + std::to_string(i) + "]";
        StateInfo info;
        info.name = string_field(states[i], "name", where);
        info.initial = flag(states[i], "initial", false, where);
        info.marked = flag(states[i], "marked", false, where);
        info.secret = flag(states[i], "secret", false, where);
        if (a.find_state(info.name))
            throw InputError(where + ": duplicate state '" + info.name + "'");
        a.add_state(std::move(info));
    }

    const json& transitions = doc.contains("transitions") ? doc.at("transitions") : json::array();
    if (!transitions.is_array())
        throw InputError(root + "transitions: expected an array");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string where = root + "transitions[" + std::to_string(i) + "]";
        const json& t = transitions[i];
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
            throw InputError(where + ": expected [source, event, target]");
        const auto src = a.find_state(t[0].get<std::string>());
        const auto dst = a.find_state(t[2].get<std::string>());
        if (!src)
            throw InputError(where + ": unknown state '" + t[0].get<std::string>() + "'");
        if (!dst)
            throw InputError(where + ": unknown state '" + t[2].get<std::string>() + "'");
        const std::string ev = t[1].get<std::string>();
        EventIndex e = kTau;
        if (ev != kTauName && !hidden.contains(ev)) {
            auto found = a.find_event(ev);
            if (!found)
                throw InputError(where + ": unknown event '" + ev + "'");
            e = *found;
        }
        a.add_transition(*src, e, *dst);
    }
    return a;
}

ojson automaton_to_json(const Automaton& a)
{
    ojson doc;
    doc["name"] = a.name();
    doc["events"] = ojson::array();
    for (const auto& ev : a.events())
        doc["events"].push_back({{"name", ev.name}, {"observable", true}, {"controllable", ev.controllable}});
    doc["states"] = ojson::array();
    for (StateIndex s = 0; s < a.num_states(); ++s) {
        const auto& st = a.state(s);
        doc["states"].push_back(
            {{"name", st.name}, {"initial", st.initial}, {"marked", st.marked}, {"secret", st.secret}});
    }
    doc["transitions"] = ojson::array();
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            doc["transitions"].push_back(
                ojson::array({a.state(s).name, std::string(a.event_name(edge.event)), a.state(edge.target).name}));
    return doc;
}

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Automaton parse_automaton(std::string_view text)
{
    return automaton_from_json(parse_json(text), "");
}

std::string serialize_automaton(const Automaton& a)
{
    return automaton_to_json(a).dump(2) + "\n";
}

std::string serialize_tpo(const Tpo& t)
{
    ojson doc;
    doc["states"] = ojson::array();
    for (StateIndex s = 0; s < t.num_states(); ++s)
        doc["states"].push_back({{"name", t.state_name(s)}, {"player", to_string(t.state(s).player)}});
    doc["edges"] = ojson::array();
    for (StateIndex s = 0; s < t.num_states(); ++s)
        for (const auto& edge : t.out(s))
            doc["edges"].push_back(
                ojson::array({t.state_name(s), to_string(edge.move), t.edge_label(edge), t.state_name(edge.target)}));
    return doc.dump(2) + "\n";
}

std::string serialize_structure(const ModularEditStructure& m)
{
    ojson doc;
    doc["format"] = "modular-edit-structure";
    doc["max_erasures"] = m.max_erasures;
    doc["diagnostic"] = m.diagnostic;
    doc["plant_states"] = m.plant_states;
    doc["alphabets"] = ojson::array();
    for (const auto& sigma : m.alphabets)
        doc["alphabets"].push_back(sigma);
    doc["components"] = ojson::array();
    for (const auto& c : m.components)
        doc["components"].push_back(automaton_to_json(c.automaton));
    doc["constraint"] = automaton_to_json(m.constraint);
    doc["supervisor"] = automaton_to_json(m.supervisor);
    doc["tuples"] = m.tuples;
    doc["at_rest"] = m.at_rest;
    doc["log"] = m.log;
    return doc.dump(2) + "\n";
}

ModularEditStructure parse_structure(std::string_view text)
{
    const json doc = parse_json(text);
    if (!doc.is_object() || doc.value("format", "") != "modular-edit-structure")
        throw InputError("not a modular edit structure document");
    ModularEditStructure m;
    try {
        m.max_erasures = doc.at("max_erasures").get<unsigned>();
        m.diagnostic = doc.value("diagnostic", "");
        m.plant_states = doc.value("plant_states", std::size_t{0});
        for (const auto& sigma : doc.at("alphabets"))
            m.alphabets.push_back(sigma.get<std::set<std::string>>());
        m.tuples = doc.at("tuples").get<std::vector<std::vector<std::string>>>();
        m.at_rest = doc.at("at_rest").get<std::vector<bool>>();
        m.log = doc.value("log", std::vector<std::string>{});
    } catch (const json::exception& e) {
        throw InputError(std::string("structure document: ") + e.what());
    }
    m.constraint = automaton_from_json(field(doc, "constraint", "document"), "constraint.");
    m.supervisor = automaton_from_json(field(doc, "supervisor", "document"), "supervisor.");
    if (m.at_rest.size() != m.supervisor.num_states() || m.tuples.size() != m.supervisor.num_states())
        throw InputError("structure document: tuples and at_rest must have one entry per supervisor state");
    return m;
}

std::string export_dot(const Automaton& a)
{
    std::ostringstream out;
    out << "digraph " << quote(a.name()) << " {\n  rankdir=LR;\n";
    for (StateIndex s = 0; s < a.num_states(); ++s) {
        const auto& st = a.state(s);
        out << "  n" << s << " [label=" << quote(st.name) << ", shape=circle";
        if (st.secret)
            out << ", peripheries=2";
        if (st.marked)
            out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
        if (st.initial)
            out << "  init" << s << " [shape=point];\n  init" << s << " -> n" << s << ";\n";
    }
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s)) {
            out << "  n" << s << " -> n" << edge.target << " [label=" << quote(a.event_name(edge.event));
            if (edge.event != kTau && !a.event(edge.event).controllable)
                out << ", style=bold";
            out << "];\n";
        }
    out << "}\n";
    return out.str();
}

std::string export_dot(const Tpo& t)
{
    std::ostringstream out;
    out << "digraph TPO {\n  rankdir=LR;\n";
    for (StateIndex s = 0; s < t.num_states(); ++s) {
        const auto& st = t.state(s);
        const char* shape = st.player == Player::Y ? "box" : st.player == Player::Z ? "ellipse" : "diamond";
        out << "  n" << s << " [label=" << quote(t.state_name(s)) << ", shape=" << shape;
        if (st.player == Player::Y && t.observer().automaton.state(st.truth).secret)
            out << ", peripheries=2";
        if (st.player == Player::Y)
            out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    if (!t.empty())
        out << "  init [shape=point];\n  init -> n0;\n";
    for (StateIndex s = 0; s < t.num_states(); ++s)
        for (const auto& edge : t.out(s))
            out << "  n" << s << " -> n" << edge.target << " [label=" << quote(t.edge_label(edge)) << "];\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const ModularEditStructure& m)
{
    std::ostringstream out;
    const std::size_t removed = m.plant_states >= m.supervisor.num_states() ? m.plant_states - m.supervisor.num_states() : 0;
    out << "// removed states: " << removed << "\n";
    const Automaton& a = m.supervisor;
    out << "digraph supervisor {\n  rankdir=LR;\n";
    for (StateIndex s = 0; s < a.num_states(); ++s) {
        out << "  n" << s << " [label=" << quote(a.state(s).name)
            << ", shape=" << (m.at_rest[s] ? "box, style=filled, fillcolor=lightgray" : "ellipse") << "];\n";
        if (a.state(s).initial)
            out << "  init [shape=point];\n  init -> n" << s << ";\n";
    }
    for (StateIndex s = 0; s < a.num_states(); ++s)
        for (const auto& edge : a.out(s))
            out << "  n" << s << " -> n" << edge.target << " [label=" << quote(a.event_name(edge.event)) << "];\n";
    out << "}\n";
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << text;
}

}  // namespace edsynth
