// Command-line front end for the edit-function synthesis library.

#include "edsynth/abstraction.hpp"
#include "edsynth/constraint.hpp"
#include "edsynth/estimation.hpp"
#include "edsynth/io.hpp"
#include "edsynth/oracle.hpp"
#include "edsynth/runtime.hpp"
#include "edsynth/synthesis.hpp"
#include "edsynth/tpo.hpp"
#include "edsynth/transform.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

using namespace edsynth;

namespace
{

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kInputError = 2;
constexpr int kUnenforceable = 3;

std::vector<Automaton> load_all(const std::vector<std::string>& files)
{
    std::vector<Automaton> systems;
    for (const auto& f : files) {
        try {
            systems.push_back(parse_automaton(read_file(f)));
        } catch (const InputError& e) {
            throw InputError(f + ": " + e.what());
        }
    }
    return systems;
}

Automaton compose(const std::vector<Automaton>& systems)
{
    Automaton result = systems.front();
    for (std::size_t i = 1; i < systems.size(); ++i)
        result = sync_compose(result, systems[i]);
    return result;
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

int verify_opacity(const std::vector<std::string>& files)
{
    auto systems = load_all(files);
    if (systems.size() > 1)
        systems.push_back(compose(systems));
    bool all = true;
    for (const auto& g : systems) {
        const OpacityReport r = check_current_state_opacity(g);
        std::cout << g.name() << ": " << (r.opaque ? "opaque" : "not opaque") << "\n";
        for (const auto& w : r.witnesses)
            std::cout << "  witness " << format_word(w.word) << " -> " << w.estimate << "\n";
        all = all && r.opaque;
    }
    return all ? kOk : kViolated;
}

int abstract(const std::string& file, const std::string& out_dir)
{
    const Automaton g = load_all({file}).front();
    const AbstractionBundle b = abstract_component(g);
    const Partition p = opaque_observation_equivalence_partition(g);
    std::cout << "partition:";
    for (const auto& block : p.blocks) {
        std::cout << " {";
        for (std::size_t i = 0; i < block.size(); ++i)
            std::cout << (i ? "," : "") << g.state(block[i]).name;
        std::cout << "}";
    }
    std::cout << "\nabstracted " << b.abstracted.num_states() << " states, h_ob " << b.h_ob.automaton.num_states()
              << ", h_b " << b.h_b.automaton.num_states() << ", h_obd " << b.h_obd.automaton.num_states() << "\n";
    std::filesystem::create_directories(out_dir);
    const std::string stem = (std::filesystem::path(out_dir) / g.name()).string();
    write_file(stem + ".abstracted.json", serialize_automaton(b.abstracted));
    write_file(stem + ".h_ob.json", serialize_automaton(b.h_ob.automaton));
    write_file(stem + ".h_b.json", serialize_automaton(b.h_b.automaton));
    write_file(stem + ".h_obd.json", serialize_automaton(b.h_obd.automaton));
    return b.h_obd.automaton.empty() ? kUnenforceable : kOk;
}

Tpo largest_tpo_of(const std::vector<std::string>& files)
{
    const Observer det = determinize(compose(load_all(files)));
    return build_largest_tpo(desired_observer(det), det);
}

std::vector<TransformedAutomaton> modular_components(const std::vector<Automaton>& systems)
{
    std::vector<Tpo> tpos;
    for (const auto& g : systems) {
        const AbstractionBundle b = abstract_component(g);
        tpos.push_back(build_largest_tpo(b.h_obd, b.h_b));
    }
    return transform_modular(tpos, system_alphabets(systems));
}

int transform(const std::vector<std::string>& files, bool modular, bool augment, const std::string& out_dir)
{
    const auto systems = load_all(files);
    std::filesystem::create_directories(out_dir);
    if (!modular) {
        const TransformedAutomaton m = transform_monolithic(largest_tpo_of(files));
        write_file((std::filesystem::path(out_dir) / "monolithic.json").string(), serialize_automaton(m.automaton));
        std::cout << "monolithic: " << m.automaton.num_states() << " states, " << m.automaton.num_transitions()
                  << " transitions\n";
        return kOk;
    }
    const auto components = modular_components(systems);
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& a = components[i].automaton;
        write_file((std::filesystem::path(out_dir) / (systems[i].name() + ".T.json")).string(), serialize_automaton(a));
        std::cout << systems[i].name() << ": " << a.num_states() << " states, " << a.num_transitions()
                  << " transitions\n";
    }
    if (augment) {
        std::vector<const Automaton*> none;
        SyncProduct p = augment_missing_insertions(components, none, [&](std::span<const StateIndex> t) {
            std::string name = "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                name += (i ? "|" : "") + components[i].automaton.state(t[i]).name;
            return name + ")";
        });
        write_file((std::filesystem::path(out_dir) / "augmented_product.json").string(),
                   serialize_automaton(p.automaton));
        std::cout << "augmented product: " << p.automaton.num_states() << " states\n";
    }
    return kOk;
}

int spec_k(unsigned k, const std::vector<std::string>& files)
{
    // accepts transformed automata as well as the original systems
    const auto loaded = load_all(files);
    const bool transformed = std::any_of(loaded.begin(), loaded.end(), [](const Automaton& a) {
        return std::any_of(a.events().begin(), a.events().end(), [](const EventInfo& ev) {
            return DecoratedEvent::parse(ev.name).kind != DecoratedEvent::Kind::system;
        });
    });
    std::vector<TransformedAutomaton> components;
    if (!transformed)
        components = modular_components(loaded);
    std::vector<const Automaton*> parts;
    if (transformed)
        for (const auto& a : loaded)
            parts.push_back(&a);
    for (const auto& c : components)
        parts.push_back(&c.automaton);
    std::cout << serialize_automaton(build_constraint_automaton({k, decision_events(parts)}));
    return kOk;
}

int synthesize(const std::vector<std::string>& files, unsigned k, bool verbose, bool augment, const std::string& out)
{
    const ModularEditStructure m = build_modular_edit_structure(load_all(files), {k, augment});
    if (verbose)
        for (const auto& line : m.log)
            std::cerr << line << "\n";
    if (!out.empty())
        write_file(out, serialize_structure(m));
    if (!m.diagnostic.empty()) {
        std::cerr << m.diagnostic << "\n";
        return kUnenforceable;
    }
    std::cout << "plant " << m.plant_states << " states, supervisor " << m.supervisor.num_states() << " states, "
              << m.supervisor.num_transitions() << " transitions\n";
    return kOk;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(' ');
        auto e = item.find_last_not_of(' ');
        if (b != std::string::npos)
            out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

int step(const std::string& file, const std::string& policy, std::uint64_t seed)
{
    const ModularEditStructure m = parse_structure(read_file(file));
    if (m.supervisor.empty()) {
        std::cerr << "no edit function exists\n";
        return kUnenforceable;
    }
    Session session = open_session(m, Policy::parse(policy, seed));
    std::cout << "state " << session.current_name() << std::endl;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty())
            continue;
        if (line == "quit")
            break;
        if (!line.starts_with("event ")) {
            std::cout << "error expected 'event <name>'" << std::endl;
            continue;
        }
        std::string rest = line.substr(6);
        std::vector<std::string> overrides;
        if (auto bang = rest.find(" ! "); bang != std::string::npos) {
            overrides = split_list(rest.substr(bang + 3));
            rest = rest.substr(0, bang);
        }
        try {
            const StepResult r = session.step(rest, overrides);
            std::cout << "emit " << format_word(r.output) << "\nstate " << session.current_name() << std::endl;
        } catch (const InputError& e) {
            std::cout << "error " << e.what() << std::endl;
        }
    }
    return kOk;
}

int check(const std::string& suite, std::uint64_t seed, const std::string& out)
{
    const SuiteResult r = run_suite(suite, seed);
    for (const auto& line : r.lines)
        std::cout << line << "\n";
    if (!out.empty())
        write_file(out, r.json);
    return r.passed ? kOk : kViolated;
}

int export_dot_cmd(const std::string& file, bool tpo)
{
    const std::string text = read_file(file);
    if (text.find("\"modular-edit-structure\"") != std::string::npos) {
        std::cout << export_dot(parse_structure(text));
        return kOk;
    }
    if (tpo) {
        std::cout << export_dot(largest_tpo_of({file}));
        return kOk;
    }
    std::cout << export_dot(parse_automaton(text));
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Synthesis of opacity-enforcing edit functions"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string file, out, out_dir = ".", policy = "pass-through-preferred", suite = "all";
    unsigned k = 1;
    std::uint64_t seed = 0;
    bool modular = false, augment = false, verbose = false, dot = false;

    auto* c_verify = app.add_subcommand("verify-opacity", "Current-state opacity report");
    c_verify->add_option("files", files, "Automaton documents (composed when several)")->required();

    auto* c_abstract = app.add_subcommand("abstract", "Abstract one component and write the bundle");
    c_abstract->add_option("file", file)->required();
    c_abstract->add_option("--out-dir", out_dir);

    auto* c_tpo = app.add_subcommand("tpo", "Largest three-player observer of the composed system");
    c_tpo->add_option("files", files)->required();
    c_tpo->add_flag("--dot", dot, "Write DOT instead of JSON");
    c_tpo->add_option("-o,--output", out);

    auto* c_transform = app.add_subcommand("transform", "Turn three-player observers into automata");
    c_transform->add_option("files", files)->required();
    c_transform->add_flag("--modular", modular);
    c_transform->add_flag("--augment-remark2", augment, "Add the insertions missing from the modular product");
    c_transform->add_option("--out-dir", out_dir);

    auto* c_spec = app.add_subcommand("spec-k", "Erasure-constraint automaton");
    c_spec->add_option("--max-erasures", k)->required();
    c_spec->add_option("--plant", files)->required();

    auto* c_synth = app.add_subcommand("synthesize", "Compute the modular edit structure");
    c_synth->add_option("files", files)->required();
    c_synth->add_option("--max-erasures", k)->required();
    c_synth->add_flag("--verbose", verbose);
    c_synth->add_flag("--augment-remark2", augment);
    c_synth->add_option("-o,--output", out, "Structure document to write");

    auto* c_step = app.add_subcommand("step", "Run an edit function interactively");
    c_step->add_option("structure", file)->required();
    c_step->add_option("--policy", policy);
    c_step->add_option("--seed", seed);

    auto* c_check = app.add_subcommand("check", "Run randomized oracle suites");
    c_check->add_option("--suite", suite);
    c_check->add_option("--seed", seed);
    c_check->add_option("-o,--output", out, "Result file");

    auto* c_dot = app.add_subcommand("export-dot", "Render a document as DOT");
    c_dot->add_option("file", file)->required();
    c_dot->add_flag("--tpo", dot, "Render the largest three-player observer of an automaton");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*c_verify)
            return verify_opacity(files);
        if (*c_abstract)
            return abstract(file, out_dir);
        if (*c_tpo) {
            const Tpo t = largest_tpo_of(files);
            emit(out, dot ? export_dot(t) : serialize_tpo(t));
            return kOk;
        }
        if (*c_transform)
            return transform(files, modular, augment, out_dir);
        if (*c_spec)
            return spec_k(k, files);
        if (*c_synth)
            return synthesize(files, k, verbose, augment, out);
        if (*c_step)
            return step(file, policy, seed);
        if (*c_check)
            return check(suite, seed, out);
        if (*c_dot)
            return export_dot_cmd(file, dot);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const UnenforceableError& e) {
        std::cerr << e.what() << "\n";
        return kUnenforceable;
    }
    return kOk;
}
