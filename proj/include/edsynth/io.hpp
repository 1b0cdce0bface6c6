#pragma once

#include "edsynth/automaton.hpp"
#include "edsynth/synthesis.hpp"
#include "edsynth/tpo.hpp"

#include <string>
#include <string_view>

namespace edsynth
{

/// Reads an automaton document. Events declared unobservable become tau.
/// Errors name the offending entry, e.g. "transitions[2]".
Automaton parse_automaton(std::string_view text);
std::string serialize_automaton(const Automaton& a);

std::string serialize_tpo(const Tpo& t);

/// Keeps everything the runtime needs; component sources are not stored.
std::string serialize_structure(const ModularEditStructure& m);
ModularEditStructure parse_structure(std::string_view text);

std::string export_dot(const Automaton& a);
std::string export_dot(const Tpo& t);
std::string export_dot(const ModularEditStructure& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

}  // namespace edsynth
