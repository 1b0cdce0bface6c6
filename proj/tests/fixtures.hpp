#pragma once

#include "edsynth/automaton.hpp"

#include <string>
#include <vector>

namespace fixtures
{

/// The reference two-component system, loaded from the JSON fixtures.
std::vector<edsynth::Automaton> rf();
edsynth::Automaton load(const std::string& file);
std::string path(const std::string& file);

}  // namespace fixtures
