#include "fixtures.hpp"

#include "edsynth/io.hpp"

namespace fixtures
{

std::string path(const std::string& file)
{
    return std::string(FIXTURE_DIR) + "/" + file;
}

edsynth::Automaton load(const std::string& file)
{
    return edsynth::parse_automaton(edsynth::read_file(path(file)));
}

std::vector<edsynth::Automaton> rf()
{
    return {load("rf_g1.json"), load("rf_g2.json")};
}

}  // namespace fixtures
