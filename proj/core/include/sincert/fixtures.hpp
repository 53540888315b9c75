#ifndef SINCERT_FIXTURES_HPP
#define SINCERT_FIXTURES_HPP

#include <string>
#include <vector>

namespace sincert {

// Benchmark systems with approximate singular points, shipped in the system
// file format of system_io.hpp.
struct Fixture {
    std::string name;
    std::string description;
    std::string text;
};

const std::vector<Fixture>& builtin_fixtures();
const Fixture* find_fixture(const std::string& name);

} // namespace sincert

#endif
