#include "sincert/fixtures.hpp"

namespace sincert {

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fixtures = {
        {"mth191",
         "three cubics with a 4-fold root at (0,1,0)",
         "# mth191\n"
         "f1 = x1^3 + x2^2 + x3^2 - 1\n"
         "f2 = x2^3 + x1^2 + x3^2 - 1\n"
         "f3 = x3^3 + x1^2 + x2^2 - 1\n"
         "point: 0.002 1.003 0.004\n"
         "tol: 0.01\n"},
        {"sec7pair",
         "perturbed planar pair with a cluster of three roots near the origin",
         "# perturbed two-variable pair\n"
         "f1 = x1^2 + x1 - x2 + 0.003\n"
         "f2 = x2^2 + 1.004*x1 - x2\n"
         "point: 0.001 -0.002\n"
         "tol: 0.01\n"},
        {"decker2",
         "planar system with a 4-fold root at the origin",
         "# decker2\n"
         "vars: x y\n"
         "f1 = x + y^3\n"
         "f2 = x^2*y - y^4\n"
         "point: 0.002 -0.001\n"
         "tol: 0.01\n"},
        {"ojika2",
         "three quadrics with a double root at (0,0,1)",
         "# Ojika2\n"
         "vars: x y z\n"
         "f1 = x^2 + y + z - 1\n"
         "f2 = x + y^2 + z - 1\n"
         "f3 = x + y + z^2 - 1\n"
         "point: 0.001 0.002 0.999\n"
         "tol: 0.01\n"},
        {"ojika3",
         "mixed-degree system with a double root at (0,0,1)",
         "# Ojika3\n"
         "vars: x y z\n"
         "f1 = x + y + z - 1\n"
         "f2 = 2*x^3 + 5*y^2 - 10*z + 5*z^3 + 5\n"
         "f3 = 2*x + 2*y + z^2 - 1\n"
         "point: 0.001 -0.002 1.001\n"
         "tol: 0.01\n"},
        {"caprasse",
         "four-variable system with a 4-fold root at (2, -i*sqrt(3), 2, i*sqrt(3))",
         "# caprasse\n"
         "vars: x y z t\n"
         "f1 = y^2*z + 2*x*y*t - 2*x - z\n"
         "f2 = -1*x^3*z + 4*x*y^2*z + 4*x^2*y*t + 2*y^3*t + 4*x^2 - 10*y^2 + 4*x*z - 10*y*t + 2\n"
         "f3 = 2*y*z*t + x*t^2 - x - 2*z\n"
         "f4 = -1*x*z^3 + 4*y*z^2*t + 4*x*z*t^2 + 2*y*t^3 + 4*x*z + 4*z^2 - 10*y*t - 10*t^2 + 2\n"
         "point: 2.001 -1.733i 1.9996 1.7315i\n"
         "tol: 0.01\n"},
    };
    return fixtures;
}

const Fixture* find_fixture(const std::string& name) {
    for (const auto& f : builtin_fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

} // namespace sincert
