// Oblique vs. orthogonal gradient recovery of sin(pi x) on three mesh
// families. Prints interior-L2 errors per level and the fitted order.

#include <cstdio>

#include "gradrec/analysis.hpp"

int main() {
    using namespace gradrec;
    const auto u = FunctionSpec::sinusoid(1.0, 1.0);
    const std::size_t levels[] = {16, 32, 64, 128, 256};
    const struct {
        const char* name;
        MeshFamily family;
    } cases[] = {
        {"uniform", MeshFamily{MeshFamily::Kind::uniform}},
        {"graded(0.2)", MeshFamily{MeshFamily::Kind::graded, 0.0, 1.0, 0.2}},
        {"perturbed(0.4)", MeshFamily{MeshFamily::Kind::perturbed, 0.0, 1.0, 0.0, 0.4, 7}},
    };

    for (const auto& c : cases) {
        const auto oblique = convergence_study(u, c.family, levels, Method::oblique, Norm::l2_interior);
        const auto orthogonal = convergence_study(u, c.family, levels, Method::orthogonal, Norm::l2_interior);
        std::printf("%s\n%6s %14s %14s\n", c.name, "n", "oblique", "orthogonal");
        for (std::size_t k = 0; k < oblique.records.size(); ++k) {
            std::printf("%6zu %14.6e %14.6e\n", oblique.records[k].n, oblique.records[k].error,
                        orthogonal.records[k].error);
        }
        std::printf("%6s %14.4f %14.4f\n\n", "order", oblique.slope.value_or(0.0), orthogonal.slope.value_or(0.0));
    }
}
