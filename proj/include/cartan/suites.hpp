#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cartan/checks.hpp"
#include "cartan/coadjoint.hpp"
#include "cartan/invariants.hpp"

namespace cartan {

/// Zero means "use the suite's default".
struct SuiteOptions {
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    int degree = 0;
};

/// Seeded chi in L*_{<=1} with chi_1, chi_- != 0 are rectified; the returned
/// g is re-applied independently, must lie in G_2, and orbit_scale is checked
/// for a random t. Fails when any sample fails or more than 5% need the
/// fallback search. Default 100 samples.
CheckResult rectifier_sweep(const CartanAlgebra& L, std::size_t samples = 100, std::uint64_t seed = 1);

/// The witness functional must flatten through a fully certified id + ad y,
/// and every seeded random chi with invertible B must flatten. Reports the
/// invertible fraction. Default 1000 samples.
CheckResult flattener_sweep(const CartanAlgebra& L, std::size_t samples = 1000, std::uint64_t seed = 1);

/// (ad x)|L_0 injective for the family witness x, and lift_to_degree1
/// reproducing seeded chi' in L*_0.
CheckResult injectivity_sweep(const CartanAlgebra& L, WitnessForm form = WitnessForm::Printed,
                              std::size_t samples = 20, std::uint64_t seed = 1);

/// The weight-zero fixed space of invariant_generators in degree <= d must be
/// the constants.
CheckResult invariants_sweep(const CartanAlgebra& L, int d);
/// 4 for n = 1, 2 otherwise.
int default_invariant_degree(const CartanAlgebra& L);

/// Torus maps, the unipotent G_0 generators, coordinate permutations (W) and
/// every exp(ad E) for E in the L_1, L_2 bases are independently certified or
/// rejected with a witness; a corrupted torus matrix must be rejected with a
/// witness pair.
CheckResult automorphism_sweep(const CartanAlgebra& L, std::uint64_t seed = 1);

/// JSON export, import, byte-identical re-export, and seeded pair brackets
/// of the imported table against the polynomial formula.
CheckResult table_sweep(const CartanAlgebra& L, std::size_t samples = 100, std::uint64_t seed = 1);

/// structure, contact, intertwining, restricted, automorphisms, rectifier,
/// flattener, injectivity, invariants, table.
const std::vector<std::string>& suite_names();
/// Whether the named suite applies to L (contact needs K, intertwining excludes K).
bool suite_applies(const CartanAlgebra& L, const std::string& name);
/// Runs one named suite, or every applicable one for "all". Throws
/// std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const CartanAlgebra& L, const std::string& name, const SuiteOptions& opt = {});

}  // namespace cartan
