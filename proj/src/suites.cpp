#include "cartan/suites.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cartan/table_io.hpp"

namespace cartan {

namespace {

CheckResult make(std::string name, std::string anchor) {
    CheckResult r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    return r;
}

class Timer {
public:
    explicit Timer(CheckResult& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
    ~Timer() { r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    CheckResult& r_;
    std::chrono::steady_clock::time_point start_;
};

std::string percent(std::size_t a, std::size_t b) {
    std::ostringstream os;
    os.precision(1);
    os << std::fixed << (b ? 100.0 * static_cast<double>(a) / static_cast<double>(b) : 0.0) << "%";
    return os.str();
}

}  // namespace

CheckResult rectifier_sweep(const CartanAlgebra& L, std::size_t samples, std::uint64_t seed) {
    auto r = make("rectifier", "chi in L*_{<=1} with chi_1 != 0 is moved to chi_0 + chi_1 by an explicit g in G_2");
    Timer timer(r);
    const auto& F = L.field();
    std::mt19937_64 rng(seed);
    std::size_t with_fallback = 0, steps = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Functional chi = random_rectifiable(L, rng);
        ++r.checked;
        try {
            const RectifierResult res = rectify(L, chi);
            steps += res.steps.size();
            if (res.fallbacks) ++with_fallback;
            const Functional want = components(L, chi, 0, 1);
            if (!(coadjoint_apply(L, res.g, chi) == want)) r.fail("sample " + std::to_string(s) + ": g.chi != chi_0 + chi_1");
            if (res.g.filtration_depth < 2) r.fail("sample " + std::to_string(s) + ": g is not in G_2");
            const Residue t = 1 + static_cast<Residue>(rng() % (F.modulus() - 1));
            const OrbitPoint pt = orbit_scale(L, chi, t);
            const Functional scaled_want = add(component(L, chi, 0), scale(component(L, chi, 1), t, F), F);
            if (!(coadjoint_apply(L, pt.g, chi) == scaled_want))
                r.fail("sample " + std::to_string(s) + ": orbit point chi_0 + t chi_1 not reached");
        } catch (const std::exception& e) {
            r.fail("sample " + std::to_string(s) + ": " + e.what());
        }
    }
    if (with_fallback * 20 > samples) r.fail("fallback used in " + percent(with_fallback, samples) + " of samples (limit 5%)");
    if (r.passed)
        r.detail = std::to_string(samples) + " functionals, " + std::to_string(steps) + " steps, fallback in " +
                   std::to_string(with_fallback) + " (" + percent(with_fallback, samples) + ")";
    return r;
}

CheckResult flattener_sweep(const CartanAlgebra& L, std::size_t samples, std::uint64_t seed) {
    auto r = make("flattener", "chi with invertible B is moved into L*_{>=0} by g = id + ad y");
    Timer timer(r);
    const Flattener fl(L);
    try {
        const Functional w = fl.witness_functional();
        ++r.checked;
        const FlattenResult res = fl.flatten(w, true);
        if (!res.ok()) r.fail("witness functional: " + res.message);
        else if (!negative_part(L, coadjoint_apply(L, inverse(res.g), w)).is_zero())
            r.fail("witness functional keeps a negative part");
    } catch (const std::exception& e) {
        r.fail(std::string("witness functional: ") + e.what());
    }
    std::mt19937_64 rng(seed);
    std::size_t invertible = 0, witnessed = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Functional chi = random_functional(L, rng);
        if (fl.supported() && !inverse(fl.b_matrix(chi), L.field())) continue;
        ++invertible;
        ++r.checked;
        try {
            const FlattenResult res = fl.flatten(chi, false);
            if (res.ok()) {
                ++witnessed;
                if (!negative_part(L, coadjoint_apply(L, inverse(res.g), chi)).is_zero())
                    r.fail("sample " + std::to_string(s) + ": negative part survives");
            } else if (fl.supported()) {
                r.fail("sample " + std::to_string(s) + ": " + res.message);
            }
        } catch (const std::exception& e) {
            r.fail("sample " + std::to_string(s) + ": " + e.what());
        }
    }
    if (r.passed) {
        if (fl.supported())
            r.detail = "witness flattened; " + std::to_string(invertible) + "/" + std::to_string(samples) +
                       " random B invertible (" + percent(invertible, samples) + "), all flattened";
        else
            r.detail = "id + ad y unavailable (" + fl.support_note() + "); witness flattened by search; " +
                       std::to_string(witnessed) + "/" + std::to_string(samples) + " random flattened by search";
    }
    return r;
}

CheckResult injectivity_sweep(const CartanAlgebra& L, WitnessForm form, std::size_t samples, std::uint64_t seed) {
    auto r = make(form == WitnessForm::Printed ? "injectivity" : "injectivity_corrected",
                  "(ad x)|L_0 : L_0 -> L_1 injective for the family witness x");
    Timer timer(r);
    const auto& F = L.field();
    const InjectivityWitness w = injectivity_witness(L, form);
    ++r.checked;
    const std::string rank = "rank " + std::to_string(w.rank) + "/" + std::to_string(w.dim_l0) + " for x = " + to_string(w.x);
    if (!w.injective()) {
        r.fail(rank);
        return r;
    }
    std::mt19937_64 rng(seed);
    const auto l0 = L.graded_component(0);
    for (std::size_t s = 0; s < samples; ++s) {
        ++r.checked;
        const Functional chi0 = component(L, random_functional(L, rng), 0);
        try {
            const Functional chi = lift_to_degree1(L, chi0, w.coords);
            if (!(component(L, chi, 1) == chi)) r.fail("lift is not supported in degree 1");
            for (std::size_t k : l0)
                if (chi(L.bracket(w.coords, unit_vector(static_cast<std::uint32_t>(k))), F) != chi0[k])
                    r.fail("lift mismatch at sample " + std::to_string(s));
        } catch (const std::exception& e) {
            r.fail(e.what());
        }
    }
    if (r.passed) r.detail = rank + "; " + std::to_string(samples) + " lifts verified";
    return r;
}

int default_invariant_degree(const CartanAlgebra& L) { return L.nvars() == 1 ? 4 : 2; }

CheckResult invariants_sweep(const CartanAlgebra& L, int d) {
    auto r = make("invariants", "weight-zero polynomials of degree <= d fixed by the generators are the constants");
    Timer timer(r);
    try {
        const GeneratorSet gens = invariant_generators(L);
        const auto mons = weight_zero_subspace(L, d);
        const auto fixed = fixed_space(L, d, gens.autos);
        ++r.checked;
        std::ostringstream os;
        os << "degree <= " << d << ": " << mons.size() << " weight-zero monomials, " << gens.autos.size()
           << " generators (G0 " << gens.g0 << ", exp L1 " << gens.degree1 << ", exp L2 " << gens.degree2
           << ", id+ad Y " << gens.flattener << ", rejected " << gens.rejected << "), fixed dim " << fixed.size();
        if (fixed.size() != 1 || fixed[0].degree() != 0) {
            std::string extra;
            for (const auto& f : fixed)
                if (f.degree() > 0) {
                    extra = "; e.g. " + to_string(L, f);
                    break;
                }
            r.fail(os.str() + extra);
        } else {
            r.detail = os.str();
        }
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    return r;
}

CheckResult automorphism_sweep(const CartanAlgebra& L, std::uint64_t seed) {
    auto r = make("automorphisms", "candidate maps are certified bijective bracket-preserving, or rejected with a witness");
    Timer timer(r);
    const auto& F = L.field();
    auto recertify = [&](const LinearAuto& g, const std::string& what) {
        ++r.checked;
        auto cert = certify(L, g.forward);
        if (!cert.ok()) r.fail(what + ": " + cert.message);
        return cert;
    };
    for (Residue t = 1; t < F.modulus(); ++t) recertify(torus_auto(L, t), "torus(" + std::to_string(t) + ")");
    const auto g0 = unipotent_g0_generators(L);
    for (std::size_t k = 0; k < g0.size(); ++k) recertify(g0[k], "G0 generator " + std::to_string(k));
    if (L.family() == Family::W)
        for (int i = 0; i + 1 < L.nvars(); ++i) {
            std::vector<TruncPoly> phi;
            for (int k = 0; k < L.nvars(); ++k)
                phi.push_back(TruncPoly::variable(L.ring(), k == i ? i + 1 : k == i + 1 ? i : k));
            auto cert = substitution_auto_W(L, phi);
            ++r.checked;
            if (!cert.ok()) r.fail("swap x" + std::to_string(i + 1) + ",x" + std::to_string(i + 2) + ": " + cert.message);
            else recertify(*cert.automorphism, "swap");
        }
    std::size_t accepted = 0, rejected = 0;
    for (int d : {1, 2})
        for (std::size_t k : L.graded_component(d)) {
            auto cert = exp_ad(L, unit_vector(static_cast<std::uint32_t>(k)));
            ++r.checked;
            if (cert.ok()) {
                ++accepted;
                recertify(*cert.automorphism, "exp(ad b" + std::to_string(k) + ")");
            } else {
                ++rejected;
                if (cert.status == Certification::Status::BracketViolated && !cert.witness)
                    r.fail("exp(ad b" + std::to_string(k) + ") rejected without a witness pair");
            }
        }
    // corrupt one entry of torus(t) and demand a witness pair
    std::mt19937_64 rng(seed);
    SparseMatrix m = torus_auto(L, F.modulus() - 1).forward;
    std::size_t col = rng() % L.dim();
    for (std::size_t tries = 0; tries < L.dim() && L.degree(col) == 0; ++tries) col = (col + 1) % L.dim();
    m[col] = scaled(m[col], 2, F);
    auto bad = certify(L, m);
    ++r.checked;
    if (bad.ok()) r.fail("corrupted torus matrix was certified");
    else if (bad.status == Certification::Status::BracketViolated && !bad.witness) r.fail("corrupted torus rejected without witness");
    if (r.passed) {
        std::ostringstream os;
        os << (F.modulus() - 1) << " torus maps, " << g0.size() << " G0 generators, exp(ad E) on L1+L2: " << accepted
           << " certified, " << rejected << " rejected; corrupted matrix rejected (" << bad.message << ")";
        r.detail = os.str();
    }
    return r;
}

CheckResult table_sweep(const CartanAlgebra& L, std::size_t samples, std::uint64_t seed) {
    auto r = make("table", "exported table re-imports byte-identically and matches the polynomial bracket");
    Timer timer(r);
    try {
        const std::string text = export_json(L);
        const TableData t = import_json(text);
        ++r.checked;
        if (to_json(t) != text) r.fail("re-export differs from the original export");
        CheckResult f = check_table_against_formula(t, samples, seed);
        r.checked += f.checked;
        if (!f.passed) r.fail(f.detail);
        if (r.passed) r.detail = std::to_string(text.size()) + " bytes; " + f.detail;
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"structure",  "contact",   "intertwining", "restricted", "automorphisms",
                                                "rectifier",  "flattener", "injectivity",  "invariants", "table"};
    return names;
}

bool suite_applies(const CartanAlgebra& L, const std::string& name) {
    if (name == "contact") return L.family() == Family::K;
    if (name == "intertwining") return L.family() != Family::K;
    return true;
}

std::vector<CheckResult> run_suite(const CartanAlgebra& L, const std::string& name, const SuiteOptions& opt) {
    auto n_or = [&](std::size_t def) { return opt.samples ? opt.samples : def; };
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& s : suite_names())
            if (suite_applies(L, s))
                for (auto& r : run_suite(L, s, opt)) out.push_back(std::move(r));
        return out;
    }
    if (name == "structure") {
        auto out = structure_suite(L, opt.seed);
        if (opt.samples)
            for (auto& r : out)
                if (r.name == "jacobi") r = check_jacobi(L, opt.samples, opt.seed);
        return out;
    }
    if (name == "contact") {
        if (L.family() != Family::K) throw std::invalid_argument("the contact suite needs family K");
        auto out = verify_contact_identities(L);
        out.push_back(check_contact_commutation(L));
        return out;
    }
    if (name == "intertwining") {
        if (L.family() == Family::K) throw std::invalid_argument("the intertwining suite does not apply to K");
        return {intertwine_check(L)};
    }
    if (name == "restricted") return {check_restricted(L, n_or(200), opt.seed)};
    if (name == "automorphisms") return {automorphism_sweep(L, opt.seed)};
    if (name == "rectifier") return {rectifier_sweep(L, n_or(100), opt.seed)};
    if (name == "flattener") return {flattener_sweep(L, n_or(1000), opt.seed)};
    if (name == "injectivity") return {injectivity_sweep(L, WitnessForm::Printed, n_or(20), opt.seed)};
    if (name == "invariants") return {invariants_sweep(L, opt.degree ? opt.degree : default_invariant_degree(L))};
    if (name == "table") return {table_sweep(L, n_or(100), opt.seed)};
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace cartan
