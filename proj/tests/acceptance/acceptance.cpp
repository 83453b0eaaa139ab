// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cartan/suites.hpp"

using namespace cartan;

namespace {

struct Params {
    Family f;
    int n;
    std::uint32_t p;
};

const std::vector<Params> kAll{{Family::W, 1, 5}, {Family::W, 1, 7}, {Family::W, 2, 5}, {Family::S, 2, 5},
                               {Family::S, 3, 5}, {Family::H, 4, 5}, {Family::K, 3, 5}, {Family::K, 3, 7}};

constexpr double kStructureSeconds = 300;
constexpr double kInvariantSeconds = 600;

const CartanAlgebra& get(const Params& q) {
    static std::map<std::tuple<Family, int, std::uint32_t>, CartanAlgebra> cache;
    auto key = std::make_tuple(q.f, q.n, q.p);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_algebra(q.f, q.n, q.p)).first;
    return it->second;
}

// Collects results for one criterion and renders its single line.
class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    void add(const CartanAlgebra& L, const CheckResult& r) {
        ++checks_;
        if (!r.passed) {
            ++failed_;
            if (failures_.tellp() > 0) failures_ << "; ";
            failures_ << L.name() << " " << r.name << ": " << r.detail;
        }
    }
    void require(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) {
            ++failed_;
            if (failures_.tellp() > 0) failures_ << "; ";
            failures_ << what;
        }
    }
    void note(const std::string& s) { notes_.push_back(s); }

    bool print(double seconds) const {
        std::cout << "criterion " << number_ << ": " << (failed_ ? "FAIL" : "PASS") << "  " << title_ << "  ("
                  << checks_ - failed_ << "/" << checks_ << " checks, " << static_cast<long>(seconds * 1000) / 1000.0
                  << " s)";
        for (const auto& n : notes_) std::cout << "  " << n;
        if (failed_) std::cout << "  failures: " << failures_.str();
        std::cout << std::endl;
        return failed_ == 0;
    }

private:
    int number_;
    std::string title_;
    std::size_t checks_ = 0, failed_ = 0;
    std::ostringstream failures_;
    std::vector<std::string> notes_;
};

double timed(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
    bool all_ok = true;
    auto run = [&](int number, const std::string& title, const std::function<void(Criterion&)>& body) {
        Criterion c(number, title);
        double seconds = 0;
        try {
            seconds = timed([&] { body(c); });
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        all_ok = c.print(seconds) && all_ok;
    };

    run(1, "structure: dimensions, antisymmetry, Jacobi, both gradings", [](Criterion& c) {
        const double s = timed([&] {
            for (const auto& q : kAll) {
                const auto& L = get(q);
                for (const auto& r : structure_suite(L, 1)) c.add(L, r);
            }
        });
        c.require(s <= kStructureSeconds, "runtime above 5 minutes");
    });

    run(2, "contact closed forms as printed, and D_K commutation on all monomial pairs", [](Criterion& c) {
        const auto& L = get({Family::K, 3, 5});
        for (const auto& r : verify_contact_identities(L))
            if (r.name != "contact_unit") c.add(L, r);
        const auto comm = check_contact_commutation(L);
        c.add(L, comm);
        c.require(comm.checked == 15625, "expected 15625 commutation pairs");
    });

    run(3, "intertwining of d_s with every associated map", [](Criterion& c) {
        for (const auto& q : kAll)
            if (q.f != Family::K) c.add(get(q), intertwine_check(get(q)));
    });

    run(4, "restrictedness ad(u^[p]) = (ad u)^p", [](Criterion& c) {
        for (const auto& q : kAll) {
            const auto r = check_restricted(get(q), 200, 1);
            c.add(get(q), r);
            c.require(get(q).dim() <= 130 ? r.checked == get(q).dim() : r.checked >= 200, get(q).name() + " coverage");
        }
    });

    run(5, "rectifier on 100 seeded functionals per algebra, fallback at most 5%", [](Criterion& c) {
        std::size_t total_fallback_notes = 0;
        for (const auto& q : kAll) {
            const auto r = rectifier_sweep(get(q), 100, 1);
            c.add(get(q), r);
            if (r.passed && r.detail.find("fallback in 0 ") == std::string::npos) {
                c.note(get(q).name() + ": " + r.detail.substr(r.detail.find("fallback")));
                ++total_fallback_notes;
            }
        }
        if (!total_fallback_notes) c.note("no fallback searches");
    });

    run(6, "flattener witness and 1000 random functionals per algebra (except W(1), p=5)", [](Criterion& c) {
        for (const auto& q : kAll) {
            if (q.f == Family::W && q.n == 1 && q.p == 5) continue;
            const auto r = flattener_sweep(get(q), 1000, 1);
            c.add(get(q), r);
            const auto pos = r.detail.find('(');
            if (r.passed && pos != std::string::npos)
                c.note(get(q).name() + " " + r.detail.substr(pos + 1, r.detail.find(')') - pos - 1));
            c.require(r.detail.find(" 0/1000") == std::string::npos, get(q).name() + ": no invertible B");
        }
    });

    run(7, "family injectivity witness has rank dim L_0", [](Criterion& c) {
        for (const auto& q : kAll) c.add(get(q), injectivity_sweep(get(q), WitnessForm::Printed, 20, 1));
    });

    run(8, "invariants of bounded degree are constants", [](Criterion& c) {
        const double s = timed([&] {
            for (auto [q, d] : std::vector<std::pair<Params, int>>{{{Family::W, 1, 5}, 4},
                                                                   {{Family::W, 1, 7}, 4},
                                                                   {{Family::S, 2, 5}, 2},
                                                                   {{Family::K, 3, 5}, 2}})
                c.add(get(q), invariants_sweep(get(q), d));
        });
        c.require(s <= kInvariantSeconds, "runtime above 10 minutes");
    });

    run(9, "automorphism certification and rejection of a corrupted matrix", [](Criterion& c) {
        for (const auto& q : kAll) c.add(get(q), automorphism_sweep(get(q), 1));
    });

    run(10, "W(2), p=5 export determinism and formula agreement", [](Criterion& c) {
        const auto& L = get({Family::W, 2, 5});
        const auto r = table_sweep(L, 100, 1);
        c.add(L, r);
    });

    std::cout << (all_ok ? "all criteria passed" : "some criteria failed") << std::endl;
    return all_ok ? 0 : 1;
}
