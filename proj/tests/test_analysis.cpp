#include <doctest.h>

#include <cmath>
#include <numeric>

#include "discordant/analysis.hpp"
#include "discordant/families.hpp"
#include "discordant/state_json.hpp"
#include "test_support.hpp"

using namespace discordant;
using namespace testing_support;

TEST_CASE("random_psd and random_pi") {
    families::Rng rng(301);
    for (int d : {2, 3, 5}) {
        for (double mix : {0.0, 0.5, 1.0}) {
            const ComplexMatrix m = families::random_psd(d, rng, mix);
            CHECK(std::abs(m.trace() - 1.0) < 1e-12);
            CHECK(dist(m, m.adjoint()) < 1e-15);
            CHECK(eig_hermitian(m).eigenvalues(0) >= (1.0 - mix) / d - 1e-12);
        }
        const std::vector<double> pi = families::random_pi(d, rng);
        REQUIRE(static_cast<int>(pi.size()) == d);
        CHECK(std::accumulate(pi.begin(), pi.end(), 0.0) == doctest::Approx(1.0 / d));
        for (double x : pi) CHECK(x >= 0.0);
    }
}

TEST_CASE("classical_bell places pi along the slope") {
    const std::vector<double> pi{0.05, 0.1, 0.03, 0.02, 0.0};
    for (int alpha = 0; alpha < 5; ++alpha) {
        const BellWeights w = families::classical_bell(5, alpha, pi);
        for (int i = 0; i < 5; ++i)
            for (int k = 0; k < 5; ++k) CHECK(w(i, k) == pi[(i + k * alpha) % 5]);
        const StructuralVerdict v = bell_zero_discord_check(w);
        CHECK(v.zero_discord);
    }
}

TEST_CASE("generated families hold their verdict and are reproducible") {
    for (int d : {2, 3, 5}) {
        for (Side s : {Side::A, Side::B}) {
            families::Rng r1(303 + d), r2(303 + d);
            const CirculantSpec a = families::random_zero_discord(d, s, r1);
            const CirculantSpec b = families::random_zero_discord(d, s, r2);
            for (int n = 0; n < d; ++n) CHECK(dist(a.sector(n), b.sector(n)) == 0.0);
            CHECK(circulant_theorem_check(a, s).zero_discord);
            CHECK(structural_discord_zero(circulant_state(a), d, s).zero_discord);
        }
    }
}

TEST_CASE("perturbations change one entry by the requested amount") {
    CHECK(families::breaking_perturbations(2) ==
          std::vector<families::Perturbation>{families::Perturbation::Modulus, families::Perturbation::Diagonal});
    CHECK(families::breaking_perturbations(3).size() == 3);

    families::Rng rng(307);
    for (int d : {2, 3, 5}) {
        for (Side s : {Side::A, Side::B}) {
            for (auto kind : families::breaking_perturbations(d)) {
                CAPTURE(d);
                CAPTURE(families::to_string(kind));
                const CirculantSpec base = families::random_zero_discord(d, s, rng);
                const families::Perturbed p = families::perturb(base, kind, 0.01, rng);
                CHECK(p.sector >= 1);
                const ComplexMatrix& after = p.spec.sector(p.sector);
                CHECK(dist(after, after.adjoint()) < 1e-15);
                if (p.kind == families::Perturbation::Diagonal) {
                    CHECK(p.row == p.col);
                    CHECK(std::abs(circulant_state(p.spec).matrix().trace() - 1.0) < 1e-12);
                } else {
                    CHECK(std::abs(std::abs(after(p.row, p.col) - base.sector(p.sector)(p.row, p.col)) - 0.01) < 1e-12);
                    for (int n = 0; n < d; ++n) {
                        ComplexMatrix diff = p.spec.sector(n) - base.sector(n);
                        if (n == p.sector) {
                            diff(p.row, p.col) = 0.0;
                            diff(p.col, p.row) = 0.0;
                        }
                        CHECK(diff.norm() == 0.0);
                    }
                }
                CHECK_FALSE(structural_discord_zero(circulant_state(p.spec), d, s).zero_discord);
            }
        }
    }
}

TEST_CASE("uniform-modulus family is completely classical for d = 2, 3") {
    families::Rng rng(311);
    for (int d : {2, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            const CirculantSpec spec = families::random_uniform_modulus_family(d, rng);
            for (int i = 0; i < d; ++i) CHECK(std::abs(spec.sector(0)(i, i) - 1.0 / (d * d)) < 1e-15);
            CHECK(completely_classical_check(spec).zero_discord);
            const DensityMatrix rho = circulant_state(spec);
            CHECK(structural_discord_zero(rho, d, Side::A).zero_discord);
            CHECK(structural_discord_zero(rho, d, Side::B).zero_discord);
        }
    }
}

TEST_CASE("compare: numeric versus structural") {
    const DiscordResult base = discord(maximally_entangled(2), 2, Side::A);
    auto with = [&](double value) {
        DiscordResult r = base;
        r.discord = value;
        return r;
    };
    StructuralVerdict zero;
    zero.zero_discord = true;
    StructuralVerdict nonzero;

    CHECK(compare(zero, with(1e-8), 3) == Agreement::Agree);
    CHECK(compare(zero, with(kNumericZero), 3) == Agreement::Agree);
    CHECK(compare(zero, with(1e-3), 3) == Agreement::Disagree);
    CHECK(compare(nonzero, with(1e-3), 3) == Agreement::Agree);
    CHECK(compare(nonzero, with(1e-8), 2) == Agreement::Disagree);

    CHECK(compare(zero, with(1e-3), 5) == Agreement::Inconclusive);
    CHECK(compare(zero, with(1e-8), 5) == Agreement::Agree);
    CHECK(compare(nonzero, with(1e-8), 7) == Agreement::Disagree);
    CHECK(compare(nonzero, with(0.2), 7) == Agreement::Agree);
}

TEST_CASE("analyze_state on reference families") {
    OptimizerConfig cfg;
    cfg.seed = 5;
    {
        const AnalysisReport r =
            analyze_state(parse_state_text(R"({"kind":"werner","d":3,"lambda":0.0})"), {Side::A, Side::B}, kStructuralTol, cfg);
        CHECK(r.agreement());
        REQUIRE(r.sides.size() == 2);
        for (const auto& s : r.sides) {
            CHECK(s.structural.zero_discord);
            REQUIRE(s.numeric);
            CHECK(s.numeric->discord <= kNumericZero);
            // I/9 is circulant, so the closed form applies too.
            REQUIRE(s.closed_form);
            CHECK(s.closed_form->zero_discord);
        }
        const AnalysisReport off = analyze_state(parse_state_text(R"({"kind":"werner","d":3,"lambda":0.1})"),
                                                 {Side::A}, kStructuralTol, std::nullopt);
        CHECK_FALSE(off.sides[0].closed_form);
        CHECK_FALSE(off.sides[0].structural.zero_discord);
    }
    {
        const AnalysisReport r =
            analyze_state(parse_state_text(R"({"kind":"isotropic","d":3,"lambda":0.4})"), {Side::B}, kStructuralTol, cfg);
        CHECK(r.agreement());
        REQUIRE(r.sides.size() == 1);
        CHECK_FALSE(r.sides[0].structural.zero_discord);
        REQUIRE(r.sides[0].closed_form);
        CHECK_FALSE(r.sides[0].closed_form->zero_discord);
        CHECK(r.sides[0].numeric->discord > 0.1);
    }
    {
        const BellWeights w = families::classical_bell(3, 2, {0.2, 0.1, 1.0 / 30});
        const AnalysisReport r = analyze_state(parse_state(bell_to_json(w)), {Side::A}, kStructuralTol, cfg);
        CHECK(r.agreement());
        REQUIRE(r.sides[0].closed_form);
        CHECK(r.sides[0].closed_form->zero_discord);
        CHECK(r.sides[0].closed_form->alpha == 2);

        const Json j = to_json(r);
        CHECK(j["kind"] == "bell");
        CHECK(j["agreement"] == true);
        CHECK(j["numeric_heuristic"] == false);
        CHECK(j["sides"][0]["agreement"] == "agree");
        CHECK(j["sides"][0]["closed_form"]["alpha"] == 2);
        CHECK(j["sides"][0]["numeric"]["D"].get<double>() <= kNumericZero);
    }
    {
        // Structural only.
        const AnalysisReport r = analyze_state(parse_state_text(R"({"kind":"isotropic","d":5,"lambda":0.3})"),
                                               {Side::A}, kStructuralTol, std::nullopt);
        CHECK_FALSE(r.numeric_heuristic);
        CHECK_FALSE(r.sides[0].numeric);
        CHECK(r.agreement());
        const Json j = to_json(r);
        CHECK(j["sides"][0]["numeric"].is_null());
        CHECK(j["sides"][0]["structural"]["witness"].is_object());
    }
}
