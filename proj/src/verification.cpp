#include "discordant/verification.hpp"

#include <cmath>
#include <sstream>

#include "discordant/block_analysis.hpp"
#include "discordant/families.hpp"

namespace discordant {

namespace {

using families::Rng;

constexpr size_t kMaxFailures = 5;
constexpr double kPerturbedFloor = 1e-5;

void record(SuiteResult& suite, bool ok, const std::string& what) {
    if (ok) {
        ++suite.passed;
        return;
    }
    ++suite.failed;
    if (suite.failures.size() < kMaxFailures) suite.failures.push_back(what);
}

std::string label(Side side, int draw) {
    std::ostringstream os;
    os << "side " << to_string(side) << " draw " << draw;
    return os.str();
}

SuiteResult suite(std::string name) {
    SuiteResult s;
    s.name = std::move(name);
    return s;
}

double magnitude(const VerifyOptions& opts, Rng& rng) {
    return std::uniform_real_distribution<double>(opts.perturbation_min, opts.perturbation_max)(rng);
}

// Recomputes a closed-form or commutation witness from the raw data.
bool witness_holds(const CirculantSpec& spec, Side side, const StructuralVerdict& v, double tol) {
    if (v.zero_discord || !v.witness) return false;
    const Witness& w = *v.witness;
    const int d = spec.dim();
    if (w.condition == "normality" || w.condition == "commutator") {
        const BlockDecomposition blocks = extract_blocks(circulant_state(spec), d, side);
        const double c = commutator_norm(blocks.block(w.indices[0], w.indices[1]),
                                         blocks.block(w.indices[2], w.indices[3]));
        return c > tol && std::abs(c - w.magnitude) <= 1e-12 * std::max(1.0, c);
    }
    const int n = w.indices[0];
    const int i = w.indices[1];
    const int j = w.indices[2];
    if (n < 1 || n >= d || i < 0 || j < 0 || i >= d || j >= d) return false;
    const int shift = side == Side::A ? n : 0;
    const Complex ref = spec.sector(0)((i + shift) % d, (j + shift) % d);
    const Complex cur = spec.sector(n)(i, j);
    if (w.condition == "DA" || w.condition == "DB") return std::abs(cur - ref) > tol;
    if (w.condition == "NA" || w.condition == "NB") return std::abs(std::abs(cur) - std::abs(ref)) > tol;
    // Phase mismatches are confirmed through the general criterion instead.
    return w.condition == "phase" && w.magnitude > tol &&
           !structural_discord_zero(circulant_state(spec), d, side, tol).zero_discord;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& opts) {
    const int d = opts.d;
    if (!is_prime(d)) throw PrimeRequired("verify: d = " + std::to_string(d) + " is not prime");
    if (opts.count < 1 || opts.numeric_count < 0) throw PreconditionError("verify: counts must be positive");
    opts.optimizer.validate();

    Rng rng(split_seed(opts.seed, static_cast<std::uint64_t>(d)));
    const std::vector<families::Perturbation> kinds = families::breaking_perturbations(d);
    const double tol = opts.tol;

    SuiteResult closure = suite("generator-closure");
    SuiteResult equivalence = suite("criterion-equivalence");
    SuiteResult sensitivity = suite("perturbation-sensitivity");
    for (Side side : {Side::A, Side::B}) {
        for (int draw = 0; draw < opts.count; ++draw) {
            const CirculantSpec spec = families::random_zero_discord(d, side, rng);
            const StructuralVerdict theorem = circulant_theorem_check(spec, side, tol);
            const StructuralVerdict general = structural_discord_zero(circulant_state(spec), d, side, tol);
            const bool necessary = circulant_necessary_conditions(spec, side, tol).passed();
            record(closure, theorem.zero_discord && general.zero_discord && necessary, label(side, draw));

            const auto kind = kinds[static_cast<size_t>(draw) % kinds.size()];
            const families::Perturbed p = families::perturb(spec, kind, magnitude(opts, rng), rng);
            const StructuralVerdict p_theorem = circulant_theorem_check(p.spec, side, tol);
            const StructuralVerdict p_general = structural_discord_zero(circulant_state(p.spec), d, side, tol);
            record(equivalence,
                   theorem.zero_discord == general.zero_discord && p_theorem.zero_discord == p_general.zero_discord,
                   label(side, draw));
            record(sensitivity,
                   witness_holds(p.spec, side, p_theorem, tol) && witness_holds(p.spec, side, p_general, tol),
                   label(side, draw) + " (" + families::to_string(p.kind) + ")");
        }
    }

    SuiteResult bell = suite("bell-theorem");
    for (int draw = 0; draw < opts.count; ++draw) {
        const int alpha = draw % d;
        const std::vector<double> pi = families::random_pi(d, rng);
        const BellWeights w = families::classical_bell(d, alpha, pi);
        const StructuralVerdict v = bell_zero_discord_check(w, tol);
        bool ok = v.zero_discord && v.alpha.has_value();
        if (ok && *v.alpha == alpha) {
            for (int r = 0; r < d; ++r) ok = ok && std::abs(v.pi[static_cast<size_t>(r)] - pi[static_cast<size_t>(r)]) <= 1e-12;
        } else if (ok) {
            ok = families::classical_bell(d, *v.alpha, v.pi).p().isApprox(w.p(), 1e-12);
        }
        const DensityMatrix rho = circulant_state(bell_diagonal_state(w));
        for (Side side : {Side::A, Side::B}) ok = ok && structural_discord_zero(rho, d, side, tol).zero_discord;
        record(bell, ok, "classical alpha " + std::to_string(alpha) + " draw " + std::to_string(draw));

        const BellWeights noise = families::random_bell(d, rng);
        const DensityMatrix noisy = circulant_state(bell_diagonal_state(noise));
        bool rejected = !bell_zero_discord_check(noise, tol).zero_discord;
        for (Side side : {Side::A, Side::B}) rejected = rejected && !structural_discord_zero(noisy, d, side, tol).zero_discord;
        record(bell, rejected, "random weights draw " + std::to_string(draw));
    }

    SuiteResult numeric = suite("numeric");
    if (numeric_is_heuristic(d)) {
        numeric.skipped = true;
    } else {
        for (Side side : {Side::A, Side::B}) {
            for (int draw = 0; draw < opts.numeric_count; ++draw) {
                const CirculantSpec spec = families::random_zero_discord(d, side, rng);
                const auto kind = kinds[static_cast<size_t>(draw) % kinds.size()];
                const families::Perturbed p = families::perturb(spec, kind, magnitude(opts, rng), rng);
                const double zero = discord(circulant_state(spec), d, side, opts.optimizer).discord;
                const double nonzero = discord(circulant_state(p.spec), d, side, opts.optimizer).discord;
                record(numeric, zero <= 1e-6 && nonzero >= kPerturbedFloor, label(side, draw));
            }
        }
    }

    return {closure, equivalence, bell, sensitivity, numeric};
}

}  // namespace discordant
