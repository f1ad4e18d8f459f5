#include "discordant/families.hpp"

#include <cmath>
#include <numbers>

namespace discordant::families {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

ComplexMatrix random_psd(int d, Rng& rng, double mix) {
    std::normal_distribution<double> normal;
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix gg = g * g.adjoint();
    gg /= gg.trace().real();
    ComplexMatrix out = (1.0 - mix) / d * ComplexMatrix::Identity(d, d) + mix * gg;
    return (out + out.adjoint()) / 2.0;
}

PhaseVector random_phases(int d, Rng& rng) {
    std::vector<double> phi(static_cast<size_t>(d), 0.0);
    for (int n = 1; n < d; ++n) phi[static_cast<size_t>(n)] = uniform(rng, -std::numbers::pi, std::numbers::pi);
    return PhaseVector(std::move(phi));
}

CirculantSpec random_zero_discord(int d, Side side, Rng& rng) {
    const ComplexMatrix a0 = random_psd(d, rng);
    return generate_zero_discord(a0, random_phases(d, rng), side);
}

const char* to_string(Perturbation p) {
    switch (p) {
        case Perturbation::Modulus: return "modulus";
        case Perturbation::Diagonal: return "diagonal";
        case Perturbation::Phase: return "phase";
    }
    return "unknown";
}

std::vector<Perturbation> breaking_perturbations(int d) {
    if (d == 2) return {Perturbation::Modulus, Perturbation::Diagonal};
    return {Perturbation::Modulus, Perturbation::Diagonal, Perturbation::Phase};
}

Perturbed perturb(const CirculantSpec& spec, Perturbation kind, double magnitude, Rng& rng) {
    const int d = spec.dim();
    std::vector<ComplexMatrix> sectors = spec.sectors();
    const int k = uniform_int(rng, 1, d - 1);
    ComplexMatrix& a = sectors[static_cast<size_t>(k)];

    if (kind == Perturbation::Diagonal) {
        const int i = uniform_int(rng, 0, d - 1);
        a(i, i) += magnitude;
        for (auto& s : sectors) s /= 1.0 + magnitude;
        return {CirculantSpec(std::move(sectors)), kind, k, i, i};
    }

    int i = 0;
    int j = 1;
    if (kind == Perturbation::Phase) {
        // Largest entry of the sector, so that the rotation stays small.
        double best = -1.0;
        for (int r = 0; r < d; ++r)
            for (int c = r + 1; c < d; ++c)
                if (std::abs(a(r, c)) > best) {
                    best = std::abs(a(r, c));
                    i = r;
                    j = c;
                }
    } else {
        i = uniform_int(rng, 0, d - 2);
        j = uniform_int(rng, i + 1, d - 1);
    }

    const Complex z = a(i, j);
    const double modulus = std::abs(z);
    if (kind == Perturbation::Phase && 2.0 * modulus >= magnitude) {
        const double angle = 2.0 * std::asin(magnitude / (2.0 * modulus));
        a(i, j) = z * std::polar(1.0, angle);
    } else {
        kind = Perturbation::Modulus;
        const Complex unit = modulus > 1e-12 ? z / modulus : Complex(1.0, 0.0);
        a(i, j) = (modulus + magnitude) * unit;
    }
    a(j, i) = std::conj(a(i, j));
    return {CirculantSpec(std::move(sectors)), kind, k, i, j};
}

CirculantSpec random_uniform_modulus_family(int d, Rng& rng) {
    const double dd = d;
    const double modulus = uniform(rng, 0.3, 0.9) / (dd * dd * (dd - 1.0));
    ComplexMatrix a0 = ComplexMatrix::Identity(d, d) / (dd * dd);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            a0(i, j) = std::polar(modulus, uniform(rng, -std::numbers::pi, std::numbers::pi));
            a0(j, i) = std::conj(a0(i, j));
        }
    }
    return generate_zero_discord(a0, random_phases(d, rng), Side::A);
}

std::vector<double> random_pi(int d, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> pi(static_cast<size_t>(d));
    double total = 0.0;
    for (auto& x : pi) total += (x = expo(rng));
    for (auto& x : pi) x /= total * d;
    return pi;
}

BellWeights classical_bell(int d, int alpha, const std::vector<double>& pi) {
    if (static_cast<int>(pi.size()) != d) throw DimensionError("classical_bell: pi must have d entries");
    RealMatrix p(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) p(i, k) = pi[static_cast<size_t>(((i + k * alpha) % d + d) % d)];
    return BellWeights(p / p.sum());
}

BellWeights random_bell(int d, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    RealMatrix p(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) p(i, k) = expo(rng);
    return BellWeights(p / p.sum());
}

}  // namespace discordant::families
