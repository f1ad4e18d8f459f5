#pragma once

// Seeded generators of zero-discord families and their perturbations.

#include <random>
#include <vector>

#include "discordant/block_analysis.hpp"
#include "discordant/state_factory.hpp"

namespace discordant::families {

using Rng = std::mt19937_64;

// Unit-trace PSD matrix (1 - mix) I/d + mix G G^dagger / tr(G G^dagger),
// G complex Gaussian. Its smallest eigenvalue is at least (1 - mix)/d.
ComplexMatrix random_psd(int d, Rng& rng, double mix = 0.5);

PhaseVector random_phases(int d, Rng& rng);

// generate_zero_discord(random_psd, random_phases, side).
CirculantSpec random_zero_discord(int d, Side side, Rng& rng);

enum class Perturbation { Modulus, Diagonal, Phase };
const char* to_string(Perturbation p);

// Kinds that break the closed-form relations at dimension d. A single phase
// change at d = 2 is absorbed by the free phase of V, so only modulus and
// diagonal perturbations apply there.
std::vector<Perturbation> breaking_perturbations(int d);

struct Perturbed {
    CirculantSpec spec;
    Perturbation kind;
    int sector;
    int row;
    int col;
};

// Changes one entry of a sector matrix a^(k), k >= 1, by an absolute amount
// `magnitude` (modulus grows, phase rotates, or diagonal grows; diagonal
// changes are followed by trace renormalization). The entry and its
// Hermitian partner change together.
Perturbed perturb(const CirculantSpec& spec, Perturbation kind, double magnitude, Rng& rng);

// a^(0) with diagonal 1/d^2 and constant off-diagonal modulus, random phases,
// extended to a^(k) by the side-A relation with random V. Completely
// classical for d in {2, 3}.
CirculantSpec random_uniform_modulus_family(int d, Rng& rng);

// Nonnegative vector summing to 1/d.
std::vector<double> random_pi(int d, Rng& rng);

// p(i, k) = pi[(i + k alpha) mod d].
BellWeights classical_bell(int d, int alpha, const std::vector<double>& pi);

// Exponential weights normalized to one (almost surely not classical).
BellWeights random_bell(int d, Rng& rng);

}  // namespace discordant::families
