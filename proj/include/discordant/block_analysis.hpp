#pragma once

// Structural zero-discord tests.
//
// Writing rho = sum_ij e_ij x B_ij (B-side blocks, operators on H_B) or
// rho = sum_ab A_ab x e_ab (A-side blocks, operators on H_A), discord
// measured on A vanishes iff the A-side blocks mutually commute, and discord
// measured on B vanishes iff the B-side blocks do. A non-normal off-diagonal
// block already rules zero discord out.
//
// For circulant states of prime dimension the commutation conditions reduce
// to closed-form relations between the sector matrices:
//
//   side A:  a^(k) = W^k a^(0) W^-k,  W = V S^dagger
//   side B:  a^(k) = M_k a^(0) M_k^dagger,  M_k = S^-(k-1) (V S)^(k-1) V
//
// with V = diag(exp(i phi_n)), phi_0 = 0. Both are checked here by fitting
// phi from the data (see circulant_theorem_check).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "discordant/matrix_kernel.hpp"
#include "discordant/state_factory.hpp"

namespace discordant {

inline constexpr double kStructuralTol = 1e-9;

struct BlockDecomposition {
    Side side;
    int d;
    std::vector<ComplexMatrix> blocks;  // row-major d x d array of d x d blocks

    const ComplexMatrix& block(int i, int j) const {
        return blocks[static_cast<size_t>(i * d + j)];
    }
};

// Phases of V = diag(exp(i phi_n)); phi[0] is always 0.
class PhaseVector {
public:
    explicit PhaseVector(std::vector<double> phi);
    static PhaseVector zeros(int d) { return PhaseVector(std::vector<double>(static_cast<size_t>(d), 0.0)); }

    int dim() const { return static_cast<int>(phi_.size()); }
    double operator[](int n) const { return phi_[static_cast<size_t>(n)]; }
    const std::vector<double>& values() const { return phi_; }
    ComplexMatrix unitary() const;

private:
    std::vector<double> phi_;
};

enum class Criterion { GeneralCommutation, CirculantTheorem, BellTheorem, DiagonalClassical };
std::string_view to_string(Criterion c);

// Evidence for a nonzero verdict. For commutation failures `indices` holds
// the offending block pair (i, j, k, l) and `magnitude` its commutator norm;
// for closed-form failures `condition` names the violated relation and
// `indices` holds (k, i, j, -1).
struct Witness {
    std::string condition;
    std::array<int, 4> indices{-1, -1, -1, -1};
    double magnitude = 0.0;
};

struct StructuralVerdict {
    bool zero_discord = false;
    Side side = Side::A;
    Criterion criterion = Criterion::GeneralCommutation;
    std::optional<Witness> witness;
    std::optional<PhaseVector> fitted_phases;
    std::optional<int> alpha;
    std::vector<double> pi;  // Bell case: common class values
};

// Side B: block(i,j)[k,l] = rho[i*d+k, j*d+l]. Side A: block(a,b)[i,j] = rho[i*d+a, j*d+b].
BlockDecomposition extract_blocks(const DensityMatrix& rho, int d, Side side);
BlockDecomposition extract_blocks(const ComplexMatrix& rho, int d, Side side);

// General criterion for any d. The verdict for `side` (discord measured on
// that party) uses that party's blocks. Pairs are compared against
// tol * max(1, |B1| |B2|); the witness is the largest violation, ties going
// to the lexicographically first pair.
StructuralVerdict structural_discord_zero(const DensityMatrix& rho, int d, Side side,
                                          double tol = kStructuralTol);

struct NecessaryConditionsReport {
    bool diagonal_classical = false;
    bool moduli_hold = true;     // NA / NB
    bool diagonals_hold = true;  // DA / DB
    std::optional<Witness> violation;
    bool passed() const { return diagonal_classical || (moduli_hold && diagonals_hold); }
};

// Side B: |a^(n)_ij| = |a^(0)_ij| and a^(n)_kk = a^(0)_kk.
// Side A: |a^(n)_ij| = |a^(0)_{i+n,j+n}| and a^(n)_kk = a^(0)_{k+n,k+n}.
NecessaryConditionsReport circulant_necessary_conditions(const CirculantSpec& spec, Side side,
                                                         double tol = kStructuralTol);

// Fits V and verifies the closed-form relation for every k. The relation is
// checked in its step form a^(k) = T a^(k-1) T^dagger, where T is W (side A)
// or diag(exp(i phi_{n+k-1})) (side B); both only involve phase differences
// phi_i - phi_j, so the fit is a breadth-first walk over a graph on {0..d-1}
// whose edges are the entry pairs with nonzero modulus. Nodes unreachable
// from 0 take phase 0; every constraint is re-verified afterwards.
StructuralVerdict circulant_theorem_check(const CirculantSpec& spec, Side side,
                                          double tol = kStructuralTol);

// Builds a^(k) from a0 and V by the closed-form relation for `side`, scaled
// so that the total trace is one. Any d is accepted.
CirculantSpec generate_zero_discord(const ComplexMatrix& a0, const PhaseVector& phases, Side side);

// Zero discord on both sides. Non-diagonal specs must have a^(0)_ii = 1/d^2
// and satisfy both the side-A and side-B closed-form relations.
StructuralVerdict completely_classical_check(const CirculantSpec& spec, double tol = kStructuralTol);

// Zero discord iff p(i, k) depends only on (i + k alpha) mod d for some
// alpha. The smallest working alpha is reported together with pi.
// Weights that depend on k alone also pass: every sector matrix is then
// diagonal, and the verdict carries the diagonal-classical criterion.
StructuralVerdict bell_zero_discord_check(const BellWeights& w, double tol = kStructuralTol);

struct ClassicalComponent {
    double probability;
    ComplexVector basis_vector;
    DensityMatrix conditional;
};

// rho = sum_k p_k |k><k| x rho_k (side A) or sum_k p_k rho_k x |k><k|
// (side B). Throws PreconditionError when the side has nonzero discord.
std::vector<ClassicalComponent> classical_decomposition(const DensityMatrix& rho, int d, Side side,
                                                        unsigned long long seed = 0x5eedULL);

// Inverse of classical_decomposition, used to check reconstructions.
ComplexMatrix reassemble(const std::vector<ClassicalComponent>& parts, Side side);

}  // namespace discordant
