#pragma once

// Constructors for the two-qudit state families analysed by this library.
//
// Circulant layout. The space C^d x C^d splits into d orthogonal sectors
// Sigma_n = span{ e_i x e_{i+n} }. A circulant state is block diagonal over
// the sectors and is described by d PSD "sector matrices" a^(0..d-1):
//
//     rho[i*d + (i+n) mod d, j*d + (j+n) mod d] = a^(n)(i, j)
//
// i.e. a^(n)(i, j) pairs the row vector e_i x e_{i+n} with the column vector
// e_j x e_{j+n}. All other entries of rho vanish.

#include <array>
#include <variant>
#include <vector>

#include "discordant/matrix_kernel.hpp"

namespace discordant {

// The d sector matrices of a circulant state. Construction validates that
// each matrix is d x d, Hermitian and PSD, and that the traces sum to one.
class CirculantSpec {
public:
    explicit CirculantSpec(std::vector<ComplexMatrix> sectors);

    int dim() const { return static_cast<int>(sectors_.size()); }
    const ComplexMatrix& sector(int n) const { return sectors_.at(static_cast<size_t>(n)); }
    const std::vector<ComplexMatrix>& sectors() const { return sectors_; }

    // True when every sector matrix is diagonal (within `tol`).
    bool is_diagonal(double tol = kZeroEigenvalue) const;

private:
    std::vector<ComplexMatrix> sectors_;
};

// Probabilities p(m, n) of a Bell-diagonal state.
class BellWeights {
public:
    explicit BellWeights(RealMatrix p);

    int dim() const { return static_cast<int>(p_.rows()); }
    const RealMatrix& p() const { return p_; }
    double operator()(int m, int n) const { return p_(m, n); }

private:
    RealMatrix p_;
};

struct NotCirculant {
    double residual;
};

// exp(2 pi i k / d) with k reduced mod d first.
Complex root_of_unity(int d, long long k);

ComplexMatrix shift_operator(int d);

DensityMatrix circulant_state(const CirculantSpec& spec);
std::variant<CirculantSpec, NotCirculant> project_circulant(const DensityMatrix& rho, int d);

DensityMatrix maximally_entangled(int d);

// U_mn e_k = lambda^{mk} S^n e_k with lambda = exp(2 pi i / d).
ComplexMatrix weyl_unitary(int m, int n, int d);
DensityMatrix bell_projector(int m, int n, int d);
CirculantSpec bell_diagonal_state(const BellWeights& w);

// Werner state (1-l)/d^2 I + (l/d) F, exactly as a dense matrix.
DensityMatrix werner_density(int d, double lambda);

// The flip F maps Sigma_n onto Sigma_{-n}, so the Werner state is circulant
// only for d = 2. werner_state returns the sector matrices of the locally
// reflected state (I x R) rho_W (I x R) with R e_k = e_{-k}: identical to
// rho_W when d = 2 and with the same discord on both sides for every d.
CirculantSpec werner_state(int d, double lambda);
// (1-l)/d^2 I + l P^+_d.
CirculantSpec isotropic_state(int d, double lambda);

// Local reflection R e_k = e_{-k mod d}.
ComplexMatrix reflection_operator(int d);

// a * P0 / tr P0 + b * P1 / tr P1 + c * P2 / tr P2 with P0 = Q+ - P+,
// P1 = Q-, P2 = P+ and Q+- = (I +- F) / 2.
//
// For d = 2 the assembled matrix is an X-state whose (11,00) corner entry
// is (2c - a)/4.
DensityMatrix orthogonal_invariant_state(const std::array<double, 3>& abc, int d);

ComplexMatrix flip_operator(int d);

// sum_ij a_ij e_ij x e_ij + sum_{i != j} dmat_ij e_ii x e_jj, returned as
// sector matrices a^(0) = a and a^(k) = diag(dmat(i, i+k)).
CirculantSpec commuting_group_invariant_state(const ComplexMatrix& a, const RealMatrix& dmat);

// |a_ij|^2 <= dmat_ij dmat_ji (+1e-12) for all i != j.
bool ppt_check_commuting(const ComplexMatrix& a, const RealMatrix& dmat);

}  // namespace discordant
