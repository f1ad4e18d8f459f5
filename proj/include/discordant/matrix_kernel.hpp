#pragma once

// Dense complex-matrix primitives for two-qudit states.
//
// Storage is Eigen's dense MatrixXcd. Dimensions stay small (d <= 31, so at
// most 961x961 for a bipartite state), which keeps every routine here dense.
// Entropies are in bits.

#include <complex>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "discordant/errors.hpp"

namespace discordant {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// Which party of a bipartite system an operation refers to.
enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
std::string_view to_string(Side s);
Side parse_side(std::string_view text);

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kZeroEigenvalue = 1e-12;
inline constexpr double kNormalTol = 1e-9;

double frobenius(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
bool is_prime(int n);

// Positive semidefinite, unit-trace, Hermitian matrix. The constructor
// validates and stores the exactly Hermitian part (M + M^dagger)/2.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }

    static DensityMatrix maximally_mixed(int dim);

private:
    ComplexMatrix m_;
};

struct Spectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    ComplexMatrix eigenvectors;    // orthonormal columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// side == Side::B traces out B (result is dA x dA); side == Side::A traces
// out A (result is dB x dB).
ComplexMatrix partial_trace(const ComplexMatrix& rho, int dA, int dB, Side side);
DensityMatrix partial_trace(const DensityMatrix& rho, int dA, int dB, Side side);

// Symmetrizes before decomposing, so slightly non-Hermitian input is accepted.
Spectrum eig_hermitian(const ComplexMatrix& m);
Eigen::VectorXd eigenvalues_hermitian(const ComplexMatrix& m);

// -sum lambda log2 lambda over a spectrum. Eigenvalues in [-kPsdTol, 0) are
// clipped; anything more negative throws InvalidSpec.
double entropy_bits(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

bool is_normal(const ComplexMatrix& m, double tol = kNormalTol);
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace discordant
