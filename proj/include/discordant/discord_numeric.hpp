#pragma once

// Numeric discord: mutual information minus the classical correlation
// extracted by the best rank-1 projective measurement on one party.
//
// The supremum over measurements is searched directly. For d = 2 an
// exhaustive Bloch-sphere grid is refined locally; for larger d a multi-start
// Nelder-Mead search runs over bases U0 exp(iH), H Hermitian. C is always a
// value attained by some measurement, so the reported discord is an upper
// bound on the true value. For d >= 5 start coverage is sparse and results
// are labelled heuristic.

#include <cstdint>

#include "discordant/matrix_kernel.hpp"

namespace discordant {

// Ordered orthonormal basis of C^d; vector k is column k.
class MeasurementBasis {
public:
    explicit MeasurementBasis(const ComplexMatrix& vectors);

    static MeasurementBasis computational(int d);
    static MeasurementBasis fourier(int d);

    int dim() const { return static_cast<int>(vectors_.cols()); }
    const ComplexMatrix& vectors() const { return vectors_; }

private:
    ComplexMatrix vectors_;
};

struct OptimizerConfig {
    int starts = 24;
    int max_iters = 2000;
    double f_tol = 1e-10;
    std::uint64_t seed = 0;
    bool grid_2d = true;

    void validate() const;
};

struct DiscordResult {
    Side side = Side::A;
    double mutual_information = 0.0;
    double classical_correlation = 0.0;
    double discord = 0.0;
    MeasurementBasis best_measurement = MeasurementBasis::computational(1);
    int starts_converged = 0;
};

struct CorrelationResult {
    double value;
    MeasurementBasis basis;
    int starts_converged;
};

inline constexpr double kOutcomeFloor = 1e-14;
inline constexpr double kDiscordClip = 1e-9;

inline bool numeric_is_heuristic(int d) { return d >= 5; }

double mutual_information(const DensityMatrix& rho, int d);

// sum_k p_k S(rho_{other|k}) for the projective measurement `basis` on `side`.
double conditional_entropy(const DensityMatrix& rho, int d, const MeasurementBasis& basis, Side side);

CorrelationResult classical_correlation(const DensityMatrix& rho, int d, Side side,
                                        const OptimizerConfig& cfg = {});

DiscordResult discord(const DensityMatrix& rho, int d, Side side, const OptimizerConfig& cfg = {});

// Haar-distributed unitary from a seeded stream (QR of a complex Gaussian
// matrix with the phases of R's diagonal divided out).
ComplexMatrix random_unitary(int d, std::uint64_t seed);

// Stateless 64-bit mixer used to derive independent child seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace discordant
