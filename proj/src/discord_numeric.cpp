#include "discordant/discord_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "discordant/block_analysis.hpp"
#include "discordant/nelder_mead.hpp"

namespace discordant {

namespace {

constexpr double kGramTol = 1e-10;

// -sum lambda log2(lambda / p): p times the entropy of sigma / p.
inline double weighted_entropy_term(double lambda, double p) {
    if (lambda <= kZeroEigenvalue * p) return 0.0;
    return -lambda * std::log2(lambda / p);
}

template <int N>
using Mat = Eigen::Matrix<Complex, N, N>;
template <int N>
using Vec = Eigen::Matrix<Complex, N, 1>;

template <int N>
double weighted_entropy(const Mat<N>& sigma) {
    const double p = sigma.trace().real();
    if (p < kOutcomeFloor) return 0.0;
    if constexpr (N == 2) {
        const double a = sigma(0, 0).real();
        const double c = sigma(1, 1).real();
        const double half = 0.5 * (a - c);
        const double r = std::sqrt(half * half + std::norm(sigma(0, 1)));
        const double mean = 0.5 * (a + c);
        return weighted_entropy_term(mean + r, p) + weighted_entropy_term(std::max(mean - r, 0.0), p);
    } else {
        Eigen::SelfAdjointEigenSolver<Mat<N>> solver(sigma, Eigen::EigenvaluesOnly);
        double s = 0.0;
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
            s += weighted_entropy_term(std::max(solver.eigenvalues()(k), 0.0), p);
        return s;
    }
}

// Conditional entropy of the unmeasured party as a function of the
// measurement basis. Measuring A conditions on the B-side blocks (rho =
// sum e_ij x B_ij); measuring B conditions on the A-side blocks.
template <int N>
class ConditionalEntropy {
public:
    ConditionalEntropy(const ComplexMatrix& rho, int d, Side measured) : d_(d) {
        const BlockDecomposition blocks = extract_blocks(rho, d, other(measured));
        blocks_.reserve(blocks.blocks.size());
        for (const auto& b : blocks.blocks) blocks_.push_back(b);
    }

    int dim() const { return d_; }

    // Columns of `basis` are the measurement vectors.
    double operator()(const Mat<N>& basis) const {
        double total = 0.0;
        for (int k = 0; k < d_; ++k) {
            Mat<N> sigma = Mat<N>::Zero(d_, d_);
            for (int i = 0; i < d_; ++i) {
                const Complex ci = std::conj(basis(i, k));
                for (int j = 0; j < d_; ++j) {
                    sigma.noalias() += (ci * basis(j, k)) * blocks_[static_cast<size_t>(i * d_ + j)];
                }
            }
            total += weighted_entropy<N>(sigma);
        }
        return total;
    }

private:
    int d_;
    std::vector<Mat<N>> blocks_;
};

struct SearchResult {
    double conditional_entropy;
    ComplexMatrix basis;
    int converged;
};

// d = 2: v = (cos t/2, e^{ip} sin t/2), v_perp = (-e^{-ip} sin t/2, cos t/2).
Mat<2> bloch_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e = std::polar(1.0, phi);
    Mat<2> u;
    u << c, -std::conj(e) * s, e * s, c;
    return u;
}

SearchResult search_bloch_grid(const ConditionalEntropy<2>& objective, const OptimizerConfig& cfg) {
    constexpr int kTheta = 181;
    constexpr int kPhi = 360;
    constexpr int kRefinements = 3;
    struct Cell {
        double value;
        double theta;
        double phi;
    };
    std::vector<Cell> cells;
    cells.reserve(kTheta * kPhi);
    for (int t = 0; t < kTheta; ++t) {
        const double theta = std::numbers::pi * t / (kTheta - 1);
        for (int p = 0; p < kPhi; ++p) {
            const double phi = 2.0 * std::numbers::pi * p / kPhi;
            cells.push_back({objective(bloch_basis(theta, phi)), theta, phi});
        }
    }
    std::partial_sort(cells.begin(), cells.begin() + kRefinements, cells.end(),
                      [](const Cell& a, const Cell& b) { return a.value < b.value; });

    auto f = [&](const Eigen::VectorXd& x) { return objective(bloch_basis(x(0), x(1))); };
    SearchResult best{cells.front().value, bloch_basis(cells.front().theta, cells.front().phi), 0};
    for (int r = 0; r < kRefinements; ++r) {
        Eigen::VectorXd x0(2);
        x0 << cells[static_cast<size_t>(r)].theta, cells[static_cast<size_t>(r)].phi;
        NelderMeadResult nm = nelder_mead(f, x0, std::numbers::pi / 180.0, cfg.max_iters, cfg.f_tol);
        nm = nelder_mead(f, nm.x, std::numbers::pi / 1800.0, cfg.max_iters, cfg.f_tol);
        if (nm.converged) ++best.converged;
        if (nm.value < best.conditional_entropy) {
            best.conditional_entropy = nm.value;
            best.basis = bloch_basis(nm.x(0), nm.x(1));
        }
    }
    return best;
}

// Off-diagonal Hermitian generator from d(d-1) real parameters.
template <int N>
Mat<N> unitary_from_generator(const Eigen::VectorXd& x, int d) {
    Mat<N> h = Mat<N>::Zero(d, d);
    Eigen::Index k = 0;
    for (int p = 0; p < d; ++p) {
        for (int q = p + 1; q < d; ++q) {
            h(p, q) = Complex(x(k), x(k + 1));
            h(q, p) = std::conj(h(p, q));
            k += 2;
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat<N>> solver(h);
    Vec<N> phases = Vec<N>::Zero(d);
    for (int n = 0; n < d; ++n) phases(n) = std::polar(1.0, solver.eigenvalues()(n));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

template <int N>
SearchResult search_multistart(const ConditionalEntropy<N>& objective, const OptimizerConfig& cfg) {
    const int d = objective.dim();
    const auto params = static_cast<Eigen::Index>(d * (d - 1));
    SearchResult best{std::numeric_limits<double>::infinity(), ComplexMatrix(), 0};
    for (int start = 0; start < cfg.starts; ++start) {
        Mat<N> u0;
        if (start == 0) {
            u0 = Mat<N>::Identity(d, d);
        } else if (start == 1) {
            u0 = MeasurementBasis::fourier(d).vectors();
        } else {
            u0 = random_unitary(d, split_seed(cfg.seed, static_cast<std::uint64_t>(start)));
        }
        auto f = [&](const Eigen::VectorXd& x) {
            return objective(Mat<N>(u0 * unitary_from_generator<N>(x, d)));
        };
        NelderMeadResult nm = nelder_mead(f, Eigen::VectorXd::Zero(params), 0.3, cfg.max_iters, cfg.f_tol);
        nm = nelder_mead(f, nm.x, 0.03, cfg.max_iters, cfg.f_tol);
        if (nm.converged) ++best.converged;
        if (nm.value < best.conditional_entropy) {
            best.conditional_entropy = nm.value;
            best.basis = u0 * unitary_from_generator<N>(nm.x, d);
        }
    }
    return best;
}

template <int N>
SearchResult search(const ComplexMatrix& rho, int d, Side side, const OptimizerConfig& cfg) {
    const ConditionalEntropy<N> objective(rho, d, side);
    if constexpr (N == 2) {
        if (cfg.grid_2d) return search_bloch_grid(objective, cfg);
    }
    return search_multistart<N>(objective, cfg);
}

// Orthonormalizes the best basis so that it passes MeasurementBasis checks
// after many floating-point products.
ComplexMatrix orthonormalize(const ComplexMatrix& u) {
    Eigen::HouseholderQR<ComplexMatrix> qr(u);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex diag = r(k, k);
        if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace

MeasurementBasis::MeasurementBasis(const ComplexMatrix& vectors) : vectors_(vectors) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() == 0) {
        throw InvalidMeasurement("measurement basis must be a square matrix of column vectors");
    }
    if (!all_finite(vectors_)) throw InvalidMeasurement("measurement basis has non-finite entries");
    const Eigen::Index d = vectors_.cols();
    const double gram_error = frobenius(vectors_.adjoint() * vectors_ - ComplexMatrix::Identity(d, d));
    if (gram_error > kGramTol) {
        throw InvalidMeasurement("measurement vectors are not orthonormal (Gram error " +
                                 std::to_string(gram_error) + ")");
    }
}

MeasurementBasis MeasurementBasis::computational(int d) {
    return MeasurementBasis(ComplexMatrix::Identity(d, d));
}

MeasurementBasis MeasurementBasis::fourier(int d) {
    ComplexMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            f(j, k) = norm * std::polar(1.0, 2.0 * std::numbers::pi * ((j * k) % d) / d);
    return MeasurementBasis(f);
}

void OptimizerConfig::validate() const {
    if (starts < 1) throw InvalidMeasurement("optimizer needs at least one start");
    if (max_iters < 1) throw InvalidMeasurement("optimizer needs max_iters >= 1");
    if (!(f_tol > 0.0)) throw InvalidMeasurement("optimizer f_tol must be positive");
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over a combined state.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    return orthonormalize(g);
}

double mutual_information(const DensityMatrix& rho, int d) {
    if (rho.dim() != d * d) {
        throw DimensionError("mutual_information: state dimension " + std::to_string(rho.dim()) +
                             " is not d^2 for d = " + std::to_string(d));
    }
    const DensityMatrix rho_a = partial_trace(rho, d, d, Side::B);
    const DensityMatrix rho_b = partial_trace(rho, d, d, Side::A);
    return von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho);
}

double conditional_entropy(const DensityMatrix& rho, int d, const MeasurementBasis& basis, Side side) {
    if (basis.dim() != d) throw InvalidMeasurement("measurement basis dimension differs from d");
    if (rho.dim() != d * d) throw DimensionError("conditional_entropy: state dimension is not d^2");
    const ConditionalEntropy<Eigen::Dynamic> objective(rho.matrix(), d, side);
    return objective(basis.vectors());
}

CorrelationResult classical_correlation(const DensityMatrix& rho, int d, Side side,
                                        const OptimizerConfig& cfg) {
    cfg.validate();
    if (rho.dim() != d * d) throw DimensionError("classical_correlation: state dimension is not d^2");
    const DensityMatrix reduced = partial_trace(rho, d, d, side);  // the unmeasured party
    const double reduced_entropy = von_neumann_entropy(reduced);

    SearchResult found = d == 2   ? search<2>(rho.matrix(), d, side, cfg)
                         : d == 3 ? search<3>(rho.matrix(), d, side, cfg)
                                  : search<Eigen::Dynamic>(rho.matrix(), d, side, cfg);
    const MeasurementBasis basis(orthonormalize(found.basis));
    // Re-evaluate on the orthonormalized basis so the value is exactly attained.
    const double value = reduced_entropy - conditional_entropy(rho, d, basis, side);
    return {value, basis, found.converged};
}

DiscordResult discord(const DensityMatrix& rho, int d, Side side, const OptimizerConfig& cfg) {
    const double mi = mutual_information(rho, d);
    CorrelationResult c = classical_correlation(rho, d, side, cfg);
    DiscordResult out;
    out.side = side;
    out.mutual_information = mi;
    out.classical_correlation = c.value;
    out.discord = mi - c.value;
    if (std::abs(out.discord) <= kDiscordClip) {
        out.discord = 0.0;
        out.classical_correlation = mi;
    }
    out.best_measurement = c.basis;
    out.starts_converged = c.starts_converged;
    return out;
}

}  // namespace discordant
