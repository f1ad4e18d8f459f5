#include "discordant/block_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

namespace discordant {

namespace {

constexpr double kPhaseNoise = 1e-12;

int mod(int a, int d) { return ((a % d) + d) % d; }

void require_prime(int d, const char* what) {
    if (!is_prime(d)) {
        throw PrimeRequired(std::string(what) + ": d = " + std::to_string(d) + " is not prime");
    }
}

double wrap_angle(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

Witness make_witness(std::string condition, int a, int b, int c, int e, double magnitude) {
    return Witness{std::move(condition), {a, b, c, e}, magnitude};
}

// Reference entry of a^(0) that a^(n)(i, j) is compared with.
Complex reference_entry(const CirculantSpec& spec, Side side, int n, int i, int j) {
    const int d = spec.dim();
    if (side == Side::B) return spec.sector(0)(i, j);
    return spec.sector(0)(mod(i + n, d), mod(j + n, d));
}

// Step relation a^(k) = T a^(k-1) T^dagger. Returns the two nodes whose
// phase difference multiplies the entry, and the entry of a^(k-1) it maps
// from.
struct StepTerm {
    int u, v;
    Complex previous;
};

StepTerm step_term(const CirculantSpec& spec, Side side, int k, int i, int j) {
    const int d = spec.dim();
    const ComplexMatrix& prev = spec.sector(k - 1);
    if (side == Side::A) return {i, j, prev(mod(i + 1, d), mod(j + 1, d))};
    return {mod(i + k - 1, d), mod(j + k - 1, d), prev(i, j)};
}

// Hermitian generators of a *-closed block family.
std::vector<ComplexMatrix> hermitian_generators(const BlockDecomposition& blocks) {
    std::vector<ComplexMatrix> out;
    const Complex iu(0.0, 1.0);
    for (int p = 0; p < blocks.d; ++p) {
        for (int q = p; q < blocks.d; ++q) {
            const ComplexMatrix& b = blocks.block(p, q);
            if (frobenius(b) < kPhaseNoise) continue;
            out.push_back(b + b.adjoint());
            if (p != q) out.push_back(iu * (b - b.adjoint()));
        }
    }
    return out;
}

// Splits the columns of `basis` into clusters of (numerically) equal
// eigenvalue of `values`.
std::vector<ComplexMatrix> cluster_columns(const ComplexMatrix& basis, const Eigen::VectorXd& values,
                                           double gap) {
    std::vector<ComplexMatrix> clusters;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= values.size(); ++k) {
        if (k == values.size() || values(k) - values(k - 1) >= gap) {
            clusters.push_back(basis.middleCols(start, k - start));
            start = k;
        }
    }
    return clusters;
}

// Refines an invariant subspace (orthonormal columns of `q`) until every
// generator acts on each piece as a scalar.
void refine(const ComplexMatrix& q, const std::vector<ComplexMatrix>& generators, size_t first,
            double gap, std::vector<ComplexMatrix>& out) {
    if (q.cols() == 1) {
        out.push_back(q);
        return;
    }
    for (size_t g = first; g < generators.size(); ++g) {
        const ComplexMatrix restricted = q.adjoint() * generators[g] * q;
        const Spectrum s = eig_hermitian(restricted);
        if (s.eigenvalues(s.eigenvalues.size() - 1) - s.eigenvalues(0) < gap) continue;
        for (const ComplexMatrix& piece : cluster_columns(q * s.eigenvectors, s.eigenvalues, gap)) {
            refine(piece, generators, g + 1, gap, out);
        }
        return;
    }
    out.push_back(q);
}

}  // namespace

PhaseVector::PhaseVector(std::vector<double> phi) : phi_(std::move(phi)) {
    if (phi_.empty()) throw DimensionError("phase vector must be non-empty");
    if (phi_[0] != 0.0) throw InvalidSpec("phase vector must have phi[0] = 0");
}

ComplexMatrix PhaseVector::unitary() const {
    const int d = dim();
    ComplexMatrix v = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) v(n, n) = std::polar(1.0, phi_[static_cast<size_t>(n)]);
    return v;
}

std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::GeneralCommutation: return "general-commutation";
        case Criterion::CirculantTheorem: return "circulant-theorem";
        case Criterion::BellTheorem: return "bell-theorem";
        case Criterion::DiagonalClassical: return "diagonal-classical";
    }
    return "unknown";
}

BlockDecomposition extract_blocks(const ComplexMatrix& rho, int d, Side side) {
    if (d < 1 || rho.rows() != d * d || rho.cols() != d * d) {
        throw DimensionError("extract_blocks: state is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", expected d^2 = " +
                             std::to_string(d * d));
    }
    BlockDecomposition out{side, d, {}};
    out.blocks.reserve(static_cast<size_t>(d * d));
    for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
            if (side == Side::B) {
                out.blocks.emplace_back(rho.block(p * d, q * d, d, d));
            } else {
                ComplexMatrix b(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) b(i, j) = rho(i * d + p, j * d + q);
                out.blocks.push_back(std::move(b));
            }
        }
    }
    return out;
}

BlockDecomposition extract_blocks(const DensityMatrix& rho, int d, Side side) {
    return extract_blocks(rho.matrix(), d, side);
}

StructuralVerdict structural_discord_zero(const DensityMatrix& rho, int d, Side side, double tol) {
    const BlockDecomposition blocks = extract_blocks(rho, d, side);
    StructuralVerdict verdict;
    verdict.side = side;
    verdict.criterion = Criterion::GeneralCommutation;

    std::vector<double> norms(blocks.blocks.size());
    for (size_t p = 0; p < norms.size(); ++p) norms[p] = frobenius(blocks.blocks[p]);

    // Normality of off-diagonal blocks first: a failure is the pair (ij, ji).
    std::optional<Witness> worst;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const ComplexMatrix& b = blocks.block(i, j);
            if (is_normal(b, tol)) continue;
            const double c = commutator_norm(b, blocks.block(j, i));
            if (!worst || c > worst->magnitude) worst = make_witness("normality", i, j, j, i, c);
        }
    }
    if (!worst) {
        const int count = d * d;
        for (int p = 0; p < count; ++p) {
            if (norms[static_cast<size_t>(p)] < kPhaseNoise) continue;
            for (int q = p + 1; q < count; ++q) {
                if (norms[static_cast<size_t>(q)] < kPhaseNoise) continue;
                const double c = commutator_norm(blocks.blocks[static_cast<size_t>(p)],
                                                 blocks.blocks[static_cast<size_t>(q)]);
                const double bound = tol * std::max(1.0, norms[static_cast<size_t>(p)] *
                                                             norms[static_cast<size_t>(q)]);
                if (c > bound && (!worst || c > worst->magnitude)) {
                    worst = make_witness("commutator", p / d, p % d, q / d, q % d, c);
                }
            }
        }
    }
    verdict.zero_discord = !worst.has_value();
    verdict.witness = worst;
    return verdict;
}

NecessaryConditionsReport circulant_necessary_conditions(const CirculantSpec& spec, Side side,
                                                         double tol) {
    const int d = spec.dim();
    require_prime(d, "circulant_necessary_conditions");
    NecessaryConditionsReport report;
    if (spec.is_diagonal(kPhaseNoise)) {
        report.diagonal_classical = true;
        return report;
    }
    const std::string moduli_id = side == Side::A ? "NA" : "NB";
    const std::string diagonal_id = side == Side::A ? "DA" : "DB";
    for (int n = 1; n < d; ++n) {
        const ComplexMatrix& a = spec.sector(n);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const Complex ref = reference_entry(spec, side, n, i, j);
                if (i == j) {
                    const double gap = std::abs(a(i, i) - ref);
                    if (gap > tol) {
                        if (report.diagonals_hold && !report.violation)
                            report.violation = make_witness(diagonal_id, n, i, j, -1, gap);
                        report.diagonals_hold = false;
                    }
                } else {
                    const double gap = std::abs(std::abs(a(i, j)) - std::abs(ref));
                    if (gap > tol) {
                        if (report.moduli_hold && !report.violation)
                            report.violation = make_witness(moduli_id, n, i, j, -1, gap);
                        report.moduli_hold = false;
                    }
                }
            }
        }
    }
    return report;
}

StructuralVerdict circulant_theorem_check(const CirculantSpec& spec, Side side, double tol) {
    const int d = spec.dim();
    require_prime(d, "circulant_theorem_check");
    StructuralVerdict verdict;
    verdict.side = side;
    if (spec.is_diagonal(kPhaseNoise)) {
        verdict.zero_discord = true;
        verdict.criterion = Criterion::DiagonalClassical;
        return verdict;
    }
    verdict.criterion = Criterion::CirculantTheorem;

    const NecessaryConditionsReport necessary = circulant_necessary_conditions(spec, side, tol);
    if (!necessary.passed()) {
        verdict.zero_discord = false;
        verdict.witness = necessary.violation;
        return verdict;
    }

    // Constraint graph: an edge u -> v carries phi_u - phi_v = delta.
    struct Edge {
        int to;
        double delta;
    };
    std::vector<std::vector<Edge>> graph(static_cast<size_t>(d));
    for (int k = 1; k < d; ++k) {
        const ComplexMatrix& cur = spec.sector(k);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                const StepTerm t = step_term(spec, side, k, i, j);
                if (std::abs(cur(i, j)) < kPhaseNoise || std::abs(t.previous) < kPhaseNoise) continue;
                const double delta = std::arg(cur(i, j) * std::conj(t.previous));
                graph[static_cast<size_t>(t.u)].push_back({t.v, delta});
                graph[static_cast<size_t>(t.v)].push_back({t.u, -delta});
            }
        }
    }

    std::vector<double> phi(static_cast<size_t>(d), 0.0);
    std::vector<bool> seen(static_cast<size_t>(d), false);
    for (int root = 0; root < d; ++root) {
        if (seen[static_cast<size_t>(root)]) continue;
        seen[static_cast<size_t>(root)] = true;
        std::queue<int> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const Edge& e : graph[static_cast<size_t>(u)]) {
                if (seen[static_cast<size_t>(e.to)]) continue;
                seen[static_cast<size_t>(e.to)] = true;
                phi[static_cast<size_t>(e.to)] = wrap_angle(phi[static_cast<size_t>(u)] - e.delta);
                frontier.push(e.to);
            }
        }
    }

    for (int k = 1; k < d; ++k) {
        const ComplexMatrix& cur = spec.sector(k);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const StepTerm t = step_term(spec, side, k, i, j);
                const Complex expected =
                    std::polar(1.0, phi[static_cast<size_t>(t.u)] - phi[static_cast<size_t>(t.v)]) *
                    t.previous;
                const double gap = std::abs(cur(i, j) - expected);
                if (gap > tol) {
                    verdict.zero_discord = false;
                    verdict.witness = make_witness("phase", k, i, j, -1, gap);
                    return verdict;
                }
            }
        }
    }
    verdict.zero_discord = true;
    verdict.fitted_phases = PhaseVector(std::move(phi));
    return verdict;
}

CirculantSpec generate_zero_discord(const ComplexMatrix& a0, const PhaseVector& phases, Side side) {
    const int d = static_cast<int>(a0.rows());
    if (a0.cols() != d || phases.dim() != d) {
        throw DimensionError("generate_zero_discord: a0 and phases must share dimension d");
    }
    if (d < 2) throw DimensionError("generate_zero_discord: d must be at least 2");
    if (!all_finite(a0) || frobenius(a0 - a0.adjoint()) > kHermitianTol * std::max(1.0, frobenius(a0))) {
        throw InvalidSpec("generate_zero_discord: a0 is not Hermitian");
    }
    if (eigenvalues_hermitian(a0)(0) < -kPsdTol) {
        throw InvalidSpec("generate_zero_discord: a0 is not positive semidefinite");
    }
    const double trace = a0.trace().real();
    if (trace <= 0.0) throw InvalidSpec("generate_zero_discord: a0 has zero trace");

    const ComplexMatrix v = phases.unitary();
    const ComplexMatrix s = shift_operator(d);
    const ComplexMatrix hermitian_a0 = (a0 + a0.adjoint()) / 2.0;
    std::vector<ComplexMatrix> sectors;
    sectors.push_back(hermitian_a0);
    if (side == Side::A) {
        const ComplexMatrix w = v * s.adjoint();
        ComplexMatrix wk = ComplexMatrix::Identity(d, d);
        for (int k = 1; k < d; ++k) {
            wk = w * wk;
            sectors.push_back(wk * hermitian_a0 * wk.adjoint());
        }
    } else {
        const ComplexMatrix vs = v * s;
        ComplexMatrix vs_power = ComplexMatrix::Identity(d, d);  // (VS)^(k-1)
        ComplexMatrix s_back = ComplexMatrix::Identity(d, d);    // S^dagger^(k-1)
        for (int k = 1; k < d; ++k) {
            const ComplexMatrix m = s_back * vs_power * v;
            sectors.push_back(m * hermitian_a0 * m.adjoint());
            vs_power = vs * vs_power;
            s_back = s.adjoint() * s_back;
        }
    }
    for (auto& a : sectors) {
        a /= trace * d;
        a = ((a + a.adjoint()) / 2.0).eval();
    }
    return CirculantSpec(std::move(sectors));
}

StructuralVerdict completely_classical_check(const CirculantSpec& spec, double tol) {
    const int d = spec.dim();
    require_prime(d, "completely_classical_check");
    StructuralVerdict verdict;
    verdict.side = Side::A;
    if (spec.is_diagonal(kPhaseNoise)) {
        verdict.zero_discord = true;
        verdict.criterion = Criterion::DiagonalClassical;
        return verdict;
    }
    verdict.criterion = Criterion::CirculantTheorem;
    const double target = 1.0 / (static_cast<double>(d) * d);
    for (int i = 0; i < d; ++i) {
        const double gap = std::abs(spec.sector(0)(i, i) - target);
        if (gap > tol) {
            verdict.witness = make_witness("diagonal-uniform", 0, i, i, -1, gap);
            return verdict;
        }
    }
    for (Side s : {Side::A, Side::B}) {
        StructuralVerdict part = circulant_theorem_check(spec, s, tol);
        if (!part.zero_discord) {
            verdict.witness = part.witness;
            verdict.witness->condition = std::string(to_string(s)) + ":" + verdict.witness->condition;
            return verdict;
        }
        if (s == Side::A) verdict.fitted_phases = part.fitted_phases;
    }
    verdict.zero_discord = true;
    return verdict;
}

StructuralVerdict bell_zero_discord_check(const BellWeights& w, double tol) {
    const int d = w.dim();
    require_prime(d, "bell_zero_discord_check");
    StructuralVerdict verdict;
    verdict.side = Side::A;
    verdict.criterion = Criterion::BellTheorem;

    double best_spread = std::numeric_limits<double>::infinity();
    int best_alpha = 0;
    int best_class = 0;
    for (int alpha = 0; alpha < d; ++alpha) {
        std::vector<double> lo(static_cast<size_t>(d), std::numeric_limits<double>::infinity());
        std::vector<double> hi(static_cast<size_t>(d), -std::numeric_limits<double>::infinity());
        std::vector<double> sum(static_cast<size_t>(d), 0.0);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) {
                const auto r = static_cast<size_t>(mod(i + k * alpha, d));
                lo[r] = std::min(lo[r], w(i, k));
                hi[r] = std::max(hi[r], w(i, k));
                sum[r] += w(i, k);
            }
        }
        double spread = 0.0;
        int worst_class = 0;
        for (int r = 0; r < d; ++r) {
            const double sr = hi[static_cast<size_t>(r)] - lo[static_cast<size_t>(r)];
            if (sr > spread) {
                spread = sr;
                worst_class = r;
            }
        }
        if (spread <= tol) {
            verdict.zero_discord = true;
            verdict.alpha = alpha;
            for (double s : sum) verdict.pi.push_back(s / d);
            return verdict;
        }
        if (spread < best_spread) {
            best_spread = spread;
            best_alpha = alpha;
            best_class = worst_class;
        }
    }
    // Weights constant along each column give diagonal sector matrices.
    double column_spread = 0.0;
    for (int k = 0; k < d; ++k) column_spread = std::max(column_spread, w.p().col(k).maxCoeff() - w.p().col(k).minCoeff());
    if (column_spread <= tol) {
        verdict.zero_discord = true;
        verdict.criterion = Criterion::DiagonalClassical;
        return verdict;
    }
    verdict.witness = make_witness("residue-class", best_alpha, best_class, -1, -1, best_spread);
    return verdict;
}

std::vector<ClassicalComponent> classical_decomposition(const DensityMatrix& rho, int d, Side side,
                                                        unsigned long long seed) {
    const StructuralVerdict verdict = structural_discord_zero(rho, d, side);
    if (!verdict.zero_discord) {
        throw PreconditionError("classical_decomposition: state has nonzero discord on side " +
                                std::string(to_string(side)));
    }
    constexpr double kGap = 1e-8;
    constexpr int kAttempts = 5;
    const BlockDecomposition blocks = extract_blocks(rho, d, side);
    const std::vector<ComplexMatrix> generators = hermitian_generators(blocks);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexMatrix basis = ComplexMatrix::Identity(d, d);
    if (!generators.empty()) {
        Spectrum s;
        bool separated = false;
        for (int attempt = 0; attempt < kAttempts && !separated; ++attempt) {
            ComplexMatrix combo = ComplexMatrix::Zero(d, d);
            for (const auto& g : generators) combo += normal(rng) * g;
            s = eig_hermitian(combo);
            separated = true;
            for (Eigen::Index k = 1; k < s.eigenvalues.size(); ++k)
                if (s.eigenvalues(k) - s.eigenvalues(k - 1) < kGap) separated = false;
        }
        if (separated) {
            basis = s.eigenvectors;
        } else {
            std::vector<ComplexMatrix> pieces;
            for (const auto& cluster : cluster_columns(s.eigenvectors, s.eigenvalues, kGap))
                refine(cluster, generators, 0, kGap, pieces);
            Eigen::Index col = 0;
            for (const auto& piece : pieces) {
                basis.middleCols(col, piece.cols()) = piece;
                col += piece.cols();
            }
        }
    }

    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    std::vector<ClassicalComponent> parts;
    for (int k = 0; k < d; ++k) {
        const ComplexVector v = basis.col(k);
        const ComplexMatrix lift = side == Side::A ? kron(v, id) : kron(id, v);
        const ComplexMatrix conditional = lift.adjoint() * rho.matrix() * lift;
        const double p = conditional.trace().real();
        if (p < 1e-14) {
            parts.push_back({std::max(p, 0.0), v, DensityMatrix::maximally_mixed(d)});
        } else {
            parts.push_back({p, v, DensityMatrix(conditional / p)});
        }
    }
    return parts;
}

ComplexMatrix reassemble(const std::vector<ClassicalComponent>& parts, Side side) {
    if (parts.empty()) return {};
    const Eigen::Index d = parts.front().basis_vector.size();
    const Eigen::Index dc = parts.front().conditional.dim();
    ComplexMatrix out = ComplexMatrix::Zero(d * dc, d * dc);
    for (const auto& part : parts) {
        const ComplexMatrix proj = part.basis_vector * part.basis_vector.adjoint();
        out += part.probability * (side == Side::A ? kron(proj, part.conditional.matrix())
                                                   : kron(part.conditional.matrix(), proj));
    }
    return out;
}

}  // namespace discordant
