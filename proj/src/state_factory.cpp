#include "discordant/state_factory.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace discordant {

namespace {

int sector_of(int index, int d) {
    const int i = index / d;
    const int q = index % d;
    return ((q - i) % d + d) % d;
}

void require_dim(int d, const char* what) {
    if (d < 2) throw DimensionError(std::string(what) + ": d must be at least 2");
}

}  // namespace

CirculantSpec::CirculantSpec(std::vector<ComplexMatrix> sectors) : sectors_(std::move(sectors)) {
    const int d = dim();
    if (d < 1) throw InvalidSpec("circulant spec needs at least one sector matrix");
    double total = 0.0;
    for (int n = 0; n < d; ++n) {
        const ComplexMatrix& a = sectors_[static_cast<size_t>(n)];
        if (a.rows() != d || a.cols() != d) {
            throw InvalidSpec("sector matrix a^(" + std::to_string(n) + ") is not " +
                              std::to_string(d) + "x" + std::to_string(d));
        }
        if (!all_finite(a)) throw InvalidSpec("sector matrix has non-finite entries");
        if (frobenius(a - a.adjoint()) > kHermitianTol * std::max(1.0, frobenius(a))) {
            throw InvalidSpec("sector matrix a^(" + std::to_string(n) + ") is not Hermitian");
        }
        const Eigen::VectorXd ev = eigenvalues_hermitian(a);
        if (ev(0) < -kPsdTol) {
            throw InvalidSpec("sector matrix a^(" + std::to_string(n) +
                              ") is not positive semidefinite (min eigenvalue " +
                              std::to_string(ev(0)) + ")");
        }
        total += a.trace().real();
    }
    if (std::abs(total - 1.0) > kTraceTol) {
        throw InvalidSpec("sector traces sum to " + std::to_string(total) + ", expected 1");
    }
}

bool CirculantSpec::is_diagonal(double tol) const {
    for (const auto& a : sectors_) {
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (i != j && std::abs(a(i, j)) > tol) return false;
    }
    return true;
}

BellWeights::BellWeights(RealMatrix p) : p_(std::move(p)) {
    if (p_.rows() != p_.cols() || p_.rows() < 2) {
        throw InvalidSpec("Bell weights must form a square matrix with d >= 2");
    }
    if (!p_.allFinite()) throw InvalidSpec("Bell weights contain non-finite values");
    if (p_.minCoeff() < 0.0) throw InvalidSpec("Bell weights must be nonnegative");
    if (std::abs(p_.sum() - 1.0) > kTraceTol) {
        throw InvalidSpec("Bell weights sum to " + std::to_string(p_.sum()) + ", expected 1");
    }
}

Complex root_of_unity(int d, long long k) {
    const long long r = ((k % d) + d) % d;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

ComplexMatrix shift_operator(int d) {
    require_dim(d, "shift_operator");
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) s((n + 1) % d, n) = 1.0;
    return s;
}

DensityMatrix circulant_state(const CirculantSpec& spec) {
    const int d = spec.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d * d, d * d);
    for (int n = 0; n < d; ++n) {
        const ComplexMatrix& a = spec.sector(n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                rho(i * d + (i + n) % d, j * d + (j + n) % d) = a(i, j);
    }
    return DensityMatrix(rho);
}

std::variant<CirculantSpec, NotCirculant> project_circulant(const DensityMatrix& rho, int d) {
    if (d < 1 || rho.dim() != d * d) {
        throw DimensionError("project_circulant: state dimension " + std::to_string(rho.dim()) +
                             " is not d^2 for d = " + std::to_string(d));
    }
    const ComplexMatrix& m = rho.matrix();
    double off_sector = 0.0;
    for (int r = 0; r < d * d; ++r)
        for (int c = 0; c < d * d; ++c)
            if (sector_of(r, d) != sector_of(c, d)) off_sector += std::norm(m(r, c));
    const double residual = std::sqrt(off_sector);
    if (residual > 1e-10) return NotCirculant{residual};

    std::vector<ComplexMatrix> sectors(static_cast<size_t>(d), ComplexMatrix::Zero(d, d));
    for (int n = 0; n < d; ++n)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                sectors[static_cast<size_t>(n)](i, j) = m(i * d + (i + n) % d, j * d + (j + n) % d);
    return CirculantSpec(std::move(sectors));
}

DensityMatrix maximally_entangled(int d) {
    require_dim(d, "maximally_entangled");
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return DensityMatrix(psi * psi.adjoint());
}

ComplexMatrix weyl_unitary(int m, int n, int d) {
    require_dim(d, "weyl_unitary");
    if (m < 0 || m >= d || n < 0 || n >= d) {
        throw IndexError("Weyl index (" + std::to_string(m) + "," + std::to_string(n) +
                         ") out of range for d = " + std::to_string(d));
    }
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) u((k + n) % d, k) = root_of_unity(d, static_cast<long long>(m) * k);
    return u;
}

DensityMatrix bell_projector(int m, int n, int d) {
    const ComplexMatrix u = weyl_unitary(m, n, d);
    const ComplexMatrix local = kron(ComplexMatrix::Identity(d, d), u);
    return DensityMatrix(local * maximally_entangled(d).matrix() * local.adjoint());
}

CirculantSpec bell_diagonal_state(const BellWeights& w) {
    const int d = w.dim();
    std::vector<ComplexMatrix> sectors(static_cast<size_t>(d), ComplexMatrix::Zero(d, d));
    for (int n = 0; n < d; ++n) {
        ComplexMatrix& a = sectors[static_cast<size_t>(n)];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Complex sum = 0.0;
                for (int m = 0; m < d; ++m)
                    sum += w(m, n) * root_of_unity(d, static_cast<long long>(m) * (i - j));
                a(i, j) = sum / static_cast<double>(d);
            }
    }
    return CirculantSpec(std::move(sectors));
}

ComplexMatrix flip_operator(int d) {
    require_dim(d, "flip_operator");
    ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
    return f;
}

ComplexMatrix reflection_operator(int d) {
    require_dim(d, "reflection_operator");
    ComplexMatrix r = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) r((d - k) % d, k) = 1.0;
    return r;
}

DensityMatrix werner_density(int d, double lambda) {
    require_dim(d, "werner_density");
    const double dd = d;
    const ComplexMatrix m = (1.0 - lambda) / (dd * dd) * ComplexMatrix::Identity(d * d, d * d) +
                            (lambda / dd) * flip_operator(d);
    return DensityMatrix(m);
}

CirculantSpec werner_state(int d, double lambda) {
    require_dim(d, "werner_state");
    const double dd = d;
    // After the reflection the flip pairs e_i x e_{-i-n} with e_j x e_{-j-n}
    // for j = -i-n, i.e. a^(n)(i, -i-n) = lambda/d (a symmetric permutation).
    std::vector<ComplexMatrix> sectors;
    for (int n = 0; n < d; ++n) {
        ComplexMatrix a = (1.0 - lambda) / (dd * dd) * ComplexMatrix::Identity(d, d);
        for (int i = 0; i < d; ++i) a(i, ((-i - n) % d + 2 * d) % d) += lambda / dd;
        sectors.push_back(std::move(a));
    }
    return CirculantSpec(std::move(sectors));
}

CirculantSpec isotropic_state(int d, double lambda) {
    require_dim(d, "isotropic_state");
    const double dd = d;
    std::vector<ComplexMatrix> sectors;
    ComplexMatrix a0 = (1.0 - lambda) / (dd * dd) * ComplexMatrix::Identity(d, d) +
                       ComplexMatrix::Constant(d, d, lambda / dd);
    sectors.push_back(std::move(a0));
    for (int n = 1; n < d; ++n)
        sectors.push_back((1.0 - lambda) / (dd * dd) * ComplexMatrix::Identity(d, d));
    return CirculantSpec(std::move(sectors));
}

DensityMatrix orthogonal_invariant_state(const std::array<double, 3>& abc, int d) {
    require_dim(d, "orthogonal_invariant_state");
    for (double w : abc) {
        if (!std::isfinite(w) || w < 0.0) throw InvalidSpec("orthogonal weights must be nonnegative");
    }
    if (std::abs(abc[0] + abc[1] + abc[2] - 1.0) > kTraceTol) {
        throw InvalidSpec("orthogonal weights must sum to 1");
    }
    const double dd = d;
    const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
    const ComplexMatrix flip = flip_operator(d);
    const ComplexMatrix p_plus = maximally_entangled(d).matrix();
    const ComplexMatrix q_plus = (id + flip) / 2.0;
    const ComplexMatrix q_minus = (id - flip) / 2.0;
    const ComplexMatrix p0 = q_plus - p_plus;
    const double tr0 = dd * (dd + 1.0) / 2.0 - 1.0;
    const double tr1 = dd * (dd - 1.0) / 2.0;
    return DensityMatrix(abc[0] * p0 / tr0 + abc[1] * q_minus / tr1 + abc[2] * p_plus);
}

CirculantSpec commuting_group_invariant_state(const ComplexMatrix& a, const RealMatrix& dmat) {
    const int d = static_cast<int>(a.rows());
    if (a.cols() != d || dmat.rows() != d || dmat.cols() != d) {
        throw InvalidSpec("commuting-invariant state: a and dmat must both be d x d");
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j && dmat(i, j) != 0.0) {
                throw InvalidSpec("commuting-invariant state: dmat diagonal must be zero");
            }
            if (!std::isfinite(dmat(i, j)) || dmat(i, j) < 0.0) {
                throw InvalidSpec("commuting-invariant state: dmat entries must be nonnegative");
            }
        }
    }
    std::vector<ComplexMatrix> sectors;
    sectors.push_back(a);
    for (int k = 1; k < d; ++k) {
        ComplexMatrix ak = ComplexMatrix::Zero(d, d);
        for (int i = 0; i < d; ++i) ak(i, i) = dmat(i, (i + k) % d);
        sectors.push_back(std::move(ak));
    }
    return CirculantSpec(std::move(sectors));
}

bool ppt_check_commuting(const ComplexMatrix& a, const RealMatrix& dmat) {
    const Eigen::Index d = a.rows();
    if (a.cols() != d || dmat.rows() != d || dmat.cols() != d) {
        throw DimensionError("ppt_check_commuting: a and dmat must both be d x d");
    }
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            if (i != j && std::norm(a(i, j)) > dmat(i, j) * dmat(j, i) + 1e-12) return false;
    return true;
}

}  // namespace discordant
