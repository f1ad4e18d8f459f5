#include "discordant/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace discordant {

std::string_view to_string(Side s) { return s == Side::A ? "A" : "B"; }

Side parse_side(std::string_view text) {
    if (text == "A" || text == "a") return Side::A;
    if (text == "B" || text == "b") return Side::B;
    throw ParseError("side must be A or B, got '" + std::string(text) + "'");
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("density matrix must be square and non-empty");
    }
    if (!all_finite(m)) throw InvalidSpec("density matrix has non-finite entries");
    const double scale = std::max(1.0, frobenius(m));
    if (frobenius(m - m.adjoint()) > kHermitianTol * scale) {
        throw InvalidSpec("density matrix is not Hermitian");
    }
    m_ = (m + m.adjoint()) / 2.0;
    const double trace = m_.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw InvalidSpec("density matrix trace is " + std::to_string(trace) + ", expected 1");
    }
    const Eigen::VectorXd ev = eigenvalues_hermitian(m_);
    if (ev(0) < -kPsdTol) {
        throw InvalidSpec("density matrix has negative eigenvalue " + std::to_string(ev(0)));
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dA, int dB, Side side) {
    if (dA <= 0 || dB <= 0 || rho.rows() != rho.cols() || rho.rows() != dA * dB) {
        throw DimensionError("partial_trace: matrix is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", expected " +
                             std::to_string(dA * dB) + " square");
    }
    if (side == Side::B) {
        ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
        for (int i = 0; i < dA; ++i)
            for (int j = 0; j < dA; ++j)
                out(i, j) = rho.block(i * dB, j * dB, dB, dB).trace();
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
    for (int i = 0; i < dA; ++i) out += rho.block(i * dB, i * dB, dB, dB);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dA, int dB, Side side) {
    return DensityMatrix(partial_trace(rho.matrix(), dA, dB, side));
}

Spectrum eig_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("eig_hermitian: matrix is not square");
    const ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("eigenvalues_hermitian: matrix is not square");
    const ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double entropy_bits(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kPsdTol) {
            throw InvalidSpec("entropy of a matrix with eigenvalue " + std::to_string(lambda));
        }
        if (lambda > kZeroEigenvalue) s -= lambda * std::log2(lambda);
    }
    return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::VectorXd ev = eigenvalues_hermitian(rho.matrix());
    return entropy_bits(std::span<const double>(ev.data(), static_cast<size_t>(ev.size())));
}

bool is_normal(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw DimensionError("is_normal: matrix is not square");
    const double n = frobenius(m);
    return frobenius(m * m.adjoint() - m.adjoint() * m) <= tol * std::max(1.0, n * n);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionError("commutator_norm: matrices must be square of equal size");
    }
    return frobenius(a * b - b * a);
}

}  // namespace discordant
