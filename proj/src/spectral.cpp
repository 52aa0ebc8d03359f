#include "corrnet/spectral.hpp"

#include "corrnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corrnet {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

// Applies the rotation in the (p, q) plane that annihilates a(p, q):
// a <- J^T a J, v <- v J.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& matrix, std::vector<std::string> symbols) {
    if (matrix.rows() != matrix.cols()) throw UsageError("eigendecomposition needs a square matrix");
    if (!symbols.empty() && symbols.size() != static_cast<std::size_t>(matrix.rows())) {
        throw UsageError("symbol count does not match matrix dimension");
    }
    const Eigen::Index n = matrix.rows();
    Eigen::MatrixXd a = matrix;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double tolerance = 1e-12 * static_cast<double>(n);

    int sweeps = 0;
    while (!(off_diagonal_norm(a) < tolerance)) {
        if (sweeps == kMaxJacobiSweeps) {
            throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(kMaxJacobiSweeps) +
                                 " sweeps (non-symmetric or corrupted input?)");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
        }
        ++sweeps;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index l, Eigen::Index r) { return a(l, l) > a(r, r); });

    EigenDecomposition d;
    d.symbols = std::move(symbols);
    d.sweeps = sweeps;
    d.eigenvalues.resize(n);
    d.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        d.eigenvalues(k) = a(src, src);
        Eigen::VectorXd vec = v.col(src);
        Eigen::Index largest = 0;
        for (Eigen::Index i = 1; i < n; ++i) {
            if (std::abs(vec(i)) > std::abs(vec(largest))) largest = i;
        }
        if (vec(largest) < 0.0) vec = -vec;
        d.eigenvectors.col(k) = vec;
    }
    return d;
}

EigenDecomposition eigendecompose(const CorrelationMatrix& c) {
    return symmetric_eigen(c.values, c.symbols);
}

RmtBounds rmt_bounds(std::size_t t_len, std::size_t n) {
    if (t_len < 1 || n < 1) throw UsageError("rmt_bounds needs T >= 1 and N >= 1");
    RmtBounds b;
    b.q = static_cast<double>(t_len) / static_cast<double>(n);
    const double inv_q = 1.0 / b.q;
    const double spread = 2.0 * std::sqrt(inv_q);
    b.lambda_min = 1.0 + inv_q - spread;
    b.lambda_max = 1.0 + inv_q + spread;
    return b;
}

double fraction_outside_rmt(const EigenDecomposition& d, const RmtBounds& b) {
    if (d.size() == 0) return 0.0;
    const auto outside = std::count_if(d.eigenvalues.begin(), d.eigenvalues.end(), [&](double lambda) {
        return lambda < b.lambda_min || lambda > b.lambda_max;
    });
    return static_cast<double>(outside) / static_cast<double>(d.size());
}

double normalized_largest_eigenvalue(const EigenDecomposition& d) {
    if (d.size() == 0) throw UsageError("empty decomposition");
    return d.eigenvalues(0) / d.eigenvalues.sum();
}

std::map<std::string, double> eigenvector_components(const EigenDecomposition& d,
                                                     const std::vector<std::string>& symbols,
                                                     std::size_t index) {
    if (index >= d.size()) throw UsageError("eigenvector index out of range");
    std::map<std::string, double> out;
    for (const auto& s : symbols) {
        auto it = std::find(d.symbols.begin(), d.symbols.end(), s);
        if (it == d.symbols.end()) throw UsageError("unknown symbol '" + s + "'");
        out[s] = d.eigenvectors(it - d.symbols.begin(), static_cast<Eigen::Index>(index));
    }
    return out;
}

}  // namespace corrnet
