#pragma once

#include "corrnet/correlation.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace corrnet {

/// Eigenpairs sorted by descending eigenvalue. Column k of `eigenvectors`
/// belongs to `eigenvalues[k]` and has its largest-magnitude component
/// positive (lowest index wins ties).
struct EigenDecomposition {
    std::vector<std::string> symbols;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    int sweeps = 0;

    std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

/// Eigenvalue interval of an uncorrelated Gaussian correlation matrix with
/// aspect ratio q = T / N.
struct RmtBounds {
    double q = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic Jacobi decomposition of a real symmetric matrix. Iterates until the
/// off-diagonal Frobenius norm drops below 1e-12 * N; throws NumericalError
/// after kMaxJacobiSweeps sweeps.
EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& matrix, std::vector<std::string> symbols = {});

EigenDecomposition eigendecompose(const CorrelationMatrix& c);

RmtBounds rmt_bounds(std::size_t t_len, std::size_t n);

/// Fraction of eigenvalues strictly outside [lambda_min, lambda_max].
double fraction_outside_rmt(const EigenDecomposition& d, const RmtBounds& b);

/// Largest eigenvalue over the eigenvalue sum.
double normalized_largest_eigenvalue(const EigenDecomposition& d);

/// Components of eigenvector `index` (0 = largest eigenvalue) for the given
/// symbols. Throws UsageError on an unknown symbol.
std::map<std::string, double> eigenvector_components(const EigenDecomposition& d,
                                                     const std::vector<std::string>& symbols,
                                                     std::size_t index = 0);

inline std::map<std::string, double> leading_eigenvector_components(const EigenDecomposition& d,
                                                                    const std::vector<std::string>& symbols) {
    return eigenvector_components(d, symbols, 0);
}

}  // namespace corrnet
