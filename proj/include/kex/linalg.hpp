#ifndef KEX_LINALG_HPP
#define KEX_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace kex {

struct PowerIterationResult {
    Eigen::VectorXd distribution;
    bool converged = false;
    int iterations = 0;
};

// Row-normalizes a non-negative weight matrix into a (sub)stochastic
// transition matrix; all-zero rows stay zero.
template <typename Scalar>
Eigen::SparseMatrix<double> row_stochastic(const Eigen::SparseMatrix<Scalar>& weights) {
    Eigen::SparseMatrix<double> p = weights.template cast<double>();
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(p.rows());
    for (int col = 0; col < p.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(p, col); it; ++it) {
            row_sums[it.row()] += it.value();
        }
    }
    for (int col = 0; col < p.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(p, col); it; ++it) {
            if (row_sums[it.row()] > 0.0) {
                it.valueRef() /= row_sums[it.row()];
            }
        }
    }
    return p;
}

// Power iteration for the stationary distribution of a random walk with
// row-stochastic transition matrix P, started from the uniform vector. Uses
// the lazy half-step update p <- (p + P^T p) / 2, which has the same
// stationary distribution as P but converges on bipartite graphs where the
// plain update oscillates. Stops when the sup-norm change drops below
// tolerance.
inline PowerIterationResult stationary_power_iteration(const Eigen::SparseMatrix<double>& transition,
                                                       double tolerance, int max_iterations) {
    PowerIterationResult result;
    const auto n = transition.rows();
    if (n == 0) {
        result.converged = true;
        return result;
    }
    const Eigen::SparseMatrix<double> transposed = transition.transpose();
    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd next = 0.5 * (p + transposed * p);
        const double delta = (next - p).lpNorm<Eigen::Infinity>();
        p.swap(next);
        ++result.iterations;
        if (delta < tolerance) {
            result.converged = true;
            break;
        }
    }
    result.distribution = std::move(p);
    return result;
}

// Damped walk: p <- (1 - d)/n + d * P^T p. Mass lost at dangling rows is not
// redistributed; callers renormalize the returned vector.
inline PowerIterationResult damped_power_iteration(const Eigen::SparseMatrix<double>& transition,
                                                   double damping, double tolerance,
                                                   int max_iterations) {
    PowerIterationResult result;
    const auto n = transition.rows();
    if (n == 0) {
        result.converged = true;
        return result;
    }
    const Eigen::SparseMatrix<double> transposed = transition.transpose();
    const double teleport = (1.0 - damping) / static_cast<double>(n);
    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd next = (damping * (transposed * p)).array() + teleport;
        const double delta = (next - p).lpNorm<Eigen::Infinity>();
        p.swap(next);
        ++result.iterations;
        if (delta < tolerance) {
            result.converged = true;
            break;
        }
    }
    result.distribution = std::move(p);
    return result;
}

} // namespace kex

#endif // KEX_LINALG_HPP
