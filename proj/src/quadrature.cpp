#include "volterra/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "volterra/errors.hpp"

namespace volterra {

GaussLegendre gauss_legendre(int order) {
    if (order < 1) fail(ErrorCode::BadInput, "quadrature order must be at least 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussLegendre rule;
    rule.nodes = es.eigenvalues();
    rule.weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
    return rule;
}

double integrate(const GaussLegendre& rule, double a, double b,
                 const std::function<double(double)>& f) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return acc * half;
}

}  // namespace volterra
