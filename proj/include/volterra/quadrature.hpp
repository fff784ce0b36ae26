#ifndef VOLTERRA_QUADRATURE_HPP
#define VOLTERRA_QUADRATURE_HPP

#include <Eigen/Core>

#include <functional>

namespace volterra {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights come
// from the first components of its eigenvectors.
GaussLegendre gauss_legendre(int order);

double integrate(const GaussLegendre& rule, double a, double b,
                 const std::function<double(double)>& f);

}  // namespace volterra

#endif  // VOLTERRA_QUADRATURE_HPP
