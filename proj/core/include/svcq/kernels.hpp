#pragma once

#include <Eigen/Dense>
#include <string>

#include "svcq/dataset.hpp"

namespace svcq {

enum class KernelKind { linear, polynomial, gaussian };

// Kernel family plus its single parameter. Use the factory functions so
// exactly the parameters of the declared kind are set.
struct KernelSpec {
    KernelKind kind = KernelKind::linear;
    int degree = 0;       // polynomial only, >= 1
    double sigma = 0.0;   // gaussian only, > 0

    static KernelSpec linear();
    static KernelSpec polynomial(int degree);
    static KernelSpec gaussian(double sigma);

    void validate() const;
    std::string name() const;
};

// K(x_i, x_j): dot product, (x_i . x_j)^d, or exp(-sigma * |x_i - x_j|^2).
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj);

// Dense M x M kernel matrix over all point pairs.
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Dataset& d);

}  // namespace svcq
