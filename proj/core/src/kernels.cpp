#include "svcq/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace svcq {

KernelSpec KernelSpec::linear() { return KernelSpec{KernelKind::linear, 0, 0.0}; }

KernelSpec KernelSpec::polynomial(int degree) {
    KernelSpec s{KernelKind::polynomial, degree, 0.0};
    s.validate();
    return s;
}

KernelSpec KernelSpec::gaussian(double sigma) {
    KernelSpec s{KernelKind::gaussian, 0, sigma};
    s.validate();
    return s;
}

void KernelSpec::validate() const {
    switch (kind) {
        case KernelKind::linear:
            if (degree != 0 || sigma != 0.0)
                throw std::invalid_argument("linear kernel takes no parameters");
            break;
        case KernelKind::polynomial:
            if (degree < 1) throw std::invalid_argument("polynomial degree must be >= 1");
            if (sigma != 0.0) throw std::invalid_argument("polynomial kernel has no sigma");
            break;
        case KernelKind::gaussian:
            if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
            if (degree != 0) throw std::invalid_argument("gaussian kernel has no degree");
            break;
    }
}

std::string KernelSpec::name() const {
    switch (kind) {
        case KernelKind::linear: return "linear";
        case KernelKind::polynomial: return "polynomial";
        case KernelKind::gaussian: return "gaussian";
    }
    return "unknown";
}

namespace {

// integer power by repeated multiplication; d is small
double pow_int(double base, int d) {
    double r = 1.0;
    for (int i = 0; i < d; ++i) r *= base;
    return r;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& xi, const Eigen::VectorXd& xj) {
    if (xi.size() != xj.size())
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    spec.validate();
    switch (spec.kind) {
        case KernelKind::linear:
            return xi.dot(xj);
        case KernelKind::polynomial:
            return pow_int(xi.dot(xj), spec.degree);
        case KernelKind::gaussian:
            return std::exp(-spec.sigma * (xi - xj).squaredNorm());
    }
    throw std::logic_error("unreachable kernel kind");
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Dataset& d) {
    spec.validate();
    const Eigen::Index m = d.size();
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = kernel_eval(spec, d.point(i), d.point(j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

}  // namespace svcq
