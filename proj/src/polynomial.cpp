#include "rpr/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "rpr/errors.hpp"

namespace rpr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Spec'd filter: an eigenvalue is real when |Im| <= 1e-8 * (1 + |Re|).
constexpr double kImagTol = 1e-8;

// Near-real rescue band. Exact multiple roots perturb companion eigenvalues
// by ~sqrt(eps), which can exceed kImagTol; candidates in this band are kept
// only when polishing drives the residual down to evaluation noise.
constexpr double kImagRescue = 1e-5;

double newton_polish(const RealPolynomial& p, const RealPolynomial& dp, double x0) {
    double x = x0;
    double best_x = x0;
    double best_f = std::fabs(p.evaluate(x0));
    for (int iter = 0; iter < 60; ++iter) {
        const double f = p.evaluate(x);
        const double df = dp.evaluate(x);
        if (std::fabs(f) < best_f) {
            best_f = std::fabs(f);
            best_x = x;
        }
        if (df == 0.0) {
            break;
        }
        double step = f / df;
        // damp steps that overshoot into larger residuals
        double xn = x - step;
        for (int halvings = 0; halvings < 4 && std::fabs(p.evaluate(xn)) > std::fabs(f); ++halvings) {
            step *= 0.5;
            xn = x - step;
        }
        if (std::fabs(step) <= 4.0 * kEps * std::max(1.0, std::fabs(x))) {
            x = xn;
            break;
        }
        x = xn;
    }
    const double f = std::fabs(p.evaluate(x));
    return f <= best_f ? x : best_x;
}

// Multiplicity-accelerated Newton: for an m-fold root the step m*p/p'
// restores quadratic convergence.
double newton_polish_multiple(const RealPolynomial& p, const RealPolynomial& dp, double x0, int m) {
    double x = x0;
    for (int iter = 0; iter < 30; ++iter) {
        const double f = p.evaluate(x);
        const double df = dp.evaluate(x);
        if (df == 0.0) {
            break;
        }
        const double step = static_cast<double>(m) * f / df;
        if (!std::isfinite(step)) {
            break;
        }
        x -= step;
        if (std::fabs(step) <= 4.0 * kEps * std::max(1.0, std::fabs(x))) {
            break;
        }
    }
    return std::fabs(p.evaluate(x)) <= std::fabs(p.evaluate(x0)) ? x : x0;
}

}  // namespace

RealPolynomial::RealPolynomial(std::vector<double> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {}

RealPolynomial::RealPolynomial(std::initializer_list<double> ascending_coeffs)
    : coeffs_(ascending_coeffs) {}

int RealPolynomial::effective_degree(double tol_lead) const {
    const double m = max_abs_coeff();
    if (m == 0.0) {
        return -1;
    }
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
        if (std::fabs(coeffs_[static_cast<std::size_t>(i)]) > tol_lead * m) {
            return i;
        }
    }
    return -1;
}

double RealPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) {
        m = std::max(m, std::fabs(c));
    }
    return m;
}

double RealPolynomial::evaluate(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

double RealPolynomial::evaluate_abs(double t) const {
    const double at = std::fabs(t);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * at + std::fabs(*it);
    }
    return acc;
}

RealPolynomial RealPolynomial::derivative() const {
    if (coeffs_.size() <= 1) {
        return RealPolynomial{std::vector<double>{}};
    }
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return RealPolynomial{std::move(d)};
}

RealPolynomial RealPolynomial::trimmed(double tol_lead) const {
    const int deg = effective_degree(tol_lead);
    std::vector<double> out(coeffs_.begin(), coeffs_.begin() + (deg + 1));
    return RealPolynomial{std::move(out)};
}

RealPolynomial RealPolynomial::scaled(double factor) const {
    std::vector<double> out(coeffs_);
    for (double& c : out) {
        c *= factor;
    }
    return RealPolynomial{std::move(out)};
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        return RealPolynomial{std::vector<double>{}};
    }
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t k = 0; k < b.coeffs_.size(); ++k) {
            out[i + k] += a.coeffs_[i] * b.coeffs_[k];
        }
    }
    return RealPolynomial{std::move(out)};
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.coeff(i) + b.coeff(i);
    }
    return RealPolynomial{std::move(out)};
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.coeff(i) - b.coeff(i);
    }
    return RealPolynomial{std::move(out)};
}

DivisionResult divide_out(const RealPolynomial& p, const RealPolynomial& q) {
    const int qdeg = q.effective_degree();
    if (qdeg < 0) {
        throw InvalidInputError("divide_out: divisor is the zero polynomial");
    }
    const int pdeg = std::max<int>(static_cast<int>(p.coeffs().size()) - 1, 0);
    std::vector<double> rem(p.coeffs());
    if (rem.empty()) {
        rem.push_back(0.0);
    }
    if (pdeg < qdeg) {
        double norm2 = 0.0;
        for (double c : rem) {
            norm2 += c * c;
        }
        return {RealPolynomial{{0.0}}, std::sqrt(norm2)};
    }
    const double lead = q.coeff(static_cast<std::size_t>(qdeg));
    std::vector<double> quo(static_cast<std::size_t>(pdeg - qdeg) + 1, 0.0);
    for (int k = pdeg - qdeg; k >= 0; --k) {
        const double c = rem[static_cast<std::size_t>(qdeg + k)] / lead;
        quo[static_cast<std::size_t>(k)] = c;
        for (int i = 0; i <= qdeg; ++i) {
            rem[static_cast<std::size_t>(i + k)] -= c * q.coeff(static_cast<std::size_t>(i));
        }
    }
    double norm2 = 0.0;
    for (int i = 0; i < qdeg && i < static_cast<int>(rem.size()); ++i) {
        norm2 += rem[static_cast<std::size_t>(i)] * rem[static_cast<std::size_t>(i)];
    }
    return {RealPolynomial{std::move(quo)}, std::sqrt(norm2)};
}

DivisionResult strip_circle_factor(const RealPolynomial& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 2) {
        double norm2 = 0.0;
        for (double v : c) {
            norm2 += v * v;
        }
        return {RealPolynomial{{0.0}}, std::sqrt(norm2)};
    }
    std::vector<double> quo(c.size() - 2, 0.0);
    for (std::size_t k = 0; k < quo.size(); ++k) {
        quo[k] = c[k] - (k >= 2 ? quo[k - 2] : 0.0);
    }
    const std::size_t n = c.size();
    const double r1 = c[n - 2] - (n - 2 >= 2 ? quo[n - 4] : 0.0);
    const double r2 = c[n - 1] - (n - 1 >= 2 ? quo[n - 3] : 0.0);
    return {RealPolynomial{std::move(quo)}, std::sqrt(r1 * r1 + r2 * r2)};
}

int RootSet::total_multiplicity() const {
    int m = 0;
    for (const auto& r : roots) {
        m += r.multiplicity;
    }
    return m;
}

RootSet real_roots(const RealPolynomial& p, double tol) {
    const RealPolynomial q = p.trimmed();
    const int n = q.effective_degree();
    if (n < 0) {
        throw ZeroPolynomialError("real_roots: zero polynomial has no discrete root set");
    }
    if (n == 0) {
        return {};
    }

    const RealPolynomial dq = q.derivative();

    // Newton starting points together with the |Im| of the source
    // eigenvalue. A near-real conjugate pair re +- im*i usually encodes two
    // real roots near re +- im, so each member starts on its own side;
    // starting both from re would polish them onto the same root.
    std::vector<std::pair<double, double>> candidates;
    if (n == 1) {
        candidates.emplace_back(-q.coeff(0) / q.coeff(1), 0.0);
    } else if (n == 2) {
        const double a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            const double qq = -0.5 * (b + (b >= 0.0 ? s : -s));
            const double r1 = qq / a;
            const double r2 = (qq != 0.0) ? c / qq : -b / (2.0 * a);
            candidates.emplace_back(r1, 0.0);
            candidates.emplace_back(r2, 0.0);
        } else {
            const double re = -b / (2.0 * a);
            const double im = std::sqrt(-disc) / (2.0 * std::fabs(a));
            candidates.emplace_back(re + im, im);
            candidates.emplace_back(re - im, im);
        }
    } else {
        // companion matrix of the monic polynomial
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        const double lead = q.coeff(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            comp(i, n - 1) = -q.coeff(static_cast<std::size_t>(i)) / lead;
            if (i + 1 < n) {
                comp(i + 1, i) = 1.0;
            }
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
        for (int i = 0; i < n; ++i) {
            const std::complex<double> ev = es.eigenvalues()(i);
            candidates.emplace_back(ev.real() + ev.imag(), std::fabs(ev.imag()));
        }
    }

    std::vector<double> accepted;
    const double coeff_floor = q.max_abs_coeff();
    for (const auto& [re, im] : candidates) {
        const double band = 1.0 + std::fabs(re);
        if (im > kImagRescue * band) {
            continue;
        }
        const double r = newton_polish(q, dq, re);
        // evaluation-noise bound with a coefficient-scale floor: the
        // coefficients themselves are only known to eps of their scale, so
        // |p(r)| below that is indistinguishable from an exact root
        const double noise = 64.0 * kEps * static_cast<double>(2 * n + 2) *
                             (q.evaluate_abs(r) + coeff_floor);
        const bool plainly_real = im <= kImagTol * band;
        if (plainly_real || std::fabs(q.evaluate(r)) <= noise) {
            accepted.push_back(r);
        }
    }
    std::sort(accepted.begin(), accepted.end());

    RootSet out;
    std::size_t i = 0;
    while (i < accepted.size()) {
        std::size_t k = i + 1;
        double rep = accepted[i];
        while (k < accepted.size() &&
               std::fabs(accepted[k] - accepted[k - 1]) <= tol * std::max(1.0, std::fabs(accepted[k]))) {
            ++k;
        }
        const int mult = static_cast<int>(k - i);
        if (mult > 1) {
            double mean = 0.0;
            for (std::size_t s = i; s < k; ++s) {
                mean += accepted[s];
            }
            mean /= static_cast<double>(mult);
            // derivative cross-check: only re-center on the cluster mean when
            // the derivative magnitude is consistent with a multiple root
            const double dmag = std::fabs(dq.evaluate(mean));
            const double dscale = dq.evaluate_abs(mean);
            if (dmag <= 1e-5 * std::max(dscale, kEps)) {
                rep = newton_polish_multiple(q, dq, mean, mult);
            } else {
                double best = accepted[i];
                for (std::size_t s = i; s < k; ++s) {
                    if (std::fabs(q.evaluate(accepted[s])) < std::fabs(q.evaluate(best))) {
                        best = accepted[s];
                    }
                }
                rep = best;
            }
        }
        out.roots.push_back({rep, mult, std::fabs(q.evaluate(rep))});
        i = k;
    }
    return out;
}

}  // namespace rpr
