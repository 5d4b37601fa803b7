#pragma once

#include <cstddef>
#include <vector>

namespace rpr {

/// Relative threshold below which leading coefficients are treated as zero
/// when determining the effective degree. Relative because characteristic
/// polynomial coefficients vary over orders of magnitude with rho^2.
inline constexpr double kLeadTrimTol = 1e-10;

/// Real-coefficient univariate polynomial, coefficients stored in ascending
/// powers of t. Value semantics throughout.
class RealPolynomial {
public:
    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> ascending_coeffs);
    RealPolynomial(std::initializer_list<double> ascending_coeffs);

    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Coefficient of t^k; zero beyond the stored range.
    double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    /// Highest index with |c_i| > tol_lead * max|c_j|, or -1 for the zero
    /// polynomial.
    int effective_degree(double tol_lead = kLeadTrimTol) const;

    bool is_zero() const { return effective_degree() < 0; }

    double max_abs_coeff() const;

    /// Horner evaluation.
    double evaluate(double t) const;

    /// Sum |c_k| |t|^k — the natural magnitude bound for evaluation noise.
    double evaluate_abs(double t) const;

    RealPolynomial derivative() const;

    /// Copy with near-zero leading coefficients removed.
    RealPolynomial trimmed(double tol_lead = kLeadTrimTol) const;

    RealPolynomial scaled(double factor) const;

    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);

private:
    std::vector<double> coeffs_;
};

struct DivisionResult {
    RealPolynomial quotient;
    double remainder_norm = 0.0;  // Euclidean norm of the remainder coefficients
};

/// Polynomial long division p = quotient * q + remainder. The caller asserts
/// remainder_norm below tolerance when divisibility is structural.
/// Throws InvalidInputError when q is the zero polynomial.
DivisionResult divide_out(const RealPolynomial& p, const RealPolynomial& q);

/// Division by the structural factor (1 + t^2), run constant-term first so
/// exactly-zero low coefficients of p survive into the quotient untouched
/// (the ordinary top-down division smears rounding noise into them, which
/// would split an exact double root at t = 0). The remainder lands in the
/// top two slots and is reported as their Euclidean norm.
DivisionResult strip_circle_factor(const RealPolynomial& p);

struct RootRecord {
    double value = 0.0;
    int multiplicity = 1;
    double residual = 0.0;  // |p(value)| after polishing
};

struct RootSet {
    std::vector<RootRecord> roots;  // sorted ascending by value

    int total_multiplicity() const;
};

/// All real roots of p, clustered within tol (scaled by max(1,|root|)) and
/// merged with summed multiplicity; each root polished by local iteration.
/// Throws ZeroPolynomialError when p is identically zero.
RootSet real_roots(const RealPolynomial& p, double tol = 1e-6);

}  // namespace rpr
