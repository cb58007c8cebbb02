#pragma once

#include "invmet/domain.hpp"
#include "invmet/kahler.hpp"
#include "invmet/types.hpp"
#include "invmet/wirtinger.hpp"

#include <nlohmann/json.hpp>

namespace invmet {

struct QuadratureSpec {
    int radial = 0;   // Gauss-Legendre nodes per radial level (0 = auto from degree)
    int angular = 0;  // uniform angles per complex coordinate (0 = auto)
    int rejection = 65536;  // node budget for convex-smooth rejection quadrature

    nlohmann::json to_json() const;
    static QuadratureSpec from_json(const nlohmann::json& j);
};

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Volume quadrature over a domain: nodes z_k with weights w_k such that
// int_D f dV ~ sum w_k f(z_k).  Polynomial-exact for Reinhardt model kinds
// up to the stated degree; rejection-weighted for convex-smooth.
struct VolumeQuadrature {
    std::vector<CVec> nodes;
    std::vector<double> weights;
};
VolumeQuadrature domain_quadrature(const DomainSpec& domain, int degree, const QuadratureSpec& spec = {});

// Bergman kernel diagonal K(z,z) with either closed-form (ball, polydisk) or
// an orthonormalized monomial basis behind it.
class BergmanKernel {
public:
    enum class Kind { BallClosed, PolydiskClosed, Numerical };

    static BergmanKernel closed_form(const DomainSpec& domain);
    static BergmanKernel numerical(DomainSpec domain, int max_degree, std::vector<MultiIndex> monos,
                                   CMat orthonormal_coeff, QuadratureSpec spec,
                                   std::vector<std::string> warnings);

    Kind kind() const { return kind_; }
    const DomainSpec& domain() const { return domain_; }
    int max_degree() const { return degree_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const CMat& coeff() const { return coeff_; }
    const std::vector<MultiIndex>& monomials() const { return monos_; }

    double diag(const CPoint& z) const;  // K(z, z)
    std::shared_ptr<KahlerMetricField> metric_field() const;

    nlohmann::json to_json() const;                      // kernel cache format
    static BergmanKernel from_json(const nlohmann::json& j);

private:
    BergmanKernel() = default;
    Kind kind_ = Kind::BallClosed;
    DomainSpec domain_ = DomainSpec::ball(1, 1.0);
    int degree_ = -1;
    std::vector<MultiIndex> monos_;
    CMat coeff_;  // columns = orthonormal basis in the monomial basis
    QuadratureSpec quad_;
    std::vector<std::string> warnings_;
};

// Orthonormalize monomials of total degree <= max_degree in L^2(domain) and
// package them as a numerical kernel.  Twice-reorthogonalized Gram-Schmidt;
// directions that lose more than ~7 digits to cancellation are dropped with a
// warning record instead of being extrapolated.
BergmanKernel build_numerical_kernel(const DomainSpec& domain, int max_degree,
                                     const QuadratureSpec& spec = {});

// g_B(z; v) for the kernel's metric field.
double bergman_metric(const BergmanKernel& kernel, const CPoint& z, const CTangent& v);
double bergman_metric(const KahlerMetricField& field, const CPoint& z, const CTangent& v);

// Squeezing-function curvature window: direct evaluation of the six printed
// bound formulas at squeezing value s in (0, 1].
struct ZhangBounds {
    double sec_lo, sec_hi;
    double ric_lo, ric_hi;
    double scal_lo, scal_hi;
};
ZhangBounds zhang_bounds(int n, double s);

// Sec / Ric / Scal of a Bergman (or any Kaehler) metric at (z, v), in the
// kernel convention: the unit ball gives Sec = -2/(n+1), Ric = -1, Scal = -n.
struct CurvatureReport {
    double sec = 0, ric = 0, scal = 0;
    CPoint z;
    CTangent v;
    std::string convention = "kernel";
};
CurvatureReport bergman_curvatures(const KahlerMetricField& field, const CPoint& z, const CTangent& v);

// Boundary growth of the kernel diagonal along a path z_k -> dD:
// records inf_k K(z,z) d^2 (log(1/d))^2 and compares against a floor.
struct GrowthReport {
    double inf_value = 0;
    double at_largest_d = 0;
    double at_smallest_d = 0;
    double threshold = 0;
    bool pass = false;
};
GrowthReport yeung_growth_check(const std::function<double(const CPoint&)>& kernel_diag,
                                const DomainSpec& domain, const std::vector<CPoint>& path,
                                double threshold = 1e-3);

} // namespace invmet
