#pragma once

#include "invmet/domain.hpp"
#include "invmet/finsler.hpp"
#include "invmet/types.hpp"

#include <nlohmann/json.hpp>
#include <optional>

namespace invmet {

// ---- Poincare model ---------------------------------------------------------

// P(z; v) = |v|^2 (1-|z|^2)^{-2} on the unit disk (squared-length form)
double poincare_metric(Complex z, Complex v);
// d(z1, z2) = arctanh of the Mobius-transported modulus
double poincare_distance(Complex z1, Complex z2);

// ---- witnesses --------------------------------------------------------------

// A holomorphic disc phi : D -> domain with phi(0) = z and phi'(0) = lambda v;
// certifies K(z, v) <= 1/lambda.
struct DiscWitness {
    enum class Kind { Affine, BallSlice, PolydiskProduct, Polynomial };
    Kind kind = Kind::Affine;
    CPoint base;
    CTangent dir;
    double lambda = 0;  // |phi'(0)| relative to dir

    // BallSlice: zeta-plane disc D(center, radius) reparameterized to D
    Complex slice_center;
    double slice_radius = 0;
    // PolydiskProduct: phi_i(zeta) = r_i mob_{a_i}(beta_i zeta)
    CVec mob_base, mob_scale;
    std::vector<double> radii;
    // Polynomial: phi(zeta) = base + lambda zeta dir + sum_k coeff[k] zeta^{k+2}
    std::vector<CVec> coeff;

    CVec eval(Complex zeta) const;
    // samples circles |zeta| in {0.9, 0.99, 0.999}; true if the image stays inside
    bool verify(const DomainSpec& domain, double tol = 1e-9) const;
    nlohmann::json to_json() const;
};

// A holomorphic functional f : domain -> D with f(z) = 0; certifies
// C(z, v) >= |df_z(v)|.
struct FunctionalWitness {
    enum class Kind { HalfPlane, BallMobius, CoordinateMobius, EllipsoidEmbed };
    Kind kind = Kind::HalfPlane;
    CVec functional;     // complex-linear part l(w) = sum w_j conj(functional_j)
    double support_c = 0;  // half-plane offset: D subset {Re l < support_c}
    CPoint base;           // the point sent to 0
    CVec aux;              // ball direction e / embedding scales
    int coord = 0;         // coordinate index for polydisk witnesses
    std::vector<double> radii;

    Complex eval(const CVec& w) const;
    bool verify(const DomainSpec& domain, SampleRng& rng, int boundary_samples = 2000,
                double tol = 1e-9) const;
    nlohmann::json to_json() const;
};

// Certified bracket for the Kobayashi metric K(z, v) (norm, degree-1 in v):
// lower is a Caratheodory-side certificate, upper a holomorphic-disc certificate.
struct MetricInterval {
    double lower = 0;
    double upper = 0;
    FunctionalWitness lower_witness;
    DiscWitness upper_witness;
    nlohmann::json to_json() const;
};

// ---- certificates -----------------------------------------------------------

// 1/R* with R* the largest radius of the centered affine disc z + zeta v.
double kobayashi_upper_affine(const DomainSpec& domain, const CPoint& z, const CTangent& v,
                              DiscWitness* witness = nullptr);

// Supporting-functional lower bound; on balls and polydisks the sharp witness
// collapses the interval (Lempert behavior on convex model domains).
double caratheodory_lower_support(const DomainSpec& domain, const CPoint& z, const CTangent& v,
                                  int direction_budget = 512, FunctionalWitness* witness = nullptr);

// Assembled interval; effort controls the polynomial-disc tightening degree on
// domains without slice closed forms.
MetricInterval kobayashi_metric(const DomainSpec& domain, const CPoint& z, const CTangent& v,
                                int effort = 2);

// Closed forms for tests and calibration.
double kobayashi_ball_closed_form(double radius, const CPoint& z, const CTangent& v);
double kobayashi_polydisk_closed_form(const std::vector<double>& radii, const CPoint& z,
                                      const CTangent& v);

// Upper bound for the Kobayashi distance by chains of holomorphic discs;
// monotone nonincreasing in chain_budget.
double kobayashi_distance_upper(const DomainSpec& domain, const CPoint& p, const CPoint& q,
                                int chain_budget = 4);

// ---- hyperbolicity ----------------------------------------------------------

// Checks the Schwarz-lemma certificate K^2 >= (B/4) G at samples, where G has
// holomorphic sectional curvature <= -B < 0 (disc convention).
struct HyperbolicityReport {
    double min_margin = 0;  // min of (lower^2 - (B/4) G)/scale over samples
    double worst_g = 0;
    CPoint worst_point;
    bool pass = false;
    int samples = 0;
};
HyperbolicityReport hyperbolicity_check(const DomainSpec& domain, const FinslerModel& model, double curv_bound_b,
                                        int samples, std::uint64_t seed);

} // namespace invmet
