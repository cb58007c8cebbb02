#pragma once

#include "invmet/domain.hpp"
#include "invmet/kahler.hpp"
#include "invmet/types.hpp"

#include <memory>
#include <nlohmann/json.hpp>

namespace invmet {

// All second-order data of G at a fixed (z, v) that the curvature machinery
// consumes.  Closed-form where the model provides it, finite differences
// otherwise (fd_jet).
struct FinslerJet {
    double G = 0;
    CVec dG_dz, dG_dv;
    CMat levi;     // (a,b)   = d2 G / dv_a dvbar_b
    CMat hess_zz;  // (mu,nu) = d2 G / dz_mu dzbar_nu
    CMat hess_zv;  // (mu,b)  = d2 G / dz_mu dvbar_b
};

// Complex Finsler metric G(z, v): continuous, |zeta|^2-homogeneous in v,
// smooth away from v = 0.
class FinslerModel {
public:
    virtual ~FinslerModel() = default;
    virtual int dim() const = 0;
    virtual double value(const CPoint& z, const CTangent& v) const = 0;
    virtual FinslerJet jet(const CPoint& z, const CTangent& v) const;  // default: finite differences
    virtual std::string describe() const { return "finsler-model"; }
};

// Finite-difference jet (reference implementation used for cross-validation).
FinslerJet fd_jet(const FinslerModel& model, const CPoint& z, const CTangent& v);

// ---- models ----------------------------------------------------------------

// G = |v|^2 exp(a |z|^2 + b |<z,v>|^2 / |v|^2); strongly pseudoconvex for
// 0 < b < 1/M0 (enforced unless the caller probes outside the window).
std::shared_ptr<FinslerModel> explicit_family(double a, double b, double sup_norm,
                                              bool enforce_window = true);
// Hermitian metric field as a Finsler model (b = 0 cases, Bergman, Poincare).
std::shared_ptr<FinslerModel> hermitian_finsler(std::shared_ptr<KahlerMetricField> field);
// Poincare metric on the unit disk: |v|^2 (1 - |z|^2)^{-2}.
std::shared_ptr<FinslerModel> poincare_model();
// Flat |v|^2 in C^n.
std::shared_ptr<FinslerModel> flat_model(int n);
// c1*G1 + c2*G2 (Levi matrices and all jets add).
std::shared_ptr<FinslerModel> sum_model(double c1, std::shared_ptr<FinslerModel> m1,
                                        double c2, std::shared_ptr<FinslerModel> m2);
// Closed-form squared Kobayashi metric of the ball: g_B/(n+1).
std::shared_ptr<FinslerModel> ball_kobayashi_sq_model(int n, double radius);

// ---- operations -------------------------------------------------------------

// Levi matrix d2G/dv dvbar at (z, v); throws for v = 0 (slit bundle).
CMat levi_matrix(const FinslerModel& model, const CPoint& z, const CTangent& v);

// Holomorphic sectional curvature of the Chern-Finsler connection along v, in
// the disc convention (the Poincare metric on the disk evaluates to -4):
//   K_G = (2/G^2) [ -v^mu vbar^nu d2G/dz^mu dzbar^nu + u^T L^{-1} conj(u) ],
//   u_b = v^mu d2G/dz^mu dvbar^b.
double hsc_chern_finsler(const FinslerModel& model, const CPoint& z, const CTangent& v);

// Gaussian curvature at 0 of the pullback of G under a disc through (z, v):
// the affine disc by default, optionally improved over polynomial discs of the
// given degree.  Always a lower bound for hsc_chern_finsler (sup property).
double hsc_disc_lower(const FinslerModel& model, const DomainSpec& domain, const CPoint& z,
                      const CTangent& v, int disc_degree = 1, std::uint64_t seed = 0);

struct PseudoconvexityReport {
    double min_eigenvalue = 0;
    CPoint worst_point;
    CTangent worst_direction;
    double max_hermiticity_error = 0;
    bool pass = false;
    double tolerance = 1e-10;
    int samples = 0;
};
PseudoconvexityReport strong_pseudoconvexity_check(const FinslerModel& model, const DomainSpec& domain,
                                                   int sample_count, std::uint64_t seed,
                                                   double tolerance = 1e-10);

// Metric-spec file: kind (explicit-family | hermitian-diagonal | poincare), parameters.
nlohmann::json metric_spec_to_json(const std::string& kind, double a, double b);
std::shared_ptr<FinslerModel> metric_from_spec(const nlohmann::json& spec, const DomainSpec& domain);

} // namespace invmet
