#pragma once

#include "invmet/rng.hpp"
#include "invmet/types.hpp"

#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>

namespace invmet {

enum class DomainKind { Ball, Polydisk, Ellipsoid, ConvexSmooth };

std::string to_string(DomainKind k);

// Oracles describing a bounded smooth convex domain { rho < 0 } with 0 in the
// interior.  `grad` is the real gradient in R^{2n} (layout of realify()).
struct ConvexSmoothOracles {
    std::function<double(const CVec&)> rho;
    std::function<RVec(const CVec&)> grad;
    std::string tag;  // registered name, required for serialization round-trips
};

// A bounded domain in C^n, recentered at construction so that 0 is interior.
// All coordinates handed to the query methods live in the recentered frame;
// the original-frame center is kept for serialization.
class DomainSpec {
public:
    static DomainSpec ball(int n, double radius, const CVec& center = CVec());
    static DomainSpec polydisk(const std::vector<double>& radii, const CVec& center = CVec());
    static DomainSpec ellipsoid(const std::vector<double>& semiaxes, const CVec& center = CVec());
    static DomainSpec convex_smooth(int n, ConvexSmoothOracles oracles);

    int dim() const { return n_; }
    DomainKind kind() const { return kind_; }
    double sup_norm() const { return sup_norm_; }            // M0 = sup ||z||
    const CVec& recenter_shift() const { return recenter_; } // original center
    const std::vector<double>& radii() const { return radii_; } // per-kind sizes

    bool contains(const CPoint& z) const;
    double boundary_distance(const CPoint& z) const;
    double enclosing_radius(const CPoint& z) const;

    // support function h(u) = sup_{w in D} <w, u>_R for a unit u in R^{2n}
    double support(const RVec& u) const;

    // largest r such that z + zeta*v stays in D for all |zeta| < r
    double affine_disc_radius(const CPoint& z, const CTangent& v) const;

    CPoint sample_interior(SampleRng& rng, double min_boundary_dist = 0.0) const;
    CPoint sample_boundary(SampleRng& rng) const;

    nlohmann::json to_json() const;
    static DomainSpec from_json(const nlohmann::json& j);

    // content hash of the canonical serialization (cache keys)
    std::uint64_t hash() const;

    // deterministic direction set shared by support-sampling consumers
    static const std::vector<RVec>& direction_set(int real_dim, int count = 4096);

private:
    DomainSpec() = default;

    DomainKind kind_ = DomainKind::Ball;
    int n_ = 0;
    std::vector<double> radii_;  // ball: {l}; polydisk: r_i; ellipsoid: a_i
    CVec recenter_;
    double sup_norm_ = 0.0;
    std::shared_ptr<ConvexSmoothOracles> oracles_;

    double convex_boundary_distance(const CPoint& z) const;
    CVec convex_support_point(const RVec& u) const;
};

// Distance from an interior point p to the boundary of the real ellipsoid
// sum x_i^2/s_i^2 = 1 (secular-equation solve, exact up to root tolerance).
double ellipsoid_boundary_distance(const RVec& semiaxes, const RVec& p);
// Farthest boundary point distance max ||x - p|| over the same ellipsoid.
double ellipsoid_farthest_distance(const RVec& semiaxes, const RVec& p);

// Register a ConvexSmooth instance under a tag so domain-spec files round-trip.
void register_convex_smooth(const std::string& tag, std::function<ConvexSmoothOracles()> factory);
ConvexSmoothOracles make_registered_convex_smooth(const std::string& tag);

} // namespace invmet
