#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "infbern/geometry.hpp"

namespace infbern {

enum class ProfileMode { Analytic, Sampled };

/// r -> (|Omega_r|, |d Omega_r|) on [0, inradius].
///
/// Balls and rectangles are evaluated in closed form. Polygons are sampled on
/// a grid that clusters towards the inradius (where psi blows up) and are
/// interpolated by monotone cubic Hermite splines: the volume uses the exact
/// derivative -P at every node, the perimeter uses Fritsch-Butland slopes.
/// Both modes carry the sample grid so that invariant checks and grid scans
/// treat them alike.
class ParallelSetProfile {
 public:
  ParallelSetProfile(ConvexDomain domain, std::size_t samples);

  ProfileMode mode() const { return mode_; }
  const ConvexDomain& domain() const { return domain_; }
  int dimension() const { return domain_.dimension(); }
  double inradius() const { return domain_.inradius(); }
  double total_volume() const { return domain_.volume(); }
  double total_perimeter() const { return domain_.boundary_measure(); }

  /// |Omega_r| for r in [0, inradius]; DomainError outside.
  double volume(double r) const;
  /// |d Omega_r| for r in [0, inradius], continuous at the inradius.
  double perimeter(double r) const;
  double psi(double r) const { return perimeter(r) / volume(r); }
  double phi(double r) const { return r * volume(r); }

  std::size_t sample_count() const { return radii_.size(); }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> volumes() const { return volumes_; }
  std::span<const double> perimeters() const { return perimeters_; }

 private:
  void check_radius(double r) const;
  std::size_t segment(double r) const;

  ConvexDomain domain_;
  ProfileMode mode_;
  std::vector<double> radii_;
  std::vector<double> volumes_;
  std::vector<double> perimeters_;
  std::vector<double> perimeter_slopes_;
};

/// Builds and certifies a profile; throws GeometryInconsistency when the
/// samples break Brunn-Minkowski concavity of V^(1/n) or monotonicity of psi.
ParallelSetProfile build_profile(const ConvexDomain& domain, std::size_t samples = 1024);

struct ProfileCertificate {
  double max_concavity_defect = 0.0;  // max second-difference excess of V^(1/n)
  double max_psi_drop = 0.0;          // max relative decrease of psi between samples
};

ProfileCertificate certify_profile(const ParallelSetProfile& profile);

}  // namespace infbern
