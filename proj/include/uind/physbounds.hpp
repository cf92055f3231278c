#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace uind {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDensityTolerance = 1e-10;

// Finite density matrix: Hermitian, unit trace, positive semidefinite (all
// within kDensityTolerance).  The constructor checks the invariants and
// caches the spectrum.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix diagonal(const Eigen::VectorXd& probabilities);
  // Text format: first line dim, then dim*dim lines "re im" in row-major order.
  static DensityMatrix parse(std::istream& in);
  static DensityMatrix load(const std::string& path);

  Eigen::Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  // Eigenvalues in ascending order, with tiny negatives clamped to 0.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  ComplexMatrix entries_;
  Eigen::VectorXd eigenvalues_;
};

struct PhysicalConstants {
  double k_B = 1.380649e-23;      // J/K
  double hbar = 1.054571817e-34;  // J s
  double c = 299792458.0;         // m/s

  void validate() const;
};

// -sum_j eta_j ln eta_j over the spectrum, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

// Maximal entropy of a system of energy E inside a sphere of radius R,
// 2 pi R E / (hbar c), in nats (entropy divided by k_B).
double bekenstein_bound(double radius_m, double energy_j, const PhysicalConstants& constants = {});

// Same bound in thermodynamic units (J/K).
double bekenstein_bound_thermodynamic(double radius_m, double energy_j,
                                      const PhysicalConstants& constants = {});

double nats_to_bits(double nats);

}  // namespace uind
