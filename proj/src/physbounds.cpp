#include "uind/physbounds.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <stdexcept>

namespace uind {

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("density matrix must be square with dim >= 1");
  if (!entries_.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kDensityTolerance) throw std::invalid_argument("density matrix is not Hermitian");
  const auto trace = entries_.trace();
  if (std::abs(trace - std::complex<double>(1.0, 0.0)) > kDensityTolerance)
    throw std::invalid_argument("density matrix trace is not 1");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen-decomposition failed");
  eigenvalues_ = solver.eigenvalues();
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    if (eigenvalues_[i] < -kDensityTolerance)
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    if (eigenvalues_[i] < 0) eigenvalues_[i] = 0;
  }
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& probabilities) {
  return DensityMatrix(probabilities.cast<std::complex<double>>().asDiagonal());
}

DensityMatrix DensityMatrix::parse(std::istream& in) {
  long long dim = 0;
  if (!(in >> dim) || dim < 1 || dim > 4096)
    throw std::invalid_argument("density matrix file: bad dimension");
  ComplexMatrix m(dim, dim);
  for (long long r = 0; r < dim; ++r) {
    for (long long c = 0; c < dim; ++c) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) throw std::invalid_argument("density matrix file: missing entries");
      m(r, c) = {re, im};
    }
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse(in);
}

void PhysicalConstants::validate() const {
  if (!(k_B > 0) || !(hbar > 0) || !(c > 0))
    throw std::invalid_argument("physical constants must be positive");
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0;
  for (double eta : rho.eigenvalues()) {
    if (eta > 0) s -= eta * std::log(eta);
  }
  return s < 0 ? 0.0 : s;
}

double bekenstein_bound(double radius_m, double energy_j, const PhysicalConstants& constants) {
  constants.validate();
  if (!(radius_m >= 0) || !(energy_j >= 0))
    throw std::invalid_argument("radius and energy must be non-negative");
  return 2.0 * std::numbers::pi * radius_m * energy_j / (constants.hbar * constants.c);
}

double bekenstein_bound_thermodynamic(double radius_m, double energy_j,
                                      const PhysicalConstants& constants) {
  return constants.k_B * bekenstein_bound(radius_m, energy_j, constants);
}

double nats_to_bits(double nats) { return nats / std::numbers::ln2; }

}  // namespace uind
