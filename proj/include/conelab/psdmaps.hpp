#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/jordan.hpp"
#include "conelab/rng.hpp"

namespace conelab::psdmaps {

// Linear map between Hermitian matrix spaces, stored as a real matrix on the
// orthonormal coordinates of jordan::hermitian_basis. Hermiticity of outputs
// is automatic in this representation.
struct HermMap {
  int d_in = 0;
  int d_out = 0;
  Eigen::MatrixXd mat;  // (d_out^2) x (d_in^2)
};

HermMap make_herm_map(int d_in, int d_out, Eigen::MatrixXd mat);
HermMap identity_map(int d);
HermMap compose(const HermMap& a, const HermMap& b);  // a after b
HermMap adjoint(const HermMap& p);

// apply to an encoded Hermitian matrix
Eigen::VectorXd apply(const HermMap& p, const Eigen::VectorXd& coords);
Eigen::MatrixXcd apply_matrix(const HermMap& p, const Eigen::MatrixXcd& X);

// build from an action on complex matrices
HermMap from_action(int d_in, int d_out,
                    const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& action);

// transpose map in the computational basis (diagonal +-1 on coordinates)
HermMap transpose_map(int d);
Eigen::MatrixXd transpose_coords(int d);

// Choi tensor in the orthonormal Hermitian bases, as an element of
// V_in (x) V_out: row index n_in coordinate, column index = output coordinate
Eigen::MatrixXd choi(const HermMap& p);
HermMap map_from_choi(const Eigen::MatrixXd& c, int d_in, int d_out);

// complex Choi matrix sum_ab E_ab (x) P(E_ab) on C^{d_in} (x) C^{d_out}
Eigen::MatrixXcd complex_choi(const HermMap& p);

// --- canonical form -----------------------------------------------------------

// Eigendecomposition of the self-adjoint operator P o theta with the
// spectral radius normalized to one: X0 the top eigenvector (checked
// positive semidefinite), lambdas in [-1,1] \ {0} for the rest.
struct CanonicalForm {
  Eigen::VectorXd X0;
  std::vector<Eigen::VectorXd> Xs;
  Eigen::VectorXd lambdas;
  int rank = 0;
  double spectral_radius = 0.0;
  Eigen::VectorXcd map_eigenvalues;  // of P itself, reported alongside
};

struct CanonicalFormError {
  std::string reason;
};

std::variant<CanonicalForm, CanonicalFormError> canonical_form(const HermMap& p,
                                                               double tol = 1e-9);

// --- factorization through a Lorentz cone --------------------------------------

struct LorentzFactorization {
  int k = 0;
  Eigen::MatrixXd alpha_map;  // (d^2) x (k+1), columns alpha(e_i)
  double residual = 0.0;      // |P - alpha o A o alpha^* o theta|
  double cone_check_margin = 0.0;  // sampled min eigenvalue of alpha(Lorentz point)
};

struct FactorizeRefusal {
  std::string reason;
  Eigen::VectorXd offending_lambdas;
};

using FactorizeResult = std::variant<LorentzFactorization, FactorizeRefusal>;

FactorizeResult lorentz_factorize(const HermMap& p, double tol = 1e-9, std::uint64_t seed = 1);

// alpha o A o alpha^* o theta as a map, for re-verification
HermMap factorization_to_map(const LorentzFactorization& f, int d);

// d = 2 reduction map factored through L_3 with the Bloch coordinates:
// R = S o A o S^{-1} for the coordinate isomorphism S between R^4 and the
// Hermitian 2x2 matrices. This is the route that works when the canonical
// alpha-A-alpha^* shape is impossible (the top eigenvalue of R o theta_2 is
// degenerate).
struct SpinorFactorization {
  Eigen::MatrixXd into_psd;   // (L_3, PSD_2)-positive, 4x4 on coordinates
  Eigen::MatrixXd onto_cone;  // (PSD_2, L_3)-positive
  double residual = 0.0;      // |R - into_psd * onto_cone|
};

SpinorFactorization reduction2_spinor_factorization();

// --- named maps -----------------------------------------------------------------

HermMap reduction_map(int d);   // X -> Tr(X) id - X
HermMap breuer_hall_map();      // on M_4, with U = sigma_y (x) id_2

// projection onto span{id, s_1..s_k} for a spin system of pairwise
// anticommuting Hermitian unitaries; validates the system
HermMap spin_projection(const std::vector<Eigen::MatrixXcd>& spin_system);

// --- block positivity / membership ----------------------------------------------

struct BlockPositivity {
  bool member = false;
  bool sound = false;  // true when member=false (violating vector verified)
  double attained_min = 0.0;
  std::optional<Eigen::VectorXcd> y, z;
};

// X0 (x) X0 - sum_s Xs (x) Xs block positive (with X0 psd); the Lorentz-PSD
// max membership test
BlockPositivity lorentz_psd_max_membership(const Eigen::VectorXd& X0,
                                           const std::vector<Eigen::VectorXd>& Xs, int d,
                                           double tol = 1e-8, std::uint64_t seed = 1);

// necessary EB tests on Q o P for Q given by a verified factorization:
// complex Choi positive semidefinite, and PPT. Failure certifies that P is
// not entanglement annihilating.
cones::Certificate generalized_reduction_check(const HermMap& p, const LorentzFactorization& q,
                                               double tol = 1e-9);

}  // namespace conelab::psdmaps
