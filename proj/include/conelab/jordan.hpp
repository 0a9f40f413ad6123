#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace conelab::jordan {

inline constexpr double kDefaultTol = 1e-9;

enum class Kind { spin, hermitian };

// A Euclidean Jordan algebra in a fixed orthonormal coordinate system.
//
//  * spin(n): J(R^n) on R^{n+1}, elements (t, x) with product
//        (s,x) o (t,y) = (st + <x,y>, sy + tx),
//    unit (1, 0) and the standard dot product. Its cone of squares is the
//    Lorentz cone L_n.
//  * hermitian(d): complex Hermitian d x d matrices as a real d^2-dimensional
//    space, product (AB + BA)/2, inner product Re Tr(A^dag B). Coordinates
//    are taken in the basis documented at hermitian_basis() below, so they
//    are reproducible bit-for-bit.
struct Algebra {
  Kind kind;
  int param;  // n for spin, d for hermitian

  static Algebra spin(int n);
  static Algebra hermitian(int d);

  int ambient_dim() const { return kind == Kind::spin ? param + 1 : param * param; }
  int rank() const { return kind == Kind::spin ? 2 : param; }

  bool operator==(const Algebra&) const = default;
};

struct Element {
  Algebra alg;
  Eigen::VectorXd coords;
};

Element make(const Algebra& alg, Eigen::VectorXd coords);
Element zero(const Algebra& alg);
Element identity(const Algebra& alg);

inline double inner(const Element& a, const Element& b) { return a.coords.dot(b.coords); }
double norm(const Element& a);

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element scale(double c, const Element& a);

// Jordan product a o b; throws on algebra mismatch.
Element product(const Element& a, const Element& b);

// Complete spectral decomposition a = sum_i lambda_i c_i over a Jordan frame,
// eigenvalues sorted descending. For the hermitian kind this delegates to a
// symmetric eigensolver; within degenerate eigenspaces the frame is an
// arbitrary orthonormal choice.
struct Spectral {
  std::vector<Element> frame;
  Eigen::VectorXd eigenvalues;
};
Spectral spectral_decompose(const Element& a);

double min_eigenvalue(const Element& a);

// determinant (product of eigenvalues) and inverse; no inverse when
// |det| <= tol relative to scale
struct DetInv {
  double det = 0.0;
  std::optional<Element> inverse;
};
DetInv det_inv(const Element& a, double tol = kDefaultTol);

Element inverse_or_throw(const Element& a, double tol = kDefaultTol);

// matrix of the left multiplication L_x on coordinates
Eigen::MatrixXd left_mult_operator(const Element& x);

// quadratic representation Q_x = 2 L_x^2 - L_{x^2}; a cone automorphism for
// invertible x, with Q_x(e) = x^2 and Q_x^{-1} = Q_{x^{-1}}
Eigen::MatrixXd quadratic_rep(const Element& x);

// spectral parts a = pos - neg, abs = pos + neg; sqrt present when all
// eigenvalues >= -tol (small negatives clamped to zero)
struct Parts {
  Element pos, neg, abs;
  std::optional<Element> sqrt;
};
Parts parts(const Element& a, double tol = kDefaultTol);

Element sqrt_or_throw(const Element& a, double tol = kDefaultTol);

// cone-of-squares membership: min eigenvalue >= -tol * ||a||
bool in_cone(const Element& a, double tol = kDefaultTol);

// --- hermitian coordinate system -------------------------------------------
//
// Basis order for hermitian(d), all orthonormal under Re Tr(A^dag B):
//   [0]                  I/sqrt(d)
//   [1 .. d-1]           diagonal traceless D_l = diag(1,..,1,-l,0,..)/sqrt(l(l+1))
//   then for each pair i<j in lexicographic order, two entries:
//   symmetric            (E_ij + E_ji)/sqrt(2)
//   antisymmetric        (-i E_ij + i E_ji)/sqrt(2)
// For d = 2 this is { I, sigma_z, sigma_x, sigma_y } / sqrt(2).
const std::vector<Eigen::MatrixXcd>& hermitian_basis(int d);

Eigen::MatrixXcd decode_hermitian(const Element& a);
Element encode_hermitian(int d, const Eigen::MatrixXcd& X);

}  // namespace conelab::jordan
