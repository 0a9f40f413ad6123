#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace conelab {

// Dense real tensor stored flat in row-major order (last index fastest).
struct Tensor {
  std::vector<int> dims;
  Eigen::VectorXd data;

  Tensor() = default;
  Tensor(std::vector<int> d, Eigen::VectorXd v) : dims(std::move(d)), data(std::move(v)) {
    if (data.size() != size_of(dims)) throw std::invalid_argument("tensor: data/dims mismatch");
  }

  static Eigen::Index size_of(const std::vector<int>& dims) {
    Eigen::Index n = 1;
    for (int d : dims) n *= d;
    return n;
  }

  static Tensor zeros(std::vector<int> dims) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(size_of(dims));
    return Tensor(std::move(dims), std::move(v));
  }

  int order() const { return static_cast<int>(dims.size()); }

  Eigen::Index flat_index(const std::vector<int>& idx) const {
    Eigen::Index f = 0;
    for (std::size_t m = 0; m < dims.size(); ++m) f = f * dims[m] + idx[m];
    return f;
  }

  double& at(const std::vector<int>& idx) { return data[flat_index(idx)]; }
  double at(const std::vector<int>& idx) const { return data[flat_index(idx)]; }

  // view as matrix with the first mode as rows (for order-2 tensors this is
  // the usual matrix view)
  Eigen::MatrixXd as_matrix() const {
    if (dims.empty()) throw std::invalid_argument("tensor: empty");
    const Eigen::Index r = dims[0];
    const Eigen::Index c = data.size() / r;
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
               data.data(), r, c)
        .eval();
  }
};

// k-fold elementary tensor v1 (x) v2 (x) ... (x) vk
Tensor product_tensor(const std::vector<Eigen::VectorXd>& factors);

// applies the matrix P to tensor mode `mode`, changing that dimension from
// P.cols() to P.rows()
Tensor mode_apply(const Tensor& t, const Eigen::MatrixXd& P, int mode);

// P (x) P (x) ... (x) P applied to all modes
Tensor map_power_apply(const Tensor& t, const Eigen::MatrixXd& P);

// <x1 (x) ... (x) xk, t>, contraction against a product vector
double contract_product(const Tensor& t, const std::vector<Eigen::VectorXd>& factors);

inline double dot(const Tensor& a, const Tensor& b) {
  if (a.dims != b.dims) throw std::invalid_argument("tensor dot: shape mismatch");
  return a.data.dot(b.data);
}

// advances a multi-index over `dims`; returns false after the last one
inline bool next_index(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int m = static_cast<int>(dims.size()) - 1; m >= 0; --m) {
    if (++idx[m] < dims[m]) return true;
    idx[m] = 0;
  }
  return false;
}

}  // namespace conelab
