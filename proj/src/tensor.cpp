#include "conelab/tensor.hpp"

namespace conelab {

Tensor product_tensor(const std::vector<Eigen::VectorXd>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_tensor: no factors");
  std::vector<int> dims;
  dims.reserve(factors.size());
  for (const auto& f : factors) dims.push_back(static_cast<int>(f.size()));
  Eigen::VectorXd data = factors[0];
  for (std::size_t m = 1; m < factors.size(); ++m) {
    Eigen::VectorXd next(data.size() * factors[m].size());
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < data.size(); ++i)
      for (Eigen::Index j = 0; j < factors[m].size(); ++j) next[pos++] = data[i] * factors[m][j];
    data.swap(next);
  }
  return Tensor(std::move(dims), std::move(data));
}

Tensor mode_apply(const Tensor& t, const Eigen::MatrixXd& P, int mode) {
  const int k = t.order();
  if (mode < 0 || mode >= k) throw std::invalid_argument("mode_apply: bad mode");
  if (P.cols() != t.dims[mode]) throw std::invalid_argument("mode_apply: dimension mismatch");
  const Eigen::Index d_old = t.dims[mode];
  const Eigen::Index d_new = P.rows();
  Eigen::Index outer = 1, inner = 1;
  for (int m = 0; m < mode; ++m) outer *= t.dims[m];
  for (int m = mode + 1; m < k; ++m) inner *= t.dims[m];

  std::vector<int> new_dims = t.dims;
  new_dims[mode] = static_cast<int>(d_new);
  Tensor out = Tensor::zeros(new_dims);
  for (Eigen::Index o = 0; o < outer; ++o) {
    const Eigen::Index base_in = o * d_old * inner;
    const Eigen::Index base_out = o * d_new * inner;
    for (Eigen::Index r = 0; r < d_new; ++r)
      for (Eigen::Index c = 0; c < d_old; ++c) {
        const double p = P(r, c);
        if (p == 0.0) continue;
        out.data.segment(base_out + r * inner, inner) +=
            p * t.data.segment(base_in + c * inner, inner);
      }
  }
  return out;
}

Tensor map_power_apply(const Tensor& t, const Eigen::MatrixXd& P) {
  Tensor out = t;
  for (int m = 0; m < t.order(); ++m) out = mode_apply(out, P, m);
  return out;
}

double contract_product(const Tensor& t, const std::vector<Eigen::VectorXd>& factors) {
  if (static_cast<int>(factors.size()) != t.order())
    throw std::invalid_argument("contract_product: order mismatch");
  // fold factors in from the last mode
  Eigen::VectorXd cur = t.data;
  for (int m = t.order() - 1; m >= 0; --m) {
    const Eigen::Index d = t.dims[m];
    if (factors[m].size() != d) throw std::invalid_argument("contract_product: dim mismatch");
    const Eigen::Index blocks = cur.size() / d;
    Eigen::VectorXd next(blocks);
    for (Eigen::Index b = 0; b < blocks; ++b) next[b] = cur.segment(b * d, d).dot(factors[m]);
    cur.swap(next);
  }
  return cur[0];
}

}  // namespace conelab
