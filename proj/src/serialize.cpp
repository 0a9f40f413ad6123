#include "conelab/serialize.hpp"

namespace conelab {

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  if (r == 0) return Eigen::MatrixXd(0, 0);
  const Eigen::Index c = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
  return m;
}

json to_json(const Tensor& t) {
  return json{{"dims", t.dims}, {"data", to_json(t.data)}, {"index_order", "row-major"}};
}

Tensor tensor_from_json(const json& j) {
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  return Tensor(std::move(dims), vector_from_json(j.at("data")));
}

json algebra_to_json(const jordan::Algebra& a) {
  return json{{"kind", a.kind == jordan::Kind::spin ? "spin" : "hermitian"}, {"param", a.param}};
}

jordan::Algebra algebra_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int param = j.at("param").get<int>();
  if (kind == "spin") return jordan::Algebra::spin(param);
  if (kind == "hermitian") return jordan::Algebra::hermitian(param);
  throw std::invalid_argument("unknown jordan algebra kind: " + kind);
}

json to_json(const jordan::Element& e) {
  return json{{"algebra", algebra_to_json(e.alg)}, {"coords", to_json(e.coords)}};
}

jordan::Element jordan_element_from_json(const json& j) {
  return jordan::make(algebra_from_json(j.at("algebra")), vector_from_json(j.at("coords")));
}

std::string dump_pretty(const json& j) { return j.dump(2); }

}  // namespace conelab
