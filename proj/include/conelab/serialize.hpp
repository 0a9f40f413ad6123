#pragma once

#include <Eigen/Dense>
#include <string>

#include "json.hpp"

#include "conelab/jordan.hpp"
#include "conelab/tensor.hpp"

namespace conelab {

using nlohmann::json;

json to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const json& j);

json to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j);

// {"dims": [...], "data": [...], "index_order": "row-major"}
json to_json(const Tensor& t);
Tensor tensor_from_json(const json& j);

// {"algebra": {"kind": "spin"|"hermitian", "param": n}, "coords": [...]}
json to_json(const jordan::Element& e);
jordan::Element jordan_element_from_json(const json& j);

json algebra_to_json(const jordan::Algebra& a);
jordan::Algebra algebra_from_json(const json& j);

std::string dump_pretty(const json& j);

}  // namespace conelab
