#pragma once

#include <functional>

#include <Eigen/Core>

#include "lswg/mesh.hpp"

namespace lswg {

using ScalarField = std::function<double(Point2)>;
using VectorField = std::function<Eigen::Vector2d(Point2)>;
using MatrixField = std::function<Eigen::Matrix2d(Point2)>;

}  // namespace lswg
